# How fast does the main term take over?
#
# The residual R(x) = S(x) - (A x log x + B x) is divided by the envelope
# sqrt(x) (log x)^3 (log log x)^m.  Writing CSV lets any plotting tool take it
# from here (the same table comes from `qfsums verify`).
import sys

from qfsums import CoefficientKind, constants_corollary1, constants_corollary2, residual_series

grid = [10**k for k in range(2, 8)]
for kind, consts in ((CoefficientKind.IDEAL_COUNT_SQUARED, constants_corollary1(-4)),
                     (CoefficientKind.IDEAL_COUNT_CUBE_ARG, constants_corollary2(-4))):
    rep = residual_series(kind, -4, consts, grid)
    print(f"# {kind.tag}, D = -4")
    sys.stdout.write(rep.to_csv())
    print("relative errors:", ", ".join(f"{e:.2e}" for e in rep.relative_errors()))
    print()
