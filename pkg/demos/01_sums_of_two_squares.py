# Sums of two squares and the ideal counts of Q(i).
#
# r(n) counts integer pairs (u, v) with u^2 + v^2 = n.  The Gaussian integers
# have four units, so r(n) = 4 r_K(n), where r_K(n) counts ideals of norm n.
import math

import numpy as np

from qfsums import CoefficientKind, coefficient_block, constants_corollary1, main_term, sum_coefficients

RK, RK2 = CoefficientKind.IDEAL_COUNT, CoefficientKind.IDEAL_COUNT_SQUARED

# Count lattice points in a disk of radius sqrt(N), bucketed by norm.
N = 50
R = math.isqrt(N)
u = np.arange(-R, R + 1)
norms = (u[:, None] ** 2 + u[None, :] ** 2).ravel()
r = np.bincount(norms[norms <= N], minlength=N + 1)[1:]

rk = coefficient_block(RK, -4, 1, N)
print("n     :", list(range(1, 13)))
print("r(n)  :", r[:12].tolist())
print("r_K(n):", rk[:12].tolist())
print("r == 4 r_K up to", N, ":", bool(np.array_equal(r, 4 * rk)))

# Squaring and summing: sum r(n)^2 = 16 sum r_K(n)^2 ~ 4 x log x + 16 B1 x
c1 = constants_corollary1(-4)
print()
print(f"16 A1 = {16 * c1.A:.12f}   16 B1 = {16 * c1.B:.10f}")
for x in (10**3, 10**5, 10**6):
    S = sum_coefficients(RK2, -4, x)
    M = main_term(c1, x)
    print(f"x = {x:>8}   sum r_K^2 = {S:>9}   main term = {M:14.2f}   ratio = {S / M:.6f}")
