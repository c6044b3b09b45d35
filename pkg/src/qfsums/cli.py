"""Batch command line: ``qfsums {constants,sum,count,identity,verify}``.

Exit codes: 0 ok, 2 invalid configuration, 3 unsupported discriminant,
4 scale limit, 5 numerical self-check failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from .arithmetic import DEFAULT_SEGMENT_SIZE, CoefficientKind, Discriminant, QuadraticForm
from .constants import constants_corollary1, constants_corollary2, constants_corollary3
from .errors import NumericBudgetError, ScaleLimitError, UnsupportedDiscriminant
from .products import DEFAULT_PRIME_BOUND, ProductTruncation, product_G, ramified_product
from .special import dirichlet_L, euler_gamma, riemann_zeta
from .summation import (
    DEFAULT_MAX_X,
    count_solutions,
    dirichlet_partial_sum,
    env_int,
    residual_series,
    sum_coefficients,
)

EXIT_INVALID, EXIT_UNSUPPORTED, EXIT_SCALE, EXIT_NUMERIC = 2, 3, 4, 5

# stated accuracy of each printed ingredient
TOLERANCES = {
    "gamma": 1e-12, "zeta'(2)": 1e-10, "L(1)": 1e-9, "L'(1)": 1e-9, "L(2)": 1e-9, "L'(2)": 1e-9,
    "ramified_product(1)": 1e-15, "ramified_log_sum": 1e-15, "E(1)": 1e-15, "E'(1)": 1e-15,
}


class ConfigError(ValueError):
    pass


def parse_grid(text: str) -> list[int]:
    """``"1e4,1e5"`` or ``"lo:hi:points_per_decade"`` (log spaced, inclusive)."""
    try:
        if ":" in text:
            lo, hi, ppd = text.split(":")
            lo, hi, ppd = int(float(lo)), int(float(hi)), int(ppd)
            if lo < 1 or hi < lo or ppd < 1:
                raise ConfigError(f"bad grid range {text!r}")
            steps = round(ppd * math.log10(hi / lo))
            pts = sorted({round(lo * 10 ** (k / ppd)) for k in range(steps + 1)} | {lo, hi})
            return [p for p in pts if lo <= p <= hi]
        return [int(float(t)) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse grid {text!r}: {exc}") from exc


def _int(text: str) -> int:
    value = float(text)
    if value != int(value):
        raise argparse.ArgumentTypeError(f"expected an integer, got {text}")
    return int(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qfsums", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format):
        p.add_argument("--format", choices=("csv", "json", "human"), default=default_format)
        p.add_argument("--output", "-o", help="write to this path instead of stdout")
        p.add_argument("--segment-size", type=_int,
                       default=env_int("QFSUMS_SEGMENT_SIZE", DEFAULT_SEGMENT_SIZE))
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--max-x", type=_int, default=DEFAULT_MAX_X)

    p = sub.add_parser("constants", help="main-term constants and their ingredients")
    p.add_argument("--corollary", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--D", type=int, help="fundamental discriminant (corollaries 1, 2)")
    p.add_argument("--form", help="a,b,c (corollary 3)")
    p.add_argument("--prime-bound", type=_int,
                   default=env_int("QFSUMS_PRIME_BOUND", DEFAULT_PRIME_BOUND))
    common(p, "json")

    p = sub.add_parser("sum", help="exact sum of coefficients up to x")
    p.add_argument("--kind", choices=("rk", "rk2", "rk3"), required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--x", type=_int, required=True)
    common(p, "human")

    p = sub.add_parser("count", help="solutions of Q(u,v) = w^3 with w <= x")
    p.add_argument("--form", required=True)
    p.add_argument("--x", type=float, required=True)
    common(p, "human")

    p = sub.add_parser("identity", help="partial Dirichlet series against its closed form")
    p.add_argument("--kind", choices=("rk", "rk2", "rk3"), required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--N", type=_int, required=True)
    p.add_argument("--prime-bound", type=_int,
                   default=env_int("QFSUMS_PRIME_BOUND", DEFAULT_PRIME_BOUND))
    common(p, "human")

    p = sub.add_parser("verify", help="residual report on an x grid")
    p.add_argument("--kind", choices=("rk2", "rk3"), required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--grid", required=True, help="comma list or lo:hi:points-per-decade")
    p.add_argument("--prime-bound", type=_int,
                   default=env_int("QFSUMS_PRIME_BOUND", DEFAULT_PRIME_BOUND))
    common(p, "csv")
    return parser


def _self_check():
    euler_gamma()
    if abs(riemann_zeta(2) - math.pi**2 / 6) > 1e-10:
        raise NumericBudgetError("zeta(2) self-check failed")


def _constants(args) -> dict:
    _self_check()
    trunc = ProductTruncation(args.prime_bound)
    if args.corollary == 3:
        if not args.form:
            raise ConfigError("--form is required for corollary 3")
        c = constants_corollary3(QuadraticForm.parse(args.form), trunc)
    else:
        if args.D is None:
            raise ConfigError("--D is required for corollaries 1 and 2")
        D = Discriminant(args.D)
        c = constants_corollary1(D) if args.corollary == 1 else constants_corollary2(D, trunc)
    out = c.to_dict()
    n = args.corollary
    if c.D.value == -4 and n in (1, 2):
        # r(n) = 4 r_K(n) for sums of two squares
        k = 16 if n == 1 else 4
        out[f"{k}A{n}"] = k * c.A
        out[f"{k}B{n}"] = k * c.B
    tol = dict(TOLERANCES)
    if "G(1)" in c.ingredients:
        g = c.ingredients["G(1)"]
        tol["G(1)"] = g * math.expm1(c.ingredients["G(1)_log_tail_bound"]) + 1e-15
        tol["G'(1)/G(1)"] = c.ingredients["G'(1)/G(1)_tail_bound"] + 1e-15
    out["tolerances"] = {k: tol[k] for k in c.ingredients if k in tol}
    out["tolerances"]["A"] = out["tolerances"]["B"] = 1e-8
    return out


def _identity(args) -> dict:
    kind = CoefficientKind.from_tag(args.kind)
    D = Discriminant(args.D)
    if not D.is_fundamental:
        raise UnsupportedDiscriminant(f"identity check needs a fundamental discriminant, got {D.value}")
    if not args.s > 1:
        raise ConfigError(f"--s must be > 1, got {args.s}")
    left = dirichlet_partial_sum(kind, D, args.s, args.N, segment_size=args.segment_size,
                                 workers=args.workers, max_x=args.max_x)
    zk = riemann_zeta(args.s) * dirichlet_L(args.s, D)
    if kind is CoefficientKind.IDEAL_COUNT:
        right = zk
    elif kind is CoefficientKind.IDEAL_COUNT_SQUARED:
        right = zk**2 / riemann_zeta(2 * args.s) * ramified_product(args.s, D)
    else:
        zk2 = riemann_zeta(2 * args.s) * dirichlet_L(2 * args.s, D)
        g = product_G(args.s, D, ProductTruncation(args.prime_bound)).value
        right = zk**2 / (riemann_zeta(2 * args.s) * zk2) * g
    return {"kind": kind.tag, "D": D.value, "s": args.s, "N": args.N,
            "left": left, "right": right, "gap": abs(left - right)}


def _verify(args):
    kind = CoefficientKind.from_tag(args.kind)
    D = Discriminant(args.D)
    if kind is CoefficientKind.IDEAL_COUNT_SQUARED:
        c = constants_corollary1(D)
    else:
        c = constants_corollary2(D, ProductTruncation(args.prime_bound))
    return residual_series(kind, D, c, parse_grid(args.grid), segment_size=args.segment_size,
                           workers=args.workers, max_x=args.max_x)


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def _human(data: dict) -> str:
    lines = []
    tol = data.get("tolerances", {})
    for key, value in data.items():
        if key == "tolerances":
            continue
        if isinstance(value, dict):
            for k, v in value.items():
                extra = f"  (+/- {tol[k]:.1e})" if k in tol else ""
                lines.append(f"  {k} = {_fmt(v)}{extra}")
        else:
            extra = f"  (+/- {tol[key]:.1e})" if key in tol else ""
            lines.append(f"{key} = {_fmt(value)}{extra}")
    return "\n".join(lines) + "\n"


def _dump(data: dict, fmt: str, scalar_key: str | None = None) -> str:
    if fmt == "json":
        return json.dumps(data, sort_keys=True) + "\n"
    if fmt == "human":
        if scalar_key is not None:
            return f"{data[scalar_key]}\n"
        return _human(data)
    header = list(data)
    flat = {k: (json.dumps(v, sort_keys=True) if isinstance(v, dict) else v) for k, v in data.items()}
    return ",".join(header) + "\n" + ",".join(_fmt(flat[k]) if not isinstance(flat[k], float)
                                             else repr(flat[k]) for k in header) + "\n"


def execute(args) -> str:
    if args.segment_size < 1 or args.workers < 1 or args.max_x < 1:
        raise ConfigError("--segment-size, --workers and --max-x must be positive")
    opts = dict(segment_size=args.segment_size, workers=args.workers, max_x=args.max_x)
    if args.command == "constants":
        return _dump(_constants(args), args.format)
    if args.command == "sum":
        kind = CoefficientKind.from_tag(args.kind)
        total = sum_coefficients(kind, Discriminant(args.D), args.x, **opts)
        return _dump({"command": "sum", "kind": kind.tag, "D": args.D, "x": args.x, "sum": total},
                     args.format, "sum")
    if args.command == "count":
        Q = QuadraticForm.parse(args.form)
        sc = count_solutions(Q, args.x, **opts)
        data = {"command": "count", "form": [Q.a, Q.b, Q.c], "x": args.x, "count": sc.count,
                "includes_origin": sc.includes_origin}
        return _dump(data, args.format, "count")
    if args.command == "identity":
        return _dump(_identity(args), args.format)
    report = _verify(args)
    if args.format == "csv":
        return report.to_csv()
    if args.format == "json":
        return report.to_json() + "\n"
    return "".join(f"x={x} S={s} main={m:.10g} R={r:.10g} R/env={z:.10g}\n" for x, s, m, r, z in report.rows())


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else 0
    except ValueError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        text = execute(args)
    except UnsupportedDiscriminant as exc:
        print(f"unsupported discriminant: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ScaleLimitError as exc:
        print(f"scale limit: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except NumericBudgetError as exc:
        print(f"numeric self-check failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
