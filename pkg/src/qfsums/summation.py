"""Exact partial sums, lattice-solution counts and residual reports.

Integer sums are reduced in Python integers, so they do not depend on how
segments are scheduled.  Real-valued sums use :func:`math.fsum` per segment
and again across segments; the result is the correctly rounded total and is
therefore identical for any worker count or segment size.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .arithmetic import (
    DEFAULT_SEGMENT_SIZE,
    CoefficientKind,
    Discriminant,
    QuadraticForm,
    as_discriminant,
    form_cube_law,
    kind_law,
    lattice_repr_oracle,
    require_class_number_one,
    sieve_block,
)
from .constants import ConstantSet, ConstantSource, expected_source, main_term
from .errors import ScaleLimitError

DEFAULT_MAX_X = 10**8
BRUTEFORCE_MAX_X = 1000
CSV_COLUMNS = ("x", "exact_sum", "main_term", "residual", "normalized_residual")


def _segments(n_max: int, segment_size: int):
    lo = 1
    while lo <= n_max:
        hi = min(lo + segment_size - 1, n_max)
        yield lo, hi
        lo = hi + 1


def iter_blocks(law, n_max: int, segment_size: int = DEFAULT_SEGMENT_SIZE,
                workers: int = 1) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(lo, values)`` for consecutive segments covering ``1..n_max``.

    At most ``workers`` segments are in flight, which bounds memory.
    """
    if segment_size < 1:
        raise ValueError(f"segment_size must be positive, got {segment_size}")
    segs = list(_segments(n_max, segment_size))
    if workers <= 1:
        for lo, hi in segs:
            yield lo, sieve_block(law, lo, hi)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for i in range(0, len(segs), workers):
            batch = segs[i : i + workers]
            futures = [pool.submit(sieve_block, law, lo, hi) for lo, hi in batch]
            for (lo, _), fut in zip(batch, futures):
                yield lo, fut.result()


def _check_scale(x: int, max_x: int):
    if x > max_x:
        raise ScaleLimitError(f"x = {x} exceeds the configured maximum {max_x}")


def _block_total(block: np.ndarray) -> int:
    # uint64 accumulation is exact while len * max < 2**64
    if block.size and int(block.max()) * block.size >= 1 << 63:
        return sum(int(v) for v in block)
    return int(block.sum(dtype=np.uint64))


def sum_coefficients(kind: CoefficientKind, D, x: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE,
                     workers: int = 1, max_x: int = DEFAULT_MAX_X) -> int:
    """Exact ``sum_{n <= x} a(n)``."""
    x = int(x)
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    _check_scale(x, max_x)
    law = kind_law(kind, D)
    return sum(_block_total(b) for _, b in iter_blocks(law, x, segment_size, workers))


def partial_sums(kind: CoefficientKind, D, grid: Sequence[int], *, segment_size: int = DEFAULT_SEGMENT_SIZE,
                 workers: int = 1, max_x: int = DEFAULT_MAX_X) -> list[int]:
    """Exact ``sum_{n <= x} a(n)`` for every ``x`` in an ascending grid, in one pass."""
    return _partial_sums(kind_law(kind, D), grid, segment_size, workers, max_x)


def _partial_sums(law, grid, segment_size, workers, max_x):
    grid = [int(g) for g in grid]
    if not grid:
        return []
    if any(b <= a for a, b in zip(grid, grid[1:])) or grid[0] < 1:
        raise ValueError("grid must be strictly increasing and start at >= 1")
    _check_scale(grid[-1], max_x)
    out = []
    running = 0
    gi = 0
    for lo, block in iter_blocks(law, grid[-1], segment_size, workers):
        hi = lo + block.size - 1
        while gi < len(grid) and grid[gi] <= hi:
            out.append(running + _block_total(block[: grid[gi] - lo + 1]))
            gi += 1
        running += _block_total(block)
    return out


@dataclass(frozen=True)
class SolutionCount:
    x: float
    count: int
    includes_origin: bool = True


def count_solutions(Q: QuadraticForm, x: float, *, segment_size: int = DEFAULT_SEGMENT_SIZE,
                    workers: int = 1, max_x: int = DEFAULT_MAX_X) -> SolutionCount:
    """``#{(u, v, w) in Z^3 : Q(u, v) = w^3, w <= x}`` via the sieve.

    ``w = 0`` contributes only the origin; negative ``w`` contributes nothing.
    """
    D = require_class_number_one(Q)
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    n = math.floor(x)
    if n < 1:
        return SolutionCount(x, 1)
    _check_scale(n, max_x)
    law = form_cube_law(Q)
    total = sum(_block_total(b) for _, b in iter_blocks(law, n, segment_size, workers))
    return SolutionCount(x, 1 + D.omega * total)


def count_solutions_bruteforce(Q: QuadraticForm, x: float) -> SolutionCount:
    """Same count by enumerating ``Q(u, v) = w^3`` for each ``w`` directly."""
    if x > BRUTEFORCE_MAX_X:
        raise ScaleLimitError(f"brute-force oracle limited to x <= {BRUTEFORCE_MAX_X}, got {x}")
    if x < 0:
        return SolutionCount(x, 0)
    return SolutionCount(x, sum(lattice_repr_oracle(Q, w**3) for w in range(0, math.floor(x) + 1)))


def dirichlet_partial_sum(kind: CoefficientKind, D, s: float, N: int, *,
                          segment_size: int = DEFAULT_SEGMENT_SIZE, workers: int = 1,
                          max_x: int = DEFAULT_MAX_X) -> float:
    """``sum_{n <= N} a(n) n^{-s}``, correctly rounded."""
    if not s > 1:
        raise ValueError(f"s must be > 1, got {s}")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    _check_scale(N, max_x)
    parts = []
    for lo, block in iter_blocks(kind_law(kind, D), int(N), segment_size, workers):
        n = np.arange(lo, lo + block.size, dtype=np.float64)
        parts.append(math.fsum(block.astype(np.float64) * n**-s))
    return math.fsum(parts)


def envelope(x: float, m1: int, m2: int) -> float:
    """Error envelope ``sqrt(x) (ln x)^3 (ln ln x)^(m1 + m2)``."""
    lx = math.log(x)
    return math.sqrt(x) * lx**3 * math.log(lx) ** (m1 + m2)


@dataclass
class SummationReport:
    kind: CoefficientKind
    D: Discriminant
    grid: list[int]
    exact_sums: list[int]
    main_terms: list[float]
    residuals: list[float] = field(default_factory=list)
    normalized: list[float] = field(default_factory=list)

    def rows(self):
        return zip(self.grid, self.exact_sums, self.main_terms, self.residuals, self.normalized)

    def relative_errors(self) -> list[float]:
        return [abs(s / m - 1) for s, m in zip(self.exact_sums, self.main_terms)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for x, s, m, r, z in self.rows():
            w.writerow([x, s, repr(m), repr(r), repr(z)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, kind: CoefficientKind, D) -> "SummationReport":
        rows = list(csv.DictReader(io.StringIO(text)))
        return cls(
            kind, as_discriminant(D),
            [int(r["x"]) for r in rows],
            [int(r["exact_sum"]) for r in rows],
            [float(r["main_term"]) for r in rows],
            [float(r["residual"]) for r in rows],
            [float(r["normalized_residual"]) for r in rows],
        )

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.tag,
            "D": self.D.value,
            "m1": self.kind.m1,
            "m2": self.kind.m2,
            "rows": [dict(zip(CSV_COLUMNS, row)) for row in self.rows()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def residual_series(kind: CoefficientKind, D, c: ConstantSet, grid: Sequence[int], *,
                    segment_size: int = DEFAULT_SEGMENT_SIZE, workers: int = 1,
                    max_x: int = DEFAULT_MAX_X) -> SummationReport:
    D = as_discriminant(D)
    grid = [int(g) for g in grid]
    if not grid or grid[0] < 16:
        raise ValueError("grid must be nonempty with all x >= 16")
    if c.source is not ConstantSource.CUSTOM:
        if c.source is not expected_source(kind) or c.D != D or c.omega_scaling != 1:
            raise ValueError(
                f"constant set ({c.source.value}, D={c.D.value}, scaling={c.omega_scaling}) "
                f"does not belong to kind {kind.tag} at D={D.value}"
            )
    sums = partial_sums(kind, D, grid, segment_size=segment_size, workers=workers, max_x=max_x)
    mains = [c.A * x * math.log(x) + c.B * x for x in grid]
    residuals = [s - m for s, m in zip(sums, mains)]
    normalized = [r / envelope(x, kind.m1, kind.m2) for r, x in zip(residuals, grid)]
    return SummationReport(kind, D, grid, sums, mains, residuals, normalized)


def env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw in (None, ""):
        return default
    try:
        return int(float(raw))
    except ValueError:
        raise ValueError(f"environment variable {name} must be an integer, got {raw!r}") from None
