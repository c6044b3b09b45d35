"""Truncated Euler products and prime sums for the correction factor G(s).

G is the Euler product of the quotient of the cube-argument series by
``zeta_K(s)^2 / (zeta(2s) zeta_K(2s))``.  Its local factors, with
``z = p^{-s}``, are

* ramified: ``(1 - z) / (1 - z^2)^2``
* split:    ``h(z) = (1 + 2z)(1 - z)^2 / (1 - z^2)^3``
* inert:    ``1 / (1 - z^4)``

so away from the ramified primes ``log G`` converges like ``sum p^{-3s}``.
Products are accumulated as exactly-rounded sums of logarithms, which makes
the result independent of the order in which primes are visited.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .arithmetic import as_discriminant, character_table, primes_up_to

DEFAULT_PRIME_BOUND = 10**6

# |log(local factor)| <= _LOG_FACTOR_CONST * p^{-3s} for unramified p >= 100
_LOG_FACTOR_CONST = 9.0
# |d/ds log(local factor)| <= _LOG_DERIV_CONST * log p * p^{-3s} for p >= 100
_LOG_DERIV_CONST = 6.0


class Truncated(NamedTuple):
    value: float
    tail_bound: float


@dataclass(frozen=True)
class ProductTruncation:
    """Keep primes ``<= prime_bound`` (ramified primes are always kept)."""

    prime_bound: int = DEFAULT_PRIME_BOUND

    def __post_init__(self):
        if self.prime_bound < 100:
            raise ValueError(f"prime_bound must be >= 100, got {self.prime_bound}")

    def tail_bound(self, s: float = 1.0) -> float:
        """Bound on ``|log G_P(s) - log G(s)|`` from ``sum_{n > P} 9 n^{-3s}``."""
        P = self.prime_bound
        return _LOG_FACTOR_CONST * P ** (1 - 3 * s) / (3 * s - 1)

    def log_deriv_tail_bound(self, s: float = 1.0) -> float:
        """Bound on the omitted part of ``G'/G`` via ``int_P^inf 6 log t / t^{3s} dt``."""
        P = self.prime_bound
        k = 3 * s - 1
        return _LOG_DERIV_CONST * P ** (-k) * (math.log(P) / k + 1 / k**2)


def ramified_product(s: float, D) -> float:
    """``prod_{p | D} (1 + p^{-s})^{-1}``."""
    if not s > 0:
        raise ValueError(f"s must be > 0, got {s}")
    out = 1.0
    for p in as_discriminant(D).ramified_primes:
        out /= 1.0 + p ** -s
    return out


def ramified_log_sum(D) -> float:
    """``sum_{p | D} log p / (p + 1)``."""
    return math.fsum(math.log(p) / (p + 1) for p in as_discriminant(D).ramified_primes)


def split_factor(z):
    """``h(z) = (1 + 2z)(1 - z)^2 (1 - z^2)^{-3}``."""
    return (1 + 2 * z) * (1 - z) ** 2 / (1 - z * z) ** 3


def _primes_with_classes(D, trunc: ProductTruncation) -> tuple[np.ndarray, np.ndarray]:
    D = as_discriminant(D)
    primes = primes_up_to(trunc.prime_bound)
    extra = [p for p in D.ramified_primes if p > trunc.prime_bound]
    if extra:
        primes = np.concatenate([primes, np.array(extra, dtype=np.int64)])
    chi = character_table(D.value)
    return primes, chi[primes % len(chi)].astype(np.int64)


def log_factors_G(s: float, primes: np.ndarray, chi: np.ndarray) -> np.ndarray:
    """``log`` of the local factor of G at each prime, given ``chi_D(p)``."""
    z = np.asarray(primes, dtype=np.float64) ** -s
    out = np.empty_like(z)
    r, sp, ine = chi == 0, chi == 1, chi == -1
    out[r] = np.log1p(-z[r]) - 2 * np.log1p(-z[r] ** 2)
    zs = z[sp]
    out[sp] = np.log1p(2 * zs) - np.log1p(-zs) - 3 * np.log1p(zs)
    out[ine] = -np.log1p(-z[ine] ** 4)
    return out


def log_deriv_terms_G(s: float, primes: np.ndarray, chi: np.ndarray) -> np.ndarray:
    """``d/ds log`` of each local factor of G.

    ramified: ``log p (z - 3 z^2) / (1 - z^2)``; split:
    ``-6 z^3 log p / ((1 + 2z)(1 - z)(1 + z))``; inert: ``-4 z^4 log p / (1 - z^4)``.
    """
    p = np.asarray(primes, dtype=np.float64)
    lp = np.log(p)
    z = p ** -s
    out = np.empty_like(z)
    r, sp, ine = chi == 0, chi == 1, chi == -1
    zr = z[r]
    out[r] = lp[r] * (zr - 3 * zr**2) / (1 - zr**2)
    zs = z[sp]
    out[sp] = -6 * zs**3 * lp[sp] / ((1 + 2 * zs) * (1 - zs) * (1 + zs))
    zi = z[ine]
    out[ine] = -4 * zi**4 * lp[ine] / (1 - zi**4)
    return out


def product_G(s: float, D, trunc: ProductTruncation = ProductTruncation()) -> Truncated:
    """Truncated ``G(s)`` and the bound on ``|log G_P(s) - log G(s)|``.

    ``|G_P(s) - G(s)| <= G_P(s) * (exp(tail) - 1)``, i.e. about ``G_P(s) * tail``.
    """
    if not s >= 1:
        raise ValueError(f"s must be >= 1, got {s}")
    primes, chi = _primes_with_classes(D, trunc)
    return Truncated(math.exp(math.fsum(log_factors_G(s, primes, chi))), trunc.tail_bound(s))


def log_deriv_G(s: float, D, trunc: ProductTruncation = ProductTruncation()) -> Truncated:
    if not s >= 1:
        raise ValueError(f"s must be >= 1, got {s}")
    primes, chi = _primes_with_classes(D, trunc)
    return Truncated(math.fsum(log_deriv_terms_G(s, primes, chi)), trunc.log_deriv_tail_bound(s))


def log_deriv_G_at_1(D, trunc: ProductTruncation = ProductTruncation()) -> Truncated:
    """``G'(1) / G(1)`` as a truncated prime sum."""
    return log_deriv_G(1.0, D, trunc)
