"""Real-argument special values: gamma, zeta, Hurwitz zeta, L(s, chi_D).

All evaluation goes through one Euler-Maclaurin kernel for the Hurwitz zeta
function and its s-derivative.  The kernel can drop the ``1/(s-1)`` pole,
which makes ``s = 1`` legal for character sums: for a non-principal
character the pole contributions cancel because the character sums to zero
over a period.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arithmetic import as_discriminant, character_table
from .errors import NumericBudgetError

EULER_GAMMA_REFERENCE = "0.577215664901532860606512090082"


@dataclass(frozen=True)
class EvaluationParams:
    """Direct-sum length ``cutoff`` and number of Bernoulli corrections."""

    cutoff: int = 64
    bernoulli_order: int = 12

    def __post_init__(self):
        if self.cutoff < 10:
            raise ValueError(f"cutoff must be >= 10, got {self.cutoff}")
        if not 2 <= self.bernoulli_order <= 20:
            raise ValueError(f"bernoulli_order must lie in [2, 20], got {self.bernoulli_order}")


DEFAULT_PARAMS = EvaluationParams()


@lru_cache(maxsize=1)
def _bernoulli_coefficients() -> tuple[float, ...]:
    """``B_{2k} / (2k)!`` for k = 1..20 (Akiyama-Tanigawa, exact)."""
    m_max = 40
    bern = []
    a = [Fraction(0)] * (m_max + 1)
    for m in range(m_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        bern.append(a[0])
    return tuple(float(bern[2 * k] / math.factorial(2 * k)) for k in range(1, 21))


def _pole_part(t: float, L: float) -> tuple[float, float]:
    """``g(t) = (exp(-t L) - 1) / t`` and ``g'(t)``, stable near ``t = 0``."""
    if abs(t * L) < 0.5:
        g = dg = 0.0
        term = 1.0  # (-L)^m t^(m-1) / m!  starting at m = 1 gives -L
        for m in range(1, 40):
            coef = (-L) ** m / math.factorial(m)
            g += coef * t ** (m - 1)
            if m >= 2:
                dg += coef * (m - 1) * t ** (m - 2)
            term = abs(coef) * max(1.0, abs(t)) ** m
            if term < 1e-30:
                break
        return g, dg
    e = math.exp(-t * L)
    return (e - 1.0) / t, (-L * e * t - (e - 1.0)) / (t * t)


def _hurwitz_em(s: float, a: float, params: EvaluationParams, regular: bool) -> tuple[float, float]:
    """Euler-Maclaurin value and s-derivative of ``zeta(s, a)``.

    With ``regular=True`` the returned pair is for ``zeta(s, a) - 1/(s - 1)``.
    """
    N = params.cutoff
    head = head_d = 0.0
    terms = []
    dterms = []
    for n in range(N):
        x = n + a
        lx = math.log(x)
        v = math.exp(-s * lx)
        terms.append(v)
        dterms.append(-lx * v)
    head = math.fsum(terms)
    head_d = math.fsum(dterms)

    X = N + a
    LX = math.log(X)
    t = s - 1.0
    if regular:
        tail, tail_d = _pole_part(t, LX)
    else:
        if t <= 0:
            raise ValueError("pole at s = 1")
        w = math.exp(-t * LX)
        tail, tail_d = w / t, -w * (LX / t + 1.0 / (t * t))
    half = 0.5 * math.exp(-s * LX)
    corr = [tail, half]
    corr_d = [tail_d, -LX * half]

    coeffs = _bernoulli_coefficients()
    poch = s  # s (s+1) ... (s + 2k - 2)
    dlog_poch = 1.0 / s
    for k in range(1, params.bernoulli_order + 1):
        if k > 1:
            poch *= (s + 2 * k - 3) * (s + 2 * k - 2)
            dlog_poch += 1.0 / (s + 2 * k - 3) + 1.0 / (s + 2 * k - 2)
        term = coeffs[k - 1] * poch * math.exp(-(s + 2 * k - 1) * LX)
        corr.append(term)
        corr_d.append(term * (dlog_poch - LX))
    return head + math.fsum(corr), head_d + math.fsum(corr_d)


def _check_hurwitz_args(s, a):
    if not s > 1:
        raise ValueError(f"s must be > 1, got {s}")
    if not 0 < a <= 1:
        raise ValueError(f"a must lie in (0, 1], got {a}")


def hurwitz_zeta(s: float, a: float, params: EvaluationParams = DEFAULT_PARAMS) -> float:
    _check_hurwitz_args(s, a)
    return _hurwitz_em(s, a, params, regular=False)[0]


def hurwitz_zeta_sderiv(s: float, a: float, params: EvaluationParams = DEFAULT_PARAMS) -> float:
    """Partial derivative of ``zeta(s, a)`` with respect to ``s``."""
    _check_hurwitz_args(s, a)
    return _hurwitz_em(s, a, params, regular=False)[1]


def riemann_zeta(s: float, params: EvaluationParams = DEFAULT_PARAMS) -> float:
    return hurwitz_zeta(s, 1.0, params)


def riemann_zeta_prime(s: float, params: EvaluationParams = DEFAULT_PARAMS) -> float:
    return hurwitz_zeta_sderiv(s, 1.0, params)


def euler_gamma(params: EvaluationParams = DEFAULT_PARAMS) -> float:
    """Euler's constant as the finite part of ``zeta`` at ``s = 1``.

    Raises :class:`NumericBudgetError` if the result strays more than 1e-12
    from the stored reference digits.
    """
    gamma = _hurwitz_em(1.0, 1.0, params, regular=True)[0]
    if abs(gamma - float(EULER_GAMMA_REFERENCE)) > 1e-12:
        raise NumericBudgetError(f"Euler gamma self-check failed: {gamma!r}")
    return gamma


def _L_pair(s: float, D, params: EvaluationParams) -> tuple[float, float]:
    D = as_discriminant(D)
    if not s >= 1:
        raise ValueError(f"s must be >= 1, got {s}")
    chi = character_table(D.value)
    q = len(chi)
    vals = []
    ders = []
    for r in range(1, q):
        c = int(chi[r])
        if c:
            v, d = _hurwitz_em(s, r / q, params, regular=True)
            vals.append(c * v)
            ders.append(c * d)
    scale = q ** -s
    L = scale * math.fsum(vals)
    dL = scale * math.fsum(ders) - math.log(q) * L
    return L, dL


def dirichlet_L(s: float, D, params: EvaluationParams = DEFAULT_PARAMS) -> float:
    """``L(s, chi_D)`` for real ``s >= 1``."""
    return _L_pair(s, D, params)[0]


def dirichlet_L_prime(s: float, D, params: EvaluationParams = DEFAULT_PARAMS) -> float:
    """``L'(s, chi_D)`` for real ``s >= 1``, differentiated analytically."""
    return _L_pair(s, D, params)[1]


def dedekind_zeta(s: float, D, params: EvaluationParams = DEFAULT_PARAMS) -> float:
    """``zeta(s) L(s, chi_D)``, the Dedekind zeta function for fundamental D."""
    return riemann_zeta(s, params) * dirichlet_L(s, D, params)
