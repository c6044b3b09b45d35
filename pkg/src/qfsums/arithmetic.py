"""Quadratic characters, prime decomposition and ideal-count coefficients.

Everything here is exact integer arithmetic.  Coefficients are generated two
ways: pointwise by trial-division factorisation (:func:`coefficient`) and in
bulk by a segmented multiplicative sieve (:func:`coefficient_block`).  Two
slow oracles that share no code with either path are provided for testing:
:func:`divisor_sum_oracle` and :func:`lattice_repr_oracle`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ScaleLimitError, UnsupportedDiscriminant

# negative discriminants of class number one (numeri idonei)
IDONEAL = (-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163)

DEFAULT_SEGMENT_SIZE = 1 << 20
_BASE_PRIME_LIMIT = 10_000


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of ``|n|`` by trial division."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factorize 0")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


@lru_cache(maxsize=8)
def primes_up_to(limit: int) -> np.ndarray:
    """All primes ``<= limit`` as a read-only int64 array."""
    if limit < 2:
        out = np.array([], dtype=np.int64)
    else:
        sieve = np.ones(limit + 1, dtype=bool)
        sieve[:2] = False
        sieve[4::2] = False
        for p in range(3, math.isqrt(limit) + 1, 2):
            if sieve[p]:
                sieve[p * p :: 2 * p] = False
        out = np.flatnonzero(sieve).astype(np.int64)
    out.flags.writeable = False
    return out


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


@dataclass(frozen=True)
class Discriminant:
    """Discriminant of a quadratic order, ``value = conductor**2 * fundamental``."""

    value: int

    def __post_init__(self):
        v = int(self.value)
        object.__setattr__(self, "value", v)
        if v % 4 not in (0, 1):
            raise ValueError(f"discriminant must be 0 or 1 mod 4, got {v}")
        if v in (0, 1) or (v > 0 and math.isqrt(v) ** 2 == v):
            raise ValueError(f"discriminant must not be 0 or a square, got {v}")

    @property
    def is_fundamental(self) -> bool:
        v = self.value
        if v % 4 == 1:
            return _squarefree(v)
        m = v // 4
        return m % 4 in (2, 3) and _squarefree(m)

    @property
    def is_class_number_one(self) -> bool:
        return self.value in IDONEAL

    @property
    def ramified_primes(self) -> tuple[int, ...]:
        return tuple(sorted(factorize(self.value)))

    @property
    def fundamental(self) -> "Discriminant":
        """Discriminant of the field Q(sqrt(value))."""
        core = 1 if self.value > 0 else -1
        for p, e in factorize(self.value).items():
            if e % 2:
                core *= p
        return Discriminant(core if core % 4 == 1 else 4 * core)

    @property
    def conductor(self) -> int:
        return math.isqrt(self.value // self.fundamental.value)

    @property
    def omega(self) -> int:
        """Number of units of the order (automorphisms of a form)."""
        return {-3: 6, -4: 4}.get(self.value, 2)

    @property
    def is_definite(self) -> bool:
        return self.value < 0

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)


def as_discriminant(D) -> Discriminant:
    return D if isinstance(D, Discriminant) else Discriminant(D)


class PrimeClass(enum.Enum):
    RAMIFIED = 0
    SPLIT = 1
    INERT = -1


class CoefficientKind(enum.Enum):
    """Which arithmetic function is summed, with the exponents (m1, m2)."""

    IDEAL_COUNT = ("rk", 0, 0)
    IDEAL_COUNT_SQUARED = ("rk2", 1, 0)
    IDEAL_COUNT_CUBE_ARG = ("rk3", 1, 1)

    def __init__(self, tag, m1, m2):
        self.tag = tag
        self.m1 = m1
        self.m2 = m2

    @classmethod
    def from_tag(cls, tag: str) -> "CoefficientKind":
        for kind in cls:
            if kind.tag == tag:
                return kind
        raise ValueError(f"unknown coefficient kind {tag!r}; expected one of rk, rk2, rk3")


def kronecker_symbol(D, n: int) -> int:
    """Kronecker symbol ``(D | n)`` for ``n >= 1``."""
    a = int(D)
    n = int(n)
    if n < 1:
        raise ValueError(f"kronecker_symbol needs n >= 1, got {n}")
    result = 1
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
        n >>= v
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@lru_cache(maxsize=64)
def character_table(D: int) -> np.ndarray:
    """``chi_D(r)`` for ``r = 0 .. |D|-1``; ``chi_D`` has period ``|D|``."""
    q = abs(int(D))
    tab = np.array([kronecker_symbol(D, r) if r else 0 for r in range(q)], dtype=np.int8)
    tab.flags.writeable = False
    return tab


def classify_prime(D, p: int) -> PrimeClass:
    if not is_prime(p):
        raise ValueError(f"classify_prime needs a prime, got {p}")
    return PrimeClass(kronecker_symbol(D, p))


def coeff_prime_power(kind: CoefficientKind, cls: PrimeClass, j: int) -> int:
    """Value of the coefficient of ``kind`` at ``p**j`` for a prime ``p`` of class ``cls``."""
    if j < 0:
        raise ValueError("exponent must be nonnegative")
    if kind is CoefficientKind.IDEAL_COUNT_CUBE_ARG:
        return coeff_prime_power(CoefficientKind.IDEAL_COUNT, cls, 3 * j)
    if cls is PrimeClass.RAMIFIED:
        r = 1
    elif cls is PrimeClass.SPLIT:
        r = j + 1
    else:
        r = 1 - j % 2
    return r * r if kind is CoefficientKind.IDEAL_COUNT_SQUARED else r


def coefficient(kind: CoefficientKind, D, n: int) -> int:
    D = as_discriminant(D)
    if n < 1:
        raise ValueError(f"coefficient needs n >= 1, got {n}")
    out = 1
    for p, e in factorize(n).items():
        out *= coeff_prime_power(kind, PrimeClass(kronecker_symbol(D.value, p)), e)
        if out == 0:
            break
    return out


@dataclass(frozen=True)
class QuadraticForm:
    """Primitive positive definite form ``a u^2 + b u v + c v^2``."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        a, b, c = (int(t) for t in (self.a, self.b, self.c))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if math.gcd(a, b, c) != 1:
            raise ValueError(f"form ({a},{b},{c}) is not primitive")
        if a <= 0 or b * b - 4 * a * c >= 0:
            raise ValueError(f"form ({a},{b},{c}) is not positive definite")

    @classmethod
    def parse(cls, text: str) -> "QuadraticForm":
        parts = [t.strip() for t in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"form must be given as 'a,b,c', got {text!r}")
        return cls(*(int(t) for t in parts))

    @property
    def discriminant(self) -> Discriminant:
        return Discriminant(self.b * self.b - 4 * self.a * self.c)

    @property
    def omega(self) -> int:
        return self.discriminant.omega

    def __call__(self, u, v):
        return self.a * u * u + self.b * u * v + self.c * v * v


def principal_form(D) -> QuadraticForm:
    D = as_discriminant(D)
    if not D.is_definite:
        raise UnsupportedDiscriminant(f"no definite form for positive discriminant {D.value}")
    if D.value % 4 == 0:
        return QuadraticForm(1, 0, -D.value // 4)
    return QuadraticForm(1, 1, (1 - D.value) // 4)


def require_class_number_one(Q: QuadraticForm) -> Discriminant:
    D = Q.discriminant
    if not D.is_class_number_one:
        raise UnsupportedDiscriminant(
            f"discriminant {D.value} of form ({Q.a},{Q.b},{Q.c}) has class number != 1; unsupported"
        )
    return D


# ---------------------------------------------------------------- oracles


def divisor_sum_oracle(D, n: int) -> int:
    """``sum_{d | n} chi_D(d)`` by naive divisor enumeration."""
    D = as_discriminant(D)
    if not D.is_fundamental:
        raise UnsupportedDiscriminant(f"divisor-sum identity only holds for fundamental D, got {D.value}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    total = 0
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            total += kronecker_symbol(D.value, d)
            if d * d != n:
                total += kronecker_symbol(D.value, n // d)
    return total


def lattice_repr_oracle(Q: QuadraticForm, n: int) -> int:
    """Number of ``(u, v)`` in Z^2 with ``Q(u, v) == n``, by enumeration."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return 1
    a, b = Q.a, Q.b
    disc = -Q.discriminant.value
    # a Q(u,v) = (a u + b v/2)^2 + |D| v^2 / 4  =>  |D| v^2 <= 4 a n
    vmax = math.isqrt(4 * a * n // disc)
    v = np.arange(-vmax, vmax + 1, dtype=np.int64)
    rad = 4 * a * n - disc * v * v
    t = np.sqrt(rad.astype(np.float64)).round().astype(np.int64)
    t = np.where(t * t > rad, t - 1, t)
    t = np.where((t + 1) * (t + 1) <= rad, t + 1, t)
    ok = t * t == rad
    count = 0
    for sign in (1, -1):
        num = -b * v + sign * t
        hit = ok & (num % (2 * a) == 0)
        if sign == -1:
            hit &= t != 0
        count += int(hit.sum())
    return count


# ------------------------------------------------------ local coefficient laws


class _LocalLaw:
    """Prime-power values of a multiplicative function, keyed by chi_D(p).

    ``overrides`` pins the local values at specific primes (exponent 0, 1, ...)
    regardless of the character.
    """

    def __init__(self, D: int, values_for_class, overrides=None):
        self.D = D
        self.chi = character_table(D)
        self._for_class = values_for_class
        self.overrides = dict(overrides or {})

    def values(self, p: int, emax: int) -> np.ndarray:
        if p in self.overrides:
            return np.array([self.overrides[p](e) for e in range(emax + 1)], dtype=np.uint64)
        cls = PrimeClass(int(self.chi[p % len(self.chi)]))
        return np.array([self._for_class(cls, e) if e else 1 for e in range(emax + 1)], dtype=np.uint64)

    def first_power(self) -> np.ndarray:
        """Value at ``p**1`` indexed by ``chi + 1``."""
        return np.array(
            [self._for_class(PrimeClass(c), 1) for c in (-1, 0, 1)], dtype=np.uint64
        )


def kind_law(kind: CoefficientKind, D) -> _LocalLaw:
    D = as_discriminant(D)
    return _LocalLaw(D.value, lambda cls, e: coeff_prime_power(kind, cls, e))


def form_cube_law(Q: QuadraticForm) -> _LocalLaw:
    """Local law of ``n -> r_Q(n**3) / omega_D`` for a class-number-one form.

    For fundamental D this is the cube-argument ideal count.  For an order of
    prime conductor f inside a class-number-one field of discriminant D0,
    elements of norm divisible by f lie in f*O_K, so
    ``r_Q(m) = omega_D r_K(m)`` for ``f`` not dividing m, ``0`` if ``f || m``,
    and ``omega_D0 r_K(m / f^2)`` if ``f^2 | m``.  At ``f`` the local factor
    becomes ``(omega_D0 / omega_D) * r_K(f**(3e - 2))``.
    """
    D = require_class_number_one(Q)
    cube = CoefficientKind.IDEAL_COUNT_CUBE_ARG
    if D.is_fundamental:
        return kind_law(cube, D)
    D0 = D.fundamental
    f = D.conductor
    if not is_prime(f):
        raise UnsupportedDiscriminant(f"conductor {f} of D={D.value} is not prime")
    ratio = D0.omega // D.omega
    cls_f = PrimeClass(kronecker_symbol(D0.value, f))

    def at_conductor(e):
        if e == 0:
            return 1
        return ratio * coeff_prime_power(CoefficientKind.IDEAL_COUNT, cls_f, 3 * e - 2)

    return _LocalLaw(D0.value, lambda cls, e: coeff_prime_power(cube, cls, e), {f: at_conductor})


def representation_count(Q: QuadraticForm, n: int) -> int:
    """``r_Q(n)`` from the ideal-count laws (class number one only)."""
    D = require_class_number_one(Q)
    if n == 0:
        return 1
    if D.is_fundamental:
        return D.omega * coefficient(CoefficientKind.IDEAL_COUNT, D, n)
    D0, f = D.fundamental, D.conductor
    if n % f:
        return D.omega * coefficient(CoefficientKind.IDEAL_COUNT, D0, n)
    if n % (f * f):
        return 0
    return D0.omega * coefficient(CoefficientKind.IDEAL_COUNT, D0, n // (f * f))


# ---------------------------------------------------------------- the sieve


def sieve_block(law: _LocalLaw, lo: int, hi: int) -> np.ndarray:
    """Values of the multiplicative function described by ``law`` on ``[lo, hi]``."""
    if lo < 1 or hi < lo:
        raise ValueError(f"need 1 <= lo <= hi, got lo={lo}, hi={hi}")
    size = hi - lo + 1
    rem = np.arange(lo, hi + 1, dtype=np.int64)
    out = np.ones(size, dtype=np.uint64)
    bound = max([math.isqrt(hi), *law.overrides])
    base = primes_up_to(max(bound, _BASE_PRIME_LIMIT))
    for p in base[: np.searchsorted(base, bound, side="right")].tolist():
        first = (-lo) % p
        if first >= size:
            continue
        sub = rem[first::p]
        exps = np.zeros(sub.shape, dtype=np.int64)
        mask = np.ones(sub.shape, dtype=bool)
        while True:
            mask &= sub % p == 0
            if not mask.any():
                break
            exps += mask
            sub[mask] //= p
        rem[first::p] = sub
        table = law.values(p, int(exps.max()))
        out[first::p] *= table[exps]
    big = rem > 1
    if big.any():
        # leftover cofactor is a single prime above the sieving bound
        chi = law.chi[rem[big] % len(law.chi)].astype(np.int64)
        out[big] *= law.first_power()[chi + 1]
    return out


def coefficient_block(kind: CoefficientKind, D, lo: int, hi: int,
                      segment_size: int = DEFAULT_SEGMENT_SIZE) -> np.ndarray:
    """Coefficients of ``kind`` for ``n = lo .. hi`` as a uint64 array."""
    if hi - lo + 1 > segment_size:
        raise ScaleLimitError(
            f"block [{lo}, {hi}] has {hi - lo + 1} entries, above segment size {segment_size}"
        )
    return sieve_block(kind_law(kind, D), lo, hi)
