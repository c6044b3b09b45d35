"""Main-term constants ``A x log x + B x`` for the two summatory functions.

Both generating functions have the shape ``zeta(s)^2 H(s)`` near ``s = 1``
with ``H`` holomorphic there, so the residue of ``zeta(s)^2 H(s) x^s / s``
is ``H(1) x log x + H(1) (2 gamma - 1 + H'(1)/H(1)) x``.  The functions
below assemble ``H(1)`` and ``H'(1)/H(1)`` from their ingredients.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

from .arithmetic import (
    CoefficientKind,
    Discriminant,
    QuadraticForm,
    as_discriminant,
    PrimeClass,
    kronecker_symbol,
    require_class_number_one,
)
from .errors import UnsupportedDiscriminant
from .products import ProductTruncation, log_deriv_G_at_1, product_G, ramified_log_sum, ramified_product
from .special import dirichlet_L, dirichlet_L_prime, euler_gamma, riemann_zeta_prime


class ConstantSource(enum.Enum):
    COROLLARY1 = "corollary1"
    COROLLARY2 = "corollary2"
    COROLLARY3 = "corollary3"
    CUSTOM = "custom"


@dataclass(frozen=True)
class ConstantSet:
    A: float
    B: float
    source: ConstantSource
    D: Discriminant
    omega_scaling: int = 1
    ingredients: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.source is not ConstantSource.CUSTOM and not self.A > 0:
            raise ValueError(f"leading constant must be positive, got {self.A}")
        if not (math.isfinite(self.A) and math.isfinite(self.B)):
            raise ValueError("constants must be finite")

    def scaled(self, k: int) -> "ConstantSet":
        """Same constants multiplied by ``k`` (e.g. 16 for ``r(n)^2``)."""
        return replace(self, A=k * self.A, B=k * self.B, omega_scaling=k * self.omega_scaling)

    def to_dict(self) -> dict:
        return {
            "A": self.A,
            "B": self.B,
            "source": self.source.value,
            "D": self.D.value,
            "omega_scaling": self.omega_scaling,
            "ingredients": dict(self.ingredients),
        }


def custom_constants(A: float, B: float, D) -> ConstantSet:
    return ConstantSet(A, B, ConstantSource.CUSTOM, as_discriminant(D))


def _fundamental(D) -> Discriminant:
    D = as_discriminant(D)
    if not D.is_fundamental:
        raise UnsupportedDiscriminant(f"main-term constants need a fundamental discriminant, got {D.value}")
    return D


def constants_corollary1(D) -> ConstantSet:
    """Constants for ``sum_{n <= x} r_K(n)^2``."""
    D = _fundamental(D)
    gamma = euler_gamma()
    dz2 = riemann_zeta_prime(2)
    L1 = dirichlet_L(1, D)
    dL1 = dirichlet_L_prime(1, D)
    ram = ramified_product(1, D)
    ram_log = ramified_log_sum(D)
    A = 6 / math.pi**2 * L1**2 * ram
    B = A * (-1 + 2 * gamma + ram_log + 2 * dL1 / L1 - 12 / math.pi**2 * dz2)
    ingredients = {
        "L(1)": L1, "L'(1)": dL1, "gamma": gamma, "zeta'(2)": dz2,
        "ramified_product(1)": ram, "ramified_log_sum": ram_log,
    }
    return ConstantSet(A, B, ConstantSource.COROLLARY1, D, 1, ingredients)


def constants_corollary2(D, trunc: ProductTruncation = ProductTruncation()) -> ConstantSet:
    """Constants for ``sum_{n <= x} r_K(n^3)``."""
    D = _fundamental(D)
    gamma = euler_gamma()
    dz2 = riemann_zeta_prime(2)
    L1, dL1 = dirichlet_L(1, D), dirichlet_L_prime(1, D)
    L2, dL2 = dirichlet_L(2, D), dirichlet_L_prime(2, D)
    G1 = product_G(1, D, trunc)
    dlogG = log_deriv_G_at_1(D, trunc)
    A = 36 * L1**2 * G1.value / (math.pi**4 * L2)
    B = A * (2 * dL1 / L1 - 1 + 2 * gamma + dlogG.value - 2 * dL2 / L2 - 24 * dz2 / math.pi**2)
    ingredients = {
        "L(1)": L1, "L'(1)": dL1, "L(2)": L2, "L'(2)": dL2, "gamma": gamma,
        "zeta'(2)": dz2, "G(1)": G1.value, "G'(1)/G(1)": dlogG.value,
        "G(1)_log_tail_bound": G1.tail_bound, "G'(1)/G(1)_tail_bound": dlogG.tail_bound,
    }
    return ConstantSet(A, B, ConstantSource.COROLLARY2, D, 1, ingredients)


def conductor_correction(D, s: float = 1.0) -> tuple[float, float]:
    """``E(s)`` and ``E'(s)`` for a non-maximal class-number-one order.

    ``E(s)`` is the ratio of the local factors at the conductor prime ``f`` of
    ``sum r_Q(n^3) / omega_D`` and of ``sum r_K(n^3)`` (K the maximal order),
    written as a rational function of ``z = f^{-s}``.
    """
    D = as_discriminant(D)
    D0, f = D.fundamental, D.conductor
    k = D0.omega // D.omega
    cls = PrimeClass(kronecker_symbol(D0.value, f))
    z = f ** -s
    if cls is PrimeClass.RAMIFIED:
        E, dE = 1 + (k - 1) * z, k - 1
    elif cls is PrimeClass.INERT:
        E, dE = 1 + (k - 1) * z * z, 2 * (k - 1) * z
    else:
        num = (1 - z) ** 2 + k * z * (2 + z)
        dnum = -2 * (1 - z) + k * (2 + 2 * z)
        E = num / (1 + 2 * z)
        dE = (dnum * (1 + 2 * z) - 2 * num) / (1 + 2 * z) ** 2
    # d/ds = dz/ds d/dz with dz/ds = -z log f
    return E, -z * math.log(f) * dE


def constants_corollary3(Q: QuadraticForm, trunc: ProductTruncation = ProductTruncation()) -> ConstantSet:
    """Constants for ``#{(u, v, w): Q(u, v) = w^3, w <= x}``.

    For fundamental discriminants this is ``omega_D`` times the cube-argument
    constants.  For the four non-fundamental class-number-one discriminants
    the cube-argument constants of the maximal order are corrected at the
    conductor prime (see :func:`conductor_correction`).
    """
    D = require_class_number_one(Q)
    w = D.omega
    if D.is_fundamental:
        c2 = constants_corollary2(D, trunc)
        return ConstantSet(w * c2.A, w * c2.B, ConstantSource.COROLLARY3, D, w, c2.ingredients)
    c2 = constants_corollary2(D.fundamental, trunc)
    E, dE = conductor_correction(D)
    A = w * E * c2.A
    B = w * (E * c2.B + dE * c2.A)
    ingredients = dict(c2.ingredients, **{"E(1)": E, "E'(1)": dE})
    return ConstantSet(A, B, ConstantSource.COROLLARY3, D, w, ingredients)


def main_term(c: ConstantSet, x: float) -> float:
    """``A x ln x + B x``."""
    if not x >= 2:
        raise ValueError(f"x must be >= 2, got {x}")
    return c.A * x * math.log(x) + c.B * x


def expected_source(kind: CoefficientKind) -> ConstantSource:
    if kind is CoefficientKind.IDEAL_COUNT_SQUARED:
        return ConstantSource.COROLLARY1
    if kind is CoefficientKind.IDEAL_COUNT_CUBE_ARG:
        return ConstantSource.COROLLARY2
    raise ValueError(f"no main-term constants for kind {kind.tag}")
