import math
from concurrent.futures import ThreadPoolExecutor

import mpmath
import numpy as np
import pytest

from qfsums.arithmetic import CoefficientKind, character_table, coefficient_block
from qfsums.errors import NumericBudgetError
from qfsums.special import (
    EULER_GAMMA_REFERENCE,
    EvaluationParams,
    dirichlet_L,
    dirichlet_L_prime,
    euler_gamma,
    hurwitz_zeta,
    hurwitz_zeta_sderiv,
    riemann_zeta,
    riemann_zeta_prime,
)

mpmath.mp.dps = 30


def zeta_prime_direct(s, N=1000):
    """-sum log n / n^s with a two-term Euler-Maclaurin tail."""
    f = lambda t: -math.log(t) * t**-s
    df = lambda t: (s * math.log(t) - 1) * t ** (-s - 1)
    # int_N^inf -log t t^-s dt
    integral = -(N ** (1 - s)) * (math.log(N) / (s - 1) + 1 / (s - 1) ** 2)
    return math.fsum([f(n) for n in range(1, N)] + [integral, f(N) / 2, -df(N) / 12])


def repeated_average(partials, rounds):
    p = list(partials)
    for _ in range(rounds):
        p = [(a + b) / 2 for a, b in zip(p, p[1:])]
    return p[-1]


def catalan_series():
    terms = [(-1) ** j / (2 * j + 1) ** 2 for j in range(200)]
    return repeated_average(np.cumsum(terms), 40)


def L1_prime_minus4_series():
    """-sum chi_{-4}(n) log n / n, alternating, accelerated by repeated averaging."""
    terms = [-((-1) ** j) * math.log(2 * j + 1) / (2 * j + 1) for j in range(4000)]
    return repeated_average(np.cumsum(terms), 60)


def L1_prime_minus4_closed_form():
    g = float(mpmath.euler)
    return math.pi / 4 * (g + 2 * math.log(2) + 3 * math.log(math.pi) - 4 * math.lgamma(0.25))


def L_at_one_stieltjes(chi):
    """L(1) and L'(1) from the Laurent expansion of zeta(s, a) at s = 1.

    zeta(s, a) = 1/(s-1) - psi(a) - gamma_1(a) (s-1) + ...; the pole cancels in
    the character sum.
    """
    q = len(chi)
    terms = [(chi[r], mpmath.mpf(r) / q) for r in range(1, q) if chi[r]]
    psi = sum(c * mpmath.digamma(a) for c, a in terms)
    g1 = sum(c * mpmath.stieltjes(1, a) for c, a in terms)
    return -psi / q, (mpmath.log(q) * psi - g1) / q


class TestGamma:
    def test_value(self):
        assert abs(euler_gamma() - 0.577215664901532860606) <= 1e-12
        assert abs(euler_gamma() - float(mpmath.euler)) <= 1e-12
        assert math.floor(10 * euler_gamma()) == 5

    def test_deterministic(self):
        assert euler_gamma() == euler_gamma()

    def test_reference_digits(self):
        assert len(EULER_GAMMA_REFERENCE.split(".")[1]) >= 30

    def test_budget_violation_raises(self):
        # a too-short direct sum with only two corrections misses 1e-12
        with pytest.raises(NumericBudgetError):
            euler_gamma(EvaluationParams(cutoff=10, bernoulli_order=2))


class TestZeta:
    def test_classical_values(self):
        assert abs(riemann_zeta(2) - math.pi**2 / 6) <= 1e-10
        assert abs(riemann_zeta(4) - math.pi**4 / 90) <= 1e-10

    def test_zeta_prime_2(self):
        assert abs(riemann_zeta_prime(2) - (-0.9375482543)) <= 1e-8
        assert abs(riemann_zeta_prime(2) - zeta_prime_direct(2)) <= 1e-10

    @pytest.mark.parametrize("s", np.linspace(1.5, 4, 11))
    def test_against_mpmath(self, s):
        assert abs(riemann_zeta(s) - float(mpmath.zeta(s))) <= 1e-10
        assert abs(riemann_zeta_prime(s) - float(mpmath.zeta(s, 1, 1))) <= 1e-10

    def test_domain(self):
        for bad in (1, 0.5, -2):
            with pytest.raises(ValueError):
                riemann_zeta(bad)
            with pytest.raises(ValueError):
                riemann_zeta_prime(bad)


class TestHurwitz:
    def test_a_equals_one(self):
        assert abs(hurwitz_zeta(2, 1) - riemann_zeta(2)) <= 1e-12

    def test_half(self):
        assert abs(hurwitz_zeta(2, 0.5) - math.pi**2 / 2) <= 1e-10
        direct = math.fsum((n + 0.5) ** -2 for n in range(10**6)) + 1 / (10**6 + 0.5)
        assert abs(hurwitz_zeta(2, 0.5) - direct) <= 1e-9

    def test_sderiv_at_one(self):
        assert abs(hurwitz_zeta_sderiv(3, 1) - zeta_prime_direct(3)) <= 1e-10
        assert abs(hurwitz_zeta_sderiv(3, 1) - float(mpmath.zeta(3, 1, 1))) <= 1e-8

    @pytest.mark.parametrize("a", [0.01, 0.1, 0.25, 1 / 3, 0.77, 1.0])
    @pytest.mark.parametrize("s", [1.5, 2.0, 3.5])
    def test_against_mpmath(self, s, a):
        ref = float(mpmath.zeta(s, a))
        dref = float(mpmath.zeta(s, a, 1))
        assert abs(hurwitz_zeta(s, a) - ref) <= 1e-12 * max(1, abs(ref))
        assert abs(hurwitz_zeta_sderiv(s, a) - dref) <= 1e-12 * max(1, abs(dref))

    def test_decreasing_in_a(self):
        for s in (1.5, 2, 3):
            vals = [hurwitz_zeta(s, a) for a in np.linspace(0.05, 1, 20)]
            assert all(x > y for x, y in zip(vals, vals[1:]))

    @pytest.mark.parametrize("s, a", [(1, 0.5), (2, 0), (2, 1.5), (0.5, 0.5)])
    def test_domain(self, s, a):
        with pytest.raises(ValueError):
            hurwitz_zeta(s, a)
        with pytest.raises(ValueError):
            hurwitz_zeta_sderiv(s, a)


class TestDirichletL:
    def test_L1_minus4(self):
        assert abs(dirichlet_L(1, -4) - math.pi / 4) <= 1e-9

    def test_catalan(self):
        cat = catalan_series()
        assert abs(cat - float(mpmath.catalan)) <= 1e-12
        assert abs(dirichlet_L(2, -4) - cat) <= 1e-9
        assert abs(dirichlet_L(2, -4) - 0.9159655942) <= 1e-9

    def test_L_prime_dual_route(self):
        series = L1_prime_minus4_series()
        closed = L1_prime_minus4_closed_form()
        assert abs(series - closed) <= 1e-8
        assert abs(dirichlet_L_prime(1, -4) - closed) <= 1e-9

    @pytest.mark.parametrize("D", [-3, -4, -7, -8, 5, 8, 12, -12])
    @pytest.mark.parametrize("s", [1, 2])
    def test_against_mpmath(self, D, s):
        chi = [int(c) for c in character_table(D)]
        if s == 1:
            ref, dref = L_at_one_stieltjes(chi)
        else:
            ref, dref = mpmath.dirichlet(s, chi), mpmath.dirichlet(s, chi, 1)
        assert abs(dirichlet_L(s, D) - float(ref)) <= 1e-9
        assert abs(dirichlet_L_prime(s, D) - float(dref)) <= 1e-9

    def test_large_modulus_against_hurwitz_mpmath(self):
        D, s = -163, 2
        chi = [int(c) for c in character_table(D)]
        q = len(chi)
        ref = mpmath.mpf(q) ** -s * sum(chi[r] * mpmath.zeta(s, mpmath.mpf(r) / q) for r in range(1, q) if chi[r])
        assert abs(dirichlet_L(s, D) - float(ref)) <= 1e-9

    def test_class_number_formula(self):
        # h(D) = sqrt|D| L(1) w / (2 pi) equals 1 on the fundamental idoneal list
        for D in (-3, -4, -7, -8, -11, -19, -43, -67, -163):
            w = {-3: 6, -4: 4}.get(D, 2)
            assert abs(math.sqrt(-D) * dirichlet_L(1, D) * w / (2 * math.pi) - 1) <= 1e-9

    @pytest.mark.parametrize("D", [-4, -3, 5])
    def test_derivative_consistency(self, D):
        h = 1e-5
        for s in (1.5, 2.0, 3.0):
            fd = (dirichlet_L(s + h, D) - dirichlet_L(s - h, D)) / (2 * h)
            assert abs(fd - dirichlet_L_prime(s, D)) <= 1e-6

    def test_domain(self):
        with pytest.raises(ValueError):
            dirichlet_L(0.5, -4)
        with pytest.raises(ValueError):
            dirichlet_L(2, 4)  # square: principal character

    @pytest.mark.parametrize("D", [-4, -3, 5])
    @pytest.mark.parametrize("s", [2, 3, 4])
    def test_factorisation_against_ideal_counts(self, D, s):
        N = 10**5
        rk = coefficient_block(CoefficientKind.IDEAL_COUNT, D, 1, N).astype(np.float64)
        partial = math.fsum(rk * np.arange(1, N + 1, dtype=np.float64) ** -s)
        full = riemann_zeta(s) * dirichlet_L(s, D)
        # sum_{n > N} d(n) n^-s <= (log N + 3) N^(1-s) / (s - 1)
        tail = (math.log(N) + 3) * N ** (1 - s) / (s - 1)
        assert -1e-12 <= full - partial <= tail


def test_bit_stable_under_concurrency():
    calls = [lambda: dirichlet_L_prime(1, -163), lambda: riemann_zeta_prime(2.5), euler_gamma]
    serial = [f() for f in calls]
    with ThreadPoolExecutor(8) as pool:
        for _ in range(5):
            assert [fut.result() for fut in [pool.submit(f) for f in calls]] == serial


@pytest.mark.parametrize("params", [dict(cutoff=9), dict(bernoulli_order=1), dict(bernoulli_order=21)])
def test_params_validation(params):
    with pytest.raises(ValueError):
        EvaluationParams(**params)
