import math

import numpy as np
import pytest

FUNDAMENTAL_TEST_SET = (-3, -4, -7, -8, -11, -19, -43, -67, -163, 5, 8)

_acceptance_lines = []


def legendre_euler(a, p):
    """Legendre symbol by Euler's criterion (p odd prime)."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def kronecker_by_factoring(D, n):
    """(D|n) from its definition as a product over the prime factors of n."""
    out = 1
    m = n
    p = 2
    while p * p <= m or m > 1:
        if p * p > m:
            p = m
        while m % p == 0:
            m //= p
            if p == 2:
                if D % 2 == 0:
                    return 0
                out *= 1 if D % 8 in (1, 7) else -1
            else:
                out *= legendre_euler(D, p)
        p += 1
    return out


def divisor_sum_table(D, N):
    """sum_{d | n} chi_D(d) for n = 1..N by scattering chi(d) onto multiples of d."""
    q = abs(D)
    chi = np.array([kronecker_by_factoring(D, r) if r else 0 for r in range(q)], dtype=np.int64)
    out = np.zeros(N, dtype=np.int64)
    for d in range(1, N + 1):
        c = chi[d % q]
        if c:
            out[d - 1 :: d] += c
    return out


def divisor_count_table(N):
    out = np.zeros(N, dtype=np.int64)
    for d in range(1, N + 1):
        out[d - 1 :: d] += 1
    return out


def two_squares_table(N):
    """r(n) for n = 0..N by counting lattice points in the disk."""
    R = math.isqrt(N)
    u = np.arange(-R, R + 1)
    norms = (u[:, None] ** 2 + u[None, :] ** 2).ravel()
    return np.bincount(norms[norms <= N], minlength=N + 1)


@pytest.fixture
def acceptance_log():
    def log(criterion, ok, detail):
        _acceptance_lines.append(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return log


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
