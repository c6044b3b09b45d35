# The special values behind the constants.
#
# Every constant is assembled from a handful of numbers: Euler's gamma,
# zeta'(2), and L(s, chi_D) with its derivative at s = 1 and s = 2.  All of them
# come from one Euler-Maclaurin Hurwitz zeta routine.
import math

from qfsums import dirichlet_L, dirichlet_L_prime, euler_gamma, riemann_zeta, riemann_zeta_prime

print(f"gamma       = {euler_gamma():.15f}")
print(f"zeta(2)     = {riemann_zeta(2):.15f}   pi^2/6 = {math.pi**2 / 6:.15f}")
print(f"zeta'(2)    = {riemann_zeta_prime(2):.15f}")
print()

# L(1, chi_-4) is Leibniz's series pi/4; L(2, chi_-4) is Catalan's constant.
print(f"L(1, -4)    = {dirichlet_L(1, -4):.15f}   pi/4 = {math.pi / 4:.15f}")
print(f"L(2, -4)    = {dirichlet_L(2, -4):.15f}   (Catalan)")
print(f"L'(1, -4)   = {dirichlet_L_prime(1, -4):.15f}")
print()

# Class number one: sqrt|D| L(1) w / (2 pi) = 1 for each imaginary field below.
for D in (-3, -4, -7, -8, -11, -19, -43, -67, -163):
    w = {-3: 6, -4: 4}.get(D, 2)
    h = math.sqrt(-D) * dirichlet_L(1, D) * w / (2 * math.pi)
    print(f"D = {D:>5}:  class number from L(1) = {h:.12f}")
