# Main-term constants for sum r_K(n^3) and the Euler product G.
#
# sum_{n<=x} r_K(n^3) ~ A2 x log x + B2 x.  Next to zeta and L, A2 needs the
# convergent product G(1).  Its truncation error at prime bound P is bounded by
# 9 P^-2 / 2 in log space, so the table below should settle quickly.
from qfsums import ProductTruncation, constants_corollary2, log_deriv_G_at_1, product_G

for P in (10**3, 10**4, 10**5, 10**6):
    t = ProductTruncation(P)
    g = product_G(1, -4, t)
    d = log_deriv_G_at_1(-4, t)
    print(f"P = {P:>8}   G(1) = {g.value:.10f} (log tail <= {g.tail_bound:.1e})"
          f"   G'/G(1) = {d.value:.10f} (<= {d.tail_bound:.1e})")

c2 = constants_corollary2(-4)
print()
print(f"4 A2 = {4 * c2.A:.10f}")
print(f"4 B2 = {4 * c2.B:.10f}")
print()
print("ingredients:")
for k, v in c2.ingredients.items():
    print(f"  {k:<24} {v: .12g}")
