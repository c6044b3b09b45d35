# Integer points on Q(u, v) = w^3 for the class-number-one forms.
#
# For each form the number of solutions with |w| <= x, w >= 0 grows like
# A x log x + B x.  Brute force agrees exactly on small boxes; the fast count
# goes through a sieve of r_Q(n^3)/omega.
from qfsums import (IDONEAL, QuadraticForm, constants_corollary3, count_solutions, count_solutions_bruteforce,
                    main_term, principal_form)

Q = QuadraticForm.parse("1,0,1")
print("u^2 + v^2 = w^3, 0 <= w <= x")
for x in (1, 2, 5, 10, 50):
    fast = count_solutions(Q, x).count
    brute = count_solutions_bruteforce(Q, x).count
    print(f"  x = {x:>3}: fast = {fast:>5}  brute force = {brute:>5}")

print()
print(f"{'D':>5} {'form':>10} {'omega':>5} {'A':>10} {'B':>10} {'count(1e5)/main':>16}")
for D in IDONEAL:
    Q = principal_form(D)
    c = constants_corollary3(Q)
    ratio = count_solutions(Q, 10**5).count / main_term(c, 10**5)
    print(f"{D:>5} {f'{Q.a},{Q.b},{Q.c}':>10} {Q.omega:>5} {c.A:>10.6f} {c.B:>10.6f} {ratio:>16.6f}")
