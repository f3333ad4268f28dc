"""Morphism spaces between matrix factorizations.

A factorization (phi, psi) of Q has phi*psi = psi*phi = Q times the identity.
The Hom complex is 2-periodic and its cohomology is finite-dimensional for
isolated singularities.
"""
from singhoch import make_mf, mf_hom_cohomology, parse_poly

x = parse_poly("x", "x")
for m in (2, 3, 4):
    q = x ** m
    for a in range(m + 1):
        e = make_mf([[x ** a]], [[x ** (m - a)]], q)
        print(f"x^{m}: End(x^{a}, x^{m - a}) =", mf_hom_cohomology(e, e))

# The node xy has two rank-one factorizations, swapped by the shift.
x, y = parse_poly("x", "x,y"), parse_poly("y", "x,y")
ex = make_mf([[x]], [[y]], x * y)
ey = make_mf([[y]], [[x]], x * y)
print("Hom(ex, ex) =", mf_hom_cohomology(ex, ex))
print("Hom(ex, ey) =", mf_hom_cohomology(ex, ey))
