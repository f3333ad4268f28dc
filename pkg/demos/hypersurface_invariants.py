"""Milnor and Tyurina numbers, and the stable cohomology of a hypersurface.

Run with ``python3 demos/hypersurface_invariants.py``.
"""
from singhoch import (
    compare_singularities, fingerprint, parse_poly, singularity_report, stable_hh_dims,
)

# A quasi-homogeneous curve: the Euler relation puts Q in its own Jacobian ideal.
cusp = parse_poly("x^3 - y^2", "x,y")
rep = singularity_report(cusp)
print(rep.Q, "mu =", rep.milnor_number, "tau =", rep.tyurina_number,
      "weights =", [str(c) for c in rep.quasi_homogeneous])

# Here Q is not in the Jacobian ideal, so tau drops below mu.
w = parse_poly("x^4 + y^5 + x^2*y^3", "x,y")
rep = singularity_report(w)
print(rep.Q, "mu =", rep.milnor_number, "tau =", rep.tyurina_number)
print("  global count of critical points with multiplicity:", rep.global_milnor_number)

# The stable cohomology is 2-periodic with even part of dimension tau.
print("stable dims:", stable_hh_dims(w, (-2, 3)))

# Fingerprints separate some singularities; equal fingerprints prove nothing.
print(fingerprint(parse_poly("x^3 + y^3", "x,y")))
print(compare_singularities(parse_poly("x^2 + y^2", "x,y"), parse_poly("x*y", "x,y")))
print(compare_singularities(parse_poly("x^3 + y^3", "x,y"), parse_poly("x^4 + y^4", "x,y")))
