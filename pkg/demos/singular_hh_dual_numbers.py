"""Singular Hochschild cohomology of k[x]/(x^m) from two resolutions.

The bar resolution works for any algebra but grows quickly; the 2-periodic
resolution of a truncated polynomial ring is tiny.  Both give the same
dimensions once the truncation colimit has stabilized.
"""
from singhoch import (
    TateEngine, bar_resolution, degree_zero_algebra, hh_dims, hhsg_dim,
    truncated_polynomial_algebra, truncated_poly_periodic_resolution,
)

a = truncated_polynomial_algebra(2)
bar = TateEngine(bar_resolution(a))
for n in range(-3, 4):
    dim, trace = hhsg_dim(a, n, engine=bar)
    print(f"HH_sg^{n:+d} = {dim}   (stable from q = {trace.stabilized_at})")

# Every step of the colimit is recorded, so an inconclusive answer can be audited.
_, trace = hhsg_dim(a, -3, q_max=4, engine=bar)
print(trace.verdict, [e["dim"] for e in trace.entries])

a3 = truncated_polynomial_algebra(3)
eng = TateEngine(truncated_poly_periodic_resolution(a3, 3))
print("ordinary HH of k[x]/x^3:", hh_dims(a3, 4))
print("singular HH of k[x]/x^3:", {n: hhsg_dim(a3, n, engine=eng)[0] for n in range(-2, 5)})

# Degree zero is a commutative algebra: here k[t]/(t^2).
_, tr = hhsg_dim(a3, 0, engine=eng)
alg, _ = degree_zero_algebra(eng, tr.stabilized_at)
coords = [[str(v.get(k, 0)) for k in range(alg.dim)] for v in alg.radical_basis()]
print("HH_sg^0 radical:", coords, "unit:", [str(alg.unit.get(k, 0)) for k in range(alg.dim)])
