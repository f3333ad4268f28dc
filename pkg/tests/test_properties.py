"""Randomized property suites.

Each property bumps ``COUNTS[name]`` once per generated case so the
acceptance test can confirm how many cases actually ran.
"""
from collections import Counter
from functools import lru_cache

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from singhoch.algebra import truncated_polynomial_algebra
from singhoch.complexes import (
    ChainMap, CochainComplex, cone, hom_complex, homology_dims, koszul, truncate, truncation_map,
)
from singhoch.groebner import (
    groebner, is_groebner, module_groebner, module_normal_form, normal_form, quotient_algebra,
)
from singhoch.hochschild import (
    cup_product, hh_basis, hh_dims, hochschild_differential, is_coboundary,
)
from singhoch.linalg import GF, QQ, Matrix, rank, rank_and_kernel, solve_many
from singhoch.mfactor import make_mf, mf_hom_cohomology
from singhoch.poly import GREVLEX, MonomialOrder, MultiPoly

from conftest import corpus_algebras

COUNTS: Counter = Counter()
CASES = 220
PROPERTY = settings(max_examples=CASES, derandomize=True, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much,
                                           HealthCheck.data_too_large])

small_int = st.integers(-3, 3)


# --- generators ----------------------------------------------------------------------------

def _unitriangular(draw, n, lower):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1
        for j in range(n):
            if (j < i) if lower else (j > i):
                rows[i][j] = draw(small_int)
    return Matrix.from_rows(QQ, rows, n)


def _inverse(m: Matrix) -> Matrix:
    n = m.nrows
    cols = solve_many(m, [[int(i == j) for i in range(n)] for j in range(n)])
    return Matrix.from_rows(QQ, [list(c) for c in cols], n).T if n else m


@st.composite
def complexes(draw, max_len=4, max_dim=3):
    """Random bounded complex: a direct sum of ``k -> k`` pieces and single
    copies of ``k``, conjugated by random invertible matrices."""
    length = draw(st.integers(1, max_len))
    lo = draw(st.integers(-3, 3))
    dims = [draw(st.integers(0, max_dim)) for _ in range(length)]
    # r[n] = rank of d^n, constrained by dims on both sides
    r = []
    for n in range(length - 1):
        prev = r[-1] if r else 0
        bound = min(dims[n] - prev, dims[n + 1])
        r.append(draw(st.integers(0, max(bound, 0))))
    g = []
    for n in range(length):
        d = dims[n]
        g.append(_unitriangular(draw, d, True) @ _unitriangular(draw, d, False) if d else None)
    diffs = {}
    for n in range(length - 1):
        prev = r[n - 1] if n else 0
        entries = {(k, prev + k): 1 for k in range(r[n])}
        m = Matrix.from_dict(QQ, dims[n + 1], dims[n], entries)
        if dims[n] and dims[n + 1]:
            m = g[n + 1] @ m @ _inverse(g[n])
        diffs[lo + n] = m
    return CochainComplex(QQ, lo, dims, diffs)


@st.composite
def matrices(draw, field=None):
    f = field or draw(st.sampled_from([QQ, GF(2), GF(5)]))
    nr = draw(st.integers(0, 5))
    nc = draw(st.integers(0, 5))
    rows = [[draw(small_int) for _ in range(nc)] for _ in range(nr)]
    return Matrix.from_rows(f, rows, nc)


VARS = ("x", "y")


@st.composite
def polys(draw, max_terms=3, max_deg=3, field=QQ):
    n = draw(st.integers(1, max_terms))
    terms = {}
    for _ in range(n):
        e = (draw(st.integers(0, max_deg)), draw(st.integers(0, max_deg)))
        terms[e] = field(draw(st.integers(-3, 3)))
    return MultiPoly(field, VARS, terms)


@st.composite
def artinian_algebras(draw):
    """``k[x, y] / (random polys, x^a, y^b)``: commutative, dimension at most 6."""
    a = draw(st.integers(1, 3))
    b = draw(st.integers(1, 6 // a))
    x, y = MultiPoly.variable(QQ, VARS, 0), MultiPoly.variable(QQ, VARS, 1)
    gens = [x ** a, y ** b] + draw(st.lists(polys(max_deg=2), max_size=2))
    return quotient_algebra(groebner(gens))


# --- properties ----------------------------------------------------------------------------

@PROPERTY
@given(complexes(), complexes(max_len=3, max_dim=2), st.data())
def test_d_squared_zero_everywhere(c, d, data):
    COUNTS["d_squared"] += 1

    def square_free(cx):
        for n in range(cx.lo, cx.hi):
            assert (cx.differential(n + 1) @ cx.differential(n)).is_zero()

    square_free(c)
    square_free(hom_complex(c, d))
    square_free(cone(ChainMap.identity(c)))
    q = data.draw(st.integers(c.lo - 1, c.hi + 1))
    square_free(truncate(c, q, "<="))
    square_free(cone(truncation_map(c, c.hi, q)) if q <= c.hi else c)
    alg = data.draw(st.sampled_from(["dual", "x3", "xy"]))
    b = {"dual": truncated_polynomial_algebra(2), "x3": truncated_polynomial_algebra(3),
         "xy": _xy_algebra()}[alg]
    elems = data.draw(st.lists(st.dictionaries(st.integers(0, b.dim - 1), st.integers(-2, 2)
                                               .filter(bool), max_size=b.dim), max_size=3))
    square_free(koszul(b, [{k: QQ(v) for k, v in e.items()} for e in elems]))


@lru_cache(maxsize=None)
def _xy_algebra():
    x, y = MultiPoly.variable(QQ, VARS, 0), MultiPoly.variable(QQ, VARS, 1)
    return quotient_algebra(groebner([x ** 2, y ** 2]))


@lru_cache(maxsize=None)
def _bar_complexes():
    return {name: [hochschild_differential(a, n) for n in range(3)]
            for name, a in corpus_algebras().items()}


def test_bar_cochain_complexes_square_to_zero():
    for name, ds in _bar_complexes().items():
        for n in range(2):
            assert (ds[n + 1] @ ds[n]).is_zero(), name


@PROPERTY
@given(st.lists(polys(), min_size=1, max_size=3),
       st.sampled_from([GREVLEX, MonomialOrder("lex"), MonomialOrder("grlex")]))
def test_buchberger_criterion(gens, order):
    COUNTS["buchberger"] += 1
    gb = groebner(gens, order)
    basis = list(gb)
    assert is_groebner(basis, order)
    for g in gens:
        assert normal_form(g, gb).is_zero()


@PROPERTY
@given(st.lists(st.tuples(polys(max_terms=2, max_deg=2), polys(max_terms=2, max_deg=2)),
                min_size=1, max_size=3))
def test_module_groebner_reduces_generators(vecs):
    COUNTS["module_buchberger"] += 1
    vecs = [list(v) for v in vecs]
    basis = module_groebner(vecs, 2)
    for v in vecs:
        assert all(p.is_zero() for p in module_normal_form(v, basis))


@PROPERTY
@given(matrices())
def test_rank_nullity(m):
    COUNTS["rank_nullity"] += 1
    r, kernel = rank_and_kernel(m)
    assert r + len(kernel) == m.ncols
    assert r == rank(m.T)
    for v in kernel:
        assert not m.matvec(v)


@PROPERTY
@given(artinian_algebras())
def test_hh0_center_hh1_derivations(a):
    COUNTS["hh0_hh1"] += 1
    dims = hh_dims(a, 1)
    assert dims[0] == len(a.center()) == a.dim
    # commutative: no inner derivations, so HH^1 is all derivations
    assert a.inner_derivation_dim() == 0
    assert dims[1] == len(a.derivations())


def test_hh0_center_on_corpus(algebras):
    for name, a in algebras.items():
        dims = hh_dims(a, 1)
        assert dims[0] == len(a.center()), name
        assert dims[1] == len(a.derivations()) - a.inner_derivation_dim(), name


@lru_cache(maxsize=None)
def _bases(name):
    a = corpus_algebras()[name]
    return a, {n: hh_basis(a, n) for n in range(3)}


@settings(PROPERTY, max_examples=2 * CASES)
@given(st.sampled_from(["dual", "x3", "kC2", "upper", "k"]), st.integers(0, 2), st.integers(0, 2),
       st.data())
def test_cup_graded_commutative(name, m, n, data):
    if m + n > 3:
        m, n = 1, 2
    a, bases = _bases(name)

    def sample(deg):
        basis = bases.get(deg)
        if basis is None:
            basis = hh_basis(a, deg)
        c = None
        for b in basis:
            coeff = data.draw(small_int)
            t = b.scaled(coeff)
            c = t if c is None else c + t
        return c

    f, g = sample(m), sample(n)
    if f is None or g is None:
        return
    COUNTS["cup_commutative"] += 1
    fg = cup_product(f, g)
    gf = cup_product(g, f)
    diff = fg - gf.scaled((-1) ** (m * n))
    assert fg.is_cocycle()
    assert is_coboundary(diff)


@PROPERTY
@given(complexes(), st.data())
def test_truncation_accounting(c, data):
    COUNTS["truncation"] += 1
    q = data.draw(st.integers(c.lo - 2, c.hi + 2))
    low, high = truncate(c, q, "<="), truncate(c, q, ">")
    for n in range(c.lo, c.hi + 1):
        assert (low.dim(n) if not low.is_empty else 0) + (high.dim(n) if not high.is_empty else 0) == c.dim(n)
    assert (0 if low.is_empty else low.euler_characteristic()) + \
        (0 if high.is_empty else high.euler_characteristic()) == c.euler_characteristic()
    # homology differs from c only next to the cut
    h, hl = homology_dims(c), (homology_dims(low) if not low.is_empty else {})
    for n in range(c.lo, min(q, c.hi + 1)):
        assert hl[n] == h[n]
    if q >= c.lo:
        truncation_map(c, c.hi, min(q, c.hi)).verify()


@PROPERTY
@given(st.integers(2, 6), st.data())
def test_mf_routes_agree(m, data):
    COUNTS["mf_routes"] += 1
    a = data.draw(st.integers(0, m))
    b = data.draw(st.integers(0, m))
    x = MultiPoly.variable(QQ, ("x",), 0)
    q = x ** m
    e = make_mf([[x ** a]], [[x ** (m - a)]], q)
    f = make_mf([[x ** b]], [[x ** (m - b)]], q)
    pid = mf_hom_cohomology(e, f, method="pid")
    assert pid == mf_hom_cohomology(e, f, method="groebner")
    # Hom(x^a, x^b) has dimension min(a, b, m - a, m - b) in each parity
    expected = min(a, b, m - a, m - b)
    assert pid == (expected, expected)
