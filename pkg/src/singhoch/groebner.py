"""Buchberger's algorithm for polynomial ideals and submodules of free modules.

Internally a polynomial vector is a dict ``{(component, exponents): coeff}``;
an ordinary polynomial is the one-component case.  Terms are compared
position-over-term: a smaller component index is larger, ties broken by the
monomial order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import FinDimCommAlg
from .linalg import Field
from .poly import GREVLEX, MonomialOrder, MultiPoly

__all__ = [
    "GroebnerBasis", "groebner", "normal_form", "s_polynomial", "is_groebner",
    "quotient_algebra", "InfiniteQuotient", "staircase", "element_of",
    "module_groebner", "module_normal_form", "module_leading_terms", "syzygies",
]


class _Engine:
    """Reduction and Buchberger completion for term dicts."""

    def __init__(self, field: Field, nvars: int, order: MonomialOrder):
        self.field = field
        self.nvars = nvars
        self.order = order
        okey = order.key
        self.key = lambda t: (-t[0], okey(t[1]))

    def lt(self, f: dict):
        return max(f, key=self.key)

    @staticmethod
    def divides(s, t) -> bool:
        return s[0] == t[0] and all(a <= b for a, b in zip(s[1], t[1]))

    @staticmethod
    def quotient(t, s) -> tuple:
        return tuple(b - a for a, b in zip(s[1], t[1]))

    def shift_sub(self, f: dict, c, mono: tuple, g: dict) -> None:
        """``f -= c * x^mono * g`` in place."""
        fld = self.field
        p = fld.p
        for (comp, e), a in g.items():
            t = (comp, tuple(x + y for x, y in zip(e, mono)))
            w = f.get(t)
            nw = -c * a if w is None else w - c * a
            if p:
                nw %= p
            if nw:
                f[t] = nw
            elif w is not None:
                del f[t]

    def reduce(self, f: dict, basis: Sequence[tuple]) -> dict:
        """Full normal form of ``f``; ``basis`` holds ``(lt, lc_inverse, poly)``."""
        f = dict(f)
        rem: dict = {}
        fld = self.field
        key = self.key
        while f:
            t = max(f, key=key)
            c = f[t]
            for s, inv, g in basis:
                if self.divides(s, t):
                    self.shift_sub(f, fld.mul(c, inv), self.quotient(t, s), g)
                    break
            else:
                rem[t] = c
                del f[t]
        return rem

    def entry(self, g: dict):
        s = self.lt(g)
        return s, self.field.inv(g[s]), g

    def spoly(self, a: tuple, b: tuple) -> dict:
        (s1, i1, g1), (s2, i2, g2) = a, b
        lcm = (s1[0], tuple(max(x, y) for x, y in zip(s1[1], s2[1])))
        out: dict = {}
        self.shift_sub(out, self.field.neg(i1), self.quotient(lcm, s1), g1)
        self.shift_sub(out, i2, self.quotient(lcm, s2), g2)
        return out

    def monic(self, g: dict) -> dict:
        s = self.lt(g)
        inv = self.field.inv(g[s])
        if inv == self.field.one:
            return dict(g)
        return {t: self.field.mul(c, inv) for t, c in g.items()}

    def buchberger(self, gens: Iterable[dict]) -> list[dict]:
        """Reduced, monic Groebner basis sorted by increasing leading term."""
        basis: list[tuple] = []
        pairs: set = set()
        lcm_of = {}

        def lcm(i, j):
            s1, s2 = basis[i][0], basis[j][0]
            return (s1[0], tuple(max(x, y) for x, y in zip(s1[1], s2[1])))

        def insert(g):
            basis.append(self.entry(self.monic(g)))
            j = len(basis) - 1
            for i in range(j):
                if basis[i][0][0] == basis[j][0][0]:
                    pairs.add((i, j))
                    lcm_of[(i, j)] = lcm(i, j)

        for g in gens:
            g = self.reduce(g, basis)
            if g:
                insert(g)
        while pairs:
            i, j = min(pairs, key=lambda ij: (self.key(lcm_of[ij]), ij))
            pairs.discard((i, j))
            s_i, s_j = basis[i][0], basis[j][0]
            l = lcm_of[(i, j)]
            # coprime leading monomials of plain polynomials reduce to zero
            if s_i[0] == 0 and self._single_component and all(
                    min(a, b) == 0 for a, b in zip(s_i[1], s_j[1])):
                continue
            if self._chain_criterion(i, j, l, basis, pairs):
                continue
            h = self.reduce(self.spoly(basis[i], basis[j]), basis)
            if h:
                insert(h)
        return self._interreduce([g for _, _, g in basis])

    _single_component = True

    def _chain_criterion(self, i, j, l, basis, pairs) -> bool:
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if not self.divides(basis[k][0], l):
                continue
            if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
                continue
            return True
        return False

    def _interreduce(self, polys: list[dict]) -> list[dict]:
        lts = [self.lt(g) for g in polys]
        keep = []
        for a, g in enumerate(polys):
            redundant = False
            for b, h in enumerate(polys):
                if a == b:
                    continue
                if self.divides(lts[b], lts[a]) and (lts[b] != lts[a] or b < a):
                    redundant = True
                    break
            if not redundant:
                keep.append(g)
        out = []
        for a, g in enumerate(keep):
            others = [self.entry(h) for b, h in enumerate(keep) if b != a]
            s = self.lt(g)
            rest = {t: c for t, c in g.items() if t != s}
            rest = self.reduce(rest, others)
            rest[s] = g[s]
            out.append(self.monic(rest))
        out.sort(key=lambda g: self.key(self.lt(g)))
        return out

    def is_groebner(self, polys: Sequence[dict]) -> bool:
        basis = [self.entry(g) for g in polys if g]
        for j in range(len(basis)):
            for i in range(j):
                if basis[i][0][0] != basis[j][0][0]:
                    continue
                if self.reduce(self.spoly(basis[i], basis[j]), basis):
                    return False
        return True


def _to_terms(f: MultiPoly, comp: int = 0) -> dict:
    return {(comp, e): c for e, c in f.terms.items()}


def _from_terms(field, variables, terms: dict) -> MultiPoly:
    return MultiPoly(field, variables, {e: c for (_, e), c in terms.items()})


def _ring_of(polys: Sequence[MultiPoly]):
    f0 = polys[0]
    for g in polys[1:]:
        if g.vars != f0.vars or g.field != f0.field:
            raise ValueError("generators live in different rings")
    return f0.field, f0.vars


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis of an ideal (generators sorted by leading term)."""

    generators: tuple
    order: MonomialOrder
    field: Field
    variables: tuple
    reduced: bool = True

    def leading_exponents(self) -> list[tuple]:
        return [g.leading_term(self.order)[0] for g in self.generators]

    def is_unit_ideal(self) -> bool:
        return any(sum(e) == 0 for e in self.leading_exponents())

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __str__(self):
        return "[" + ", ".join(g.to_str(self.order) for g in self.generators) + "]"


def groebner(gens: Sequence[MultiPoly], order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    if not gens:
        raise ValueError("need at least one generator")
    field, variables = _ring_of(gens)
    eng = _Engine(field, len(variables), order)
    basis = eng.buchberger(_to_terms(g) for g in gens)
    gb = GroebnerBasis(tuple(_from_terms(field, variables, g) for g in basis), order, field, variables)
    for g in gens:
        if normal_form(g, gb):
            raise AssertionError("input generator not in the computed ideal")
    return gb


def normal_form(f: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    """Remainder of ``f`` modulo ``gb``: no term divisible by a leading term."""
    if f.vars != gb.variables:
        if len(f.vars) != len(gb.variables):
            raise ValueError(f"polynomial has {len(f.vars)} variables, basis has {len(gb.variables)}")
        raise ValueError("variable names differ from the basis ring")
    eng = _Engine(gb.field, len(gb.variables), gb.order)
    basis = [eng.entry(_to_terms(g)) for g in gb.generators]
    return _from_terms(gb.field, gb.variables, eng.reduce(_to_terms(f), basis))


def s_polynomial(f: MultiPoly, g: MultiPoly, order: MonomialOrder = GREVLEX) -> MultiPoly:
    field, variables = _ring_of([f, g])
    eng = _Engine(field, len(variables), order)
    return _from_terms(field, variables, eng.spoly(eng.entry(_to_terms(f)), eng.entry(_to_terms(g))))


def is_groebner(polys: Sequence[MultiPoly], order: MonomialOrder = GREVLEX) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    if not polys:
        return True
    field, variables = _ring_of(polys)
    eng = _Engine(field, len(variables), order)
    return eng.is_groebner([_to_terms(g) for g in polys])


# --- quotient algebras ----------------------------------------------------------

class InfiniteQuotient(Exception):
    """The quotient ring is infinite-dimensional; ``variable`` has no pure-power leading term."""

    def __init__(self, variable: int, name: str):
        super().__init__(f"quotient is infinite-dimensional: all powers of {name} survive")
        self.variable = variable
        self.name = name


def staircase(lead_exps: Sequence[tuple], nvars: int) -> list[tuple]:
    """Monomials not divisible by any leading exponent; raises if infinite."""
    if any(sum(e) == 0 for e in lead_exps):
        return []
    for i in range(nvars):
        if not any(e[i] > 0 and sum(e) == e[i] for e in lead_exps):
            raise InfiniteQuotient(i, str(i))
    seen = {(0,) * nvars}
    frontier = [(0,) * nvars]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(nvars):
                c = list(m)
                c[i] += 1
                c = tuple(c)
                if c in seen:
                    continue
                if any(all(a <= b for a, b in zip(e, c)) for e in lead_exps):
                    continue
                seen.add(c)
                nxt.append(c)
        frontier = nxt
    return list(seen)


def quotient_algebra(gb: GroebnerBasis) -> FinDimCommAlg:
    """``k[x]/I`` with its staircase basis and multiplication by normal forms.

    Raises :class:`InfiniteQuotient` naming a variable whose powers all survive.
    """
    n = len(gb.variables)
    leads = gb.leading_exponents()
    try:
        monos = staircase(leads, n)
    except InfiniteQuotient as exc:
        raise InfiniteQuotient(exc.variable, gb.variables[exc.variable]) from None
    monos.sort(key=gb.order.key)
    index = {m: i for i, m in enumerate(monos)}
    field = gb.field
    eng = _Engine(field, n, gb.order)
    basis = [eng.entry(_to_terms(g)) for g in gb.generators]
    cache: dict = {}

    def nf_coords(exps):
        if exps not in cache:
            rem = eng.reduce({(0, exps): field.one}, basis)
            cache[exps] = {index[e]: c for (_, e), c in rem.items()}
        return cache[exps]

    d = len(monos)
    table = [[nf_coords(tuple(a + b for a, b in zip(monos[i], monos[j]))) for j in range(d)]
             for i in range(d)]
    images = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        images.append(nf_coords(tuple(e)) if d else {})
    alg = FinDimCommAlg(field, gb.variables, monos, table, images)
    alg.ideal = gb
    return alg


def element_of(alg: FinDimCommAlg, f: MultiPoly, gb: GroebnerBasis | None = None) -> dict:
    """Coordinates of the image of ``f`` in ``alg = k[x]/<gb>``."""
    r = normal_form(f, gb if gb is not None else alg.ideal)
    index = {m: i for i, m in enumerate(alg.monomials)}
    return {index[e]: c for e, c in r.terms.items()}


# --- modules -----------------------------------------------------------------------

def _vec_terms(vec: Sequence[MultiPoly], offset: int = 0) -> dict:
    out = {}
    for comp, f in enumerate(vec):
        for e, c in f.terms.items():
            out[(comp + offset, e)] = c
    return out


def _terms_vec(field, variables, terms: dict, rank: int, offset: int = 0) -> list[MultiPoly]:
    parts = [dict() for _ in range(rank)]
    for (comp, e), c in terms.items():
        parts[comp - offset][e] = c
    return [MultiPoly(field, variables, p) for p in parts]


class _ModuleEngine(_Engine):
    _single_component = False


def module_groebner(vectors: Sequence[Sequence[MultiPoly]], rank: int,
                    order: MonomialOrder = GREVLEX) -> list[list[MultiPoly]]:
    """Reduced Groebner basis (position over term) of a submodule of ``P^rank``."""
    flat = [f for v in vectors for f in v]
    if not flat:
        return []
    field, variables = _ring_of(flat)
    eng = _ModuleEngine(field, len(variables), order)
    basis = eng.buchberger(_vec_terms(v) for v in vectors)
    return [_terms_vec(field, variables, g, rank) for g in basis]


def module_normal_form(vec: Sequence[MultiPoly], basis: Sequence[Sequence[MultiPoly]],
                       order: MonomialOrder = GREVLEX) -> list[MultiPoly]:
    field, variables = _ring_of(list(vec))
    eng = _ModuleEngine(field, len(variables), order)
    entries = [eng.entry(_vec_terms(b)) for b in basis]
    return _terms_vec(field, variables, eng.reduce(_vec_terms(vec), entries), len(vec))


def module_leading_terms(basis: Sequence[Sequence[MultiPoly]],
                         order: MonomialOrder = GREVLEX) -> list[tuple]:
    """``(component, exponents)`` leading terms of module elements."""
    if not basis:
        return []
    field, variables = _ring_of([f for v in basis for f in v])
    eng = _ModuleEngine(field, len(variables), order)
    return [eng.lt(_vec_terms(b)) for b in basis]


def syzygies(vectors: Sequence[Sequence[MultiPoly]], rank: int,
             order: MonomialOrder = GREVLEX) -> list[list[MultiPoly]]:
    """Groebner basis of the module of relations ``sum_j a_j v_j = 0``.

    Uses the elimination property of position-over-term orders on the
    augmented vectors ``(v_j, e_j)``.
    """
    s = len(vectors)
    if s == 0:
        return []
    flat = [f for v in vectors for f in v]
    field, variables = _ring_of(flat)
    eng = _ModuleEngine(field, len(variables), order)
    aug = []
    one = (0,) * len(variables)
    for j, v in enumerate(vectors):
        t = _vec_terms(v)
        t[(rank + j, one)] = field.one
        aug.append(t)
    basis = eng.buchberger(aug)
    out = [g for g in basis if all(comp >= rank for comp, _ in g)]
    return [_terms_vec(field, variables, g, s, offset=rank) for g in out]
