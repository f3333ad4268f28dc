"""Matrix factorizations and the cohomology of their morphism complexes.

A factorization ``E`` of ``Q`` is a pair ``phi: E^1 -> E^0``, ``psi: E^0 -> E^1``
of square polynomial matrices with ``phi psi = psi phi = Q``.  The
morphism complex ``Hom(E, F)`` is 2-periodic: ``Hom^0`` holds pairs
``(a: E^0 -> F^0, b: E^1 -> F^1)``, ``Hom^1`` pairs ``(c: E^0 -> F^1,
d: E^1 -> F^0)``, with ``D h = delta_F h - (-1)^{|h|} h delta_E``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groebner import module_groebner, module_leading_terms, syzygies
from .hypersurface import tyurina_algebra
from .linalg import Field, QQ
from .poly import GREVLEX, MonomialOrder, MultiPoly, parse_poly

__all__ = [
    "MatrixFactorization", "MFError", "make_mf", "mf_hom_cohomology", "hom_differentials",
    "shift_mf", "trivial_mf", "parse_mf", "format_mf", "InfiniteCohomology",
]

BFS_LIMIT = 200000


class MFError(ValueError):
    pass


class InfiniteCohomology(MFError):
    pass


@dataclass(frozen=True)
class MatrixFactorization:
    phi: tuple
    psi: tuple
    potential: MultiPoly

    @property
    def size(self) -> int:
        return len(self.phi)

    @property
    def variables(self) -> tuple:
        return self.potential.vars

    @property
    def field(self) -> Field:
        return self.potential.field


def _matmul(a, b, zero):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(k)), zero) for j in range(m)] for i in range(n)]


def make_mf(phi: Sequence[Sequence[MultiPoly]], psi: Sequence[Sequence[MultiPoly]],
            q: MultiPoly) -> MatrixFactorization:
    """Validated factorization; names the first entry where ``phi psi`` or ``psi phi`` differs from ``Q``."""
    r = len(phi)
    for name, m in (("phi", phi), ("psi", psi)):
        if len(m) != r or any(len(row) != r for row in m):
            raise MFError(f"{name} must be {r}x{r}")
    zero = MultiPoly(q.field, q.vars)
    for label, prod in (("phi*psi", _matmul(phi, psi, zero)), ("psi*phi", _matmul(psi, phi, zero))):
        for i in range(r):
            for j in range(r):
                want = q if i == j else zero
                if prod[i][j] != want:
                    raise MFError(f"{label} entry ({i + 1},{j + 1}) is {prod[i][j]}, expected {want}")
    return MatrixFactorization(tuple(tuple(row) for row in phi), tuple(tuple(row) for row in psi), q)


def shift_mf(e: MatrixFactorization) -> MatrixFactorization:
    """``E[1] = (psi, phi)``."""
    return MatrixFactorization(e.psi, e.phi, e.potential)


def trivial_mf(q: MultiPoly) -> MatrixFactorization:
    one = MultiPoly.constant(q.field, q.vars, 1)
    return make_mf([[one]], [[q]], q)


def hom_differentials(e: MatrixFactorization, f: MatrixFactorization):
    """Polynomial matrices of ``D0: Hom^0 -> Hom^1`` and ``D1: Hom^1 -> Hom^0``.

    ``Hom^0`` coordinates: ``a[k][l]`` at ``k*r_E + l``, then ``b`` after it;
    ``Hom^1``: ``c`` then ``d``, same layout.
    """
    re, rf = e.size, f.size
    q = e.potential
    zero = MultiPoly(q.field, q.vars)
    half = re * rf
    n = 2 * half

    def idx(k, l):
        return k * re + l

    d0 = [[zero] * n for _ in range(n)]
    d1 = [[zero] * n for _ in range(n)]

    def add(m, row, col, p):
        m[row][col] = m[row][col] + p

    # D0(a, b) = (c, d):  c = psi_F a - b psi_E,  d = phi_F b - a phi_E
    # D1(c, d) = (a, b):  a = phi_F c + d psi_E,  b = psi_F d + c phi_E
    for k in range(rf):
        for l in range(re):
            for s in range(rf):
                add(d0, idx(k, l), idx(s, l), f.psi[k][s])                # psi_F a
                add(d0, half + idx(k, l), half + idx(s, l), f.phi[k][s])  # phi_F b
                add(d1, idx(k, l), idx(s, l), f.phi[k][s])                # phi_F c
                add(d1, half + idx(k, l), half + idx(s, l), f.psi[k][s])  # psi_F d
            for s in range(re):
                add(d0, idx(k, l), half + idx(k, s), -e.psi[s][l])        # - b psi_E
                add(d0, half + idx(k, l), idx(k, s), -e.phi[s][l])        # - a phi_E
                add(d1, idx(k, l), half + idx(k, s), e.psi[s][l])         # d psi_E
                add(d1, half + idx(k, l), idx(k, s), e.phi[s][l])         # c phi_E
    return d0, d1


def mf_hom_cohomology(e: MatrixFactorization, f: MatrixFactorization,
                      order: MonomialOrder = GREVLEX, method: str | None = None) -> tuple[int, int]:
    """``(dim H^0, dim H^1)`` of ``Hom(E, F)`` as k-vector spaces.

    ``method`` is ``"pid"`` (one variable only), ``"groebner"`` or ``None``
    for automatic choice.
    """
    if e.potential != f.potential:
        raise MFError("factorizations of different potentials")
    tyurina_algebra(e.potential, order)
    d0, d1 = hom_differentials(e, f)
    if method is None:
        method = "pid" if e.potential.nvars == 1 else "groebner"
    if method == "pid":
        if e.potential.nvars != 1:
            raise MFError("the elimination route needs a single variable")
        return _torsion_degree(d1), _torsion_degree(d0)
    if method == "groebner":
        return _gb_quotient_dim(d0, d1, order), _gb_quotient_dim(d1, d0, order)
    raise ValueError(f"unknown method {method!r}")


# --- one variable: diagonalization over k[x] -------------------------------------------

def _upoly(p: MultiPoly) -> list:
    """Dense coefficient list, constant term first, no trailing zeros."""
    if p.is_zero():
        return []
    deg = max(e[0] for e in p.terms)
    out = [p.field.zero] * (deg + 1)
    for e, c in p.terms.items():
        out[e[0]] = c
    return out


def _trim(a: list, fld: Field) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _usub_mul(a: list, b: list, c, shift: int, fld: Field) -> list:
    """``a - c x^shift b``."""
    out = list(a) + [fld.zero] * max(0, len(b) + shift - len(a))
    for i, v in enumerate(b):
        out[i + shift] = fld.sub(out[i + shift], fld.mul(c, v))
    return _trim(out, fld)


def _udivmod(a: list, b: list, fld: Field):
    q = [fld.zero] * max(0, len(a) - len(b) + 1)
    r = list(a)
    inv = fld.inv(b[-1])
    while r and len(r) >= len(b):
        c = fld.mul(r[-1], inv)
        s = len(r) - len(b)
        q[s] = c
        r = _usub_mul(r, b, c, s, fld)
    return _trim(q, fld), r


def _umul(a: list, b: list, fld: Field) -> list:
    if not a or not b:
        return []
    out = [fld.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = fld.add(out[i + j], fld.mul(x, y))
    return _trim(out, fld)


def _torsion_degree(mat: Sequence[Sequence[MultiPoly]]) -> int:
    """``dim_k`` of the torsion of ``coker(mat)`` over ``k[x]``.

    Unimodular row and column operations bring the matrix to diagonal form;
    the torsion is ``+ k[x]/(e_i)`` over the nonzero diagonal entries.
    """
    if not mat or not mat[0]:
        return 0
    fld = mat[0][0].field
    m = [[_upoly(p) for p in row] for row in mat]
    nr, nc = len(m), len(m[0])
    total = 0
    rows = list(range(nr))
    cols = list(range(nc))
    while True:
        best = None
        for i in rows:
            for j in cols:
                if m[i][j] and (best is None or len(m[i][j]) < len(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            return total
        i, j = best
        p = m[i][j]
        clean = True
        for k in rows:
            if k != i and m[k][j]:
                qt, _ = _udivmod(m[k][j], p, fld)
                for l in cols:
                    if m[i][l]:
                        m[k][l] = _usub_mul(m[k][l], _umul(qt, m[i][l], fld), fld.one, 0, fld)
                if m[k][j]:
                    clean = False
        for l in cols:
            if l != j and m[i][l]:
                qt, _ = _udivmod(m[i][l], p, fld)
                for k in rows:
                    if m[k][j]:
                        m[k][l] = _usub_mul(m[k][l], _umul(m[k][j], qt, fld), fld.one, 0, fld)
                if m[i][l]:
                    clean = False
        if clean:
            total += len(p) - 1
            rows.remove(i)
            cols.remove(j)


# --- several variables: module Groebner bases -----------------------------------------

def _columns(mat):
    return [[mat[i][j] for i in range(len(mat))] for j in range(len(mat[0]))]


def _gb_quotient_dim(d_out, d_in, order: MonomialOrder) -> int:
    """``dim_k ker(d_out) / im(d_in)`` via leading-term modules.

    With ``I = im d_in`` inside ``K = ker d_out``, the quotient has a basis
    of the monomials of ``LT(K)`` outside ``LT(I)``.
    """
    n = len(d_out[0])
    cols_out = [c for c in _columns(d_out)]
    if not any(p for c in cols_out for p in c):
        kernel_lts = [(j, (0,) * d_out[0][0].nvars) for j in range(n)]
    else:
        kb = syzygies(cols_out, len(d_out), order)
        kernel_lts = module_leading_terms(kb, order)
    image_cols = [c for c in _columns(d_in) if any(p for p in c)]
    ib = module_groebner(image_cols, n, order) if image_cols else []
    image_lts = module_leading_terms(ib, order)
    by_comp: dict = {}
    for comp, e in image_lts:
        by_comp.setdefault(comp, []).append(e)

    def in_image(comp, e):
        return any(all(a <= b for a, b in zip(g, e)) for g in by_comp.get(comp, ()))

    seen = set()
    for comp, e in kernel_lts:
        if in_image(comp, e) or (comp, e) in seen:
            continue
        frontier = [e]
        seen.add((comp, e))
        while frontier:
            nxt = []
            for m in frontier:
                for i in range(len(m)):
                    c = list(m)
                    c[i] += 1
                    c = tuple(c)
                    if (comp, c) in seen or in_image(comp, c):
                        continue
                    seen.add((comp, c))
                    nxt.append(c)
            if len(seen) > BFS_LIMIT:
                raise InfiniteCohomology("cohomology is not finite-dimensional;"
                                         " the potential fails the isolated-singularity precondition")
            frontier = nxt
    return len(seen)


# --- text format -------------------------------------------------------------------------

def parse_mf(text: str, source: str = "<text>") -> MatrixFactorization:
    """Read::

        mf
        vars x,y
        field QQ
        potential x^2 + y^2
        size 2
        phi
        x, y
        -y, x
        psi
        x, -y
        y, x
        end
    """
    from .complexes import FormatError, _Lines
    lines = _Lines(text, source)
    no, line = lines.take()
    if line != "mf":
        raise lines.error(no, "expected 'mf'")
    variables = None
    fld = QQ
    pot_text = None
    size = None
    mats: dict = {}
    while True:
        no, line = lines.take()
        word, _, rest = line.partition(" ")
        if word == "end":
            break
        if word == "vars":
            variables = [v.strip() for v in rest.split(",") if v.strip()]
        elif word == "field":
            fld = Field.parse(rest)
        elif word == "potential":
            pot_text = (no, rest)
        elif word == "size":
            size = int(rest)
        elif word in ("phi", "psi"):
            if variables is None or size is None:
                raise lines.error(no, "'vars' and 'size' must precede the matrices")
            rows = []
            for _ in range(size):
                rno, rline = lines.take()
                entries = [s.strip() for s in rline.split(",")]
                if len(entries) != size:
                    raise lines.error(rno, f"expected {size} comma-separated entries")
                try:
                    rows.append([parse_poly(s, variables, fld) for s in entries])
                except ValueError as exc:
                    raise lines.error(rno, str(exc)) from None
            mats[word] = rows
        else:
            raise lines.error(no, f"unknown directive {word!r}")
    if variables is None or pot_text is None or set(mats) != {"phi", "psi"}:
        raise FormatError(f"{source}: need vars, potential, phi and psi")
    try:
        q = parse_poly(pot_text[1], variables, fld)
    except ValueError as exc:
        raise lines.error(pot_text[0], str(exc)) from None
    return make_mf(mats["phi"], mats["psi"], q)


def format_mf(e: MatrixFactorization) -> str:
    fld = e.field
    lines = ["mf", "vars " + ",".join(e.variables), f"field {fld!r}",
             f"potential {e.potential}", f"size {e.size}"]
    for name, m in (("phi", e.phi), ("psi", e.psi)):
        lines.append(name)
        lines.extend(", ".join(str(p) for p in row) for row in m)
    lines.append("end")
    return "\n".join(lines) + "\n"
