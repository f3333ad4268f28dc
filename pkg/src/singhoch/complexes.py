"""Cochain complexes of based finite-dimensional vector spaces.

Indexing is cohomological: ``d^n`` maps degree ``n`` to ``n + 1``.  The
suspension ``shift(k)`` moves every component down by ``k`` degrees and
multiplies the differential by ``(-1)^k``.
"""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .algebra import FinDimAlgebra
from .linalg import Field, Matrix, QQ, rank

__all__ = [
    "CochainComplex", "ChainMap", "ComplexError", "homology_dims", "truncate",
    "truncation_quotient_map", "truncation_map", "hom_complex", "koszul", "periodic_unfold",
    "cone", "format_complex", "parse_complex",
]


class ComplexError(ValueError):
    pass


class CochainComplex:
    """Complex with components in degrees ``lo .. lo + len(dims) - 1``.

    ``diffs[n]`` is the ``dims[n+1] x dims[n]`` matrix of ``d^n``; missing
    entries are zero.  ``d^{n+1} d^n = 0`` is checked at construction.
    """

    def __init__(self, field: Field, lo: int, dims: Sequence[int], diffs: dict | None = None,
                 labels: dict | None = None, check: bool = True):
        self.field = field
        self.lo = int(lo)
        self._dims = [int(x) for x in dims]
        if any(x < 0 for x in self._dims):
            raise ComplexError("negative dimension")
        self.hi = self.lo + len(self._dims) - 1
        self.labels = dict(labels or {})
        self._diffs: dict[int, Matrix] = {}
        for n, m in (diffs or {}).items():
            if not (self.lo <= n < self.hi):
                if m.is_zero():
                    continue
                raise ComplexError(f"differential in degree {n} outside the support")
            if m.shape != (self.dim(n + 1), self.dim(n)):
                raise ComplexError(
                    f"d^{n} has shape {m.shape}, expected {(self.dim(n + 1), self.dim(n))}")
            self._diffs[n] = m
        if check:
            for n in range(self.lo, self.hi - 1):
                if n in self._diffs and n + 1 in self._diffs:
                    if not (self._diffs[n + 1] @ self._diffs[n]).is_zero():
                        raise ComplexError(f"d^{n + 1} d^{n} != 0")

    @classmethod
    def empty(cls, field: Field = QQ) -> "CochainComplex":
        return cls(field, 0, [])

    @classmethod
    def from_list(cls, field: Field, lo: int, matrices: Sequence[Matrix], dims=None) -> "CochainComplex":
        """Complex ``C^lo -> C^{lo+1} -> ...`` from consecutive differentials."""
        if dims is None:
            dims = [matrices[0].ncols] + [m.nrows for m in matrices] if matrices else []
        return cls(field, lo, dims, {lo + i: m for i, m in enumerate(matrices)})

    @property
    def is_empty(self) -> bool:
        return not self._dims

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def dim(self, n: int) -> int:
        if self.lo <= n <= self.hi:
            return self._dims[n - self.lo]
        return 0

    def dims(self) -> dict[int, int]:
        return {n: self.dim(n) for n in self.degrees}

    def differential(self, n: int) -> Matrix:
        m = self._diffs.get(n)
        if m is None:
            return Matrix.zeros(self.field, self.dim(n + 1), self.dim(n))
        return m

    def total_dim(self) -> int:
        return sum(self._dims)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (n % 2) * self.dim(n) for n in self.degrees)

    def shift(self, k: int = 1) -> "CochainComplex":
        """``Sigma^k``: component ``n`` becomes ``C^{n+k}``; differential times ``(-1)^k``."""
        sign = -1 if k % 2 else 1
        diffs = {n - k: (m if sign == 1 else -m) for n, m in self._diffs.items()}
        labels = {n - k: v for n, v in self.labels.items()}
        return CochainComplex(self.field, self.lo - k, self._dims, diffs, labels, check=False)

    def homology_dims(self) -> dict[int, int]:
        return homology_dims(self)

    def is_acyclic(self) -> bool:
        return not any(homology_dims(self).values())

    def __repr__(self):
        if self.is_empty:
            return "CochainComplex(empty)"
        return f"CochainComplex(degrees {self.lo}..{self.hi}, dims {self._dims})"


def homology_dims(c: CochainComplex) -> dict[int, int]:
    """``dim ker d^n - rank d^{n-1}`` for every degree in the support."""
    ranks = {n: rank(c.differential(n)) for n in range(c.lo - 1, c.hi + 1)}
    return {n: c.dim(n) - ranks[n] - ranks[n - 1] for n in c.degrees}


def truncate(c: CochainComplex, q: int, side: str) -> CochainComplex:
    """Brutal truncation: ``side='<='`` keeps degrees ``<= q``, ``'>'`` keeps ``> q``."""
    if side in ("<=", "le"):
        lo, hi = c.lo, min(c.hi, q)
    elif side in (">", "gt"):
        lo, hi = max(c.lo, q + 1), c.hi
    else:
        raise ValueError(f"side must be '<=' or '>', got {side!r}")
    if hi < lo:
        return CochainComplex.empty(c.field)
    dims = [c.dim(n) for n in range(lo, hi + 1)]
    diffs = {n: c.differential(n) for n in range(lo, hi)}
    labels = {n: v for n, v in c.labels.items() if lo <= n <= hi}
    return CochainComplex(c.field, lo, dims, diffs, labels, check=False)


class ChainMap:
    """Degree-preserving map of complexes, ``maps[n]: source^n -> target^n``."""

    def __init__(self, source: CochainComplex, target: CochainComplex, maps: dict,
                 check: bool = True):
        self.source = source
        self.target = target
        self.field = source.field
        self.maps: dict[int, Matrix] = {}
        for n in _union_degrees(source, target):
            m = maps.get(n)
            shape = (target.dim(n), source.dim(n))
            if m is None:
                m = Matrix.zeros(self.field, *shape)
            if m.shape != shape:
                raise ComplexError(f"map in degree {n} has shape {m.shape}, expected {shape}")
            self.maps[n] = m
        if check:
            self.verify()

    def component(self, n: int) -> Matrix:
        m = self.maps.get(n)
        if m is None:
            return Matrix.zeros(self.field, self.target.dim(n), self.source.dim(n))
        return m

    def verify(self) -> None:
        for n in _union_degrees(self.source, self.target):
            lhs = self.target.differential(n) @ self.component(n)
            rhs = self.component(n + 1) @ self.source.differential(n)
            if lhs != rhs:
                raise ComplexError(f"chain map fails to commute in degree {n}")

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """Composite ``self o other``."""
        maps = {n: self.component(n) @ other.component(n)
                for n in _union_degrees(other.source, self.target)}
        return ChainMap(other.source, self.target, maps)

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        degs = set(_union_degrees(self.source, self.target)) | set(
            _union_degrees(other.source, other.target))
        return all(self.component(n) == other.component(n) for n in degs)

    @classmethod
    def identity(cls, c: CochainComplex) -> "ChainMap":
        return cls(c, c, {n: Matrix.identity(c.field, c.dim(n)) for n in c.degrees})


def _union_degrees(a: CochainComplex, b: CochainComplex) -> range:
    if a.is_empty and b.is_empty:
        return range(0)
    if a.is_empty:
        return b.degrees
    if b.is_empty:
        return a.degrees
    return range(min(a.lo, b.lo), max(a.hi, b.hi) + 1)


def truncation_map(c: CochainComplex, q: int, r: int) -> ChainMap:
    """Quotient ``sigma_{<=q} c -> sigma_{<=r} c`` for ``r <= q``: identity up to ``r``."""
    if r > q:
        raise ValueError("target truncation must not exceed the source truncation")
    src = truncate(c, q, "<=")
    tgt = truncate(c, r, "<=")
    maps = {n: Matrix.identity(c.field, c.dim(n)) for n in tgt.degrees}
    return ChainMap(src, tgt, maps)


def truncation_quotient_map(c: CochainComplex, q: int) -> ChainMap:
    """The direct-system map ``sigma_{<=q} c -> sigma_{<=q-1} c`` (zero in degree ``q``)."""
    return truncation_map(c, q, q - 1)


def cone(f: ChainMap) -> CochainComplex:
    """Mapping cone: ``Cone^n = S^{n+1} + T^n``, ``d(s, t) = (-d s, f s + d t)``."""
    s, t = f.source, f.target
    degs = _union_degrees(s.shift(1), t)
    if not degs:
        return CochainComplex.empty(f.field)
    lo, hi = degs.start, degs.stop - 1
    dims = [s.dim(n + 1) + t.dim(n) for n in range(lo, hi + 1)]
    diffs = {}
    for n in range(lo, hi):
        blocks = {
            (0, 0): -s.differential(n + 1),
            (1, 0): f.component(n + 1),
            (1, 1): t.differential(n),
        }
        diffs[n] = Matrix.block(f.field, [s.dim(n + 2), t.dim(n + 1)], [s.dim(n + 1), t.dim(n)], blocks)
    return CochainComplex(f.field, lo, dims, diffs)


def hom_complex(c: CochainComplex, d: CochainComplex) -> CochainComplex:
    """``Hom(c, d)``: degree ``n`` is ``prod_i Hom(c^i, d^{i+n})``.

    Basis of degree ``n``: blocks ordered by ``i``, each block row-major.
    Differential ``f -> d_d f - (-1)^n f d_c``.
    """
    field = c.field
    if c.is_empty or d.is_empty:
        return CochainComplex.empty(field)
    lo, hi = d.lo - c.hi, d.hi - c.lo

    def layout(n):
        offs = {}
        pos = 0
        for i in c.degrees:
            offs[i] = pos
            pos += d.dim(i + n) * c.dim(i)
        return offs, pos

    layouts = {n: layout(n) for n in range(lo, hi + 2)}
    dims = [layouts[n][1] for n in range(lo, hi + 1)]
    diffs = {}
    for n in range(lo, hi):
        src_off, _ = layouts[n]
        tgt_off, tgt_dim = layouts[n + 1]
        sign = -1 if n % 2 else 1
        entries: dict = {}
        for i in c.degrees:
            a, b = d.dim(i + n), c.dim(i)
            if not a or not b:
                continue
            dd = d.differential(i + n).columns()      # d^{i+n}: d^{i+n} -> d^{i+n+1}
            dc = c.differential(i - 1).rows()         # d_c^{i-1}: c^{i-1} -> c^i
            b_prev = c.dim(i - 1)
            for r in range(a):
                for s_ in range(b):
                    col = src_off[i] + r * b + s_
                    # (d_d E)[r', s_] = dd[r', r], lives in block i of degree n+1
                    for r2, v in dd[r].items():
                        row = tgt_off[i] + r2 * b + s_
                        entries[(row, col)] = entries.get((row, col), 0) + v
                    # -(-1)^n (E d_c)[r, s'] = dc[s_, s'], block i-1 of degree n+1
                    if b_prev:
                        for s2, v in dc[s_].items():
                            row = tgt_off[i - 1] + r * b_prev + s2
                            entries[(row, col)] = entries.get((row, col), 0) - sign * v
        diffs[n] = Matrix.from_dict(field, tgt_dim, layouts[n][1], entries)
    return CochainComplex(field, lo, dims, diffs)


def koszul(b: FinDimAlgebra, elems: Sequence[dict]) -> CochainComplex:
    """Koszul complex ``K(B; f_1..f_r)`` in degrees ``-r..0``.

    Degree ``-j`` is ``B (x) Lambda^j`` with basis ``(subset, basis index)``
    at ``subset_rank * dim B + index``; the differential contracts
    ``e_{i_1} ^ ... ^ e_{i_j}`` with alternating signs ``(-1)^{t+1}``.
    """
    if not b.is_commutative():
        raise ComplexError("Koszul complex needs a commutative algebra")
    r = len(elems)
    d = b.dim
    f = b.field
    subsets = {j: list(combinations(range(r), j)) for j in range(r + 1)}
    index = {j: {s: k for k, s in enumerate(subsets[j])} for j in subsets}
    mult = [b.left_matrix(e).columns() for e in elems]
    dims = [len(subsets[j]) * d for j in range(r, -1, -1)]
    diffs = {}
    labels = {}
    for j in range(r, -1, -1):
        labels[-j] = [(s, b.labels[k]) for s in subsets[j] for k in range(d)]
    for j in range(r, 0, -1):
        entries: dict = {}
        for s_idx, s in enumerate(subsets[j]):
            for t, i in enumerate(s):
                sign = 1 if t % 2 == 0 else -1
                rest = s[:t] + s[t + 1:]
                r_idx = index[j - 1][rest]
                for k in range(d):
                    for k2, v in mult[i][k].items():
                        key = (r_idx * d + k2, s_idx * d + k)
                        entries[key] = entries.get(key, 0) + sign * v
        diffs[-j] = Matrix.from_dict(f, len(subsets[j - 1]) * d, len(subsets[j]) * d, entries)
    return CochainComplex(f, -r, dims, diffs, labels)


def periodic_unfold(c: CochainComplex, window: tuple[int, int]) -> dict[int, int]:
    """Homology of ``k[u] (x) c`` with ``u`` of degree 2, continued 2-periodically.

    ``c`` must live in two adjacent degrees ``a, a+1``; degrees of the parity
    of ``a+1`` carry the cokernel, the others the kernel.
    """
    if c.is_empty or c.hi - c.lo != 1:
        raise ComplexError("periodic unfolding needs a complex in exactly two adjacent degrees")
    n_min, n_max = window
    if n_max < n_min:
        raise ValueError("empty window")
    a = c.lo
    rk = rank(c.differential(a))
    ker = c.dim(a) - rk
    coker = c.dim(a + 1) - rk
    return {n: (coker if (n - a - 1) % 2 == 0 else ker) for n in range(n_min, n_max + 1)}


# --- text serialization ------------------------------------------------------------

def format_matrix_rows(m: Matrix) -> list[str]:
    return [" ".join(str(v) for v in row) for row in m.tolist()]


def format_complex(c: CochainComplex) -> str:
    """Text form: ``field``, ``degrees LO HI``, ``dims ...`` and one ``d N ROWS COLS`` block per nonzero differential."""
    lines = ["complex", f"field {c.field!r}"]
    if c.is_empty:
        lines.append("degrees 0 -1")
        lines.append("dims")
        lines.append("end")
        return "\n".join(lines) + "\n"
    lines.append(f"degrees {c.lo} {c.hi}")
    lines.append("dims " + " ".join(str(c.dim(n)) for n in c.degrees))
    for n in range(c.lo, c.hi):
        m = c.differential(n)
        if m.is_zero():
            continue
        lines.append(f"d {n} {m.nrows} {m.ncols}")
        lines.extend(format_matrix_rows(m))
    lines.append("end")
    return "\n".join(lines) + "\n"


class _Lines:
    def __init__(self, text: str, source: str = "<text>"):
        self.items = []
        for no, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self.items.append((no, line))
        self.i = 0
        self.source = source

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else (None, None)

    def take(self):
        item = self.peek()
        if item[0] is None:
            raise FormatError(f"{self.source}: unexpected end of input")
        self.i += 1
        return item

    def error(self, no, msg):
        return FormatError(f"{self.source}:{no}: {msg}")


class FormatError(ValueError):
    pass


def read_matrix(lines: _Lines, field: Field, nrows: int, ncols: int) -> Matrix:
    rows = []
    for _ in range(nrows):
        no, line = lines.take()
        vals = line.split()
        if len(vals) != ncols:
            raise lines.error(no, f"expected {ncols} entries, found {len(vals)}")
        try:
            rows.append([field(v) for v in vals])
        except (ValueError, ZeroDivisionError) as exc:
            raise lines.error(no, f"bad entry: {exc}") from None
    return Matrix.from_rows(field, rows, ncols)


def read_complex_block(lines: _Lines, field: Field | None = None, check: bool = True) -> CochainComplex:
    no, line = lines.take()
    if line != "complex":
        raise lines.error(no, "expected 'complex'")
    lo = hi = None
    dims = None
    diffs = {}
    while True:
        no, line = lines.take()
        word, _, rest = line.partition(" ")
        if word == "end":
            break
        if word == "field":
            field = Field.parse(rest)
        elif word == "degrees":
            lo, hi = (int(x) for x in rest.split())
        elif word == "dims":
            dims = [int(x) for x in rest.split()]
        elif word == "d":
            n, r, cdim = (int(x) for x in rest.split())
            if field is None:
                raise lines.error(no, "field must precede matrices")
            diffs[n] = read_matrix(lines, field, r, cdim)
        else:
            raise lines.error(no, f"unknown directive {word!r}")
    if lo is None or dims is None:
        raise FormatError(f"{lines.source}: complex needs 'degrees' and 'dims'")
    if len(dims) != hi - lo + 1:
        raise FormatError(f"{lines.source}: {len(dims)} dims for degrees {lo}..{hi}")
    return CochainComplex(field or QQ, lo, dims, diffs, check=check)


def parse_complex(text: str, source: str = "<text>") -> CochainComplex:
    lines = _Lines(text, source)
    c = read_complex_block(lines)
    if lines.peek()[0] is not None:
        raise lines.error(lines.peek()[0], "trailing content after complex")
    return c
