"""Exact linear algebra over the rationals and prime fields.

Everything here is exact: rationals are ``gmpy2.mpq`` values (reduced
fractions with normalized sign), prime-field elements are Python ints in
``range(p)``.  Vectors are sparse ``dict[int, element]`` maps with no stored
zeros.  The workhorse is :class:`Echelon`, an incrementally grown row
echelon basis that can also record how each basis row was produced; rank,
kernel, solving and quotient projections are all phrased through it.
"""
from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq

__all__ = [
    "Field", "QQ", "GF", "Matrix", "Echelon",
    "rank", "rank_and_kernel", "solve", "solve_many", "cokernel_dim",
    "DENSITY_THRESHOLD",
]

#: Matrices whose fraction of nonzero entries is below this are stored sparse.
DENSITY_THRESHOLD = 0.25


class Field:
    """The rationals (``p == 0``) or the prime field with ``p`` elements."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        p = int(p)
        if p < 0 or (p and not gmpy2.is_prime(p)):
            raise ValueError(f"field characteristic must be 0 or a prime, got {p}")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def zero(self):
        return mpq(0) if self.p == 0 else 0

    @property
    def one(self):
        return mpq(1) if self.p == 0 else 1

    def __call__(self, x):
        """Coerce an int, str, Fraction or mpq into the field."""
        if isinstance(x, str):
            x = mpq(x.strip())
        elif isinstance(x, Fraction):
            x = mpq(x.numerator, x.denominator)
        if self.p == 0:
            return mpq(x)
        if isinstance(x, int):
            return x % self.p
        q = mpq(x)
        den = int(q.denominator) % self.p
        if den == 0:
            raise ZeroDivisionError(f"{x} has denominator divisible by {self.p}")
        return int(q.numerator) * pow(den, -1, self.p) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return 1 / a
        return pow(int(a), -1, self.p)

    def neg(self, a):
        return -a if self.p == 0 else (-a) % self.p

    def add(self, a, b):
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p == 0 else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p == 0 else (a * b) % self.p

    def format(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``QQ``, ``GF(p)`` or ``GF p``."""
        t = text.strip().replace(" ", "")
        if t in ("QQ", "Q", "rationals"):
            return cls(0)
        if t.startswith("GF"):
            body = t[2:].strip("()")
            return cls(int(body))
        raise ValueError(f"unknown field {text!r}")


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# --- sparse vector helpers -------------------------------------------------

def axpy(field: Field, y: dict, a, x: dict) -> None:
    """In place ``y += a * x`` on sparse vectors."""
    if not a:
        return
    p = field.p
    for j, v in x.items():
        w = y.get(j)
        nw = (a * v if w is None else w + a * v)
        if p:
            nw %= p
        if nw:
            y[j] = nw
        elif w is not None:
            del y[j]


def scale(field: Field, x: dict, a) -> dict:
    if not a:
        return {}
    if field.p:
        return {j: v * a % field.p for j, v in x.items()}
    return {j: v * a for j, v in x.items()}


# --- matrices ---------------------------------------------------------------

class Matrix:
    """Immutable ``nrows x ncols`` matrix over a :class:`Field`.

    Storage is either dense (list of lists) or sparse (list of row dicts),
    picked from the density at construction.  All public accessors work for
    both.
    """

    __slots__ = ("field", "nrows", "ncols", "_dense", "_sparse")

    def __init__(self, field: Field, nrows: int, ncols: int, rows: Sequence[dict],
                 *, storage: str | None = None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        rows = [dict(r) for r in rows]
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        for r in rows:
            for j in r:
                if not 0 <= j < ncols:
                    raise IndexError(f"column {j} out of range for {ncols} columns")
        if storage is None:
            cells = nrows * ncols
            nnz = sum(len(r) for r in rows)
            storage = "dense" if cells and nnz / cells >= DENSITY_THRESHOLD else "sparse"
        if storage == "dense":
            zero = field.zero
            self._dense = [[r.get(j, zero) for j in range(ncols)] for r in rows]
            self._sparse = None
        else:
            self._dense = None
            self._sparse = rows

    # constructors
    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        sparse = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            sparse.append({j: field(v) for j, v in enumerate(r) if field(v)})
        return cls(field, len(rows), ncols, sparse)

    @classmethod
    def from_dict(cls, field: Field, nrows: int, ncols: int, entries: dict) -> "Matrix":
        rows = [dict() for _ in range(nrows)]
        for (i, j), v in entries.items():
            v = field(v)
            if v:
                rows[i][j] = v
        return cls(field, nrows, ncols, rows)

    @classmethod
    def from_columns(cls, field: Field, nrows: int, columns: Sequence[dict]) -> "Matrix":
        rows = [dict() for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls(field, nrows, len(columns), rows)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols, [{} for _ in range(nrows)], storage="sparse")

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, [{i: field.one} for i in range(n)], storage="sparse")

    # accessors
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_sparse(self) -> bool:
        return self._sparse is not None

    def rows(self) -> list[dict]:
        """Sparse copies of the rows."""
        if self._sparse is not None:
            return [dict(r) for r in self._sparse]
        return [{j: v for j, v in enumerate(r) if v} for r in self._dense]

    def _row_view(self, i: int) -> dict:
        if self._sparse is not None:
            return self._sparse[i]
        return {j: v for j, v in enumerate(self._dense[i]) if v}

    def columns(self) -> list[dict]:
        cols = [dict() for _ in range(self.ncols)]
        for i in range(self.nrows):
            for j, v in self._row_view(i).items():
                cols[j][i] = v
        return cols

    def __getitem__(self, ij):
        i, j = ij
        if self._dense is not None:
            return self._dense[i][j]
        return self._sparse[i].get(j, self.field.zero)

    def tolist(self) -> list[list]:
        if self._dense is not None:
            return [list(r) for r in self._dense]
        zero = self.field.zero
        return [[r.get(j, zero) for j in range(self.ncols)] for r in self._sparse]

    def nnz(self) -> int:
        return sum(len(self._row_view(i)) for i in range(self.nrows))

    def density(self) -> float:
        cells = self.nrows * self.ncols
        return self.nnz() / cells if cells else 0.0

    def is_zero(self) -> bool:
        return all(not self._row_view(i) for i in range(self.nrows))

    # arithmetic
    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, self.columns())

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def matvec(self, x: dict) -> dict:
        """Apply to a sparse column vector."""
        out = {}
        p = self.field.p
        for i in range(self.nrows):
            s = 0
            for j, v in self._row_view(i).items():
                xj = x.get(j)
                if xj:
                    s += v * xj
            if p:
                s %= p
            if s:
                out[i] = s
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        orows = [other._row_view(k) for k in range(other.nrows)]
        out = []
        for i in range(self.nrows):
            acc: dict = {}
            for k, a in self._row_view(i).items():
                axpy(f, acc, a, orows[k])
            out.append(acc)
        return Matrix(f, self.nrows, other.ncols, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.nrows):
            r = dict(self._row_view(i))
            axpy(self.field, r, self.field.one, other._row_view(i))
            out.append(r)
        return Matrix(self.field, self.nrows, self.ncols, out)

    def __neg__(self) -> "Matrix":
        return self.scaled(self.field.neg(self.field.one))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scaled(self, a) -> "Matrix":
        a = self.field(a)
        return Matrix(self.field, self.nrows, self.ncols,
                      [scale(self.field, self._row_view(i), a) for i in range(self.nrows)])

    def __eq__(self, other):
        if not isinstance(other, Matrix) or self.shape != other.shape or self.field != other.field:
            return NotImplemented if not isinstance(other, Matrix) else False
        return all(self._row_view(i) == other._row_view(i) for i in range(self.nrows))

    def __hash__(self):
        return hash((self.shape, tuple(tuple(sorted(self._row_view(i).items())) for i in range(self.nrows))))

    def __repr__(self):
        kind = "sparse" if self.is_sparse else "dense"
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols}, {kind}, nnz={self.nnz()})"

    @staticmethod
    def block(field: Field, row_dims: Sequence[int], col_dims: Sequence[int],
              blocks: dict) -> "Matrix":
        """Assemble from ``{(bi, bj): Matrix}``; missing blocks are zero."""
        roff = [0]
        for d in row_dims:
            roff.append(roff[-1] + d)
        coff = [0]
        for d in col_dims:
            coff.append(coff[-1] + d)
        rows = [dict() for _ in range(roff[-1])]
        for (bi, bj), m in blocks.items():
            if m.shape != (row_dims[bi], col_dims[bj]):
                raise ValueError(f"block {(bi, bj)} has shape {m.shape}")
            for i in range(m.nrows):
                tgt = rows[roff[bi] + i]
                for j, v in m._row_view(i).items():
                    tgt[coff[bj] + j] = v
        return Matrix(field, roff[-1], coff[-1], rows)


# --- incremental echelon form -------------------------------------------------

class Echelon:
    """Row echelon basis of a subspace of ``k^n``, grown one vector at a time.

    Each stored row is normalized so its pivot (smallest index) is 1.
    With ``track=True`` every row carries a tag: a sparse combination of the
    tags of the vectors fed in, so relations and solutions can be read off.
    """

    def __init__(self, field: Field, track: bool = False):
        self.field = field
        self.track = track
        self.rows: dict[int, dict] = {}
        self.tags: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def _reduce(self, v: dict) -> dict:
        """Reduce ``v`` in place; return the multiples subtracted per pivot."""
        rows = self.rows
        p = self.field.p
        heap = [c for c in v if c in rows]
        heapify(heap)
        used = {}
        while heap:
            c = heappop(heap)
            f = v.get(c)
            if f is None:
                continue
            used[c] = f
            for j, a in rows[c].items():
                w = v.get(j)
                if w is None:
                    nw = -f * a
                    if p:
                        nw %= p
                    v[j] = nw
                    if j in rows:
                        heappush(heap, j)
                else:
                    nw = w - f * a
                    if p:
                        nw %= p
                    if nw:
                        v[j] = nw
                    else:
                        del v[j]
        return used

    def _combine(self, used: dict) -> dict:
        acc: dict = {}
        for c, f in used.items():
            axpy(self.field, acc, f, self.tags[c])
        return acc

    def reduce(self, v: dict) -> tuple[dict, dict | None]:
        """Return ``(remainder, combination)`` with ``v = remainder + combination``.

        The remainder is supported off the pivot columns; the combination is
        expressed in tags when tracking, else ``None``.
        """
        v = dict(v)
        used = self._reduce(v)
        return v, (self._combine(used) if self.track else None)

    def add(self, v: dict, tag: dict | None = None):
        """Insert ``v``.  Returns ``(pivot, None)`` if independent, else ``(None, relation)``.

        The relation (only when tracking) is a tag combination that is zero.
        """
        v = dict(v)
        used = self._reduce(v)
        f = self.field
        if self.track:
            t = dict(tag or {})
            axpy(f, t, f.neg(f.one), self._combine(used))
        if not v:
            return None, (t if self.track else None)
        piv = min(v)
        inv = f.inv(v[piv])
        self.rows[piv] = scale(f, v, inv)
        if self.track:
            self.tags[piv] = scale(f, t, inv)
        return piv, None

    def contains(self, v: dict) -> bool:
        w = dict(v)
        self._reduce(w)
        return not w


# --- matrix-level operations ----------------------------------------------------

def _by_fill(vectors: list[dict]) -> list[int]:
    return sorted(range(len(vectors)), key=lambda i: (len(vectors[i]), i))


def rank(m: Matrix) -> int:
    """Rank of ``m``; sparse vectors enter the echelon first to limit fill-in."""
    vecs = m.rows() if m.nrows <= m.ncols else m.columns()
    ech = Echelon(m.field)
    limit = min(m.nrows, m.ncols)
    for i in _by_fill(vecs):
        if len(ech) == limit:
            break
        ech.add(vecs[i])
    return len(ech)


def rank_and_kernel(m: Matrix) -> tuple[int, list[dict]]:
    """Rank and a basis of the right kernel (sparse column vectors)."""
    cols = m.columns()
    ech = Echelon(m.field, track=True)
    kernel = []
    for j in _by_fill(cols):
        piv, rel = ech.add(cols[j], {j: m.field.one})
        if piv is None:
            kernel.append(rel)
    return len(ech), kernel


def cokernel_dim(m: Matrix) -> int:
    return m.nrows - rank(m)


class ColumnSolver:
    """Factor ``m`` once, then solve ``m x = b`` for many right-hand sides."""

    def __init__(self, m: Matrix):
        self.m = m
        self.ech = Echelon(m.field, track=True)
        cols = m.columns()
        for j in _by_fill(cols):
            self.ech.add(cols[j], {j: m.field.one})

    def solve(self, b: dict) -> dict | None:
        rem, comb = self.ech.reduce(b)
        if rem:
            return None
        return comb


def _as_sparse(field: Field, b) -> dict:
    if isinstance(b, dict):
        return {i: field(v) for i, v in b.items() if field(v)}
    return {i: field(v) for i, v in enumerate(b) if field(v)}


def solve_many(m: Matrix, bs: Iterable) -> list[list | None]:
    """Solve ``m x = b`` for each ``b``; ``None`` marks an inconsistent system."""
    solver = None
    out = []
    for b in bs:
        if not isinstance(b, dict) and len(b) != m.nrows:
            raise ValueError(f"right-hand side has length {len(b)}, matrix has {m.nrows} rows")
        b = _as_sparse(m.field, b)
        if b and max(b) >= m.nrows:
            raise ValueError("right-hand side index out of range")
        if solver is None:
            solver = ColumnSolver(m)
        x = solver.solve(b)
        out.append(None if x is None else [x.get(j, m.field.zero) for j in range(m.ncols)])
    return out


def solve(m: Matrix, b) -> list | None:
    """One solution of ``m x = b`` or ``None`` when there is none."""
    return solve_many(m, [b])[0]


def vector_to_list(field: Field, v: dict, n: int) -> list:
    return [v.get(i, field.zero) for i in range(n)]
