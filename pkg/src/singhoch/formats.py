"""Text formats for algebras, plus a dispatcher used by ``validate``.

Algebra files::

    algebra
    field QQ
    dim 2
    basis 1 x
    unit 1 0
    table
    0 0 : 1 0      # b_0 b_0 = 1 b_0 + 0 b_1
    0 1 : 0 1
    1 0 : 0 1
    end

Each ``i j : c_0 .. c_{d-1}`` line gives the coordinates of ``b_i b_j``;
omitted pairs multiply to zero.  ``#`` starts a comment everywhere.
"""
from __future__ import annotations

from .algebra import FinDimAlgebra
from .complexes import FormatError, _Lines, parse_complex
from .linalg import Field, QQ

__all__ = ["parse_algebra", "format_algebra", "read_text", "validate_text", "file_kind"]


def parse_algebra(text: str, source: str = "<text>") -> FinDimAlgebra:
    lines = _Lines(text, source)
    no, line = lines.take()
    if line != "algebra":
        raise lines.error(no, "expected 'algebra'")
    fld = QQ
    dim = labels = unit = None
    table = None
    seen = set()
    while True:
        no, line = lines.take()
        word, _, rest = line.partition(" ")
        if word == "end":
            break
        if word == "field":
            try:
                fld = Field.parse(rest)
            except ValueError as exc:
                raise lines.error(no, str(exc)) from None
        elif word == "dim":
            dim = int(rest)
            if dim < 1:
                raise lines.error(no, "dimension must be positive")
        elif word == "basis":
            labels = rest.split()
        elif word == "unit":
            unit = _coords(lines, no, rest, fld, dim)
        elif word == "table":
            if dim is None:
                raise lines.error(no, "'dim' must precede the table")
            table = [[{} for _ in range(dim)] for _ in range(dim)]
            while lines.peek()[1] is not None and ":" in lines.peek()[1]:
                tno, tline = lines.take()
                head, _, body = tline.partition(":")
                try:
                    i, j = (int(x) for x in head.split())
                except ValueError:
                    raise lines.error(tno, "expected 'i j : coordinates'") from None
                if not (0 <= i < dim and 0 <= j < dim):
                    raise lines.error(tno, f"index out of range 0..{dim - 1}")
                if (i, j) in seen:
                    raise lines.error(tno, f"product {i} {j} given twice")
                seen.add((i, j))
                table[i][j] = _coords(lines, tno, body, fld, dim)
        else:
            raise lines.error(no, f"unknown directive {word!r}")
    if lines.peek()[0] is not None:
        raise lines.error(lines.peek()[0], "trailing content after 'end'")
    if dim is None or unit is None or table is None:
        raise FormatError(f"{source}: algebra needs 'dim', 'unit' and 'table'")
    if labels is None:
        labels = [f"b{i}" for i in range(dim)]
    if len(labels) != dim:
        raise FormatError(f"{source}: {len(labels)} basis labels for dimension {dim}")
    return FinDimAlgebra(fld, labels, table, unit).validate()


def _coords(lines: _Lines, no: int, text: str, fld: Field, dim: int | None) -> dict:
    vals = text.split()
    if dim is not None and len(vals) != dim:
        raise lines.error(no, f"expected {dim} coordinates, found {len(vals)}")
    try:
        return {k: fld(v) for k, v in enumerate(vals) if fld(v)}
    except (ValueError, ZeroDivisionError) as exc:
        raise lines.error(no, f"bad coordinate: {exc}") from None


def format_algebra(a: FinDimAlgebra) -> str:
    d = a.dim
    f = a.field

    def row(v):
        return " ".join(str(v.get(k, f.zero)) for k in range(d))

    out = ["algebra", f"field {f!r}", f"dim {d}", "basis " + " ".join(a.labels),
           "unit " + row(a.unit), "table"]
    for i in range(d):
        for j in range(d):
            if a.table[i][j]:
                out.append(f"{i} {j} : {row(a.table[i][j])}")
    out.append("end")
    return "\n".join(out) + "\n"


def file_kind(text: str) -> str | None:
    """First keyword of a file: ``algebra``, ``resolution``, ``mf`` or ``complex``."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return line.split()[0] if line.split()[0] in ("algebra", "resolution", "mf", "complex") else None
    return None


def read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def validate_text(text: str, source: str, algebra: FinDimAlgebra | None = None) -> dict:
    """Parse and check a file of any supported kind; returns a short summary.

    Raises :class:`FormatError`, an algebra error or a module-specific
    error describing the first problem found.
    """
    kind = file_kind(text)
    if kind == "algebra":
        a = parse_algebra(text, source)
        return {"kind": kind, "field": repr(a.field), "dim": a.dim,
                "commutative": a.is_commutative()}
    if kind == "complex":
        c = parse_complex(text, source)
        return {"kind": kind, "field": repr(c.field), "degrees": [c.lo, c.hi],
                "dims": [c.dim(n) for n in range(c.lo, c.hi + 1)]}
    if kind == "mf":
        from .mfactor import parse_mf
        e = parse_mf(text, source)
        return {"kind": kind, "field": repr(e.field), "potential": str(e.potential), "size": e.size}
    if kind == "resolution":
        if algebra is None:
            raise FormatError(f"{source}: a resolution needs --algebra to be checked against")
        from .resolutions import load_resolution
        res = load_resolution(text, algebra, source)
        upto = res.length if res.length is not None else 5
        return {"kind": kind, "provenance": res.provenance,
                "ranks": [res.rank(q) for q in range(upto + 1)]}
    raise FormatError(f"{source}: unrecognized file (expected algebra, complex, mf or resolution)")

