"""Command-line front end.

Every subcommand prints one JSON object (default) or a TSV table.  Exit
status: 0 on success, 1 when the computation reports a mathematical failure
(non-isolated singularity, inconclusive stabilization, invalid file
contents), 2 on usage and syntax errors.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import re
import sys
import warnings
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import AlgebraError
from .complexes import FormatError
from .formats import parse_algebra, read_text, validate_text
from .hochschild import DEFAULT_BUDGET, SizeBudgetError, hh_dims
from .hypersurface import (
    SingularityError, compare_singularities, fingerprint, singularity_report,
    stable_hh_dims, tyurina_algebra,
)
from .linalg import Field
from .mfactor import MFError, mf_hom_cohomology, parse_mf
from .poly import MonomialOrder, PolySyntaxError, UnknownVariableError, parse_poly
from .resolutions import ResolutionError, load_resolution
from .tate import (
    InconclusiveError, ProductError, TateEngine, hhsg_dim, product_table,
    syzygy_identification_check,
)

__all__ = ["main", "run"]


class UsageError(Exception):
    pass


class MathFailure(Exception):
    """Carries a partial report that is still printed before exiting with 1."""

    def __init__(self, msg: str, payload: dict | None = None, table=None):
        super().__init__(msg)
        self.payload = payload
        self.table = table


# --- argument helpers ----------------------------------------------------------------------

_RANGE_FLAGS = ("--degrees", "--window", "--q")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _join_ranges(argv: Sequence[str]) -> list[str]:
    """Glue ``--degrees -3..3`` into one token; argparse would read ``-3..3`` as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _RANGE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected 'a..b', got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _order(text: str) -> MonomialOrder:
    try:
        return MonomialOrder.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _variables(args, *texts: str) -> list[str]:
    if args.vars:
        return [v.strip() for v in args.vars.split(",") if v.strip()]
    names = sorted({m.group(0) for t in texts for m in _IDENT.finditer(t)})
    if not names:
        raise UsageError("cannot infer variables; pass --vars")
    return names


def _poly(args, text: str, variables):
    return parse_poly(text, variables, args.field)


def _scalar(c):
    """JSON-friendly exact scalar: ints stay ints, other rationals become strings."""
    f = Fraction(int(c.numerator), int(c.denominator)) if hasattr(c, "denominator") else Fraction(int(c))
    return f.numerator if f.denominator == 1 else str(f)


def _algebra(path: str):
    return parse_algebra(read_text(path), path)


def _engine(args):
    a = _algebra(args.algebra)
    res = None
    if args.resolution:
        res = load_resolution(read_text(args.resolution), a, args.resolution)
    from .resolutions import bar_resolution
    return a, TateEngine(res if res is not None else bar_resolution(a))


# --- subcommands ---------------------------------------------------------------------------
# Each handler returns (payload, (header, rows)).

def cmd_milnor(args):
    v = _variables(args, args.poly)
    rep = singularity_report(_poly(args, args.poly, v), args.order)
    d = rep.to_dict()
    rows = [[k, json.dumps(val)] for k, val in d.items()]
    return d, (["field_name", "value"], rows)


def cmd_tyurina(args):
    v = _variables(args, args.poly)
    q = _poly(args, args.poly, v)
    t, tau = tyurina_algebra(q, args.order)
    d = {"Q": str(q), "vars": list(q.vars), "field": repr(q.field),
         "tyurina_number": tau, "tyurina_basis": list(t.labels)}
    rows = [[k, json.dumps(val)] for k, val in d.items()]
    return d, (["field_name", "value"], rows)


def _fp_dict(fp):
    tau, hilbert, socle, top = fp
    return {"tau": tau, "hilbert": list(hilbert), "socle_dim": socle, "dim_T_mod_m2": top}


def cmd_fingerprint(args):
    v = _variables(args, args.poly)
    q = _poly(args, args.poly, v)
    d = {"Q": str(q), "vars": list(q.vars), **_fp_dict(fingerprint(q, args.order))}
    rows = [[k, json.dumps(val)] for k, val in d.items()]
    return d, (["field_name", "value"], rows)


def cmd_compare(args):
    v = _variables(args, args.poly1, args.poly2)
    q1, q2 = _poly(args, args.poly1, v), _poly(args, args.poly2, v)
    verdict = compare_singularities(q1, q2)
    d = {"Q1": str(q1), "Q2": str(q2), "vars": v, "verdict": verdict,
         "fingerprint1": _fp_dict(fingerprint(q1, args.order)),
         "fingerprint2": _fp_dict(fingerprint(q2, args.order))}
    return d, (["verdict"], [[verdict]])


def cmd_hyp_hh(args):
    v = _variables(args, args.poly)
    q = _poly(args, args.poly, v)
    dims = stable_hh_dims(q, args.window, args.order)
    d = {"Q": str(q), "vars": list(q.vars), "window": list(args.window),
         "dims": {str(n): dims[n] for n in sorted(dims)}}
    return d, (["degree", "dim"], [[n, dims[n]] for n in sorted(dims)])


def cmd_hh(args):
    a = _algebra(args.algebra)
    lo, hi = args.degrees
    if lo < 0:
        raise UsageError("Hochschild degrees must be nonnegative")
    dims = hh_dims(a, hi, args.budget)
    d = {"algebra": args.algebra, "dim": a.dim,
         "dims": {str(n): dims[n] for n in range(lo, hi + 1)}}
    return d, (["degree", "dim"], [[n, dims[n]] for n in range(lo, hi + 1)])


def cmd_hh_sg(args):
    a, eng = _engine(args)
    lo, hi = args.degrees
    results = []
    inconclusive = []
    for n in range(lo, hi + 1):
        dim, tr = hhsg_dim(a, n, args.qmax, engine=eng)
        results.append(tr.to_dict())
        if dim is None:
            inconclusive.append(n)
    d = {"algebra": args.algebra, "resolution": eng.target.provenance,
         "q_max": args.qmax, "dims": {str(t["n"]): t["dimension"] for t in results},
         "traces": results}
    rows = [[t["n"], "" if t["dimension"] is None else t["dimension"], t["verdict"],
             "" if t["stabilized_at"] is None else t["stabilized_at"]] for t in results]
    table = (["degree", "dim", "verdict", "stabilized_at"], rows)
    if inconclusive:
        raise MathFailure(f"inconclusive stabilization in degrees {inconclusive}", d, table)
    return d, table


def cmd_hh_sg_product(args):
    a, eng = _engine(args)
    t = product_table(eng, args.left, args.right, args.qmax, args.depth_cap)
    prods = [{"i": i, "j": j, "coords": [_scalar(c) for c in cs]} for i, j, cs in t["products"]]
    d = {"algebra": args.algebra, "resolution": eng.target.provenance,
         "degrees": list(t["degrees"]), "dims": list(t["dims"]), "depths": list(t["depths"]),
         "common_depth": t["common_depth"], "products": prods}
    if args.left == 0 and args.right == 0:
        d["degree_zero"] = _algebra_summary(t, eng.field)
    rows = [[p["i"], p["j"], " ".join(str(c) for c in p["coords"])] for p in prods]
    return d, (["i", "j", "coords"], rows)


def _algebra_summary(t, field: Field) -> dict:
    """Invariants of ``HH_sg^0`` read off its structure constants."""
    from .algebra import FinDimAlgebra
    dim = t["dims"][0]
    table = [[{} for _ in range(dim)] for _ in range(dim)]
    for i, j, cs in t["products"]:
        table[i][j] = {k: c for k, c in enumerate(cs) if c}
    unit = {k: c for k, c in enumerate(t["unit"]) if c}
    alg = FinDimAlgebra(field, [f"c{i}" for i in range(dim)], table, unit).validate()
    nil = [i for i in range(dim) if alg.is_nilpotent({i: alg.field.one})]
    return {"dim": dim, "unit": [_scalar(c) for c in t["unit"]], "commutative": alg.is_commutative(),
            "radical_dim": len(alg.radical_basis()), "nilpotent_basis_classes": nil}


def cmd_syzygy_check(args):
    a = _algebra(args.algebra)
    res = load_resolution(read_text(args.resolution), a, args.resolution) if args.resolution else None
    lo, hi = args.q
    if lo < 0:
        raise UsageError("syzygy degrees must be nonnegative")
    checks = [syzygy_identification_check(a, q, res) for q in range(lo, hi + 1)]
    d = {"algebra": args.algebra, "checks": checks}
    rows = [[c["q"], c["syzygy_dim"], c["truncation_top_homology"], c["induced_map_rank"],
             str(c["isomorphic"]).lower()] for c in checks]
    table = (["q", "syzygy_dim", "top_homology", "map_rank", "isomorphic"], rows)
    if not all(c["isomorphic"] for c in checks):
        raise MathFailure("syzygy identification failed", d, table)
    return d, table


def cmd_mf_hom(args):
    e = parse_mf(read_text(args.source), args.source)
    f = parse_mf(read_text(args.target), args.target) if args.target else e
    even, odd = mf_hom_cohomology(e, f, method=args.method)
    d = {"potential": str(e.potential), "source": args.source, "target": args.target or args.source,
         "even_dim": even, "odd_dim": odd}
    return d, (["even_dim", "odd_dim"], [[even, odd]])


def cmd_validate(args):
    a = _algebra(args.algebra) if args.algebra else None
    reports = []
    for path in args.files:
        rep = {"file": path}
        try:
            rep.update(validate_text(read_text(path), path, a))
            rep["valid"] = True
        except (AlgebraError, MFError, ResolutionError, FormatError, ValueError) as exc:
            rep["valid"] = False
            rep["error"] = str(exc)
        reports.append(rep)
    d = {"files": reports}
    rows = [[r["file"], str(r["valid"]).lower(), r.get("kind", ""), r.get("error", "")] for r in reports]
    table = (["file", "valid", "kind", "error"], rows)
    if not all(r["valid"] for r in reports):
        raise MathFailure("invalid file", d, table)
    return d, table


# --- parser --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="singhoch", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(sp):
        sp.add_argument("--format", choices=("json", "tsv"), default="json")
        sp.add_argument("--threads", type=_positive, default=1,
                        help="accepted for compatibility; computation is single-threaded")
        sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                        help="largest cochain space dimension allowed")

    def poly_opts(sp):
        sp.add_argument("--vars", help="comma-separated variables (default: identifiers in the input, sorted)")
        sp.add_argument("--field", type=_field, default=Field(0), help="QQ or GF(p)")
        sp.add_argument("--order", type=_order, default=MonomialOrder("grevlex"))

    def tate_opts(sp):
        sp.add_argument("--algebra", required=True, help="algebra file")
        sp.add_argument("--resolution", help="bimodule resolution file (default: bar resolution)")
        sp.add_argument("--qmax", type=_nonneg, default=8)

    def add(name, fn: Callable, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.set_defaults(handler=fn)
        common(sp)
        return sp

    for name, fn, text in (("milnor", cmd_milnor, "Milnor/Tyurina report of a polynomial"),
                           ("tyurina", cmd_tyurina, "Tyurina algebra of a polynomial"),
                           ("fingerprint", cmd_fingerprint, "isomorphism invariants of the Tyurina algebra")):
        sp = add(name, fn, text)
        sp.add_argument("--poly", required=True)
        poly_opts(sp)

    sp = add("compare", cmd_compare, "compare two singularities by fingerprint")
    sp.add_argument("--poly1", required=True)
    sp.add_argument("--poly2", required=True)
    poly_opts(sp)

    sp = add("hyp-hh", cmd_hyp_hh, "2-periodic Koszul cohomology dims over the Milnor algebra")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--window", type=parse_range, default=(-3, 5))
    poly_opts(sp)

    sp = add("hh", cmd_hh, "Hochschild cohomology dims from the bar complex")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--degrees", type=parse_range, default=(0, 4))

    sp = add("hh-sg", cmd_hh_sg, "singular Hochschild cohomology dims with stabilization traces")
    tate_opts(sp)
    sp.add_argument("--degrees", type=parse_range, default=(-3, 5))

    sp = add("hh-sg-product", cmd_hh_sg_product, "products of stable basis classes")
    tate_opts(sp)
    sp.add_argument("--left", type=int, default=0)
    sp.add_argument("--right", type=int, default=0)
    sp.add_argument("--depth-cap", type=_nonneg, default=10)

    sp = add("syzygy-check", cmd_syzygy_check, "compare truncations of the resolution with syzygies")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--resolution")
    sp.add_argument("--q", type=parse_range, default=(0, 3))

    sp = add("mf-hom", cmd_mf_hom, "cohomology dims of Hom between matrix factorizations")
    sp.add_argument("source", help="MF file")
    sp.add_argument("target", nargs="?", help="MF file (default: same as source)")
    sp.add_argument("--method", choices=("pid", "groebner"))

    sp = add("validate", cmd_validate, "check algebra, complex, resolution and MF files")
    sp.add_argument("files", nargs="+")
    sp.add_argument("--algebra", help="algebra that resolution files refer to")
    return p


def _emit(payload: dict, table, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    header, rows = table
    out.write("\t".join(header) + "\n")
    for r in rows:
        out.write("\t".join(str(x) for x in r) + "\n")


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(_join_ranges(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            try:
                payload, table = args.handler(args)
            finally:
                for msg in dict.fromkeys(str(w.message) for w in caught):
                    err.write(f"warning: {msg}\n")
    except MathFailure as exc:
        if exc.payload is not None:
            _emit(exc.payload, exc.table, args.format, out)
        err.write(f"error: {exc}\n")
        return 1
    except (UsageError, PolySyntaxError, UnknownVariableError, FormatError, OSError) as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except (SingularityError, InconclusiveError, ProductError, SizeBudgetError,
            AlgebraError, ResolutionError, MFError, ArithmeticError) as exc:
        err.write(f"error: {exc}\n")
        return 1
    except ValueError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    _emit(payload, table, args.format, out)
    return 0


def main() -> None:
    sys.exit(run())
