"""Golden-file tests for every subcommand.

Set ``UPDATE_GOLDEN=1`` to rewrite the files under ``tests/golden`` after an
intended output change.
"""
import io
import os
import subprocess
import sys

import pytest

from singhoch.cli import parse_range, run

from conftest import GOLDEN, ROOT

# (name, argv, exit status)
CORPUS = [
    ("milnor-x3y3", ["milnor", "--poly", "x^3+y^3", "--vars", "x,y"], 0),
    ("milnor-witness-tsv", ["milnor", "--poly", "x^4+y^5+x^2*y^3", "--vars", "x,y", "--format", "tsv"], 0),
    ("milnor-gf5-warning-tsv", ["milnor", "--poly", "x^3+y^3", "--field", "GF(5)", "--format", "tsv"], 0),
    ("tyurina-witness", ["tyurina", "--poly", "x^4+y^5+x^2*y^3", "--vars", "x,y"], 0),
    ("fingerprint-x3y3", ["fingerprint", "--poly", "x^3+y^3", "--vars", "x,y"], 0),
    ("compare-a1", ["compare", "--poly1", "x^2+y^2", "--poly2", "x*y", "--vars", "x,y"], 0),
    ("compare-distinct-tsv", ["compare", "--poly1", "x^3+y^3", "--poly2", "x^4+y^4", "--format", "tsv"], 0),
    ("hyp-hh-cusp", ["hyp-hh", "--poly", "x^3-y^2", "--vars", "x,y", "--window", "-3..5"], 0),
    ("hh-x3-tsv", ["hh", "--algebra", "data/x3.alg", "--degrees", "0..3", "--format", "tsv"], 0),
    ("hh-sg-dual-bar", ["hh-sg", "--algebra", "data/dual-numbers.alg", "--degrees", "-3..3", "--qmax", "8"], 0),
    ("hh-sg-x3-periodic-tsv", ["hh-sg", "--algebra", "data/x3.alg", "--resolution", "data/x3-periodic.res",
                               "--degrees", "-3..3", "--format", "tsv"], 0),
    ("hh-sg-inconclusive", ["hh-sg", "--algebra", "data/dual-numbers.alg", "--degrees", "-3..-3",
                            "--qmax", "4", "--format", "tsv"], 1),
    ("hh-sg-product-x3", ["hh-sg-product", "--algebra", "data/x3.alg", "--resolution", "data/x3-periodic.res"], 0),
    ("hh-sg-product-x3-deg2", ["hh-sg-product", "--algebra", "data/x3.alg", "--resolution",
                               "data/x3-periodic.res", "--left", "2", "--right", "-2", "--format", "tsv"], 0),
    ("syzygy-check-dual-tsv", ["syzygy-check", "--algebra", "data/dual-numbers.alg", "--q", "0..3",
                               "--format", "tsv"], 0),
    ("mf-hom-residue", ["mf-hom", "data/x2-residue.mf"], 0),
    ("mf-hom-node-tsv", ["mf-hom", "data/node-x.mf", "data/node-y.mf", "--format", "tsv"], 0),
    ("mf-hom-trivial-tsv", ["mf-hom", "data/x3-trivial.mf", "data/x3-residue.mf", "--format", "tsv"], 0),
    ("validate-corpus", ["validate", "data/x3.alg", "data/a1-2x2.mf", "data/x3-periodic.res",
                         "--algebra", "data/x3.alg"], 0),
    ("milnor-syntax-error", ["milnor", "--poly", "x*y^"], 2),
    ("tyurina-non-isolated", ["tyurina", "--poly", "x^2*y", "--vars", "x,y"], 1),
]


def run_captured(argv):
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(ROOT)
    try:
        code = run(argv, out, err)
    finally:
        os.chdir(cwd)
    return code, out.getvalue(), err.getvalue()


def render(code, out, err):
    return f"exit {code}\n--- stdout\n{out}--- stderr\n{err}"


def run_subprocess(argv, hash_seed="0"):
    env = dict(os.environ, PYTHONHASHSEED=hash_seed)
    p = subprocess.run([sys.executable, "-m", "singhoch", *argv], cwd=ROOT, env=env,
                       capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


@pytest.mark.parametrize("name, argv, status", CORPUS, ids=[c[0] for c in CORPUS])
def test_golden(name, argv, status):
    code, out, err = run_captured(argv)
    assert code == status, err
    text = render(code, out, err)
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("UPDATE_GOLDEN") == "1":
        path.write_text(text)
    assert path.exists(), f"missing golden file {path.name}; rerun with UPDATE_GOLDEN=1"
    assert text == path.read_text()


def test_every_subcommand_has_a_golden_file():
    from singhoch.cli import build_parser
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    covered = {argv[0] for _, argv, _ in CORPUS}
    assert set(sub.choices) <= covered


def test_spec_examples():
    code, out, _ = run_captured(["milnor", "--poly", "x^3+y^3", "--vars", "x,y"])
    assert code == 0 and '"milnor_number": 4' in out
    code, out, _ = run_captured(["hh-sg", "--algebra", "data/dual-numbers.alg", "--degrees", "-3..3",
                                 "--qmax", "8"])
    assert code == 0 and '"trace"' in out
    import json
    assert list(json.loads(out)["dims"].values()) == [1] * 7
    code, out, err = run_captured(["milnor", "--poly", "x*y^"])
    assert code == 2 and out == "" and "position" in err


def test_usage_errors():
    for argv in (["bogus"], ["milnor", "--poly", "x", "--nope"], [], ["hh", "--algebra", "data/x3.alg",
                                                                      "--degrees", "3..1"]):
        code, out, err = run_captured(argv)
        assert code == 2 and out == "" and "usage" in err
    code, _, err = run_captured(["hh", "--algebra", "data/missing.alg"])
    assert code == 2 and "missing.alg" in err


def test_budget_refusal():
    code, _, err = run_captured(["hh", "--algebra", "data/x3.alg", "--degrees", "0..6", "--budget", "1000"])
    assert code == 1 and "size budget" in err


def test_parse_range():
    assert parse_range("-3..3") == (-3, 3)
    assert parse_range("2") == (2, 2)


def test_module_entry_point_matches_in_process():
    argv = ["compare", "--poly1", "x^2+y^2", "--poly2", "x*y", "--vars", "x,y"]
    assert run_subprocess(argv) == run_captured(argv)
