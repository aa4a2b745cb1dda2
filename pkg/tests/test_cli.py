"""Command line: exit codes, make round trips, output formats."""
import json

import pytest
from click.testing import CliRunner

from arqlab import zoo
from arqlab.analysis import compare_invariants
from arqlab.cli import EXIT_BUDGET, EXIT_SHORT_CYCLE, EXIT_USAGE, main
from arqlab.textformat import parse_algebra


@pytest.fixture
def runner():
    return CliRunner()


def make(runner, *args):
    res = runner.invoke(main, ["make", *map(str, args)])
    assert res.exit_code == 0, res.output
    return res.output


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


@pytest.mark.parametrize("args, expected", [
    (("nakayama", 3, 2), lambda: zoo.nakayama_selfinjective(3, 2)),
    (("linear", 3), lambda: zoo.hereditary_nakayama(3)),
    (("brauer", "star", 2, 2), lambda: zoo.brauer_tree_algebra(zoo.BrauerTree.star(2, 2))),
    (("brauer", "line", 2), lambda: zoo.brauer_tree_algebra(zoo.BrauerTree.line(2))),
])
def test_make_round_trip(runner, args, expected):
    a = parse_algebra(make(runner, *args))
    assert all(compare_invariants(a, expected()).values())


def test_make_trivext_reflect_opext(runner, tmp_path):
    path = write(tmp_path, "a3.alg", make(runner, "linear", 3))
    t = parse_algebra(make(runner, "trivext", path, 2))
    assert t.dim == 24 and t.n == 6
    r = parse_algebra(make(runner, "reflect", path, 1))
    assert r.n == 3 and r.dim == 6
    o = parse_algebra(make(runner, "opext", path, "simple", 1))
    assert o.n == 4 and o.dim == 8


def test_make_is_deterministic(runner, tmp_path):
    path = write(tmp_path, "a3.alg", make(runner, "linear", 3))
    assert make(runner, "trivext", path, 3) == make(runner, "trivext", path, 3)


def test_make_errors(runner, tmp_path):
    path = write(tmp_path, "a3.alg", make(runner, "linear", 3))
    assert runner.invoke(main, ["make", "reflect", path, "3"]).exit_code == EXIT_USAGE
    assert runner.invoke(main, ["make", "reflect", path, "9"]).exit_code == EXIT_USAGE
    assert runner.invoke(main, ["make", "nakayama", "0", "2"]).exit_code == EXIT_USAGE
    assert runner.invoke(main, ["make", "trivext", str(tmp_path / "missing"), "1"]).exit_code == EXIT_USAGE


def test_short_cycles_exit_codes(runner, tmp_path, example_path):
    res = runner.invoke(main, ["short-cycles", example_path])
    assert res.exit_code == EXIT_SHORT_CYCLE
    assert "P(1)" in res.output and "P(4)" in res.output
    free = write(tmp_path, "n32.alg", make(runner, "nakayama", 3, 2))
    res = runner.invoke(main, ["short-cycles", free, "--format", "json"])
    assert res.exit_code == 0
    assert json.loads(res.output)["verdict"] == "short-cycle-free"


def test_indec_and_ar_quiver(runner, tmp_path):
    path = write(tmp_path, "n32.alg", make(runner, "nakayama", 3, 2))
    res = runner.invoke(main, ["indec", path])
    assert res.exit_code == 0
    lines = res.output.splitlines()
    assert len(lines) == 6
    assert sum(line.endswith("PI") for line in lines) == 3
    res = runner.invoke(main, ["ar-quiver", path])
    assert res.output.splitlines()[0] == "6 indecomposables, 3 projective"
    data = json.loads(runner.invoke(main, ["ar-quiver", path, "--format", "json"]).output)
    assert len(data["nodes"]) == 6
    dot = runner.invoke(main, ["export", "dot", path]).output
    assert dot.startswith("digraph") and dot.count("shape=box") == 3


def test_slices(runner, example_path):
    res = runner.invoke(main, ["slices", example_path, "--format", "json"])
    assert res.exit_code == 0
    rows = json.loads(res.output)
    assert len(rows) == 24 and all(r["double_tau_rigid"] for r in rows)
    res = runner.invoke(main, ["slices", example_path, "--mode", "from-projective", "--projective", "1"])
    assert res.exit_code == 0 and "S(1)" in res.output
    res = runner.invoke(main, ["slices", example_path, "--mode", "from-projective"])
    assert res.exit_code == EXIT_USAGE


def test_theorem_check(runner, tmp_path):
    path = write(tmp_path, "n63.alg", make(runner, "nakayama", 6, 3))
    res = runner.invoke(main, ["theorem-check", path])
    assert res.exit_code == 0
    cert = json.loads(res.output)
    assert cert["verdict"] == "short-cycle-free" and cert["hereditary_type"] == "A2"
    path = write(tmp_path, "n22.alg", make(runner, "nakayama", 2, 2))
    assert runner.invoke(main, ["theorem-check", path]).exit_code == EXIT_SHORT_CYCLE


def test_theorem_check_is_deterministic(runner, example_path):
    a = runner.invoke(main, ["theorem-check", example_path]).output
    b = runner.invoke(main, ["theorem-check", example_path]).output
    assert a == b


def test_budget_exit(runner, example_path):
    res = runner.invoke(main, ["indec", example_path, "--budget-nodes", "5"])
    assert res.exit_code == EXIT_BUDGET


def test_field_override_and_small_characteristic(runner, tmp_path):
    path = write(tmp_path, "n32.alg", make(runner, "nakayama", 3, 2))
    assert runner.invoke(main, ["indec", path, "--field", "gf:7"]).exit_code == 0
    assert runner.invoke(main, ["indec", path, "--field", "gf:5"]).exit_code == EXIT_USAGE
    assert runner.invoke(main, ["indec", path, "--field", "nonsense"]).exit_code == EXIT_USAGE


def test_parse_error(runner, tmp_path):
    path = write(tmp_path, "bad.alg", "this is not an algebra\n")
    assert runner.invoke(main, ["indec", path]).exit_code == EXIT_USAGE


def test_stdin(runner):
    text = make(runner, "nakayama", 2, 2)
    res = runner.invoke(main, ["indec", "-"], input=text)
    assert res.exit_code == 0 and len(res.output.splitlines()) == 4


def test_export_schema_and_certificate(runner, example_path):
    schema = json.loads(runner.invoke(main, ["export", "json", example_path, "--what", "schema"]).output)
    cert = json.loads(runner.invoke(main, ["export", "json", example_path, "--what", "certificate"]).output)
    import jsonschema
    jsonschema.validate(cert, schema)
    res = runner.invoke(main, ["export", "dot", example_path, "--what", "certificate"])
    assert res.exit_code == EXIT_USAGE
