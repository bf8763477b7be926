"""The command line, driven in-process."""

import json

import pytest
from click.testing import CliRunner

from gvblocks.cli import (
    CategoryParseError, RunConfig, load_category, main, parse_category, run, run_config,
)
from gvblocks.pointed_gv import CocycleValidationError, make_cyclic_category


@pytest.fixture
def cli():
    runner = CliRunner()

    def invoke(*args, env=None):
        res = runner.invoke(main, list(args), env=env)
        if res.exception and not isinstance(res.exception, SystemExit):
            raise res.exception
        return res
    return invoke


Z4_TEXT = "name Z/4\ngroup 4\nq 1\nh0 1\n"


def test_check_z4(cli):
    res = cli("check", "builtin:z4")
    assert res.exit_code == 0
    out = json.loads(res.output)
    assert out["passed"]
    assert [r["suite"].split("[")[0] for r in out["reports"]] == [
        "abelian_cocycle", "pivotal_axioms", "hexagon_H", "balanced_braided"]
    assert all(r["passed"] and r["instances"] > 0 for r in out["reports"])


def test_check_with_rbr(cli):
    res = cli("check", "builtin:trivial", "--rbr", "3", "--format", "csv")
    assert res.exit_code == 0
    header, *rows = res.output.strip().splitlines()
    assert header.startswith("suite,passed,instances")
    assert len(rows) == 6


def test_corrupted_tau(cli, tmp_path):
    f = tmp_path / "bad.cat"
    f.write_text(Z4_TEXT + "tau 2 0 = 1/3\n")
    res = cli("check", str(f))
    assert res.exit_code == 1
    out = json.loads(res.output)
    assert not out["passed"]
    witnesses = [w for r in out["reports"] for w in r["failures"]]
    assert witnesses and all("witness" in w and "lhs" in w for w in witnesses)
    text = cli("check", str(f), "--format", "text").output
    assert "FAIL" in text and "!=" in text


def test_blocks_dimension(cli):
    for g, dim in ((1, 4), (2, 0), (3, 64)):
        out = json.loads(cli("blocks", "builtin:z4", "--g", str(g), "--labels", "").output)
        assert out["space"]["dim"] == dim
    out = json.loads(cli("blocks", "builtin:z4", "--g", "1", "--basis").output)
    assert out["basis"] == [[[0]], [[1]], [[2]], [[3]]]


def test_spectrum_csv(cli):
    res = cli("twist-spectrum", "builtin:z4", "--format", "csv")
    lines = res.output.strip().splitlines()
    assert lines[0].split(",")[:4] == ["index", "h", "k", "N"]
    exps = [tuple(l.split(",")[2:4]) for l in lines[1:]]
    assert exps == [("0", "1"), ("3", "8"), ("0", "1"), ("7", "8")]


def test_excise(cli):
    res = cli("excise", "builtin:z4", "--g", "1", "--all-labels", "--n", "2")
    assert res.exit_code == 0
    assert len(json.loads(res.output)["reports"]) == 16


def test_act(cli):
    out = json.loads(cli("act", "builtin:z4", "--labels", "1 1", "--word", "s1").output)
    (row, col, value), = out["operator"]["entries"]
    assert value["root"] == {"k": 1, "N": 8}
    res = cli("act", "builtin:z4", "--labels", "1 1", "--word", "s2")
    assert res.exit_code != 0


def test_braid_commands(cli):
    out = json.loads(cli("braid", "equals", "--n", "3", "s1 s2 s1", "s2 s1 s2").output)
    assert out["equal"] and out["second"] == "s2 s1 s2"
    out = json.loads(cli("braid", "equals", "--n", "2", "s1", "s1^-1").output)
    assert not out["equal"]
    out = json.loads(cli("braid", "multiply", "--n", "2", "s1", "s1").output)
    assert out["word"] == "s1 s1" and out["permutation"] == [0, 1]
    out = json.loads(cli("braid", "cable", "--n", "1", "--widths", "2", "t1").output)
    assert out["n"] == 2


def test_graph_command(cli, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("v 0 1 2\nv 3 4 5\ne 0 3\ne 1 4\n")
    out = json.loads(cli("graph", str(f)).output)
    assert (out["vertices"], out["loops"], out["legs"]) == (2, 1, 2)
    out = json.loads(cli("graph", str(f), "--contract", "0", "--category", "builtin:z4",
                         "--labels", "1 3").output)
    assert out["vertices"] == 1 and out["loops"] == 1
    assert out["value"]["dim"] == 4


def test_env_format_and_output(cli, tmp_path):
    res = cli("twist-spectrum", "builtin:z4", env={"GVBLOCKS_FORMAT": "text"})
    assert "zeta_8^3" in res.output
    target = tmp_path / "r.json"
    assert cli("blocks", "builtin:z4", "--g", "1", "--output", str(target)).output == ""
    assert json.loads(target.read_text())["space"]["dim"] == 4


def test_determinism(cli):
    a = cli("check", "builtin:z4_explicit").output
    b = cli("check", "builtin:z4_explicit").output
    assert a == b
    json.loads(a)


def test_unknown_option(cli):
    assert cli("blocks", "builtin:z4", "--genus", "2").exit_code == 2
    assert cli("check", "builtin:nope").exit_code != 0


# -- run() and RunConfig ----------------------------------------------------------

def test_run_exit_codes(tmp_path, capsys):
    assert run(["check", "builtin:z4"]) == 0
    bad = tmp_path / "bad.cat"
    bad.write_text("group 4\nq 1\nh0 1\ntau 1 2 = 1/5\n")
    assert run(["check", str(bad)]) == 1
    broken = tmp_path / "broken.cat"
    broken.write_text("group 4\nq 1\nh0 x\n")
    assert run(["blocks", str(broken)]) == 2
    assert "line 3" in capsys.readouterr().err
    assert run(["blocks", str(tmp_path / "missing.cat")]) == 2


def test_run_config(tmp_path):
    out = tmp_path / "o.json"
    cfg = RunConfig("blocks", "builtin:z4", {"g": 3, "labels": ""}, output=str(out))
    assert run_config(cfg) == 0
    assert json.loads(out.read_text())["space"]["dim"] == 64
    cfg = RunConfig("braid", params={"op": "equals", "n": 2, "words": ["s1 t1", "t2 s1"]}, output=str(out))
    assert run_config(cfg) == 0 and json.loads(out.read_text())["equal"]
    with pytest.raises(ValueError, match="unknown parameters"):
        RunConfig("blocks", "builtin:z4", {"genus": 3})
    with pytest.raises(ValueError):
        RunConfig("plot")
    with pytest.raises(ValueError):
        RunConfig("blocks", "builtin:z4", format="xml")


# -- category files -------------------------------------------------------------------

def test_parse_minimal_and_builtins():
    C = parse_category("group 1\nh0 0\n")
    assert C.group.order == 1
    z4 = load_category("builtin:z4")
    ref = make_cyclic_category(4, 1, 1)
    assert z4.lam == ref.lam and z4.tau == ref.tau and z4.g0 == (2,)
    assert load_category("builtin:z2_semion").is_r_category


def test_parse_errors():
    with pytest.raises(CategoryParseError) as e:
        parse_category("group 4\nq 1\nh0 1\nfrob 2\n")
    assert (e.value.line, e.value.col) == (4, 1)
    with pytest.raises(CategoryParseError) as e:
        parse_category("group 4\nq 1\nh0 1\ntau 1 1 = x\n")
    assert e.value.line == 4 and e.value.col > 1


def test_even_form_violation_is_named():
    text = "group 2\nh0 0\n" + "".join(f"tau {a} {b} = {a * b}/8\n" for a in range(2) for b in range(2))
    with pytest.raises(CocycleValidationError) as e:
        parse_category(text)
    assert e.value.axiom in ("even_form", "bicharacter")
    assert e.value.axiom in str(e.value)


def test_product_grammar():
    C = parse_category("group 2 2\nq 0 0\nbichar 0 1 = 1\nh0 1,0\n")
    assert C.group.order == 4 and C.h0 == (1, 0)
