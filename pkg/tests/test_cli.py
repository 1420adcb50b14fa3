import json
from pathlib import Path

import pytest

from lvk.cli import main

from conftest import CATALOG, catalog_entries


@pytest.fixture
def sys2(tmp_path):
    p = tmp_path / "sys2.system"
    p.write_text("vars x, y\ndx = x\ndy = y\n")
    return str(p)


@pytest.fixture
def lotka(tmp_path):
    p = tmp_path / "lotka.system"
    p.write_text("vars x, y\ndx = x - x*y\ndy = x*y - y\n")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- exit codes --------------------------------------------------------------------


def test_verify_ok_and_failed(capsys, lotka, sys2):
    code, out, _ = run(capsys, "verify", "--system", lotka, "--multiplier", "1/(x*y)")
    assert code == 0
    assert "status: ok" in out
    code, out, _ = run(capsys, "verify", "--system", sys2, "--multiplier", "1")
    assert code == 3
    assert "NONZERO" in out


def test_parse_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.system"
    bad.write_text("vars x, y\ndx = $\ndy = y\n")
    code, _, err = run(capsys, "verify", "--system", str(bad), "--multiplier", "1")
    assert code == 2
    assert "parse error" in err
    code, _, err = run(capsys, "verify", "--system", str(tmp_path / "nope"), "--multiplier", "1")
    assert code == 2


def test_not_closed_exit_5(capsys):
    code, out, _ = run(
        capsys, "integrate-form", "--vars", "x,y", "--component", "y", "--component", "0"
    )
    assert code == 5


def test_rational_only_exit_4(capsys):
    code, out, _ = run(
        capsys,
        "integrate-form",
        "--vars",
        "x",
        "--component",
        "1/(x^2-2)",
        "--rational-only",
    )
    assert code == 4
    assert "unavailable" in out


def test_synthesize_no_solution_exit_3(capsys, sys2):
    code, _, _ = run(
        capsys, "synthesize", "--system", sys2, "--poly", "x", "--target", "first-integral"
    )
    assert code == 3


# -- payload content ------------------------------------------------------------------


def test_pipeline_theorem2_json(capsys, tmp_path):
    p = tmp_path / "sys3.system"
    p.write_text("vars x, y, z\ndx = x\ndy = y\ndz = z\n")
    code, out, _ = run(
        capsys,
        "pipeline",
        "--system",
        str(p),
        "--mode",
        "theorem2",
        "--integral",
        "x/y",
        "--integral",
        "x/z",
        "--json",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["status"] == "ok"
    assert rep["result"]["multiplier"] == "x * y^-2 * z^-2"
    assert rep["result"]["gamma"] == "x/(y^2*z)"
    assert all(c["isZero"] for c in rep["certificates"])


def test_pipeline_theorem1_2d(capsys, sys2):
    code, out, _ = run(
        capsys,
        "pipeline",
        "--system",
        sys2,
        "--mode",
        "theorem1",
        "--multiplier",
        "1/(x*y)",
        "--json",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["result"]["firstIntegral"] == "log(x) - log(y)"


def test_pipeline_dependent_multipliers_exit_3(capsys, tmp_path):
    p = tmp_path / "sys3.system"
    p.write_text("vars x, y, z\ndx = x\ndy = y\ndz = z\n")
    code, out, _ = run(
        capsys,
        "pipeline",
        "--system",
        str(p),
        "--mode",
        "theorem1",
        "--multiplier",
        "1/(x*y*z)",
        "--multiplier",
        "1/(x*y*z)",
        "--json",
    )
    assert code == 3
    rep = json.loads(out)
    assert rep["result"]["dependent"] is True


def test_var_order_flag(capsys, tmp_path):
    p = tmp_path / "sys3.system"
    p.write_text("vars x, y, z\ndx = x\ndy = y\ndz = z\n")
    code, out, _ = run(
        capsys,
        "pipeline",
        "--system",
        str(p),
        "--mode",
        "theorem2",
        "--integral",
        "y/x",
        "--integral",
        "y/z",
        "--var-order",
        "x,z,y",
        "--json",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["result"]["lastVariable"] == "y"


def test_json_and_human_agree(capsys, lotka):
    argv = ["verify", "--system", lotka, "--multiplier", "1/(x*y)"]
    code_h, human, _ = run(capsys, *argv)
    code_j, js, _ = run(capsys, *argv, "--json")
    assert code_h == code_j == 0
    rep = json.loads(js)
    assert f"status: {rep['status']}" in human
    assert f"system: {rep['systemName']}" in human
    for cert in rep["certificates"]:
        assert cert["identity"] in human
        assert cert["residual"] in human
    assert rep["result"]["object"] in human


# -- catalog -----------------------------------------------------------------------


@pytest.mark.parametrize("name,argv", catalog_entries())
def test_catalog_goldens_byte_identical(capsys, name, argv):
    golden = (CATALOG / f"{name}.golden.json").read_text()
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == 0 and code2 == 0
    assert out1 == out2, "same input must give byte-identical JSON"
    assert out1 == golden
    rep = json.loads(out1)
    assert rep["status"] == "ok"
    for cert in rep["certificates"]:
        assert cert["residual"] == "0" and cert["isZero"]
