"""Command line interface: exit codes, report format, determinism, goldens."""

import io
import contextlib
from importlib import resources

import numpy as np
import pytest

from solvgeom.algebra import serialize
from solvgeom.carnot import build_solvmanifold, complex_hyperbolic_triple, random_triple
from solvgeom.cli import DEFAULT_SEED, main

from conftest import SEED


def run(argv):
    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def records(text):
    rows = {}
    for line in text.splitlines():
        if line.startswith("#") or not line.strip():
            continue
        name, status, value, tol, claim = line.split("\t")
        rows[name] = (status, value, tol, claim)
    return rows


def test_default_seed_constant():
    assert DEFAULT_SEED == 0xE15731 == 14767921


def test_verify_complex_hyperbolic():
    code, out, _ = run(["verify", "complex-hyperbolic", "--n", "2"])
    assert code == 0
    rows = records(out)
    assert rows["einstein"][0] == "pass"
    assert rows["einstein-constant"][1] == "-1.5"
    assert rows["eigenvalue-type"][1] == "(1,2;2,1)"
    assert out.startswith("# command: verify complex-hyperbolic --n 2\n")
    assert "# seed: 14767921" in out


def test_verify_real_hyperbolic():
    code, out, _ = run(["verify", "real-hyperbolic", "--dim", "4"])
    assert code == 0
    rows = records(out)
    assert rows["einstein"][0] == "pass"
    assert rows["einstein-constant"][1] == "-0.75"


def test_verify_carnot_target():
    code, out, _ = run(["verify", "carnot", "--r", "3", "--s", "3", "--trials", "40"])
    assert code == 0
    rows = records(out)
    assert rows["uniform-search"][0] == "pass"
    assert rows["einstein"][0] == "pass"


def test_verify_serialized_file(tmp_path):
    path = tmp_path / "alg.json"
    path.write_text(serialize(build_solvmanifold(complex_hyperbolic_triple(2))))
    code, out, _ = run(["verify", str(path)])
    assert code == 0
    assert records(out)["einstein-constant"][1] == "-1.5"


def test_verify_non_einstein_file_exits_1(tmp_path):
    rng = np.random.default_rng(SEED)
    path = tmp_path / "alg.json"
    path.write_text(serialize(build_solvmanifold(random_triple(3, 1, rng))))
    code, out, _ = run(["verify", str(path)])
    assert code == 1
    assert records(out)["einstein"][0] == "fail"


def test_verify_corrupted_file_exits_2(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{this is not json")
    code, out, err = run(["verify", str(path)])
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_verify_missing_file_exits_2(tmp_path):
    code, _, err = run(["verify", str(tmp_path / "nope.json")])
    assert code == 2
    assert "error:" in err


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        run(["carnot"])  # missing subcommand
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["symmetric", "build"])  # missing required --space
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["no-such-command"])
    assert exc.value.code == 2


def test_version_flag():
    with pytest.raises(SystemExit) as exc:
        run(["--version"])
    assert exc.value.code == 0


def test_carnot_search_finds_uniform_pair():
    code, out, _ = run(["carnot", "search", "--r", "4", "--s", "2", "--trials", "25"])
    assert code == 0
    rows = records(out)
    assert rows["best-residual"][0] == "pass"
    assert rows["best-residual"][3] == "uniform-subspace"
    assert rows["is-uniform"][0] == "pass"
    assert rows["so4-criterion"][3] == "so4-quaternion-criterion"
    assert rows["einstein-conditions"][0] == "pass"


def test_carnot_search_nonexistence_is_evidence():
    code, out, _ = run(["carnot", "search", "--r", "3", "--s", "1", "--trials", "50"])
    assert code == 0
    rows = records(out)
    status, value, _, claim = rows["best-residual"]
    assert status == "evidence"
    assert claim == "uniform-nonexistence-evidence"
    assert float(value) >= 0.05


def test_carnot_classify_single_s():
    code, out, _ = run(
        ["carnot", "classify-so4", "--s", "1", "--trials", "30"]
    )
    assert code == 0
    rows = records(out)
    assert rows["so4-classes-s1"] == ("pass", "1", "1", "so4-class-counts")


def test_family_report_small_grid(tmp_path):
    csv = tmp_path / "rows.csv"
    code, out, _ = run(
        ["family", "report", "--grid", "3", "--samples", "15", "--out", str(csv)]
    )
    assert code == 0
    rows = records(out)
    assert rows["einstein-residual-max"][0] == "pass"
    assert rows["centralizer-angle-dev"][0] == "pass"
    assert rows["bracket-angle-dev"][0] == "pass"
    assert rows["centralizer-dim-generic"] == ("pass", "1", "1", "centralizer-dimension")
    assert rows["sectional-range"][0] == "evidence"
    lines = csv.read_text().splitlines()
    assert lines[0] == (
        "r,s,t,einstein_residual,cos_angle_centralizer,"
        "cos_angle_bracket,min_sectional,max_sectional"
    )
    assert len(lines) == int(rows["grid-points"][1]) + 1


def test_family_margin_reference_point():
    code, out, _ = run(
        ["family", "margin", "--r", "1", "--s", "0", "--t", "0",
         "--samples", "400", "--descents", "5"]
    )
    assert code == 0
    rows = records(out)
    status, value, _, claim = rows["min-margin"]
    assert status == "evidence"
    assert claim == "curvature-margin"
    assert float(value) > 0.0


def test_reports_byte_identical_for_fixed_seed(tmp_path):
    args = ["family", "report", "--grid", "2", "--samples", "10", "--seed", "7"]
    code1, out1, _ = run(args)
    code2, out2, _ = run(args)
    assert code1 == code2 == 0
    assert out1 == out2
    # and the csv side channel is reproducible too
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(args + ["--out", str(a)])
    run(args + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_search_reports_differ_across_seeds():
    args = ["carnot", "search", "--r", "4", "--s", "3", "--trials", "4"]
    _, out1, _ = run(args + ["--seed", "1"])
    _, out2, _ = run(args + ["--seed", "2"])
    v1 = records(out1)["best-residual"][1]
    v2 = records(out2)["best-residual"][1]
    assert v1 != v2  # different random starts give different optima


def test_symmetric_build_with_twist_battery():
    code, out, _ = run(
        ["symmetric", "build", "--space", "so_pq", "--p", "2", "--q", "4",
         "--twist", "wa:1"]
    )
    assert code == 0
    rows = records(out)
    assert rows["einstein-constant"][1] == "-2"
    assert rows["twist-involution"] == ("pass", "0", "0", "twist-involution")
    assert rows["lambda-drift"][0] == "pass"
    assert rows["ricci-drift"][0] == "pass"
    assert rows["witness-positive-curvature"][0] == "pass"


def test_symmetric_build_golden_match(tmp_path):
    golden = resources.files("solvgeom") / "tables" / "sl3h_brackets.tsv"
    local = tmp_path / "golden.tsv"
    local.write_bytes(golden.read_bytes())
    code, out, _ = run(
        ["symmetric", "build", "--space", "sl_nH", "--n", "3",
         "--twist", "paper", "--golden", str(local)]
    )
    assert code == 0
    assert records(out)["golden-table-match"][0] == "pass"


def test_symmetric_build_golden_mismatch_fails(tmp_path):
    wrong = tmp_path / "wrong.tsv"
    wrong.write_text("not the table\n")
    code, out, _ = run(
        ["symmetric", "build", "--space", "sl_nH", "--n", "3",
         "--golden", str(wrong)]
    )
    assert code == 1
    assert records(out)["golden-table-match"][0] == "fail"


def test_symmetric_build_enumerate_rigidity():
    code, out, _ = run(
        ["symmetric", "build", "--space", "so_pq", "--p", "2", "--q", "3",
         "--twist", "enumerate"]
    )
    assert code == 0
    rows = records(out)
    assert rows["twist-solutions"][1] == "4"
    status, value, _, claim = rows["rh-span-match"]
    assert status == "pass"
    assert value == "4:4+0"
    assert claim == "rh-rigidity"


def test_symmetric_twist_default_paper():
    code, out, _ = run(["symmetric", "twist", "--space", "sl_nH", "--n", "3"])
    assert code == 0
    rows = records(out)
    assert rows["twist"][1] == "paper"
    assert rows["einstein-after-twist"][0] == "pass"


def test_symmetric_table_writes_golden_bytes(tmp_path):
    out_file = tmp_path / "table.tsv"
    code, _, _ = run(
        ["symmetric", "table", "--space", "so_nH", "--n", "4",
         "--out", str(out_file)]
    )
    assert code == 0
    golden = resources.files("solvgeom") / "tables" / "so4h_brackets.tsv"
    assert out_file.read_bytes() == golden.read_bytes()


def test_symmetric_table_prints_to_stdout():
    code, out, _ = run(["symmetric", "table", "--space", "sl_nH", "--n", "3"])
    assert code == 0
    golden = resources.files("solvgeom") / "tables" / "sl3h_brackets.tsv"
    assert out == golden.read_text()


def test_bad_twist_spec_exits_2():
    code, _, err = run(
        ["symmetric", "twist", "--space", "so_pq", "--p", "2", "--q", "4",
         "--twist", "bogus:1"]
    )
    assert code == 2
    assert "error:" in err


def test_invalid_wa_index_exits_2():
    code, _, err = run(
        ["symmetric", "twist", "--space", "so_pq", "--p", "2", "--q", "4",
         "--twist", "wa:7"]
    )
    assert code == 2
    assert "error:" in err


def test_out_file_matches_stdout(tmp_path):
    path = tmp_path / "report.txt"
    code, out, _ = run(
        ["verify", "complex-hyperbolic", "--n", "3", "--out", str(path)]
    )
    assert code == 0
    assert path.read_text() == out
