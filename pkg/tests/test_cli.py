"""End-to-end command-line checks, run in process."""

import io
import json
import sys

import pytest

from bandforge import cli
from bandforge.fixtures import fixture_text


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv)
    return code, json.loads(out), err


# ------------------------------------------------------------ reports


def test_report_shape_and_determinism(capsys):
    code, rep, _ = run_json(capsys, ["twobridge", "eval", "3,2,-3"])
    assert code == 0
    assert set(rep) == {"command", "inputs", "results", "assertions",
                        "timestamp"}
    assert rep["command"] == "twobridge eval"
    assert rep["inputs"]["conway"] == "3,2,-3"
    assert rep["results"]["fraction"] == "18/5"

    code2, rep2, _ = run_json(capsys, ["twobridge", "eval", "3,2,-3"])
    rep.pop("timestamp"), rep2.pop("timestamp")
    assert rep == rep2


def test_text_mode(capsys):
    code, out, _ = run(capsys, ["twobridge", "cosmetic", "3,2,-3", "--text"])
    assert code == 0
    assert "[ok  ]" in out
    assert "partner_is_mirror" in out


def test_failed_assertion_text_mode(capsys, tmp_path):
    doctored = fixture_text("A").replace("10.01776364", "10.11776364")
    path = tmp_path / "doctored.tri"
    path.write_text(doctored)
    code, out, _ = run(capsys, ["tri", "volume", str(path), "--text"])
    assert code == 1
    assert "[FAIL]" in out


# ---------------------------------------------------------- twobridge


def test_twobridge_commands(capsys):
    code, rep, _ = run_json(capsys, ["twobridge", "expand", "18/5"])
    assert code == 0
    assert rep["results"]["conway"] == [4, -3, 2]

    code, rep, _ = run_json(capsys, ["twobridge", "equal", "5/2", "5/3"])
    assert code == 0 and rep["results"]["equivalent"] is True

    code, rep, _ = run_json(capsys, ["twobridge", "mirror", "18/5"])
    assert code == 0 and rep["results"]["mirror"] == "S(18,13)"

    code, rep, _ = run_json(capsys, ["twobridge", "unlink1", "18/5"])
    assert code == 0 and rep["results"]["witness"] == [3, 1]

    code, rep, _ = run_json(capsys, ["twobridge", "signature", "5/1"])
    assert code == 0 and rep["results"]["signature"] == -4

    code, rep, _ = run_json(capsys, ["twobridge", "fourmove", "5/1", "5/4"])
    assert code == 0 and rep["results"]["four_move_obstructed"] is True


def test_twobridge_parse_errors(capsys):
    for argv in [["twobridge", "eval", "3,x"],
                 ["twobridge", "expand", "abc"],
                 ["twobridge", "signature", "18/5"],   # link, not a knot
                 ["twobridge", "expand", "4/2"]]:      # reduces to 2/1, fine
        code, _, err = run(capsys, argv)
        if argv[-1] == "4/2":
            assert code == 0
        else:
            assert code == 2
            assert err.startswith("error:")


# ------------------------------------------------------------ surgery


def test_surgery_commands(capsys):
    code, rep, _ = run_json(capsys, ["surgery", "distance", "19/1", "18/1"])
    assert code == 0 and rep["results"]["distance"] == 1

    code, rep, _ = run_json(capsys, ["surgery", "distance", "1/0", "3/1"])
    assert code == 0 and rep["results"]["distance"] == 1

    code, rep, _ = run_json(capsys, ["surgery", "lens-equal", "7/2", "7/4"])
    assert code == 0 and rep["results"]["equivalent"] is True

    code, rep, _ = run_json(
        capsys, ["surgery", "lens-equal", "7/2", "7/3", "--unoriented"])
    assert code == 0 and rep["results"]["equivalent"] is True

    code, rep, _ = run_json(capsys, ["surgery", "lens-mirror", "49/30"])
    assert code == 0 and rep["results"]["mirror"] == "L(49,19)"

    code, rep, _ = run_json(capsys, ["surgery", "dbc", "18/5"])
    assert code == 0
    assert rep["results"]["double_branched_cover"] == "L(18,5)"

    code, rep, _ = run_json(capsys, ["surgery", "matignon", "3", "1"])
    assert code == 0
    assert rep["results"]["lens_space"] == "L(18,5)"
    assert all(a["pass"] for a in rep["assertions"])


def test_surgery_bhw(capsys):
    code, rep, _ = run_json(capsys, ["surgery", "bhw"])
    assert code == 0
    assert len(rep["assertions"]) == 4
    assert all(a["pass"] for a in rep["assertions"])


def test_surgery_parse_error(capsys):
    code, _, err = run(capsys, ["surgery", "distance", "19/1", "0/0"])
    assert code == 2 and "error:" in err


# ---------------------------------------------------------------- tri


def test_tri_parse_fixture(capsys):
    code, rep, _ = run_json(capsys, ["tri", "parse", "--fixture", "B"])
    assert code == 0
    assert rep["results"]["tet_count"] == 26
    assert rep["results"]["cusp_count"] == 7
    assert rep["assertions"][0]["name"] == "well_formed"
    assert rep["assertions"][0]["pass"] is True


def test_tri_volume_matches_header(capsys):
    code, rep, _ = run_json(capsys, ["tri", "volume", "--fixture", "A"])
    assert code == 0
    assert abs(rep["results"]["volume"] - 10.01776364) < 5e-7
    assert rep["results"]["residual_max_at_hints"] < 1e-8


def test_tri_solve(capsys):
    code, rep, _ = run_json(capsys, ["tri", "solve", "--fixture", "B"])
    assert code == 0
    assert rep["results"]["residual_max"] < 1e-12
    assert len(rep["results"]["shapes"]) == 26
    assert all(im > 0 for _, im in rep["results"]["shapes"])


def test_tri_certify(capsys):
    code, rep, _ = run_json(capsys, ["tri", "certify", "--fixture", "A"])
    assert code == 0
    names = [a["name"] for a in rep["assertions"]]
    assert any("contracted" in n for n in names)
    assert all(a["pass"] for a in rep["assertions"])


def test_tri_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(fixture_text("A")))
    code, rep, _ = run_json(capsys, ["tri", "parse"])
    assert code == 0
    assert rep["results"]["tet_count"] == 12


# ----------------------------------------------------------- failures


def test_empty_stdin_is_parse_error(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(""))
    code, _, err = run(capsys, ["tri", "parse"])
    assert code == 2
    assert "missing header" in err


def test_corrupt_file_is_parse_error(capsys, tmp_path):
    path = tmp_path / "junk.tri"
    path.write_text("not a triangulation\n1 2 3\n")
    code, _, err = run(capsys, ["tri", "parse", str(path)])
    assert code == 2


def test_missing_file_is_parse_error(capsys, tmp_path):
    code, _, err = run(capsys, ["tri", "volume", str(tmp_path / "no.tri")])
    assert code == 2


def test_solver_failure_exit_code(capsys):
    code, _, err = run(capsys, ["tri", "solve", "--fixture", "A",
                                "--max-iter", "0"])
    assert code == 3
    assert "error:" in err


def test_certify_failure_exit_code(capsys):
    code, _, err = run(capsys, ["tri", "certify", "--fixture", "A",
                                "--radius", "0.5"])
    assert code == 4


def test_doctored_header_fails_assertion(capsys, tmp_path):
    doctored = fixture_text("A").replace("10.01776364", "10.11776364")
    path = tmp_path / "doctored.tri"
    path.write_text(doctored)
    code, rep, _ = run_json(capsys, ["tri", "volume", str(path)])
    assert code == 1
    assert rep["assertions"][0]["name"] == "matches_header"
    assert rep["assertions"][0]["pass"] is False


def test_path_and_fixture_conflict(capsys, tmp_path):
    path = tmp_path / "a.tri"
    path.write_text(fixture_text("A"))
    code, _, err = run(capsys, ["tri", "parse", str(path), "--fixture", "A"])
    assert code == 2


def test_unknown_fixture_label(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["tri", "parse", "--fixture", "Z"])
    assert exc.value.code == 2
    capsys.readouterr()


# ------------------------------------------------ external fixture dir


def test_external_fixture_dir(capsys, monkeypatch, tmp_path):
    (tmp_path / "C.tri").write_text(fixture_text("A"))
    monkeypatch.setenv("BANDFORGE_FIXTURE_DIR", str(tmp_path))
    code, rep, _ = run_json(capsys, ["tri", "volume", "--fixture", "C"])
    assert code == 0
    assert abs(rep["results"]["volume"] - 10.01776364) < 5e-7


def test_all_fixtures_certify(capsys):
    code, rep, _ = run_json(capsys, ["tri", "certify", "--all-fixtures"])
    assert code == 0
    names = [a["name"] for a in rep["assertions"]]
    assert any(n.startswith("A:") for n in names)
    assert any(n.startswith("B:") for n in names)
    assert all(a["pass"] for a in rep["assertions"])
