import json
from pathlib import Path

import pytest

from pyadams.common_adams import cyclic_adams
from pyadams.common_cli import EXIT_OK, EXIT_REFUTED, EXIT_TRUNCATED, run_cli
from pyadams.common_complex import concentrated
from pyadams.common_config import SessionConfig
from pyadams.common_io import load_object
from pyadams.common_periodic import PeriodicComplex, periodify

DATA = Path(__file__).resolve().parent.parent / "data"


def _data(name):
    return str(DATA / name)


def test_picard_certify(capsys):
    code = run_cli(["picard-certify", "-C", _data("pi_shift2.json"), "-D", _data("pi_shift-2.json")])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("command: picard-certify\nconfig: p=3 N=4 w=4 window=-1:1")
    assert "verdict: certified\nshift: 0\n" in out


def test_picard_refutes(capsys):
    code = run_cli(["picard-certify", "-C", _data("pi_shift2.json"), "-D", _data("pi_shift2.json")])
    assert code == EXIT_REFUTED
    assert "verdict: refuted" in capsys.readouterr().out


def test_picard_identify(capsys):
    assert run_cli(["picard-identify", _data("pi_shift2.json")]) == EXIT_OK
    assert "shift: 2\n" in capsys.readouterr().out

    assert run_cli(["picard-identify", _data("zp0.json")]) == EXIT_REFUTED
    assert "expected a periodic complex" in capsys.readouterr().err


def test_truncated_resolution(capsys):
    assert run_cli(["resolve", _data("zp0.json"), "--depth", "1"]) == EXIT_TRUNCATED
    assert "flags: [truncated]" in capsys.readouterr().out

    assert run_cli(["resolve", _data("zp0.json")]) == EXIT_OK


def test_check_quasi_iso():
    assert run_cli(["check-quasi-iso", _data("q_map.json")]) == EXIT_OK


def test_check_map(capsys):
    assert run_cli(["check-map", _data("q_map.json")]) == EXIT_OK
    assert "valid_p: true\nfailures: []\n" in capsys.readouterr().out


def test_ext(capsys):
    code = run_cli(["ext", _data("zp_module.json"), _data("zp_module.json"), "--s-max", "1"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "ext:\n  0: Z/3\n  1: Z/3\n" in out

    assert run_cli(["ext", _data("zp0.json"), _data("zp_module.json")]) == EXIT_REFUTED


def test_witness_suite(capsys):
    assert run_cli(["witness-suite"]) == EXIT_OK
    assert "witnesses:" in capsys.readouterr().out


def test_periodify_output(tmp_path):
    out = tmp_path / "periodic.json"
    assert run_cli(["periodify", _data("zp0.json"), "-o", str(out)]) == EXIT_OK

    cfg = SessionConfig()
    X = load_object(out, cfg)
    assert isinstance(X, PeriodicComplex)
    assert X == periodify(concentrated(cyclic_adams(3, 1), 0), cfg.period, cfg.twist_weight)


def test_json_report(tmp_path, capsys):
    path = tmp_path / "report.json"
    code = run_cli(["homology", _data("zp0.json"), "--json-report", str(path)])
    assert code == EXIT_OK
    data = json.loads(path.read_text())
    assert data["command"] == "homology"
    assert data["homology"] == {"0": "(Z/3, psi=1)"}
    assert "homology:\n  0: (Z/3, psi=1)\n" in capsys.readouterr().out


def test_deterministic_reports(capsys):
    argv = ["derived-tensor", _data("zp0.json"), _data("zp0.json")]
    run_cli(argv)
    first = capsys.readouterr().out
    run_cli(argv)
    assert capsys.readouterr().out == first


@pytest.mark.parametrize(
    "argv",
    [
        ["nope"],
        ["homology"],
        ["homology", "missing.json"],
        ["homology", _data("zp0.json"), "--p", "4"],
        ["homology", _data("zp0.json"), "--window", "3"],
        ["homology", _data("zp0.json"), "--p", "5"],
    ],
)
def test_invalid_invocations(argv):
    assert run_cli(argv) == EXIT_REFUTED


def test_timing_goes_to_stderr(capsys):
    assert run_cli(["homology", _data("zp0.json"), "--timing"]) == EXIT_OK
    captured = capsys.readouterr()
    assert "Time: homology:" in captured.err
    assert "Time:" not in captured.out


def test_picard_table(capsys):
    assert run_cli(["picard-table", "--bound", "1"]) == EXIT_OK
    assert "holds_p: true" in capsys.readouterr().out
