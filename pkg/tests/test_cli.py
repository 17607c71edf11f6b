import csv
import json
import math
import subprocess
import sys

import pytest

from gaussbargmann.cli import main


def _write(tmp_path, obj, name="in.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


COHERENT_PAIR = {"states": [{"type": "coherent", "alpha": [0.5, 0]}, {"type": "coherent", "alpha": [-0.5, 0]}]}


def test_compute_coherent_pair(tmp_path, capsys):
    code, out, _ = _run(capsys, ["compute", _write(tmp_path, COHERENT_PAIR)])
    assert code == 0
    doc = json.loads(out)
    assert doc["value"][0] == pytest.approx(math.exp(-1), abs=1e-15)
    assert doc["value"][1] == pytest.approx(0.0, abs=1e-15)
    assert doc["n"] == 2 and doc["m"] == 1
    assert doc["det_M"] == [4.0, 0.0]


def test_compute_power_vacuum(tmp_path, capsys):
    code, out, _ = _run(capsys, ["compute", _write(tmp_path, {"type": "vacuum"}), "--power", "5"])
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 5
    assert doc["value"] == pytest.approx([1.0, 0.0], abs=1e-14)


def test_compute_thermal_power(tmp_path, capsys):
    code, out, _ = _run(capsys, ["compute", _write(tmp_path, {"type": "thermal", "nbar": 1}), "--power", "3"])
    assert json.loads(out)["value"][0] == pytest.approx(1 / 7, abs=1e-14)


def test_compute_value_round_trips(tmp_path, capsys):
    from gaussbargmann import statespec as ss
    from gaussbargmann.invariant import bargmann_invariant

    doc = {
        "states": [
            {"type": "squeezed_coherent", "zeta": [0.3, -0.2], "alpha": [0.1, 0.7]},
            {"type": "thermal", "nbar": 0.37},
            {"type": "coherent", "alpha": 0.9},
        ]
    }
    _, out, _ = _run(capsys, ["compute", _write(tmp_path, doc)])
    v = bargmann_invariant([ss.parse_state_spec(s).build() for s in doc["states"]]).value
    re_, im = json.loads(out)["value"]
    assert re_ == v.real and im == v.imag  # exact


def test_compute_diagnostics(tmp_path, capsys):
    doc = {"states": [{"type": "squeezed", "zeta": [0.3 * math.cos(2 * math.pi * j / 3), 0.3 * math.sin(2 * math.pi * j / 3)]} for j in (1, 2, 3)]}
    _, out, _ = _run(capsys, ["compute", _write(tmp_path, doc), "--diagnostics"])
    d = json.loads(out)["diagnostics"]
    assert d["branch_note"] == "continuity"
    assert d["condition_estimate"] >= 1
    assert 0 <= d["arg_det_M"] < 2 * math.pi


def test_compute_oracle_check(tmp_path, capsys):
    doc = {"states": [{"type": "squeezed_coherent", "zeta": [0.4, 0.1], "alpha": [0.2, -0.5]}, {"type": "coherent", "alpha": [0.3, 0.3]}, {"type": "thermal", "nbar": 0.2}]}
    code, out, _ = _run(capsys, ["compute", _write(tmp_path, doc), "--oracle-check"])
    assert code == 0
    o = json.loads(out)["oracle"]
    assert o["defect"] < 1e-9
    assert o["branch_suspect"] is False
    assert o["tail_mass"] < 1e-10


def test_compute_oracle_skipped_for_explicit(tmp_path, capsys):
    doc = [{"type": "explicit", "mean": [0, 0], "cov": [[1, 0], [0, 1]]}, {"type": "vacuum"}]
    code, out, err = _run(capsys, ["compute", _write(tmp_path, doc), "--oracle-check"])
    assert code == 0 and "oracle" not in json.loads(out)
    assert "skipped" in err


@pytest.mark.parametrize(
    "payload",
    [
        "{not json",
        json.dumps({"states": []}),
        json.dumps({"type": "coherent"}),
        json.dumps({"type": "wizard"}),
        json.dumps({"type": "thermal", "nbar": 1, "extra": 2}),
    ],
)
def test_compute_malformed_exit_2(tmp_path, capsys, payload):
    code, out, err = _run(capsys, ["compute", _write(tmp_path, payload)])
    assert code == 2
    assert out == "" and err


def test_compute_missing_file_exit_2(tmp_path, capsys):
    assert _run(capsys, ["compute", str(tmp_path / "nope.json")])[0] == 2


def test_compute_power_needs_single_state(tmp_path, capsys):
    assert _run(capsys, ["compute", _write(tmp_path, COHERENT_PAIR), "--power", "2"])[0] == 2


def test_compute_mode_mismatch_exit_2(tmp_path, capsys):
    doc = [{"type": "vacuum"}, {"type": "tensor", "parts": [{"type": "vacuum"}, {"type": "vacuum"}]}]
    assert _run(capsys, ["compute", _write(tmp_path, doc)])[0] == 2


def test_compute_unphysical_exit_4(tmp_path, capsys):
    doc = [{"type": "explicit", "mean": [0, 0], "cov": [[0.5, 0], [0, 0.5]]}, {"type": "vacuum"}]
    code, out, err = _run(capsys, ["compute", _write(tmp_path, doc)])
    assert code == 4 and "unphysical" in err


def test_compute_ill_conditioned_exit_3(tmp_path, capsys):
    code, out, err = _run(capsys, ["compute", _write(tmp_path, {"type": "squeezed", "zeta": [9, 0]}), "--power", "3"])
    assert code == 3
    doc = json.loads(out)
    assert doc["error"] == "ill_conditioned"
    assert doc["diagnostics"]["condition_estimate"] > 1e14


def test_compute_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(COHERENT_PAIR)))
    code, out, _ = _run(capsys, ["compute", "-"])
    assert code == 0 and json.loads(out)["value"][0] == pytest.approx(math.exp(-1))


def test_regions_default_layout(tmp_path, capsys):
    code, out, _ = _run(capsys, ["regions", "--n", "3", "--out", str(tmp_path)])
    assert code == 0
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["Bn_boundary_n3.csv", "En_boundary_n3.csv", "Fn_n3.csv", "unit_circle_n3.csv"]
    for name in files:
        rows = list(csv.DictReader((tmp_path / name).open()))
        at0 = [r for r in rows if float(r["theta"]) == 0.0]
        assert at0 and float(at0[0]["r"]) == pytest.approx(1.0, abs=1e-15)
    bn = list(csv.DictReader((tmp_path / "Bn_boundary_n3.csv").open()))
    at_pi = [r for r in bn if float(r["theta"]) == math.pi]
    assert float(at_pi[0]["re"]) == pytest.approx(-0.125, abs=1e-15)
    assert len(bn) == 1000


def test_regions_default_n_set(tmp_path, capsys):
    code, out, _ = _run(capsys, ["regions", "--resolution", "20", "--out", str(tmp_path)])
    assert code == 0
    assert len(json.loads(out)["files"]) == 16
    assert (tmp_path / "Fn_n40.csv").exists()


def test_regions_rejects_small_n(tmp_path, capsys):
    assert _run(capsys, ["regions", "--n", "2", "--out", str(tmp_path)])[0] == 2


def test_validate_default_passes(capsys):
    code, out, _ = _run(capsys, ["validate"])
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert len(doc["checks"]) == 30
    assert {c["kind"] for c in doc["checks"]} >= {"engine_vs_fock", "cyclic_invariance", "inequalities"}


def test_validate_zero_cases(capsys):
    code, out, _ = _run(capsys, ["validate", "--cases", "0"])
    assert code == 0 and json.loads(out)["checks"] == []


def test_validate_negative_control(capsys):
    code, out, err = _run(capsys, ["validate", "--cases", "12", "--perturb-cov", "1e-3"])
    assert code != 0
    assert not json.loads(out)["passed"]


def test_validate_is_deterministic(capsys):
    _, a, _ = _run(capsys, ["validate", "--seed", "7", "--cases", "20"])
    _, b, _ = _run(capsys, ["validate", "--seed", "7", "--cases", "20"])
    _, c, _ = _run(capsys, ["validate", "--seed", "8", "--cases", "20"])
    assert a == b and a != c


def test_entry_point_subprocess(tmp_path):
    p = _write(tmp_path, COHERENT_PAIR)
    proc = subprocess.run([sys.executable, "-m", "gaussbargmann.cli", "compute", p], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"][0] == pytest.approx(math.exp(-1))
