"""Command-line interface: documents, reports, exit codes, determinism."""

import json

import numpy as np
import pytest

from lindbladctl.cli import (CliParseError, SystemDocument, cloud_csv,
                             dumps_report, main, trajectory_csv)
from lindbladctl import (CoherenceVector, PiecewiseControl, preset, propagate,
                         sample_reachable)


# ---------------------------------------------------------------------------
# Serialization

def test_dumps_report_number_formatting():
    text = dumps_report({"a": 1.0 / 3.0, "b": -0.0, "c": True, "d": None,
                         "e": 7})
    assert '"a": 0.33333333333333331' in text
    assert '"b": 0' in text and "-0" not in text
    assert '"c": true' in text
    assert '"d": null' in text
    assert '"e": 7' in text
    assert text.endswith("\n")


def test_dumps_report_layout():
    text = dumps_report({"outer": {"vec": [1.0, 2.0, 3.0],
                                   "mats": [[1, 0], [0, 1]]}})
    # scalar lists stay on one line; nested lists get their own lines
    assert '"vec": [1, 2, 3]' in text
    assert '"mats": [\n' in text
    assert json.loads(text) == {"outer": {"vec": [1.0, 2.0, 3.0],
                                          "mats": [[1, 0], [0, 1]]}}


def test_dumps_report_rejects_nonfinite():
    with pytest.raises(ValueError):
        dumps_report({"x": float("nan")})
    with pytest.raises(ValueError):
        dumps_report({"x": float("inf")})
    with pytest.raises(TypeError):
        dumps_report({"x": object()})


def test_dumps_report_deterministic():
    payload = {"m": np.arange(3) / 7.0, "k": [True, None, "s"]}
    assert dumps_report(payload) == dumps_report(payload)


def test_csv_writers():
    system = preset("depolarizing", gamma=0.5)
    traj = propagate(system, PiecewiseControl.zero(3, 1.0),
                     CoherenceVector(2, [0.3, 0.0, 0.4]),
                     samples_per_segment=4)
    text = trajectory_csv(traj)
    lines = text.strip().split("\n")
    assert lines[0] == "t,rho_1,rho_2,rho_3,purity,det_g"
    assert len(lines) == 6
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[1]) == 0.3

    result = sample_reachable(system, CoherenceVector(2, [0.3, 0.0, 0.4]),
                              1.0, num_samples=2, seed=0)
    cloud = cloud_csv(result).strip().split("\n")
    assert cloud[0] == "sample,t,rho_1,rho_2,rho_3"
    assert len(cloud) == 1 + 2 * len(result.grid)


# ---------------------------------------------------------------------------
# System documents

def test_document_round_trip_preserves_fields():
    doc = SystemDocument.from_preset("amplitude_damping", gamma=0.8, h03=0.4)
    again = SystemDocument.from_json(doc.to_json())
    assert again == doc
    assert again.preset["name"] == "amplitude_damping"
    assert again.preset["params"]["gamma"] == 0.8


def test_document_builds_matching_control_system():
    doc = SystemDocument.from_preset("amplitude_damping", gamma=0.8, h03=0.4)
    built = doc.to_control_system()
    direct = preset("amplitude_damping", gamma=0.8, h03=0.4)
    assert np.max(np.abs(built.hamiltonian.homogeneous
                         - direct.hamiltonian.homogeneous)) < 1e-12
    assert np.max(np.abs(built.dissipator.homogeneous
                         - direct.dissipator.homogeneous)) < 1e-12
    for bc, dc in zip(built.controls, direct.controls):
        assert np.max(np.abs(bc.homogeneous - dc.homogeneous)) < 1e-12
    assert built.admissible


def _valid_doc_dict():
    return SystemDocument.from_preset("phase_flip", gamma=0.5).to_dict()


@pytest.mark.parametrize("mutate,fragment", [
    (lambda d: d.update(schema_version=2), "schema_version"),
    (lambda d: d.pop("h0"), "missing required field 'h0'"),
    (lambda d: d.update(extra=1), "unknown fields"),
    (lambda d: d.update(preset={"bogus": 1}), "preset"),
    (lambda d: d.update(h0=[0.0]), "h0"),
    (lambda d: d["A_real"][0].__setitem__(1, 99.0), "symmetric"),
    (lambda d: d["A_imag"][0].__setitem__(0, 1.0), "antisymmetric"),
    (lambda d: d.update(N=1), "N"),
])
def test_document_validation_errors(mutate, fragment):
    data = _valid_doc_dict()
    mutate(data)
    with pytest.raises(CliParseError, match=fragment):
        SystemDocument.from_dict(data)


def test_document_bad_json_reports_location():
    with pytest.raises(CliParseError, match="line 1 column"):
        SystemDocument.from_json("{broken")


# ---------------------------------------------------------------------------
# Subcommands through main()

def _write_preset_doc(tmp_path, name, **kwargs):
    path = tmp_path / (name + ".json")
    path.write_text(SystemDocument.from_preset(name, **kwargs).to_json())
    return path


def _inadmissible_doc(tmp_path):
    data = _valid_doc_dict()
    data["A_real"] = [[-1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]
    data["A_imag"] = [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]
    del data["preset"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    return path


def test_preset_command(tmp_path):
    out = tmp_path / "doc.json"
    code = main(["preset", "amplitude_damping", "--gamma", "0.8",
                 "--out", str(out)])
    assert code == 0
    doc = SystemDocument.load(out)
    s = 1.0 / np.sqrt(2.0)
    assert doc.controls == ((s, 0.0, 0.0), (0.0, s, 0.0), (0.0, 0.0, s))
    assert doc.preset["params"]["gamma"] == 0.8


def test_analyze_report_content(tmp_path):
    doc = _write_preset_doc(tmp_path, "amplitude_damping", gamma=0.8)
    out = tmp_path / "report.json"
    assert main(["analyze", str(doc), "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["report"] == "analyze"
    assert report["system"]["admissible"] is True
    assert report["system"]["unital"] is False
    assert report["system"]["preset"] == "amplitude_damping"
    assert report["accessibility"]["accessible"] is True
    assert report["accessibility"]["closure_dim"] == 12
    assert report["accessibility"]["classification"] == "gl(n) x R^n"
    assert report["trace_split"]["alpha"] == pytest.approx(-2 * 0.8 / 3)
    assert report["trace_split"]["translation"] == pytest.approx(
        [0.0, 0.0, 0.8])
    assert report["hamiltonian_controllability"] == {"controllable": True,
                                                     "dim": 3}
    assert report["certificates"]["active"] == ["trace", "finite_time"]
    assert "full ball" in report["certificates"]["note"]
    assert report["fixed_point"]["purity"] == pytest.approx(1.0)
    assert report["fixed_point"]["is_physical"] is True
    assert report["warnings"] == []


def test_analyze_depolarizing_not_accessible(tmp_path):
    doc = _write_preset_doc(tmp_path, "depolarizing", gamma=0.5)
    out = tmp_path / "report.json"
    assert main(["analyze", str(doc), "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["accessibility"]["accessible"] is False
    assert report["accessibility"]["closure_dim"] == 4
    assert report["system"]["unital"] is True
    assert report["certificates"]["active"] == ["trace", "unital",
                                                "finite_time"]
    assert report["fixed_point"]["rho"] == [0.0, 0.0, 0.0]


def test_analyze_byte_identical_reruns(tmp_path):
    doc = _write_preset_doc(tmp_path, "amplitude_damping", gamma=0.8)
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    main(["analyze", str(doc), "--out", str(out1)])
    main(["analyze", str(doc), "--out", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()


def test_exit_code_2_on_parse_errors(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert main(["analyze", str(broken)]) == 2
    assert main(["analyze", str(tmp_path / "missing.json")]) == 2
    assert "error:" in capsys.readouterr().err


def test_exit_code_3_on_inadmissible(tmp_path, capsys):
    doc = _inadmissible_doc(tmp_path)
    out = tmp_path / "report.json"
    assert main(["analyze", str(doc), "--out", str(out)]) == 3
    report = json.loads(out.read_text())  # report is still written
    assert report["system"]["admissible"] is False
    assert report["warnings"]
    capsys.readouterr()
    assert main(["analyze", str(doc), "--out", str(out),
                 "--permissive"]) == 0
    assert main(["simulate", str(doc)]) == 3


def test_exit_code_4_on_ball_exit(tmp_path, capsys):
    doc = _inadmissible_doc(tmp_path)
    code = main(["simulate", str(doc), "--permissive", "--horizon", "40",
                 "--rho0", "0.3,0,0.4", "--out", str(tmp_path / "t.csv")])
    assert code == 4
    assert "error:" in capsys.readouterr().err


def test_simulate_csv_output(tmp_path):
    doc = _write_preset_doc(tmp_path, "depolarizing", gamma=0.25)
    out = tmp_path / "traj.csv"
    assert main(["simulate", str(doc), "--rho0", "0.3,0,0.4",
                 "--horizon", "1", "--out", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "t,rho_1,rho_2,rho_3,purity,det_g"
    last = [float(x) for x in lines[-1].split(",")]
    assert last[0] == pytest.approx(1.0)
    assert last[5] == pytest.approx(np.exp(-6 * 0.25), abs=1e-12)


def test_simulate_control_segments(tmp_path):
    doc = _write_preset_doc(tmp_path, "phase_flip", gamma=0.0)
    control = json.dumps([{"duration": float(np.pi / 2),
                           "u": [0.0, 0.0, 1.0]}])
    out = tmp_path / "traj.csv"
    assert main(["simulate", str(doc), "--rho0", "0.5,0,0",
                 "--control", control, "--out", str(out)]) == 0
    last = out.read_text().strip().split("\n")[-1].split(",")
    assert float(last[1]) == pytest.approx(0.0, abs=1e-12)
    assert float(last[2]) == pytest.approx(0.5)

    # the same control read from @file, in [duration, [u]] pair form
    ctrl_file = tmp_path / "ctrl.json"
    ctrl_file.write_text(json.dumps([[float(np.pi / 2), [0.0, 0.0, 1.0]]]))
    out2 = tmp_path / "traj2.csv"
    assert main(["simulate", str(doc), "--rho0", "0.5,0,0",
                 "--control", "@" + str(ctrl_file), "--out", str(out2)]) == 0
    assert out.read_bytes() == out2.read_bytes()


def test_simulate_control_horizon_mismatch(tmp_path, capsys):
    doc = _write_preset_doc(tmp_path, "phase_flip", gamma=0.0)
    control = json.dumps([[0.5, [0.0, 0.0, 1.0]]])
    assert main(["simulate", str(doc), "--control", control,
                 "--horizon", "1.0"]) == 2
    assert "does not match" in capsys.readouterr().err


def test_rho0_validation(tmp_path, capsys):
    doc = _write_preset_doc(tmp_path, "phase_flip", gamma=0.5)
    assert main(["simulate", str(doc), "--rho0", "0.3,0.4"]) == 2
    assert main(["simulate", str(doc), "--rho0", "9,9,9"]) == 2
    assert main(["simulate", str(doc), "--rho0", "a,b,c"]) == 2
    capsys.readouterr()


def test_reachable_writes_csv_and_stats(tmp_path):
    doc = _write_preset_doc(tmp_path, "bit_flip", gamma=0.6)
    base = tmp_path / "cloud"
    args = ["reachable", str(doc), "--rho0", "0.2,0.3,0.2",
            "--samples", "10", "--seed", "7", "--out", str(base)]
    assert main(args) == 0
    csv_path = tmp_path / "cloud.csv"
    stats_path = tmp_path / "cloud.stats.json"
    stats = json.loads(stats_path.read_text())
    assert stats["report"] == "reachable"
    assert stats["unital"] is True
    assert stats["nested_balls_ok"] is True
    assert len(stats["grid"]) == len(stats["max_norms"]) == 11
    assert stats["parameters"]["seed"] == 7
    csv1 = csv_path.read_bytes()

    # reruns are byte-identical; a .csv out base swaps the suffix
    assert main(args) == 0
    assert csv_path.read_bytes() == csv1
    base2 = tmp_path / "cloud2.csv"
    args2 = args[:-1] + [str(base2)]
    assert main(args2) == 0
    assert (tmp_path / "cloud2.csv").read_bytes() == csv1
    assert (tmp_path / "cloud2.stats.json").read_bytes() \
        == stats_path.read_bytes()


def test_verify_command(tmp_path, capsys):
    out = tmp_path / "verify.json"
    code = main(["verify", "--out", str(out)])
    captured = capsys.readouterr().out
    lines = [ln for ln in captured.split("\n") if ln.startswith("[")]
    assert len(lines) == 8
    passes = [ln for ln in lines if ln.startswith("[PASS]")]
    fails = [ln for ln in lines if ln.startswith("[FAIL]")]
    # the published coefficient table disagrees with the computed brackets
    # in eight slots, so that one check fails by design
    assert len(passes) == 7
    assert len(fails) == 1 and "structure_constants" in fails[0]
    assert "verify: 7/8 checks passed" in captured
    assert code == 1
    report = json.loads(out.read_text())
    assert report["ok"] is False
    assert [c["name"] for c in report["checks"]][:2] \
        == ["structure_constants", "gks_symmetry"]
