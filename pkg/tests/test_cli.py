import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadstab.cli import main as cli_main
from quadstab.cli.config import ConfigError, JobConfig, from_dict, parse_config, serialize
from quadstab.cli.run import EXIT_ERROR, EXIT_OK, EXIT_UNSTABLE, run_job

from .conftest import EXTREMAL, pqks

F = Fraction


def block(case):
    return {key: [str(F(x)) for x in vals] for key, vals in zip(("alpha", "beta", "q", "weights"), case)}


def run(tmp_path, command, config, *extra):
    path = tmp_path / "job.json"
    path.write_text(json.dumps(config))
    out = tmp_path / "report.json"
    code = cli_main.main([command, "--config", str(path), "--out", str(out), *extra])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report


# -- configuration ---------------------------------------------------------------------------------

def test_bad_pqk_has_pointer_and_reason():
    with pytest.raises(ConfigError) as exc:
        from_dict({"pqk": ["-2", "1", "1"], "weights": [1, 1, 1, 1]}, "classify")
    assert exc.value.pointer == "/pqk"
    assert "not a convex quadrilateral" in str(exc.value)


@pytest.mark.parametrize("data, pointer", [
    ({"pqk": [0, 1, 1], "weights": [0, 0, 0, 0]}, "/weights"),
    ({"pqk": [0, 1, 1], "weights": [1, -1, 1, 1]}, "/weights/1"),
    ({"pqk": [0, 1, 1], "weights": [1, 1, 1, 0.5]}, "/weights/3"),
    ({"pqk": [0, 1, 1], "weights": [1, 1, 1, "1/0"]}, "/weights/3"),
    ({"pqk": [0, 1, 1]}, "/weights"),
    ({"pqk": [0, 1, 1], "weights": [1, 1, 1, 1], "colour": "red"}, "/colour"),
    ({"vertices": [[0, 0], [1, 0], [2, 0], [0, 1]], "weights": [1, 1, 1, 1]}, "/vertices"),
])
def test_config_errors(data, pointer):
    with pytest.raises(ConfigError) as exc:
        from_dict(data, "classify")
    assert exc.value.pointer == pointer


def test_command_mismatch():
    with pytest.raises(ConfigError, match="command"):
        from_dict({"command": "scan", "pqk": [0, 1, 1]}, "classify")


def test_invalid_json():
    with pytest.raises(ConfigError, match="invalid JSON"):
        parse_config("{", "classify")


@given(pqks(), st.lists(st.integers(0, 9), min_size=4, max_size=4).filter(any),
       st.sampled_from(["classify", "verify", "scan", "interval"]), st.integers(0, 5))
def test_config_round_trip(pqk, w, command, seed):
    data = {"command": command, "pqk": [str(x) for x in pqk], "weights": w, "seed": seed,
            "edges": [1, 3], "resolution": 6}
    cfg = from_dict(data)
    assert from_dict(serialize(cfg)) == cfg
    assert parse_config(json.dumps(serialize(cfg))) == cfg


def test_ambitoric_round_trip():
    cfg = from_dict({"command": "formal", "ambitoric": block(EXTREMAL)})
    assert isinstance(cfg, JobConfig)
    assert from_dict(serialize(cfg)) == cfg


# -- commands ------------------------------------------------------------------------------------------

def test_classify_stable(tmp_path):
    code, rep = run(tmp_path, "classify", {"pqk": ["1/2", "3/2", "2"], "weights": [1, 1, 1, 1]})
    assert code == EXIT_OK and rep["exit_code"] == 0
    assert rep["result"]["verdict"]["status"] == "Stable"


def test_classify_unstable_exit_code(tmp_path):
    code, rep = run(tmp_path, "classify", {"pqk": ["1/2", "3/2", "2"], "weights": [1, 0, 0, 0]})
    assert code == EXIT_UNSTABLE
    assert rep["result"]["verdict"]["status"] == "Unstable" and rep["result"]["witness_verified"]


def test_trapezium_parallel_support_semistable(tmp_path):
    code, rep = run(tmp_path, "classify", {"pqk": [0, 1, 2], "weights": [0, 1, 0, 1]})
    assert code == EXIT_OK
    assert rep["result"]["verdict"]["status"] == "StrictlySemistable"


def test_vertices_input(tmp_path):
    sheared = [[0, 0], [1, 0], [3, 1], [2, 1]]
    code, rep = run(tmp_path, "classify", {"vertices": sheared, "weights": [1, 1, 1, 1]})
    assert code == EXIT_OK
    assert rep["result"]["quadrilateral"]["pqk"] == ["0", "1", "1"]


def test_interval_parallelogram_note(tmp_path):
    code, rep = run(tmp_path, "interval", {"pqk": [0, 1, 1]}, "--edges", "1", "3")
    assert code == EXIT_OK
    assert rep["result"]["interval"]["empty"]
    assert "unstable for all r" in rep["result"]["interval"]["note"]


def test_interval_adjacent(tmp_path):
    code, rep = run(tmp_path, "interval", {"pqk": ["1/2", "3/2", "2"], "edges": [1, 2]})
    iv = rep["result"]["interval"]
    assert code == EXIT_OK and not iv["empty"] and iv["include_r0"] and iv["include_r1"]
    assert 0 < iv["r0"]["approx"] < iv["r1"]["approx"] < 1


def test_scan_counts_components(tmp_path):
    svg = tmp_path / "scan.svg"
    code, rep = run(tmp_path, "scan", {"pqk": ["1/2", "3/2", "2"]}, "--resolution", "20", "--svg", str(svg))
    assert code == EXIT_OK
    assert rep["result"]["unstable_components"] == 4
    assert svg.read_text().startswith("<svg")


def test_formal_ambitoric(tmp_path):
    code, rep = run(tmp_path, "formal", {"ambitoric": block(EXTREMAL)})
    assert code == EXIT_OK
    res = rep["result"]
    assert res["extremal"]["extremal"] and res["positivity"]["A_positive"]
    assert res["forward_polytope"]["verdict"]["status"] == "Stable"
    assert res["forward_polytope"]["pqk"] == ["13/32", "1/2", "8"]


def test_formal_trapezium(tmp_path):
    code, rep = run(tmp_path, "formal", {"trapezium": {"alpha": [1, 2], "beta": [0, 1], "weights": [1, 1, 2, 2]}})
    assert code == EXIT_OK and rep["result"]["solution"]["A_positive"]


def test_formal_trapezium_incompatible(tmp_path):
    code, rep = run(tmp_path, "formal", {"trapezium": {"alpha": [1, 2], "beta": [0, 1], "weights": [1, 1, 1, 2]}})
    assert code == EXIT_ERROR and rep["error"]["type"] == "IncompatibleWeights"


def test_verify_passes(tmp_path):
    code, rep = run(tmp_path, "verify", {"pqk": ["1/2", "3/2", "2"], "weights": [1, 2, 1, 1],
                                         "ambitoric": block(EXTREMAL),
                                         "samples": 2000})
    assert code == EXIT_OK and rep["result"]["all_passed"]
    assert max(rep["result"]["ibp_residuals"].values()) <= 1e-9


def test_split_stable_input_reports(tmp_path):
    code, rep = run(tmp_path, "split", {"pqk": ["1/2", "3/2", "2"], "weights": [1, 1, 1, 1]})
    assert code == EXIT_ERROR and "only strictly semistable" in rep["result"]["note"]


def test_bad_config_exit_code(tmp_path, capsys):
    code, rep = run(tmp_path, "classify", {"pqk": ["-2", "1", "1"], "weights": [1, 1, 1, 1]})
    assert code == EXIT_ERROR and rep is None
    assert "/pqk" in capsys.readouterr().err


def test_missing_config_file(tmp_path, capsys):
    assert cli_main.main(["classify", "--config", str(tmp_path / "nope.json")]) == EXIT_ERROR
    assert "cannot read config" in capsys.readouterr().err


# -- determinism ---------------------------------------------------------------------------------------

def test_reports_are_deterministic():
    cfg = from_dict({"command": "classify", "pqk": ["1/2", "3/2", "2"], "weights": [1, 0, 1, 1],
                     "family": "adjacent-1"})
    a, b = run_job(cfg), run_job(cfg)
    assert a.to_json(with_timing=False) == b.to_json(with_timing=False)
    from quadstab.cli.svg import render_svg
    assert render_svg(a.plot) == render_svg(b.plot)


def test_scan_report_deterministic_across_workers(monkeypatch):
    cfg = from_dict({"command": "scan", "pqk": [0, 1, 2], "resolution": 6})
    serial = run_job(cfg).to_json(with_timing=False)
    monkeypatch.setenv("QUADSTAB_THREADS", "2")
    assert run_job(cfg).to_json(with_timing=False) == serial


def test_stable_heatmap_has_no_negative_cells(tmp_path):
    svg = tmp_path / "phi.svg"
    code, rep = run(tmp_path, "classify", {"pqk": ["1/2", "3/2", "2"], "weights": [1, 1, 1, 1],
                                           "family": "opposite-1"}, "--svg", str(svg))
    assert code == EXIT_OK and rep["result"]["verdict"]["status"] == "Stable"
    text = svg.read_text()
    cells = [line for line in text.splitlines() if line.startswith("<rect") and 'width="10.00"' in line]
    assert len(cells) == 1600
    assert not any('fill="#d8453b"' in c for c in cells)


def test_unstable_heatmap_shows_negative_cells(tmp_path):
    svg = tmp_path / "phi.svg"
    run(tmp_path, "classify", {"pqk": ["1/2", "3/2", "2"], "weights": [1, 0, 0, 0], "family": "opposite-2"},
        "--svg", str(svg))
    cells = [line for line in svg.read_text().splitlines() if 'width="10.00"' in line]
    assert any('fill="#d8453b"' in c for c in cells)
