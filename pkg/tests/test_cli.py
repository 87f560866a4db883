import json
import re

import numpy as np
import pytest

from srhtlab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bounds_report(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--k", "16", "--n", "65536")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["embedding"]["ell"] == 2342
    assert doc["embedding"]["sigma_min"] == pytest.approx(0.4082, abs=5e-5)
    assert doc["embedding"]["sigma_max"] == pytest.approx(1.4720, abs=5e-5)
    assert doc["row_norm"]["beta"] == 16.0
    assert doc["row_sampling_failure"]["value"] <= 2 / 16
    assert doc["config"]["k"] == 16 and doc["config"]["n"] == 65536


def test_bounds_csv_format(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--k", "8", "--n", "1024", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "key,value"
    assert any(line.startswith("embedding.ell,") for line in lines)


def test_sketch_full_sample_unit_spectrum(capsys):
    code, out, _ = run_cli(capsys, "sketch", "--n", "4", "--l", "4", "--k", "2", "--seed", "1")
    assert code == 0
    doc = json.loads(out)
    spectrum = doc["singular_values"]
    assert np.max(np.abs(np.array(spectrum) - 1.0)) <= 1e-10
    assert doc["sketch"]["rows"] == 4 and doc["sketch"]["cols"] == 2


def test_sketch_csv_blocks(capsys):
    code, out, _ = run_cli(
        capsys, "sketch", "--n", "8", "--l", "3", "--k", "2", "--seed", "5", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "3,2"
    assert lines[4] == "1,2"  # spectrum block header
    assert len(lines) == 6


def test_experiment_exit_zero_on_pass(capsys):
    code, out, _ = run_cli(
        capsys, "experiment", "coupon", "--k", "2", "--ells", "2", "--trials", "400", "--seed", "3"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["summaries"][0]["passed"] is True
    assert doc["config"]["trials"] == 400


def test_experiment_exit_one_on_failed_criterion(capsys):
    # ell = k leaves the sketch nearly singular, far outside the window
    code, out, _ = run_cli(
        capsys,
        "experiment", "embedding",
        "--n", "64", "--k", "16", "--l", "16", "--trials", "30", "--seed", "0",
    )
    assert code == 1
    assert json.loads(out)["summaries"][0]["passed"] is False


def test_experiment_csv_output(capsys):
    code, out, _ = run_cli(
        capsys,
        "experiment", "chernoff", "--exhaustive", "--format", "csv", "--deltas", "0.5",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("name,n,k,ell,trials,mode,")
    assert len(lines) == 3  # lower + upper summaries


def test_unknown_flag_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "experiment", "embedding", "--bogus", "1")
    assert code == 2


def test_invalid_dimension_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "sketch", "--n", "12", "--l", "4", "--k", "2")
    assert code == 2
    assert "error" in err.lower()
    assert len(err.strip().splitlines()) == 1


def test_unknown_experiment_rejected(capsys):
    code, _, _ = run_cli(capsys, "experiment", "nonsense")
    assert code == 2


def test_sketch_output_file_byte_identical(tmp_path, capsys):
    path = tmp_path / "sketch.json"
    argv = ["sketch", "--n", "16", "--l", "5", "--k", "3", "--seed", "9", "--output", str(path)]
    snapshots = []
    for _ in range(2):
        assert main(list(argv)) == 0
        snapshots.append(path.read_bytes())
    capsys.readouterr()
    assert snapshots[0] == snapshots[1]


def test_experiment_output_identical_modulo_timing(tmp_path, capsys):
    path = tmp_path / "run.json"
    argv = ["experiment", "flatten", "--n", "64", "--trials", "50", "--seed", "2",
            "--output", str(path)]
    texts = []
    for _ in range(2):
        assert main(list(argv)) == 0
        texts.append(
            re.sub(r'"elapsed_seconds": [0-9.e+-]+', '"elapsed_seconds": 0', path.read_text())
        )
    capsys.readouterr()
    assert texts[0] == texts[1]


def test_numeric_flags_echoed(capsys):
    code, out, _ = run_cli(
        capsys, "experiment", "mgf", "--exhaustive", "--thetas", "0.5", "2.0", "--seed", "11"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["config"]["thetas"] == [0.5, 2.0]
    assert doc["config"]["seed"] == 11
    assert doc["config"]["exhaustive"] is True
