import json
import math

import pytest
from click.testing import CliRunner

from continualdp import __version__, parse_sequence
from continualdp.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def _generate(runner, tmp_path, *extra):
    out = tmp_path / "seq.txt"
    args = [
        "generate", "--target", "mst", "--sigma", "101", "-W", "5",
        "--out", str(out), *extra,
    ]
    result = runner.invoke(main, args)
    assert result.exit_code == 0, result.output
    return out


def test_generate_writes_log_and_sidecar(runner, tmp_path):
    out = _generate(runner, tmp_path)
    seq = parse_sequence(out.read_text())
    assert seq.T == 3
    sidecar = json.loads((tmp_path / "seq.txt.expected.json").read_text())
    assert sidecar["expected"] == [8, 8, 13]  # W*S_t + t with W=5
    assert sidecar["version"] == __version__
    assert sidecar["function"] == "mst_weight"


def test_generate_flip_writes_partner_and_witness(runner, tmp_path):
    out = _generate(runner, tmp_path, "--flip", "2")
    a = parse_sequence(out.read_text())
    b = parse_sequence((tmp_path / "seq.txt.partner").read_text())
    assert a.T == b.T == 3
    sidecar = json.loads((tmp_path / "seq.txt.expected.json").read_text())
    assert sidecar["witness"]["kind"] == "edge-event"
    assert sidecar["witness"]["t_star"] == 2
    assert sidecar["expected"] != sidecar["expected_partner"]


def test_generate_rejects_bad_sigma(runner, tmp_path):
    result = runner.invoke(
        main,
        ["generate", "--target", "mst", "--sigma", "10x",
         "--out", str(tmp_path / "x")],
    )
    assert result.exit_code == 2


def test_eval_emits_csv(runner, tmp_path):
    out = _generate(runner, tmp_path)
    result = runner.invoke(
        main, ["eval", "--function", "mst_weight", "--input", str(out)]
    )
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert lines[0] == "t,value"
    assert [line.split(",")[1] for line in lines[1:]] == ["8", "8", "13"]


def test_release_diff_noise_off_has_zero_error(runner, tmp_path):
    out = _generate(runner, tmp_path)
    csv = tmp_path / "rel.csv"
    result = runner.invoke(
        main,
        ["release", "--function", "mst_weight", "--epsilon", "1", "--delta",
         "0.05", "-W", "5", "--input", str(out), "--out", str(csv),
         "--seed", "3", "--noise-off"],
    )
    assert result.exit_code == 0, result.output
    lines = csv.read_text().splitlines()
    assert lines[0] == f"# artifact-version: {__version__}"
    assert lines[1] == "# seed: 3"
    assert lines[2].startswith("# config: ")
    assert lines[3] == "t,true,released,abs_error,bound"
    for row in lines[4:]:
        assert row.split(",")[3] == "0.000000"


def test_release_monotone_outputs_powers_of_two(runner, tmp_path):
    out = tmp_path / "cut.txt"
    result = runner.invoke(
        main,
        ["generate", "--target", "min_cut", "--adjacency", "node",
         "--sigma", "1101", "-W", "2", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    csv = tmp_path / "mono.csv"
    result = runner.invoke(
        main,
        ["release", "--mechanism", "monotone", "--function", "min_cut",
         "--epsilon", "1", "--delta", "0.1", "--beta", "1", "-W", "2",
         "--input", str(out), "--out", str(csv), "--seed", "1", "--noise-off"],
    )
    assert result.exit_code == 0, result.output
    rows = [line for line in csv.read_text().splitlines() if not line.startswith("#")]
    assert rows[0] == "t,true,output,lower_ok,upper_ok,alpha"
    for row in rows[1:]:
        out_val = float(row.split(",")[2])
        assert out_val == 2 ** round(math.log2(out_val))


def test_release_rejects_unbounded_combination(runner, tmp_path):
    out = tmp_path / "cut.txt"
    runner.invoke(
        main,
        ["generate", "--target", "min_cut", "--adjacency", "node",
         "--sigma", "11", "-W", "2", "--out", str(out)],
    )
    result = runner.invoke(
        main,
        ["release", "--function", "min_cut", "--epsilon", "1",
         "--delta", "0.05", "--input", str(out), "--seed", "1"],
    )
    assert result.exit_code == 3


def test_sensitivity_command_reports_json(runner):
    result = runner.invoke(
        main,
        ["sensitivity", "--function", "edge_count", "--n-max", "4",
         "--t-max", "3", "--max-pairs", "30", "--seed", "9"],
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["status"] in ("Sound", "Tight")
    assert payload["seed"] == 9
    assert payload["witness"] is None or len(payload["witness"]) == 2


def test_verify_suites_pass(runner):
    for suite in ("generators", "bounds"):
        result = runner.invoke(main, ["verify", suite])
        assert result.exit_code == 0, result.output
        assert "[FAIL]" not in result.output
        assert "[PASS]" in result.output


def test_verify_sensitivity_suite_passes(runner):
    result = runner.invoke(main, ["verify", "sensitivity"])
    assert result.exit_code == 0, result.output
    assert "Violation" not in result.output


def test_experiment_writes_csv_and_plot(runner, tmp_path):
    seq = _generate(runner, tmp_path)
    csv = tmp_path / "exp.csv"
    result = runner.invoke(
        main,
        ["experiment", "--function", "mst_weight", "--epsilon", "1",
         "--delta", "0.05", "-W", "5", "--input", str(seq),
         "--trials", "5", "--seed", "4", "--out", str(csv), "--plot"],
    )
    assert result.exit_code == 0, result.output
    rows = [line for line in csv.read_text().splitlines() if not line.startswith("#")]
    assert rows[0] == "trial,seed,max_abs_error,bound,within_bound"
    assert len(rows) == 6
    assert (tmp_path / "exp.png").exists()


def test_seed_is_printed_when_unset(runner, tmp_path, monkeypatch):
    monkeypatch.delenv("CONTINUAL_DP_SEED", raising=False)
    out = _generate(runner, tmp_path)
    result = runner.invoke(
        main,
        ["release", "--function", "mst_weight", "--epsilon", "1",
         "--delta", "0.05", "-W", "5", "--input", str(out), "--noise-off"],
    )
    assert result.exit_code == 0, result.output
    assert result.output.startswith("seed: ")


def test_seed_env_fallback(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("CONTINUAL_DP_SEED", "42")
    out = _generate(runner, tmp_path)
    csv = tmp_path / "rel.csv"
    result = runner.invoke(
        main,
        ["release", "--function", "mst_weight", "--epsilon", "1",
         "--delta", "0.05", "-W", "5", "--input", str(out),
         "--out", str(csv), "--noise-off"],
    )
    assert result.exit_code == 0, result.output
    assert "# seed: 42" in csv.read_text()
