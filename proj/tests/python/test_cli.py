import json
import os
import subprocess

import pytest

CLI = os.environ.get("MVSUMM_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="MVSUMM_CLI not set")


def run(*args):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)


@pytest.fixture
def data(tmp_path):
    out = tmp_path / "data"
    assert run("synth", "--out", out, "--views", 2, "--prototypes", 3, "--copies", 3, "--sigma", 0.02, "--seed", 4).returncode == 0
    return out


def test_lengths_share_one_run(data, tmp_path):
    out = tmp_path / "out"
    assert run("summarize", "--data", data, "--out", out, "--lengths", "3,5,7").returncode == 0
    names = sorted(p.name for p in out.iterdir())
    assert [n for n in names if n.startswith("summary_L")] == ["summary_L3.json", "summary_L5.json", "summary_L7.json"]
    assert [n for n in names if n.startswith("trace")] == ["trace.csv"]
    picks = [[s["flat_index"] for s in json.loads((out / f"summary_L{n}.json").read_text())["shots"]] for n in (3, 5, 7)]
    assert picks[1][: len(picks[0])] == picks[0]
    assert picks[2][: len(picks[1])] == picks[1]


def test_reruns_are_byte_identical(data, tmp_path):
    for tag in ("a", "b"):
        assert run("summarize", "--data", data, "--out", tmp_path / tag, "--lengths", "4", "--restarts", 2, "--seed", 9).returncode == 0
    for name in ("summary_L4.json", "weights.csv", "trace.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_evaluate_without_ground_truth_is_usage_error(data, tmp_path):
    (data / "ground_truth.json").unlink()
    result = run("summarize", "--data", data, "--out", tmp_path / "out", "--evaluate")
    assert result.returncode == 1
    assert "ground truth" in result.stderr.lower()


def test_evaluate_modes(tmp_path):
    gt = tmp_path / "gt.json"
    gt.write_text(json.dumps([
        {"event_id": 1, "frame_start": 1, "frame_end": 10},
        {"event_id": 2, "frame_start": 11, "frame_end": 110},
    ]))
    perfect = tmp_path / "perfect.json"
    perfect.write_text(json.dumps({"shots": [
        {"view": 1, "shot": 1, "frame_start": 1, "frame_end": 10},
        {"view": 1, "shot": 2, "frame_start": 11, "frame_end": 110},
    ]}))
    half = tmp_path / "half.json"
    half.write_text(json.dumps({"shots": [{"view": 1, "shot": 1, "frame_start": 1, "frame_end": 10}]}))

    def f_of(summary, mode):
        result = run("evaluate", "--summary", summary, "--ground-truth", gt, "--mode", mode)
        assert result.returncode == 0, result.stderr
        return json.loads(result.stdout)["f_measure"]

    assert f_of(perfect, "event") == pytest.approx(1.0)
    assert f_of(half, "event") == pytest.approx(2 * 0.5 / 1.5)
    assert f_of(half, "frame") != pytest.approx(f_of(half, "event"))


def test_missing_data_dir_is_data_error(tmp_path):
    assert run("summarize", "--data", tmp_path / "nope", "--out", tmp_path / "out").returncode == 2
