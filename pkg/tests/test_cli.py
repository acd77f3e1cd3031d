import json

from aif_forager import cli


def test_list(capsys):
    assert cli.main(["list"]) == 0
    assert "case2_learning" in capsys.readouterr().out


def test_run_writes_outputs(tmp_path, capsys):
    out = tmp_path / "run"
    cfg = tmp_path / "small.json"
    cfg.write_text(json.dumps({"id": "case2_learning", "num_agents": 2, "num_runs_per_agent": 2}))
    assert cli.main(["run", "--config", str(cfg), "--seed", "3", "--out", str(out)]) == 0
    assert (out / "survival.csv").exists()
    assert (out / "model_agent001.json").exists()
    assert json.loads((out / "scenario.json").read_text())["base_seed"] == 3
    assert cli.main(["plot", "--in", str(out)]) == 0
    assert (out / "plots" / "survival.svg").exists()


def test_sweep(capsys):
    assert cli.main(["sweep", "--scenario", "case1", "--param", "preference", "--values", "2,4"]) == 0
    out = capsys.readouterr().out.strip().split("\n")
    assert len(out) == 3


def test_exit_codes(tmp_path, capsys):
    assert cli.main(["run", "--scenario", "nope"]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"id": "case2", "timesteps": -1}))
    assert cli.main(["run", "--config", str(bad)]) == 1
    assert cli.main(["sweep", "--scenario", "case2", "--param", "nope", "--values", "1"]) == 1
    assert cli.main(["frobnicate"]) == 1
    # reading a directory that was never written is a runtime failure
    assert cli.main(["plot", "--in", str(tmp_path / "absent")]) == 2
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert cli.main(["run", "--scenario", "case1", "--out", str(blocker / "sub")]) == 2
