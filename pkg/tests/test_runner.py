import csv
import json
import os

import pytest

from fflab.errors import ConfigInvalid, UnknownExperiment
from fflab.experiments import REGISTRY, get_experiment, plan_tasks
from fflab.runner import RunConfig, load_config, parse_config, run, selftest
from fflab.cli import main


def small_config(**overrides):
    cfg = {
        "experiment": "incidence_fuzz",
        "params": {"qs": [5], "axes": ["A", "AM"], "trials": 30},
        "seed": 7,
    }
    cfg.update(overrides)
    return cfg


def test_registry_contents():
    assert len(REGISTRY) >= 12
    kinds = {exp.kind for exp in REGISTRY.values()}
    assert kinds == {"hard-assert", "monitor"}
    assert REGISTRY["shifted_square_monitor"].claim.startswith("|A + A^2| >= C |A|^(147/146)")
    assert REGISTRY["incidence_fuzz"].kind == "hard-assert"
    for exp in REGISTRY.values():
        assert exp.columns[:5] == ("experiment", "p", "k", "trial", "seed")


def test_unknown_experiment():
    with pytest.raises(UnknownExperiment):
        get_experiment("no_such_thing")
    with pytest.raises(UnknownExperiment):
        parse_config({"experiment": "no_such_thing"})


def test_unknown_keys_rejected():
    with pytest.raises(ConfigInvalid):
        parse_config(small_config(bogus=1))
    with pytest.raises(ConfigInvalid):
        parse_config(small_config(params={"qs": [5], "bogus": 2}))
    with pytest.raises(ConfigInvalid):
        parse_config(small_config(format="xml"))
    with pytest.raises(ConfigInvalid):
        parse_config(small_config(seed="abc"))


def test_field_override_maps_to_field_list():
    cfg = parse_config(small_config(params={"trials": 5}, field={"p": 7}))
    assert cfg.params["qs"] == [7]
    cfg = parse_config(small_config(params={"trials": 5}, field={"p": 3, "k": 2}))
    assert cfg.params["qs"] == [9]
    with pytest.raises(ConfigInvalid):
        parse_config({"experiment": "garaev_chang_cert", "field": {"p": 7}})


def test_run_writes_csv(tmp_path):
    out = tmp_path / "rows.csv"
    cfg = RunConfig(**{**{"experiment": "incidence_fuzz"},
                       "params": {"qs": [5], "axes": ["A"], "trials": 25},
                       "seed": 3, "out": str(out)})
    result = run(cfg)
    assert result.ok and result.rows_written == 25
    with open(out) as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 25
    exp = get_experiment("incidence_fuzz")
    assert list(rows[0]) == list(exp.columns)
    # round-trip: numeric fields parse back
    for row in rows:
        assert int(row["count"]) >= 0
        float(row["main_term"])
        assert row["pass"] == "True"
        assert row["experiment"] == "incidence_fuzz"


def test_run_jsonl(tmp_path):
    out = tmp_path / "rows.jsonl"
    cfg = RunConfig(experiment="gauss_parabola", params={"prime_max": 23},
                    seed=1, out=str(out), format="jsonl")
    result = run(cfg)
    assert result.ok
    lines = [json.loads(line) for line in open(out)]
    assert len(lines) == result.rows_written == 8  # odd primes 3..23
    assert all(line["pass"] for line in lines)


def test_worker_counts_give_identical_bytes(tmp_path):
    outs = []
    for workers in (1, 2, 3):
        out = tmp_path / f"w{workers}.csv"
        cfg = RunConfig(experiment="incidence_fuzz",
                        params={"qs": [5, 7], "axes": ["A", "M"], "trials": 40},
                        seed=11, out=str(out), workers=workers)
        assert run(cfg).ok
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_trial_sample_independent_of_chunking(tmp_path):
    # same seed, different trial counts: common prefix of rows is identical
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    run(RunConfig(experiment="ruzsa_fourfold_fuzz",
                  params={"ps": [101], "trials": 20}, seed=5, out=str(a)))
    run(RunConfig(experiment="ruzsa_fourfold_fuzz",
                  params={"ps": [101], "trials": 60}, seed=5, out=str(b)))
    rows_a = a.read_text().splitlines()
    rows_b = b.read_text().splitlines()
    assert rows_b[:21] == rows_a[:21]


def test_selftest_all_green(tmp_path):
    results = selftest(out_dir=str(tmp_path))
    assert len(results) >= 8
    assert all(r.ok for r in results)


def test_cli_run_and_exit_codes(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(small_config()))
    out = tmp_path / "out.csv"
    assert main(["run", str(cfg_path), "--out", str(out)]) == 0
    assert out.exists()

    # seed override via flag
    assert main(["run", str(cfg_path), "--out", str(out), "--seed", "99"]) == 0

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"experiment": "nope"}))
    assert main(["run", str(bad)]) == 2

    notjson = tmp_path / "notjson.json"
    notjson.write_text("{")
    assert main(["run", str(notjson)]) == 2

    assert main(["run", str(tmp_path / "missing.json")]) == 3


def test_cli_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "incidence_fuzz" in out and "hard-assert" in out
    assert "17 experiments registered" in out


def test_plan_rejects_unknown_params():
    with pytest.raises(ConfigInvalid):
        plan_tasks("incidence_fuzz", {"nope": 1}, 0)


def test_expander_monitor_entry_point():
    from fflab.experiments import expander_monitor

    rows = expander_monitor("shifted_square_monitor", {"ps": [101], "trials": 5}, seed=3)
    assert len(rows) == 5
    assert all(row["ratio"] > 0 for row in rows)
    with pytest.raises(UnknownExperiment):
        expander_monitor("nope")


def test_hard_assert_failure_exits_nonzero(tmp_path, monkeypatch):
    # a synthetic always-failing hard experiment must drive exit code 1
    from fflab import experiments as expmod

    def planner(params, seed):
        return [("always_fails", {"seed": seed})]

    def executor(payload):
        return [{"experiment": "always_fails", "p": 5, "k": 1, "trial": 0,
                 "seed": payload["seed"], "pass": False}]

    defn = expmod.ExperimentDef(
        name="always_fails", claim="1 <= 0", kind="hard-assert",
        columns=("experiment", "p", "k", "trial", "seed", "pass"),
        defaults={}, planner=planner)
    monkeypatch.setitem(expmod.REGISTRY, "always_fails", defn)
    monkeypatch.setitem(expmod._EXECUTORS, "always_fails", executor)

    result = run(RunConfig(experiment="always_fails", out=str(tmp_path / "f.csv")))
    assert not result.ok and len(result.failures) == 1

    cfg = tmp_path / "fail.json"
    cfg.write_text(json.dumps({"experiment": "always_fails"}))
    assert main(["run", str(cfg), "--out", str(tmp_path / "f2.csv")]) == 1


def test_unwritable_output_exits_3(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(small_config(params={"qs": [5], "trials": 2})))
    missing_dir = tmp_path / "no" / "such" / "dir" / "out.csv"
    assert main(["run", str(cfg), "--out", str(missing_dir)]) == 3


def test_workers_env_default(monkeypatch):
    from fflab.runner import default_workers

    monkeypatch.setenv("FFLAB_WORKERS", "3")
    assert default_workers() == 3
    monkeypatch.setenv("FFLAB_WORKERS", "junk")
    assert default_workers() == 1
    monkeypatch.delenv("FFLAB_WORKERS")
    assert default_workers() == 1
