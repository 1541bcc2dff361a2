"""Deterministic experiment execution and result serialization.

Output is a pure function of the configuration: trials derive their own
generators from (seed, trial index), tasks are executed in plan order, and
the writer emits rows in that order whatever the worker count.  CSV uses a
fixed header, comma separator, '.' decimal point and '\n' terminator;
floats are written with repr so files are byte-reproducible.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import ConfigInvalid
from .experiments import REGISTRY, ExperimentDef, execute_task, get_experiment, plan_tasks

WORKERS_ENV = "FFLAB_WORKERS"

_CONFIG_KEYS = {"experiment", "params", "seed", "out", "format", "workers", "field"}


@dataclass
class RunConfig:
    experiment: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    out: str | None = None
    format: str = "csv"
    workers: int | None = None


@dataclass
class RunResult:
    experiment: str
    rows_written: int
    failures: list[dict]
    out_path: str

    @property
    def ok(self) -> bool:
        return not self.failures


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def load_config(path: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigInvalid(f"{path} is not valid JSON: {exc}") from exc
    return parse_config(raw)


def parse_config(raw: dict) -> RunConfig:
    if not isinstance(raw, dict):
        raise ConfigInvalid("config must be a JSON object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigInvalid(f"unknown config keys: {sorted(unknown)}")
    if "experiment" not in raw:
        raise ConfigInvalid("config needs an 'experiment' id")
    name = raw["experiment"]
    exp = get_experiment(name)  # raises UnknownExperiment
    params = dict(raw.get("params", {}))
    if not isinstance(params, dict):
        raise ConfigInvalid("'params' must be an object")
    unknown_params = set(params) - set(exp.defaults)
    if unknown_params:
        raise ConfigInvalid(
            f"experiment {name!r} does not take parameters {sorted(unknown_params)}")
    if "field" in raw:
        params = _apply_field_override(exp, params, raw["field"])
    fmt = raw.get("format", "csv")
    if fmt not in ("csv", "jsonl"):
        raise ConfigInvalid(f"format must be 'csv' or 'jsonl', got {fmt!r}")
    seed = raw.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigInvalid("'seed' must be an integer")
    workers = raw.get("workers")
    if workers is not None and (not isinstance(workers, int) or workers < 1):
        raise ConfigInvalid("'workers' must be a positive integer")
    return RunConfig(experiment=name, params=params, seed=seed,
                     out=raw.get("out"), format=fmt, workers=workers)


def _apply_field_override(exp: ExperimentDef, params: dict, spec) -> dict:
    """Map a single field spec {p, k} onto the experiment's field-list
    parameter ('qs' or 'ps')."""
    if not isinstance(spec, dict) or "p" not in spec:
        raise ConfigInvalid("'field' must be an object with at least 'p'")
    q = int(spec["p"]) ** int(spec.get("k", 1))
    for key in ("qs", "ps"):
        if key in exp.defaults:
            out = dict(params)
            out.setdefault(key, [q])
            return out
    raise ConfigInvalid(f"experiment {exp.name!r} takes no field override")


def _fmt_csv(value) -> str:
    if isinstance(value, bool):
        return "True" if value else "False"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_safe(value):
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)


def run(config: RunConfig) -> RunResult:
    exp = get_experiment(config.experiment)
    tasks = plan_tasks(config.experiment, config.params, config.seed)
    workers = config.workers or default_workers()

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(execute_task, tasks, chunksize=1))
    else:
        results = [execute_task(t) for t in tasks]

    out_path = config.out or f"{config.experiment}.{'csv' if config.format == 'csv' else 'jsonl'}"
    failures: list[dict] = []
    written = 0
    hard = exp.kind == "hard-assert"
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        if config.format == "csv":
            fh.write(",".join(exp.columns) + "\n")
        for rows in results:
            for row in rows:
                if set(row) != set(exp.columns):
                    missing = set(exp.columns) ^ set(row)
                    raise ConfigInvalid(
                        f"row/column mismatch in {exp.name}: {sorted(missing)}")
                ordered = [row[c] for c in exp.columns]
                if config.format == "csv":
                    fh.write(",".join(_fmt_csv(v) for v in ordered) + "\n")
                else:
                    fh.write(json.dumps(
                        {c: _json_safe(row[c]) for c in exp.columns},
                        separators=(",", ":")) + "\n")
                written += 1
                if hard and row.get("pass") is False:
                    failures.append(row)
    return RunResult(experiment=exp.name, rows_written=written,
                     failures=failures, out_path=out_path)


def selftest(workers: int | None = None, out_dir: str = ".") -> list[RunResult]:
    """Run every hard-assert experiment at its built-in small parameters."""
    results = []
    for name in sorted(REGISTRY):
        exp = REGISTRY[name]
        if exp.kind != "hard-assert" or exp.selftest_params is None:
            continue
        cfg = RunConfig(experiment=name, params=dict(exp.selftest_params),
                        seed=20250808, out=os.path.join(out_dir, f"selftest_{name}.csv"),
                        workers=workers)
        results.append(run(cfg))
    return results
