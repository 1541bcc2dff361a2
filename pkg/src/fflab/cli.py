"""Command-line surface: ``fflab run | list | selftest``.

Exit codes: 0 all-pass, 1 hard-assertion failure, 2 configuration error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
import tempfile

from .errors import ConfigInvalid, FFLabError, UnknownExperiment
from .experiments import REGISTRY
from .runner import load_config, run, selftest


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fflab",
        description="finite-field harmonic analysis and expander experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one experiment from a JSON config")
    p_run.add_argument("config", help="path to the JSON run configuration")
    p_run.add_argument("--out", help="output path (default: <experiment>.<ext>)")
    p_run.add_argument("--format", choices=["csv", "jsonl"], help="output format")
    p_run.add_argument("--workers", type=int, help="worker processes")
    p_run.add_argument("--seed", type=int, help="override the config seed")

    sub.add_parser("list", help="print the experiment registry")

    p_self = sub.add_parser("selftest", help="run the hard-assert suite at small size")
    p_self.add_argument("--workers", type=int, default=None)
    return parser


def _cmd_run(args) -> int:
    try:
        config = load_config(args.config)
    except OSError as exc:
        print(f"fflab: cannot read config: {exc}", file=sys.stderr)
        return 3
    except (ConfigInvalid, UnknownExperiment) as exc:
        print(f"fflab: invalid config: {exc}", file=sys.stderr)
        return 2
    if args.out:
        config.out = args.out
    if args.format:
        config.format = args.format
    if args.workers:
        config.workers = args.workers
    if args.seed is not None:
        config.seed = args.seed
    try:
        result = run(config)
    except (ConfigInvalid, UnknownExperiment) as exc:
        print(f"fflab: invalid config: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"fflab: I/O error: {exc}", file=sys.stderr)
        return 3
    except FFLabError as exc:
        print(f"fflab: {exc}", file=sys.stderr)
        return 1
    print(f"{result.experiment}: {result.rows_written} rows -> {result.out_path}")
    if result.failures:
        first = result.failures[0]
        print(f"fflab: hard assertion failed on row {first}", file=sys.stderr)
        return 1
    return 0


def _cmd_list() -> int:
    for name in sorted(REGISTRY):
        exp = REGISTRY[name]
        print(f"{name}  [{exp.kind}]")
        print(f"    claim: {exp.claim}")
        print(f"    params: {exp.defaults}")
    print(f"{len(REGISTRY)} experiments registered")
    return 0


def _cmd_selftest(args) -> int:
    with tempfile.TemporaryDirectory(prefix="fflab_selftest_") as tmp:
        try:
            results = selftest(workers=args.workers, out_dir=tmp)
        except OSError as exc:
            print(f"fflab: I/O error: {exc}", file=sys.stderr)
            return 3
        bad = 0
        for res in results:
            status = "ok" if res.ok else f"FAILED ({len(res.failures)} rows)"
            print(f"{res.experiment:<28} {res.rows_written:>6} rows  {status}")
            bad += not res.ok
    print(f"{len(results) - bad}/{len(results)} hard-assert experiments passed")
    return 1 if bad else 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "list":
        return _cmd_list()
    return _cmd_selftest(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
