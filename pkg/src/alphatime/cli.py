"""Command-line front end.

``alphatime list`` prints the experiment catalog; ``alphatime run`` executes
one experiment and writes ``<id>.json`` and ``<id>.csv``.  Exit status: 0
when every criterion passes, 1 when one fails, 2 for an invalid config or
unknown experiment, 3 when a numerical failure stops the run (the report is
still written, with the cause).
"""
from __future__ import annotations

import argparse
import difflib
import os
import sys
from pathlib import Path

from . import __version__
from .config import ConfigError, ExperimentConfig, load, resolve
from .densities import QuadratureError
from .experiments import CATALOG
from .finite_diff import StencilError
from .report import write_csv, write_json

OUT_ENV = "ALPHATIME_OUT"
DEFAULT_OUT = "alphatime-out"

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


def list_experiments() -> list[dict]:
    return [{"id": e.id, "description": e.description, "anchor": e.anchor} for e in CATALOG.values()]


def build_config(experiment: str, config_path: str | None = None, seed: int | None = None,
                 workers: int | None = None) -> ExperimentConfig:
    if experiment not in CATALOG:
        near = difflib.get_close_matches(experiment, CATALOG, n=1)
        hint = f"; did you mean {near[0]!r}?" if near else ""
        raise ConfigError(f"unknown experiment {experiment!r}{hint} (known: {', '.join(CATALOG)})")
    raw = load(config_path) if config_path else {}
    return resolve(experiment, raw, CATALOG[experiment].fields, {"seed": seed, "workers": workers})


def run_experiment(cfg: ExperimentConfig, out_dir: str | Path) -> tuple[int, dict]:
    """Run ``cfg``, write both reports to ``out_dir``, return (exit status, JSON payload)."""
    exp = CATALOG[cfg.experiment]
    payload = {
        "experiment": exp.id,
        "description": exp.description,
        "anchor": exp.anchor,
        "version": __version__,
        "config": cfg.as_dict(),
        "config_hash": cfg.hash,
    }
    records: list[dict] = []
    try:
        outcome = exp.run(cfg)
    except (QuadratureError, StencilError, OverflowError, FloatingPointError, ArithmeticError) as exc:
        payload.update(passed=False, failure=f"{type(exc).__name__}: {exc}", criteria=[], extras={})
        status = EXIT_NUMERIC
    else:
        records = outcome.records
        payload.update(passed=outcome.passed, failure=None,
                       criteria=[c.as_dict() for c in outcome.criteria], extras=outcome.extras)
        status = EXIT_OK if outcome.passed else EXIT_FAIL
    payload["records"] = records
    out = Path(out_dir)
    write_json(out / f"{exp.id}.json", payload)
    write_csv(out / f"{exp.id}.csv", records)
    return status, payload


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="alphatime", description="Numerical checks for alpha-time processes.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="print the experiment catalog")
    r = sub.add_parser("run", help="run one experiment")
    r.add_argument("--experiment", "-e", required=True)
    r.add_argument("--config", "-c", default=None, help="flat key = value config file")
    r.add_argument("--seed", type=int, default=None)
    r.add_argument("--workers", type=int, default=None)
    r.add_argument("--out", default=None, help=f"output directory (default ${OUT_ENV} or ./{DEFAULT_OUT})")
    return p


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "list":
        for e in list_experiments():
            print(f"{e['id']:<10} {e['description']}")
            print(f"{'':<10} anchor: {e['anchor']}")
        return EXIT_OK
    try:
        cfg = build_config(args.experiment, args.config, args.seed, args.workers)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = args.out or os.environ.get(OUT_ENV) or DEFAULT_OUT
    try:
        status, payload = run_experiment(cfg, out)
    except ConfigError as exc:
        # field values that only the experiment itself can interpret
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for c in payload["criteria"]:
        print(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}  value={c['value']:.3g}  tol={c['tolerance']:.3g}")
    if payload["failure"]:
        print(f"numerical failure: {payload['failure']}", file=sys.stderr)
    print(f"{cfg.experiment}: {'passed' if payload['passed'] else 'FAILED'} -> {Path(out) / (cfg.experiment + '.json')}")
    return status


if __name__ == "__main__":
    sys.exit(main())
