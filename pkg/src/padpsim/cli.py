"""Command line front end.

Verbs:
  run       run a scenario end to end and emit its artifacts
  schedule  export the scenario's scan schedule(s) as CSV
  extract   run the pipeline and emit recovered component lists
  report    run the pipeline and emit only the JSON report

Exit codes: 0 success, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .antenna import ConfigError
from .geometry import GeometryError
from .runner import (
    ScenarioConfig,
    emit,
    load_scenario,
    report_json,
    report_tables,
    run_scenario,
    scenario_schedules,
)
from .scan import schedule_to_csv


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padpsim",
        description="28 GHz directional channel sounding simulator",
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, helptext in (
        ("run", "run a scenario and emit all configured artifacts"),
        ("schedule", "export the scan schedule(s) as CSV"),
        ("extract", "emit recovered multipath component lists"),
        ("report", "emit the JSON report only"),
    ):
        p = sub.add_parser(verb, help=helptext)
        p.add_argument("scenario", help="scenario JSON file")
        p.add_argument("--seed", type=int, default=None, help="override the master seed")
        p.add_argument("--jobs", type=int, default=1, help="worker threads")
        p.add_argument("--out", default="out", help="output directory")
        if verb == "run":
            p.add_argument(
                "--format",
                default="csv,json,svg-plot-data",
                help="comma list of csv, json, svg-plot-data",
            )
    return parser


def _load(args) -> ScenarioConfig:
    cfg = load_scenario(args.scenario)
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, master_seed=args.seed)
    return cfg


def _cmd_run(args) -> int:
    cfg = _load(args)
    formats = [f.strip() for f in args.format.split(",") if f.strip()]
    reports = run_scenario(cfg, jobs=args.jobs)
    out = Path(args.out)
    for report in reports:
        sub = out if len(reports) == 1 else out / getattr(report, "variant", "report")
        for path in emit(report, formats, sub):
            print(path)
    return 0


def _cmd_schedule(args) -> int:
    cfg = _load(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, schedule in scenario_schedules(cfg).items():
        path = out / f"{name}.csv"
        path.write_text(schedule_to_csv(schedule))
        print(path)
    return 0


def _cmd_extract(args) -> int:
    cfg = _load(args)
    reports = run_scenario(cfg, jobs=args.jobs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    wrote = False
    for report in reports:
        for name, (header, rows) in report_tables(report).items():
            if not name.startswith("mpcs_"):
                continue
            import csv as _csv
            import io as _io

            buf = _io.StringIO()
            writer = _csv.writer(buf, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([f"{v:.6f}" if isinstance(v, float) else v for v in row])
            path = out / f"{name}.csv"
            path.write_text(buf.getvalue())
            print(path)
            wrote = True
    if not wrote:
        print("scenario kind has no component-list artifact", file=sys.stderr)
    return 0


def _cmd_report(args) -> int:
    cfg = _load(args)
    reports = run_scenario(cfg, jobs=args.jobs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    doc = [report_json(r) for r in reports]
    path = out / "report.json"
    path.write_text(json.dumps(doc if len(doc) > 1 else doc[0], indent=2, sort_keys=True) + "\n")
    print(path)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "schedule": _cmd_schedule,
        "extract": _cmd_extract,
        "report": _cmd_report,
    }
    try:
        return handlers[args.verb](args)
    except (ConfigError, GeometryError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
