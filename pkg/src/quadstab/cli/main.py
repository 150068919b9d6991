"""``quadstab <command> --config job.json [--out report.json] [--svg plot.svg] [--edges i j] [--resolution N]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import COMMANDS, ConfigError, from_dict
from .run import EXIT_ERROR, run_job
from .svg import render_svg


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quadstab", description="Stability of weighted convex quadrilaterals.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", required=True, help="JSON job file")
    ap.add_argument("--out", help="write the JSON report here instead of stdout")
    ap.add_argument("--svg", help="write a plot (scan, or classify with a family)")
    ap.add_argument("--edges", nargs=2, type=int, metavar=("I", "J"), help="edge pair for interval")
    ap.add_argument("--resolution", type=int, metavar="N", help="grid resolution for scan")
    return ap


def _fail(message: str) -> int:
    print(f"quadstab: error: {message}", file=sys.stderr)
    return EXIT_ERROR


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = Path(args.config).read_bytes()
    except OSError as exc:
        return _fail(f"cannot read config: {exc}")
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        return _fail(f"{args.config}: invalid JSON: {exc}")
    if isinstance(data, dict):
        if args.edges is not None:
            data["edges"] = args.edges
        if args.resolution is not None:
            data["resolution"] = args.resolution
        for key in ("out", "svg"):
            if getattr(args, key) is not None:
                data[key] = getattr(args, key)
    try:
        cfg = from_dict(data, args.command)
    except ConfigError as exc:
        return _fail(f"{args.config}: {exc}")
    report = run_job(cfg)
    text = report.to_json()
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if "error" in report.data:
        print(f"quadstab: error: {report.data['error']['message']}", file=sys.stderr)
    if cfg.svg:
        if report.plot is None:
            print("quadstab: note: no plot for this command (scan, or classify with a family)", file=sys.stderr)
        else:
            Path(cfg.svg).write_text(render_svg(report.plot), encoding="utf-8")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
