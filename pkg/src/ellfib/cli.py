"""Command line front end: ``ellfib analyze CONFIG [--out DIR] [--dot] [--parallel] [--normalize-tate]``.

Exit codes: 0 success, 1 invalid input (parse errors, rejected decompositions,
triples with no table row), 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from . import __version__
from .jobs import ConfigInvalid, Job, input_echo, load_job, run_command
from .poly import ParseError
from .weierstrass import InvariantViolation

log = logging.getLogger("ellfib")

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2


def _run_one(args):
    job, name, params = args
    return run_command(job, name, params)


def build_report(text: str, normalize_tate: bool = False, parallel: bool = False):
    """Returns (report dict, {dot name: dot text})."""
    job: Job = load_job(text)
    job.normalize_tate = normalize_tate
    tasks = [(job, name, params) for name, params in job.commands]
    if parallel and len(tasks) > 1:
        with ProcessPoolExecutor() as pool:
            outcomes = list(pool.map(_run_one, tasks))
    else:
        outcomes = [_run_one(t) for t in tasks]
    dots = {}
    results = []
    for k, (result, dot) in enumerate(outcomes):
        results.append(result)
        for name, body in dot.items():
            dots[f"{k:02d}_{name}"] = body
    report = {
        "tool": "ellfib",
        "version": __version__,
        "schema": 1,
        "input_sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
        "options": {"normalize_tate": normalize_tate},
        "input": input_echo(job),
        "results": results,
    }
    return report, dots


def dumps(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def analyze(config: str, out: Optional[str] = None, dot: bool = False, parallel: bool = False,
            normalize_tate: bool = False, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        with open(config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        log.error("cannot read %s: %s", config, e)
        return EXIT_INVALID
    try:
        report, dots = build_report(text, normalize_tate, parallel)
    except ParseError as e:
        log.error("parse error: %s", e)
        return EXIT_INVALID
    except InvariantViolation as e:
        log.error("internal invariant violated: %s", e)
        return EXIT_INTERNAL
    except (ConfigInvalid, ValueError) as e:
        log.error("invalid input: %s", e)
        return EXIT_INVALID
    body = dumps(report)
    stem = os.path.splitext(os.path.basename(config))[0]
    if out:
        os.makedirs(out, exist_ok=True)
        with open(os.path.join(out, f"{stem}.report.json"), "w", encoding="utf-8") as fh:
            fh.write(body)
        if dot:
            for name, text in sorted(dots.items()):
                with open(os.path.join(out, f"{stem}.{name}.dot"), "w", encoding="utf-8") as fh:
                    fh.write(text)
    else:
        stdout.write(body)
        if dot:
            for name, text in sorted(dots.items()):
                stdout.write(f"// {name}\n{text}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="ellfib", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", help="run every command of a job config")
    p.add_argument("config")
    p.add_argument("--out", help="directory for the report and DOT files (default: stdout)")
    p.add_argument("--dot", action="store_true", help="also emit DOT graphs")
    p.add_argument("--parallel", action="store_true", help="run independent commands in parallel")
    p.add_argument("--normalize-tate", action="store_true",
                   help="reduce non-minimal triples by (4, 6, 12) and report the twist count")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s")
    return analyze(args.config, args.out, args.dot, args.parallel, args.normalize_tate)


if __name__ == "__main__":
    sys.exit(main())
