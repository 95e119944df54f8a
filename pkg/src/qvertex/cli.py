"""Command line driver: ``qvertex verify | list-checks | dump-module``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .report import Report
from .scenario import ConfigError, Scenario, Setup, load_scenario

REPORT_ENV = "QVERTEX_REPORT"
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _run_one(setup: Setup, suite: str) -> list:
    from .suites import run_suite
    try:
        return run_suite(setup, suite)
    except Exception as exc:  # a crashing suite still lets the others finish
        return [Report(f"{suite}-error").fail(error=type(exc).__name__, detail=str(exc))]


def _worker(path: str, scale: int, suite: str) -> list:
    sc = load_scenario(path)
    if scale != 1:
        sc = sc.scaled(scale)
    return [r.to_dict() for r in _run_one(Setup(sc), suite)]


def run_scenario(sc: Scenario, parallel: bool = False, scale: int = 1) -> list:
    """(suite, report dict) pairs in declaration order."""
    if parallel and sc.path is not None and len(sc.checks) > 1:
        with ProcessPoolExecutor() as pool:
            futures = [pool.submit(_worker, sc.path, scale, s) for s in sc.checks]
            return [(s, d) for s, fut in zip(sc.checks, futures) for d in fut.result()]
    setup = Setup(sc)
    return [(s, r.to_dict()) for s in sc.checks for r in _run_one(setup, s)]


def report_lines(sc: Scenario, results: list, timing: bool = True) -> list:
    out = []
    for suite, d in results:
        d = dict(d, scenario=sc.name, suite=suite, seed=sc.seed)
        if not timing:
            d.pop("seconds", None)
        out.append(json.dumps(d, sort_keys=True))
    return out


def summary(sc: Scenario, results: list) -> str:
    lines = [f"scenario {sc.name} ({sc.kind}), seed {sc.seed}"]
    for suite in sc.checks:
        mine = [d for s, d in results if s == suite]
        bad = [d for d in mine if d["status"] != "pass"]
        secs = sum(d.get("seconds", 0.0) for d in mine)
        lines.append(f"  {suite:22s} {'PASS' if not bad else 'FAIL'}  {len(mine) - len(bad)}/{len(mine)} checks"
                     f"  {secs:.1f}s")
        for d in bad:
            lines.append(f"    {d['check']}: {json.dumps(d['counterexample'], sort_keys=True)}")
    n_bad = sum(d["status"] != "pass" for _, d in results)
    lines.append("all checks passed" if not n_bad else f"{n_bad} check(s) failed")
    return "\n".join(lines)


def _report_path(args, sc: Scenario) -> str:
    if args.report:
        return args.report
    if os.environ.get(REPORT_ENV):
        return os.environ[REPORT_ENV]
    if sc.output.get("report"):
        return sc.output["report"]
    stem = os.path.splitext(os.path.basename(sc.path or sc.name))[0]
    return f"{stem}.report.jsonl"


def cmd_verify(args) -> int:
    try:
        sc = load_scenario(args.scenario)
        if args.window_scale != 1:
            sc = sc.scaled(args.window_scale)
        Setup(sc)  # surface construction errors as configuration errors
    except ConfigError as exc:
        print(f"configuration error in {exc.field}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    t0 = time.perf_counter()
    results = run_scenario(sc, args.parallel, args.window_scale)
    path = _report_path(args, sc)
    with open(path, "w") as fh:
        for line in report_lines(sc, results, timing=not args.no_timing):
            fh.write(line + "\n")
    print(summary(sc, results))
    print(f"report written to {path} ({time.perf_counter() - t0:.1f}s)")
    return EXIT_OK if all(d["status"] == "pass" for _, d in results) else EXIT_FAIL


def cmd_list_checks(args) -> int:
    from .suites import catalog
    for entry in catalog():
        print(f"{entry['suite']} → {entry['refs']}")
        if args.verbose:
            print(f"    {entry['checks']}")
    return EXIT_OK


def dump_module(sc: Scenario) -> dict:
    setup = Setup(sc)
    mod = setup.module
    deg = min(sc.window["labels"], mod.cutoff)
    return {
        "scenario": sc.name,
        "kind": sc.kind,
        "cutoff": mod.cutoff,
        "dimensions": [mod.dimension(d) for d in range(mod.cutoff + 1)],
        "basis": [mod.label_text(lab) for lab in mod.basis_upto(deg)],
        "generators": [{"name": g.field.name, "weight": g.field.weight} for g in setup.gens],
        "gamma": [g.to_text() for g in setup.gamma],
    }


def cmd_dump_module(args) -> int:
    try:
        info = dump_module(load_scenario(args.scenario))
    except ConfigError as exc:
        print(f"configuration error in {exc.field}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(json.dumps(info, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qvertex", description="Exact checks for quasi-local fields and Gamma-vertex algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run the suites of a scenario file")
    v.add_argument("scenario")
    v.add_argument("--parallel", action="store_true", help="run suites in separate processes")
    v.add_argument("--report", help=f"JSON-lines output (default: ${REPORT_ENV}, then <scenario>.report.jsonl)")
    v.add_argument("--window-scale", type=int, default=1, metavar="K", help="multiply mode and exponent windows by K")
    v.add_argument("--no-timing", action="store_true", help="omit timing fields from the report")
    v.set_defaults(func=cmd_verify)
    lc = sub.add_parser("list-checks", help="print the suite catalog")
    lc.add_argument("-v", "--verbose", action="store_true")
    lc.set_defaults(func=cmd_list_checks)
    d = sub.add_parser("dump-module", help="describe the module and generators of a scenario")
    d.add_argument("scenario")
    d.set_defaults(func=cmd_dump_module)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
