"""Command-line interface.

Exit codes: 0 success / all checks passed, 1 check failures or path
violations, 2 usage errors, 3 internal errors, 4 guard refusals.
"""

from __future__ import annotations

import argparse
import json
import os
import posixpath
import shutil
import sys
from dataclasses import asdict

from . import __version__
from .analyzer import PKG_SCRIPT_NAME, proj_analyze, proj_pkg_script
from .checks import STATE_FAIL, CheckSelection, list_checks, proj_check
from .errors import PathViolationError, ReprolintError
from .guard import (
    DEFAULT_RUNNER,
    GUARD_REFUSAL_EXIT,
    guard_run,
    guard_scan,
    log_clear,
    log_report,
    sandbox,
)
from .paths import check_path, check_path_strict
from .render import render_analysis, render_check_report, render_log, render_verdict

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

FORMAT_HUMAN = "human"
FORMAT_JSON = "json"


def _emit(args: argparse.Namespace, payload: dict, human: str) -> None:
    if getattr(args, "format", FORMAT_HUMAN) == FORMAT_JSON:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=(FORMAT_HUMAN, FORMAT_JSON),
        default=FORMAT_HUMAN,
        help="output format (default: human)",
    )


def _selection(args: argparse.Namespace) -> CheckSelection:
    if args.only:
        return CheckSelection.exact([n.strip() for n in args.only.split(",") if n.strip()])
    if args.contains:
        return CheckSelection.contains(args.contains)
    if args.starts_with:
        return CheckSelection.starts_with(args.starts_with)
    return CheckSelection.all()


def _cmd_check(args: argparse.Namespace) -> int:
    report = proj_check(args.root, _selection(args))
    if args.strict:
        failing = [o for o in report.outcomes if o.state == STATE_FAIL]
        if failing:
            for o in failing:
                print(o.problem, file=sys.stderr)
            return EXIT_FAIL
    payload = {
        "root": report.root,
        "checks": [asdict(o) for o in report.outcomes],
        "passed": report.passed,
        "failed": report.failed,
        "errors": report.errors,
    }
    _emit(args, payload, render_check_report(report))
    if report.errors:
        return EXIT_INTERNAL
    return EXIT_FAIL if report.failed else EXIT_OK


def _cmd_analyze(args: argparse.Namespace) -> int:
    report = proj_analyze(args.root)
    payload = {
        "root": report.root,
        "packages": [asdict(p) for p in report.packages],
        "files": [asdict(f) for f in report.files],
        "moves": [asdict(m) for m in report.moves],
        "paths_logged": [asdict(p) for p in report.paths_logged],
    }
    _emit(args, payload, render_analysis(report))
    return EXIT_OK


def _cmd_path(args: argparse.Namespace) -> int:
    if args.format == FORMAT_JSON:
        findings = check_path(args.paths, args.root)
        error = None
        try:
            check_path_strict(args.paths, args.root)
        except PathViolationError as err:
            error = str(err)
        print(
            json.dumps(
                {
                    "paths": list(args.paths),
                    "findings": [asdict(f) for f in findings],
                    "error": error,
                },
                indent=2,
                sort_keys=True,
            )
        )
        return EXIT_FAIL if (findings or error) else EXIT_OK
    findings = check_path_strict(args.paths, args.root)  # raises on violations
    if findings:
        for f in findings:
            print(f"{f.path}: {f.problem} ({f.solution})")
        return EXIT_FAIL
    print(f"No problematic paths among {len(args.paths)} checked")
    return EXIT_OK


def _cmd_deps(args: argparse.Namespace) -> int:
    path = proj_pkg_script(args.root, args.output)
    _emit(args, {"script": path}, path)
    return EXIT_OK


def _cmd_sandbox(args: argparse.Namespace) -> int:
    dest = sandbox(args.root)
    _emit(args, {"path": dest}, dest)
    return EXIT_OK


def _cmd_guard_scan(args: argparse.Namespace) -> int:
    verdict = guard_scan(args.script, args.root)
    payload = {
        "script": verdict.script,
        "allowed": verdict.allowed,
        "blocking": [{"line": l, "message": m} for l, m in verdict.blocking],
        "warnings": [{"line": l, "message": m} for l, m in verdict.warnings],
    }
    _emit(args, payload, render_verdict(verdict))
    return EXIT_OK if verdict.allowed else GUARD_REFUSAL_EXIT


def _cmd_guard_run(args: argparse.Namespace) -> int:
    return guard_run(args.script, args.root, args.runner)


def _cmd_log_show(args: argparse.Namespace) -> int:
    events = log_report(args.root)
    payload = {
        "events": [
            {
                "path": e.path,
                "path_abs": e.path_abs,
                "func": e.func,
                "timestamp": e.timestamp.isoformat(timespec="seconds"),
            }
            for e in events
        ]
    }
    _emit(args, payload, render_log(events))
    return EXIT_OK


def _cmd_log_clear(args: argparse.Namespace) -> int:
    log_clear(args.root)
    return EXIT_OK


def _cmd_mv(args: argparse.Namespace) -> int:
    root = os.path.abspath(args.root)
    src = os.path.join(root, args.src)
    if not os.path.isfile(src):
        raise ReprolintError(f"no such file: {args.src}")
    dest_dir = os.path.join(root, args.dest_dir)
    dest = os.path.join(dest_dir, os.path.basename(src))
    if os.path.exists(dest):
        raise ReprolintError(f"destination already exists: {args.dest_dir}/{os.path.basename(src)}")
    os.makedirs(dest_dir, exist_ok=True)
    shutil.move(src, dest)
    moved_to = posixpath.join(args.dest_dir.replace(os.sep, "/"), os.path.basename(src))
    _emit(args, {"src": args.src, "moved_to": moved_to}, f"{args.src} -> {moved_to}")
    return EXIT_OK


def _cmd_list_checks(args: argparse.Namespace) -> int:
    names = list_checks()
    _emit(args, {"checks": names}, "\n".join(names))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reprolint",
        description="Static reproducibility linter for data-analysis projects.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run reproducibility checks on a project")
    p.add_argument("root", nargs="?", default=".")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--only", metavar="NAME,NAME", help="run exactly these checks")
    group.add_argument("--contains", metavar="TEXT", help="run checks whose name contains TEXT")
    group.add_argument("--starts-with", dest="starts_with", metavar="PREFIX",
                       help="run checks whose name starts with PREFIX")
    p.add_argument("--strict", action="store_true",
                   help="treat failures as errors: print problems to stderr, no summary")
    _add_format(p)
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("analyze", help="report packages, files, moves and paths")
    p.add_argument("root", nargs="?", default=".")
    _add_format(p)
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("path", help="check paths for portability problems")
    p.add_argument("paths", nargs="+", metavar="PATH")
    p.add_argument("--root", default=".")
    _add_format(p)
    p.set_defaults(handler=_cmd_path)

    p = sub.add_parser("deps", help="write an install script for used packages")
    p.add_argument("root", nargs="?", default=".")
    p.add_argument("-o", "--output", default=PKG_SCRIPT_NAME,
                   help=f"output path, relative to the project root (default: {PKG_SCRIPT_NAME})")
    _add_format(p)
    p.set_defaults(handler=_cmd_deps)

    p = sub.add_parser("sandbox", help="copy the project into a temp directory")
    p.add_argument("root", nargs="?", default=".")
    _add_format(p)
    p.set_defaults(handler=_cmd_sandbox)

    p = sub.add_parser("guard", help="statically gate scripts before execution")
    guard_sub = p.add_subparsers(dest="guard_command", required=True)
    g = guard_sub.add_parser("scan", help="scan a script and report the verdict")
    g.add_argument("script")
    g.add_argument("--root", default=".")
    _add_format(g)
    g.set_defaults(handler=_cmd_guard_scan)
    g = guard_sub.add_parser("run", help="run a script if the guard allows it")
    g.add_argument("script")
    g.add_argument("--root", default=".")
    g.add_argument("--runner", default=DEFAULT_RUNNER,
                   help="command template; {script} is replaced by the script path")
    g.set_defaults(handler=_cmd_guard_run)

    p = sub.add_parser("log", help="show or clear the project event log")
    log_sub = p.add_subparsers(dest="log_command", required=True)
    l = log_sub.add_parser("show", help="print logged events in append order")
    l.add_argument("--root", default=".")
    _add_format(l)
    l.set_defaults(handler=_cmd_log_show)
    l = log_sub.add_parser("clear", help="delete the log (no-op when absent)")
    l.add_argument("--root", default=".")
    l.set_defaults(handler=_cmd_log_clear)

    p = sub.add_parser("mv", help="move a file into a directory, creating it")
    p.add_argument("src")
    p.add_argument("dest_dir", metavar="dstdir")
    p.add_argument("--root", default=".")
    _add_format(p)
    p.set_defaults(handler=_cmd_mv)

    p = sub.add_parser("list-checks", help="print the check catalog in order")
    _add_format(p)
    p.set_defaults(handler=_cmd_list_checks)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except PathViolationError as err:
        print(err, file=sys.stderr)
        return EXIT_FAIL
    except ReprolintError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INTERNAL


def run() -> None:
    sys.exit(main())
