"""Pre-execution gating, the append-only event log, and the sandbox.

Instead of shimming functions at run time, a script is statically scanned
before it runs: setwd() calls and bad path literals block execution, and
every scanned I/O and package-load fact is appended to the project log at
``.reprolint/log.tsv``.
"""

from __future__ import annotations

import os
import posixpath
import shlex
import shutil
import subprocess
import sys
import tempfile
from dataclasses import dataclass
from datetime import datetime

from filelock import FileLock

from .config import FunctionTables, load_function_tables
from .errors import GuardError, NotProjectDirectoryError, RunnerNotFoundError
from .paths import (
    KIND_ABSOLUTE,
    MSG_ABSOLUTE,
    MSG_OUTSIDE,
    is_remote_url,
    normalize_within,
    path_kind,
)
from .project import STATE_DIR
from .scanner import MECH_LIBRARY, MECH_REQUIRE, decode_script, scan_script

MSG_SETWD = "setwd() is likely to break reproducibility. Use here::here() instead."
MSG_UNRESOLVED = "unresolved path expression"
MSG_NONPORTABLE = "non-portable path (use a project-relative path)"

GUARD_REFUSAL_EXIT = 4
DEFAULT_RUNNER = "Rscript {script}"

LOG_NAME = "log.tsv"
_LOCK_NAME = "log.lock"
_LOG_FIELDS = 4
_LOG_FUNC = {MECH_LIBRARY: "base::library", MECH_REQUIRE: "base::require"}


@dataclass(frozen=True)
class LogEvent:
    path: str
    path_abs: str
    func: str
    timestamp: datetime


@dataclass(frozen=True)
class GuardVerdict:
    """Result of statically gating one script.  Execution is allowed only
    when ``blocking`` is empty."""

    script: str
    blocking: tuple[tuple[int, str], ...]
    warnings: tuple[tuple[int, str], ...]

    @property
    def allowed(self) -> bool:
        return not self.blocking


def _log_path(root: str) -> str:
    return os.path.join(os.path.abspath(root), STATE_DIR, LOG_NAME)


def _append_events(root: str, events: list[LogEvent]) -> None:
    if not events:
        return
    log_file = _log_path(root)
    os.makedirs(os.path.dirname(log_file), exist_ok=True)
    lock = FileLock(os.path.join(os.path.dirname(log_file), _LOCK_NAME))
    with lock:
        with open(log_file, "a", encoding="utf-8") as fh:
            for ev in events:
                stamp = ev.timestamp.isoformat(timespec="seconds")
                fh.write(f"{ev.path}\t{ev.path_abs}\t{ev.func}\t{stamp}\n")


def log_report(root: str) -> list[LogEvent]:
    """Events recorded for a project, in append order.

    A missing log yields an empty list; lines that do not parse are
    skipped so one corrupt entry cannot hide the rest.
    """
    log_file = _log_path(root)
    if not os.path.isfile(log_file):
        return []
    events: list[LogEvent] = []
    with open(log_file, encoding="utf-8") as fh:
        for line in fh:
            fields = line.rstrip("\n").split("\t")
            if len(fields) != _LOG_FIELDS:
                continue
            path, path_abs, func, stamp = fields
            try:
                ts = datetime.fromisoformat(stamp)
            except ValueError:
                continue
            events.append(LogEvent(path=path, path_abs=path_abs, func=func, timestamp=ts))
    return events


def log_clear(root: str) -> None:
    """Remove the project's log; clearing an absent log is a no-op."""
    try:
        os.remove(_log_path(root))
    except FileNotFoundError:
        pass


def _script_rel(script: str, root: str) -> str:
    script_abs = os.path.abspath(os.path.join(root, script))
    rel = os.path.relpath(script_abs, root)
    if rel.startswith(".."):
        raise GuardError(f"script is outside the project root: {script}")
    return rel.replace(os.sep, "/")


def guard_scan(
    script: str,
    root: str = ".",
    tables: FunctionTables | None = None,
    append_log: bool = True,
) -> GuardVerdict:
    """Statically gate a script without executing it.

    Blocking findings: any setwd() call, absolute path literals, and
    relative path literals that escape the project.  Computed path
    arguments and non-portable (backslash/~) literals become warnings.
    All scanned I/O and package-load facts are appended to the log.
    """
    root = os.path.abspath(root)
    rel = _script_rel(script, root)
    if tables is None:
        tables = load_function_tables(root)
    try:
        with open(os.path.join(root, rel), "rb") as fh:
            content = decode_script(fh.read())
    except OSError as err:
        raise GuardError(f"cannot read script: {err}") from err

    facts = scan_script(rel, content, tables)
    base = posixpath.dirname(rel)
    blocking: list[tuple[int, str]] = []
    warnings: list[tuple[int, str]] = []

    for line in facts.chdir_calls:
        blocking.append((line, MSG_SETWD))
    for ref in facts.path_refs:
        if ref.literal is None:
            warnings.append((ref.line, MSG_UNRESOLVED))
            continue
        if is_remote_url(ref.literal):
            continue
        if path_kind(ref.literal) == KIND_ABSOLUTE:
            blocking.append((ref.line, MSG_ABSOLUTE))
        elif normalize_within(ref.literal, base) is None:
            blocking.append((ref.line, MSG_OUTSIDE))
        elif "\\" in ref.literal or "~" in ref.literal:
            warnings.append((ref.line, MSG_NONPORTABLE))

    if append_log:
        now = datetime.now()
        events = [
            LogEvent(
                path=f"package:{use.name}",
                path_abs="",
                func=_LOG_FUNC[use.mechanism],
                timestamp=now,
            )
            for use in facts.packages
            if use.mechanism in _LOG_FUNC
        ]
        for ref in facts.path_refs:
            if ref.literal is None:
                continue
            events.append(
                LogEvent(
                    path=ref.literal,
                    path_abs=_existing_abs(ref.literal, base, root),
                    func=ref.func,
                    timestamp=now,
                )
            )
        _append_events(root, events)

    return GuardVerdict(
        script=rel,
        blocking=tuple(sorted(blocking)),
        warnings=tuple(sorted(warnings)),
    )


def _existing_abs(literal: str, base: str, root: str) -> str:
    """Absolute form of a literal when it names an existing file, else ""."""
    if is_remote_url(literal):
        return ""
    if path_kind(literal) == KIND_ABSOLUTE:
        candidate = os.path.expanduser(literal)
    else:
        rel = normalize_within(literal, base)
        if rel is None:
            return ""
        candidate = os.path.join(root, rel)
    return os.path.abspath(candidate) if os.path.exists(candidate) else ""


def guard_run(
    script: str,
    root: str = ".",
    runner: str = DEFAULT_RUNNER,
    tables: FunctionTables | None = None,
) -> int:
    """Gate a script and, if clean, run it with the configured runner.

    The runner template's ``{script}`` placeholder receives the script's
    root-relative path; the command runs with the project root as its
    working directory.  Returns the runner's exit status, or the refusal
    code when blocking findings exist.
    """
    root = os.path.abspath(root)
    verdict = guard_scan(script, root, tables)
    if not verdict.allowed:
        for _line, msg in verdict.blocking:
            print(msg, file=sys.stderr)
        return GUARD_REFUSAL_EXIT
    argv = [part.format(script=verdict.script) for part in shlex.split(runner)]
    if "{script}" not in runner:
        argv.append(verdict.script)
    try:
        proc = subprocess.run(argv, cwd=root)
    except FileNotFoundError as err:
        raise RunnerNotFoundError(f"runner not found: {argv[0]}") from err
    return proc.returncode


def sandbox(root: str) -> str:
    """Copy a project into a fresh temporary directory and return the copy.

    The copy is complete apart from the tool's own state directory, and
    the returned path ends in the project's basename so relative layout
    is preserved.
    """
    root = os.path.abspath(root)
    if not os.path.isdir(root):
        raise NotProjectDirectoryError(f"not a project directory: {root}")
    parent = tempfile.mkdtemp(prefix="reprolint-")
    dest = os.path.join(parent, os.path.basename(root))
    try:
        shutil.copytree(root, dest, symlinks=True, ignore=shutil.ignore_patterns(STATE_DIR))
    except Exception:
        shutil.rmtree(parent, ignore_errors=True)
        raise
    return dest
