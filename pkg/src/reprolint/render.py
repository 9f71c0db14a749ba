"""Human-readable rendering of reports.

All output is deterministic: tables are padded to fixed widths and rows
arrive pre-sorted from the library layer.
"""

from __future__ import annotations

from .analyzer import AnalysisReport
from .checks import STATE_ERROR, STATE_FAIL, STATE_PASS, CheckReport
from .guard import GuardVerdict, LogEvent
from .project import human_size

_STATE_TAGS = {STATE_PASS: "[PASS]", STATE_FAIL: "[FAIL]", STATE_ERROR: "[ERROR]"}


def table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip())
    return "\n".join(lines)


def render_check_report(report: CheckReport) -> str:
    lines = [f"Reproducibility checks for {report.root}", ""]
    for o in report.outcomes:
        lines.append(f"{_STATE_TAGS[o.state]} {o.name}")
        if o.state != STATE_PASS:
            lines.append(f"    problem:  {o.problem}")
            if o.solution:
                lines.append(f"    solution: {o.solution}")
            lines.append(f"    help:     {o.help}")
            for item in o.evidence:
                lines.append(f"    evidence: {item}")
    lines.append("")
    lines.append(f"Reproducibility checks passed: {report.passed}")
    lines.append(f"Reproducibility checks failed: {report.failed}")
    if report.errors:
        lines.append(f"Reproducibility checks errored: {report.errors}")
    for w in report.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines)


def render_analysis(report: AnalysisReport) -> str:
    sections = [f"Analysis of reproducibility for {report.root}", ""]

    sections.append("-- Packages referenced in source code --")
    if report.packages:
        rows = [[p.package, str(p.n), ", ".join(p.used_in)] for p in report.packages]
        sections.append(table(["package", "n", "used_in"], rows))
    else:
        sections.append("(none)")
    sections.append("")

    sections.append("-- Files present in directory --")
    if report.files:
        rows = [
            [f.rel_path, f.ext, human_size(f.size), f.mime, f.category]
            for f in report.files
        ]
        sections.append(table(["file", "ext", "size", "mime", "category"], rows))
    else:
        sections.append("(none)")
    sections.append("")

    sections.append("-- Suggestions for moving files --")
    if report.moves:
        rows = [[m.path_rel, m.dir_rel, m.cmd] for m in report.moves]
        sections.append(table(["path", "dir", "cmd"], rows))
    else:
        sections.append("(none)")
    sections.append("")

    sections.append("-- Problematic paths logged --")
    if report.paths_logged:
        rows = [[f.path, f.problem, f.solution] for f in report.paths_logged]
        sections.append(table(["path", "problem", "solution"], rows))
    else:
        sections.append("NULL")

    for w in report.warnings:
        sections.append(f"warning: {w}")
    return "\n".join(sections)


def render_verdict(verdict: GuardVerdict) -> str:
    lines = [f"guard: {verdict.script}"]
    for line, msg in verdict.blocking:
        lines.append(f"BLOCK line {line}: {msg}")
    for line, msg in verdict.warnings:
        lines.append(f"warn line {line}: {msg}")
    if verdict.allowed:
        lines.append("no blocking findings")
    return "\n".join(lines)


def render_log(events: list[LogEvent]) -> str:
    if not events:
        return "(log is empty)"
    rows = [
        [e.path, e.path_abs or "-", e.func, e.timestamp.isoformat(timespec="seconds")]
        for e in events
    ]
    return table(["path", "path_abs", "func", "timestamp"], rows)
