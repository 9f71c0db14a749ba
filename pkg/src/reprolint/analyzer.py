"""Whole-project analysis: package usage, file inventory, move suggestions,
and problematic paths, plus the package install script generator."""

from __future__ import annotations

import os
import posixpath
import shlex
from dataclasses import dataclass

from .config import load_function_tables, load_github_registry
from .paths import PathFinding, classify_path
from .project import FileRecord, ProjectDir, file_stem, scan_project
from .scanner import ScriptFacts, scan_all

# category / extension -> canonical directory for move suggestions
_TARGETS_BY_CATEGORY = {
    "raw-data": "data-raw",
    "derived-data": "data",
    "image": "inst/image",
    "rendered-doc": "inst/other",
    "media": "inst/other",
    "other": "inst/other",
}
_TARGETS_BY_EXT = {"r": "R", "rmd": "vignettes"}

PKG_SCRIPT_NAME = "install_packages.R"
_PKG_SCRIPT_HEADER = "# Run this script to install the required packages for this R project."
_PKG_CRAN_COMMENT = "# Packages hosted on CRAN..."
_PKG_GITHUB_COMMENT = "# Packages hosted on GitHub..."


@dataclass(frozen=True)
class PackageRef:
    """One package referenced by the project's scripts."""

    package: str
    n: int
    used_in: tuple[str, ...]


@dataclass(frozen=True)
class MoveSuggestion:
    path_rel: str
    dir_rel: str
    cmd: str


@dataclass(frozen=True)
class AnalysisReport:
    root: str
    packages: tuple[PackageRef, ...]
    files: tuple[FileRecord, ...]
    moves: tuple[MoveSuggestion, ...]
    paths_logged: tuple[PathFinding, ...]
    warnings: tuple[str, ...] = ()


def move_target(record: FileRecord) -> str | None:
    """Canonical directory for a file, or None when it should stay put.

    README-named files never move; text documents and project metadata
    have no canonical directory; files already under their target keep
    their place.
    """
    if file_stem(record.rel_path).lower() == "readme":
        return None
    if record.category == "script":
        target = _TARGETS_BY_EXT.get(record.ext)
    else:
        target = _TARGETS_BY_CATEGORY.get(record.category)
    if target is None:
        return None
    if record.rel_path.startswith(target + "/"):
        return None
    return target


def suggest_moves(project: ProjectDir) -> list[MoveSuggestion]:
    """Move suggestions for every misplaced file, alphabetical by path."""
    moves = []
    for record in project.files:
        target = move_target(record)
        if target is None:
            continue
        cmd = f"reprolint mv {shlex.quote(record.rel_path)} {shlex.quote(target)}"
        moves.append(MoveSuggestion(path_rel=record.rel_path, dir_rel=target, cmd=cmd))
    moves.sort(key=lambda m: m.path_rel)
    return moves


def package_table(facts_list: list[ScriptFacts]) -> list[PackageRef]:
    """Packages referenced across all scripts; n counts referencing files."""
    used_in: dict[str, set[str]] = {}
    for facts in facts_list:
        for use in facts.packages:
            used_in.setdefault(use.name, set()).add(facts.script)
    return [
        PackageRef(package=name, n=len(files), used_in=tuple(sorted(files)))
        for name, files in sorted(used_in.items())
    ]


def problem_paths(facts_list: list[ScriptFacts]) -> list[PathFinding]:
    """Problematic literal paths across all scripts, deduplicated."""
    findings: dict[str, PathFinding] = {}
    for facts in facts_list:
        base = posixpath.dirname(facts.script)
        for ref in facts.path_refs:
            if ref.literal is None or ref.literal in findings:
                continue
            problem = classify_path(ref.literal, base)
            if problem is not None:
                findings[ref.literal] = PathFinding(path=ref.literal, problem=problem)
    return sorted(findings.values(), key=lambda f: f.path)


def proj_analyze(root: str, tables=None) -> AnalysisReport:
    """Analyze a project into the four-part report: packages referenced,
    files present, move suggestions, and problematic paths."""
    project = scan_project(root)
    facts, warnings = scan_all(project, tables)
    return AnalysisReport(
        root=project.root,
        packages=tuple(package_table(facts)),
        files=project.files,
        moves=tuple(suggest_moves(project)),
        paths_logged=tuple(problem_paths(facts)),
        warnings=tuple(list(project.warnings) + warnings),
    )


def proj_pkg_script(root: str, output: str = PKG_SCRIPT_NAME, tables=None) -> str:
    """Write an R script that installs every package the project uses.

    CRAN packages go into one alphabetized install.packages() call;
    packages found in the GitHub registry get remotes::install_github()
    lines.  Returns the path of the written script.
    """
    project = scan_project(root)
    if tables is None:
        tables = load_function_tables(project.root)
    facts, _ = scan_all(project, tables)
    registry = load_github_registry(project.root)

    names = sorted({ref.package for ref in package_table(facts)})
    cran = [n for n in names if n not in registry]
    github = [n for n in names if n in registry]

    lines = [_PKG_SCRIPT_HEADER, _PKG_CRAN_COMMENT]
    if cran:
        quoted = ", ".join(f"'{name}'" for name in cran)
        lines.append(f"install.packages(c( {quoted} ))")
    lines.append(_PKG_GITHUB_COMMENT)
    for name in github:
        lines.append(f"remotes::install_github('{registry[name]}')")

    out_path = output if os.path.isabs(output) else os.path.join(project.root, output)
    parent = os.path.dirname(out_path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    return out_path
