"""The reproducibility check catalog and runner.

Checks never raise on failure; a failure is data (a CheckOutcome with
evidence).  Pass conditions are the weakest predicate consistent with the
check's name: a project with no media files trivially has tidy media.
"""

from __future__ import annotations

import posixpath
from dataclasses import dataclass

from .errors import UnknownCheckError
from .paths import KIND_ABSOLUTE, MSG_ABSOLUTE, MSG_OUTSIDE, is_remote_url, normalize_within, path_kind
from .project import ProjectDir, file_stem, scan_project
from .scanner import (
    BuildGraph,
    ScriptFacts,
    build_graph,
    graph_has_cycle,
    numeric_prefix_chain,
    scan_all,
    unique_script_order,
)

STATE_PASS = "pass"
STATE_FAIL = "fail"
STATE_ERROR = "error"

# Canonical catalog order; selection results always come back in this order.
CHECK_ORDER = (
    "has_tidy_media",
    "has_tidy_images",
    "has_tidy_code",
    "has_tidy_raw_data",
    "has_tidy_data",
    "has_tidy_scripts",
    "has_readme",
    "has_no_lint",
    "has_proj_root",
    "has_no_nested_proj_root",
    "has_only_used_files",
    "has_clear_build_chain",
    "has_no_absolute_paths",
    "has_only_portable_paths",
    "has_no_randomness",
)

# Problem/solution wording is frozen; tests pin these strings.
PROBLEMS = {
    "has_tidy_media": "media files found outside inst/",
    "has_tidy_images": "image files found outside inst/",
    "has_tidy_code": ".R source files found outside R/",
    "has_tidy_raw_data": "raw data files found outside data-raw/",
    "has_tidy_data": "derived data files found outside data/",
    "has_tidy_scripts": ".Rmd files found outside vignettes/",
    "has_readme": "no README file at the project root",
    "has_no_lint": "style problems found in scripts",
    "has_proj_root": "no project root marker found",
    "has_no_nested_proj_root": "project markers found below the root",
    "has_only_used_files": "files present that no script reads or writes",
    "has_clear_build_chain": "script run order is cyclic or ambiguous",
    "has_no_absolute_paths": MSG_ABSOLUTE,
    "has_only_portable_paths": MSG_OUTSIDE,
    "has_no_randomness": "randomness used without a prior set.seed() call",
}

SOLUTIONS = {
    "has_tidy_media": "move media files into inst/other",
    "has_tidy_images": "move image files into inst/image",
    "has_tidy_code": "move .R files into R/",
    "has_tidy_raw_data": "move raw data files into data-raw/",
    "has_tidy_data": "move derived data files into data/",
    "has_tidy_scripts": "move .Rmd files into vignettes/",
    "has_readme": "add a README file at the project root",
    "has_no_lint": "fix the listed style findings",
    "has_proj_root": "add an .Rproj or .here file at the project root",
    "has_no_nested_proj_root": "remove project markers from subdirectories",
    "has_only_used_files": "remove unused files or reference them from a script",
    "has_clear_build_chain": "number scripts in run order or chain them through their outputs",
    "has_no_absolute_paths": "use project-relative paths",
    "has_only_portable_paths": "keep referenced files inside the project directory",
    "has_no_randomness": "call set.seed() before the first randomness call in each script",
}


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    state: str  # "pass" | "fail" | "error"
    problem: str = ""
    solution: str = ""
    help: str = ""
    evidence: tuple[str, ...] = ()


@dataclass(frozen=True)
class CheckSelection:
    """Which checks to run.  Matching is case-sensitive on check names."""

    kind: str = "all"  # "all" | "contains" | "starts_with" | "ends_with" | "exact"
    arg: str = ""
    names: tuple[str, ...] = ()

    @classmethod
    def all(cls) -> CheckSelection:
        return cls()

    @classmethod
    def contains(cls, text: str) -> CheckSelection:
        return cls(kind="contains", arg=text)

    @classmethod
    def starts_with(cls, prefix: str) -> CheckSelection:
        return cls(kind="starts_with", arg=prefix)

    @classmethod
    def ends_with(cls, suffix: str) -> CheckSelection:
        return cls(kind="ends_with", arg=suffix)

    @classmethod
    def exact(cls, names: list[str] | tuple[str, ...]) -> CheckSelection:
        return cls(kind="exact", names=tuple(names))

    def matches(self, name: str) -> bool:
        if self.kind == "all":
            return True
        if self.kind == "contains":
            return self.arg in name
        if self.kind == "starts_with":
            return name.startswith(self.arg)
        if self.kind == "ends_with":
            return name.endswith(self.arg)
        if self.kind == "exact":
            return name in self.names
        raise ValueError(f"unknown selection kind: {self.kind}")

    def selected(self) -> list[str]:
        if self.kind == "exact":
            for name in self.names:
                if name not in CHECK_ORDER:
                    raise UnknownCheckError(f"unknown check: {name}")
        return [name for name in CHECK_ORDER if self.matches(name)]


@dataclass(frozen=True)
class CheckReport:
    root: str
    outcomes: tuple[CheckOutcome, ...]
    passed: int
    failed: int
    errors: int = 0
    warnings: tuple[str, ...] = ()


def list_checks() -> list[str]:
    """Names of all checks, in canonical order."""
    return list(CHECK_ORDER)


def _outcome(name: str, evidence: list[str]) -> CheckOutcome:
    helplink = f"README.md#{name}"
    if evidence:
        return CheckOutcome(
            name=name,
            state=STATE_FAIL,
            problem=PROBLEMS[name],
            solution=SOLUTIONS[name],
            help=helplink,
            evidence=tuple(evidence),
        )
    return CheckOutcome(name=name, state=STATE_PASS, help=helplink)


def _outside(project: ProjectDir, prefix: str, pred) -> list[str]:
    return [
        r.rel_path
        for r in project.files
        if pred(r) and not r.rel_path.startswith(prefix)
    ]


def _check_tidy_media(project, facts, graph):
    return _outside(project, "inst/", lambda r: r.category == "media")


def _check_tidy_images(project, facts, graph):
    return _outside(project, "inst/", lambda r: r.category == "image")


def _check_tidy_code(project, facts, graph):
    return _outside(project, "R/", lambda r: r.ext == "r")


def _check_tidy_raw_data(project, facts, graph):
    return _outside(project, "data-raw/", lambda r: r.category == "raw-data")


def _check_tidy_data(project, facts, graph):
    return _outside(project, "data/", lambda r: r.category == "derived-data")


def _check_tidy_scripts(project, facts, graph):
    return _outside(project, "vignettes/", lambda r: r.ext == "rmd")


def _check_readme(project, facts, graph):
    for r in project.files:
        if "/" not in r.rel_path and file_stem(r.rel_path).lower() == "readme":
            return []
    return ["."]


def _check_no_lint(project, facts, graph):
    evidence = []
    for f in facts:
        for finding in f.lint_findings:
            evidence.append(f"{f.script}:{finding.line} {finding.rule}")
    return evidence


def _check_proj_root(project, facts, graph):
    if any("/" not in m for m in project.root_markers):
        return []
    return ["."]


def _check_no_nested_proj_root(project, facts, graph):
    return [m for m in project.root_markers if "/" in m]


_USED_EXEMPT = frozenset({"script", "project-metadata"})


def _check_only_used_files(project, facts, graph):
    referenced: set[str] = set()
    for f in facts:
        base = posixpath.dirname(f.script)
        for ref in f.path_refs:
            if ref.literal is None or is_remote_url(ref.literal):
                continue
            if path_kind(ref.literal) == KIND_ABSOLUTE:
                continue
            target = normalize_within(ref.literal, base)
            if target:
                referenced.add(target)
    evidence = []
    for r in project.files:
        if r.category in _USED_EXEMPT:
            continue
        if file_stem(r.rel_path).lower() == "readme":
            continue
        if r.rel_path not in referenced:
            evidence.append(r.rel_path)
    return evidence


def _check_clear_build_chain(project, facts, graph):
    if graph_has_cycle(graph):
        return list(graph.scripts)
    if len(graph.scripts) <= 1:
        return []
    if unique_script_order(graph) or numeric_prefix_chain(graph.scripts):
        return []
    return list(graph.scripts)


def _literal_refs(facts):
    for f in facts:
        base = posixpath.dirname(f.script)
        for ref in f.path_refs:
            if ref.literal is not None and not is_remote_url(ref.literal):
                yield f, base, ref


def _check_no_absolute_paths(project, facts, graph):
    evidence = []
    for f, _, ref in _literal_refs(facts):
        if path_kind(ref.literal) == KIND_ABSOLUTE:
            evidence.append(ref.literal)
    return sorted(set(evidence))


def _check_only_portable_paths(project, facts, graph):
    evidence = []
    for f, base, ref in _literal_refs(facts):
        if path_kind(ref.literal) == KIND_ABSOLUTE:
            continue
        if normalize_within(ref.literal, base) is None:
            evidence.append(ref.literal)
    return sorted(set(evidence))


def _check_no_randomness(project, facts, graph):
    evidence = []
    for f in facts:
        if not f.randomness_calls:
            continue
        first_seed = min(f.seed_calls) if f.seed_calls else None
        for call in f.randomness_calls:
            if first_seed is None or call.line < first_seed:
                evidence.append(f"{f.script}:{call.line}")
    return evidence


_CHECK_FUNCS = {
    "has_tidy_media": _check_tidy_media,
    "has_tidy_images": _check_tidy_images,
    "has_tidy_code": _check_tidy_code,
    "has_tidy_raw_data": _check_tidy_raw_data,
    "has_tidy_data": _check_tidy_data,
    "has_tidy_scripts": _check_tidy_scripts,
    "has_readme": _check_readme,
    "has_no_lint": _check_no_lint,
    "has_proj_root": _check_proj_root,
    "has_no_nested_proj_root": _check_no_nested_proj_root,
    "has_only_used_files": _check_only_used_files,
    "has_clear_build_chain": _check_clear_build_chain,
    "has_no_absolute_paths": _check_no_absolute_paths,
    "has_only_portable_paths": _check_only_portable_paths,
    "has_no_randomness": _check_no_randomness,
}


def run_check(
    name: str,
    project: ProjectDir,
    facts: list[ScriptFacts],
    graph: BuildGraph,
) -> CheckOutcome:
    """Run one named check against already-scanned inputs."""
    func = _CHECK_FUNCS.get(name)
    if func is None:
        raise UnknownCheckError(f"unknown check: {name}")
    try:
        evidence = func(project, facts, graph)
    except Exception as err:  # a broken check is reported, not raised
        return CheckOutcome(
            name=name,
            state=STATE_ERROR,
            problem=str(err),
            help=f"README.md#{name}",
        )
    return _outcome(name, evidence)


def proj_check(
    root: str,
    selection: CheckSelection | None = None,
    tables=None,
) -> CheckReport:
    """Scan a project and run the selected checks (all, by default).

    Outcomes come back in catalog order; the report carries pass/fail
    counts plus any scan warnings.  The project tree is never modified.
    """
    selection = selection or CheckSelection.all()
    project = scan_project(root)
    facts, warnings = scan_all(project, tables)
    graph = build_graph(facts, project)
    outcomes = tuple(
        run_check(name, project, facts, graph) for name in selection.selected()
    )
    return CheckReport(
        root=project.root,
        outcomes=outcomes,
        passed=sum(1 for o in outcomes if o.state == STATE_PASS),
        failed=sum(1 for o in outcomes if o.state == STATE_FAIL),
        errors=sum(1 for o in outcomes if o.state == STATE_ERROR),
        warnings=tuple(list(project.warnings) + warnings),
    )
