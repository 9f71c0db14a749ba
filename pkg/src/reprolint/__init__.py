"""reprolint: static reproducibility linter for data-analysis projects."""

from __future__ import annotations

__version__ = "0.1.0"

from .analyzer import (
    AnalysisReport,
    MoveSuggestion,
    PackageRef,
    proj_analyze,
    proj_pkg_script,
    suggest_moves,
)
from .checks import (
    CHECK_ORDER,
    CheckOutcome,
    CheckReport,
    CheckSelection,
    list_checks,
    proj_check,
    run_check,
)
from .config import FunctionTables, load_function_tables, load_github_registry
from .errors import (
    GuardError,
    NotProjectDirectoryError,
    PathViolationError,
    ReprolintError,
    RunnerNotFoundError,
    ScriptDecodeError,
    UnknownCheckError,
)
from .guard import (
    GuardVerdict,
    LogEvent,
    guard_run,
    guard_scan,
    log_clear,
    log_report,
    sandbox,
)
from .paths import (
    PathFinding,
    check_path,
    check_path_strict,
    normalize_within,
    path_kind,
)
from .project import (
    FileRecord,
    ProjectDir,
    classify_file,
    is_data_file,
    is_image_file,
    is_r_file,
    is_text_file,
    scan_project,
)
from .scanner import (
    BuildGraph,
    LintFinding,
    PackageUse,
    PathRef,
    RandomCall,
    ScriptFacts,
    build_graph,
    extract_code,
    scan_script,
)

__all__ = [
    "__version__",
    "AnalysisReport",
    "BuildGraph",
    "CHECK_ORDER",
    "CheckOutcome",
    "CheckReport",
    "CheckSelection",
    "FileRecord",
    "FunctionTables",
    "GuardError",
    "GuardVerdict",
    "LintFinding",
    "LogEvent",
    "MoveSuggestion",
    "NotProjectDirectoryError",
    "PackageRef",
    "PackageUse",
    "PathFinding",
    "PathRef",
    "PathViolationError",
    "ProjectDir",
    "RandomCall",
    "ReprolintError",
    "RunnerNotFoundError",
    "ScriptDecodeError",
    "ScriptFacts",
    "UnknownCheckError",
    "build_graph",
    "check_path",
    "check_path_strict",
    "classify_file",
    "extract_code",
    "guard_run",
    "guard_scan",
    "is_data_file",
    "is_image_file",
    "is_r_file",
    "is_text_file",
    "list_checks",
    "load_function_tables",
    "load_github_registry",
    "log_clear",
    "log_report",
    "normalize_within",
    "path_kind",
    "proj_analyze",
    "proj_check",
    "proj_pkg_script",
    "run_check",
    "sandbox",
    "scan_project",
    "scan_script",
    "suggest_moves",
]
