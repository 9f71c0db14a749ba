"""Lexical path analysis: absolute/relative classification, escape detection.

All decisions are made on the path text alone.  Nothing here touches the
filesystem, so a path is judged the same way whether or not it exists.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import PathViolationError

KIND_ABSOLUTE = "absolute"
KIND_RELATIVE = "relative"

PROBLEM_ABSOLUTE = "absolute"
PROBLEM_OUTSIDE = "outside-project"
PROBLEM_NONPORTABLE = "non-portable"

MSG_ABSOLUTE = "Detected absolute paths"
MSG_OUTSIDE = "Detected paths that lead outside the project directory"
REMEDY = "use a project-relative path"

# Windows drive prefix: single letter, colon, then a separator or nothing.
_DRIVE_RE = re.compile(r"^[A-Za-z]:([/\\]|$)")
_URL_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*://")


@dataclass(frozen=True)
class PathFinding:
    """A single problematic path with its problem class and remedy."""

    path: str
    problem: str
    solution: str = REMEDY


def is_remote_url(path: str) -> bool:
    """True for scheme://... references (http, https, s3, ftp, ...)."""
    return bool(_URL_RE.match(path))


def path_kind(path: str) -> str:
    """Classify a path string as "absolute" or "relative".

    Absolute means any of: a leading ``/``, a leading ``~``, a UNC
    ``\\\\server`` prefix, or a Windows drive letter ``X:``.
    """
    if not path:
        raise ValueError("empty path")
    if path.startswith(("/", "~")):
        return KIND_ABSOLUTE
    if path.startswith("\\\\"):
        return KIND_ABSOLUTE
    if _DRIVE_RE.match(path):
        return KIND_ABSOLUTE
    return KIND_RELATIVE


def _segments(path: str) -> list[str]:
    # Both separators split; backslashes additionally mark the path
    # non-portable, but normalization still understands them.
    return [s for s in re.split(r"[/\\]+", path) if s not in ("", ".")]


def normalize_within(path: str, base: str = "") -> str | None:
    """Lexically resolve ``path`` against the root-relative directory
    ``base``; return the normalized root-relative path, or None if any
    ``..`` step rises above the root."""
    stack = _segments(base)
    for seg in _segments(path):
        if seg == "..":
            if not stack:
                return None
            stack.pop()
        else:
            stack.append(seg)
    return "/".join(stack)


def classify_path(path: str, base: str = "") -> str | None:
    """Problem class for one path, or None when it is clean or a URL."""
    if not path:
        raise ValueError("empty path")
    if is_remote_url(path):
        return None
    if path_kind(path) == KIND_ABSOLUTE:
        return PROBLEM_ABSOLUTE
    if normalize_within(path, base) is None:
        return PROBLEM_OUTSIDE
    if "\\" in path or "~" in path:
        return PROBLEM_NONPORTABLE
    return None


def check_path(paths: list[str] | tuple[str, ...], root: str = ".") -> list[PathFinding]:
    """Check paths against the project root; return findings, empty if all
    are portable project-relative references.

    Remote URLs are skipped: they are neither absolute nor escaping in the
    project-layout sense.  The root argument anchors the check conceptually;
    classification itself is purely lexical.
    """
    del root  # lexical-only analysis; kept for signature symmetry
    findings: list[PathFinding] = []
    for p in paths:
        problem = classify_path(p)
        if problem is not None:
            findings.append(PathFinding(path=p, problem=problem))
    return findings


def check_path_strict(paths: list[str] | tuple[str, ...], root: str = ".") -> list[PathFinding]:
    """Like check_path, but raise on violations.

    Any absolute path raises ``Detected absolute paths``; otherwise any
    escaping path raises ``Detected paths that lead outside the project
    directory``.  Non-portable findings are returned, not raised.
    """
    findings = check_path(paths, root)
    if any(f.problem == PROBLEM_ABSOLUTE for f in findings):
        raise PathViolationError(MSG_ABSOLUTE)
    if any(f.problem == PROBLEM_OUTSIDE for f in findings):
        raise PathViolationError(MSG_OUTSIDE)
    return findings
