"""Exceptions raised by the reprolint library."""

from __future__ import annotations


class ReprolintError(Exception):
    """Base class for all reprolint errors."""


class NotProjectDirectoryError(ReprolintError):
    """The given root does not exist or is not a directory."""


class PathViolationError(ReprolintError):
    """A path failed the strict portability rules.

    The message is one of the two stable strings emitted by the tool:
    ``Detected absolute paths`` or ``Detected paths that lead outside
    the project directory``.
    """


class ScriptDecodeError(ReprolintError):
    """A script file is binary or not valid UTF-8 text."""


class UnknownCheckError(ReprolintError):
    """A check name was requested that is not in the catalog."""


class GuardError(ReprolintError):
    """A script could not be gated (unreadable, outside the project, ...)."""


class RunnerNotFoundError(ReprolintError):
    """The configured runner executable does not exist."""
