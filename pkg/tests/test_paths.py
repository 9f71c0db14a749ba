"""Path classification and the strict checking transcripts."""

from __future__ import annotations

import os
import posixpath

import pytest

from reprolint.errors import PathViolationError
from reprolint.paths import (
    MSG_ABSOLUTE,
    MSG_OUTSIDE,
    PROBLEM_ABSOLUTE,
    PROBLEM_NONPORTABLE,
    PROBLEM_OUTSIDE,
    PathFinding,
    check_path,
    check_path_strict,
    classify_path,
    is_remote_url,
    normalize_within,
    path_kind,
)

# Frozen hand-labeled classification set.
KIND_ORACLE = [
    ("/etc/passwd", "absolute"),
    ("/", "absolute"),
    ("~", "absolute"),
    ("~/Desktop/my_data.csv", "absolute"),
    ("~user/f.csv", "absolute"),
    ("C:\\Users\\x\\f.csv", "absolute"),
    ("c:/data/f.csv", "absolute"),
    ("Z:", "absolute"),
    ("\\\\server\\share\\f.csv", "absolute"),
    ("mice.csv", "relative"),
    ("data/mice.csv", "relative"),
    ("./mice.csv", "relative"),
    ("../mice.csv", "relative"),
    ("data\\mice.csv", "relative"),       # non-portable, but not absolute
    ("C4/model.rds", "relative"),          # not a drive letter
    ("CC:/x", "relative"),                 # two letters before the colon
    ("files/~backup/x.csv", "relative"),
    ("data-raw/a b.csv", "relative"),
    ("http://example.com/mice.csv", "relative"),
    ("10:30", "relative"),
]


@pytest.mark.parametrize("path,kind", KIND_ORACLE)
def test_path_kind_oracle(path, kind):
    assert path_kind(path) == kind


def test_path_kind_rejects_empty():
    with pytest.raises(ValueError, match="empty path"):
        path_kind("")


def test_is_remote_url():
    assert is_remote_url("http://x.org/f.csv")
    assert is_remote_url("https://x.org/f.csv")
    assert is_remote_url("s3://bucket/key.csv")
    assert not is_remote_url("dir/file.csv")
    assert not is_remote_url("C:/x.csv")


# normalize_within: worked examples, then agreement with posixpath.normpath.
@pytest.mark.parametrize(
    "path,base,expected",
    [
        ("../data/x.csv", "R", "data/x.csv"),
        ("../../x.csv", "R", None),
        ("./a/./b.txt", "", "a/b.txt"),
        ("a//b.txt", "", "a/b.txt"),
        ("..", "R", ""),
        ("..", "", None),
        ("sub\\f.csv", "", "sub/f.csv"),
        ("x/../y/z.csv", "data", "data/y/z.csv"),
    ],
)
def test_normalize_within_examples(path, base, expected):
    assert normalize_within(path, base) == expected


@pytest.mark.parametrize(
    "path,base",
    [
        ("a/b/../c.txt", ""),
        ("../a/b", "R/sub"),
        ("../../a", "R"),
        ("./x/./y/..", "d1/d2"),
        ("a/../../..", "k"),
    ],
)
def test_normalize_within_matches_normpath(path, base):
    # Independent oracle: an escape is exactly a normpath result that
    # still starts with "..".
    joined = posixpath.normpath(posixpath.join(base, path))
    escaped = joined == ".." or joined.startswith("../")
    result = normalize_within(path, base)
    if escaped:
        assert result is None
    else:
        assert result == ("" if joined == "." else joined)


def test_normalize_is_idempotent():
    for path in ("a/b/../c.txt", "./x/y.csv", "data//z.csv"):
        once = normalize_within(path, "")
        assert once is not None
        assert normalize_within(once, "") == once


# The three canonical transcripts.
def test_check_path_accepts_project_relative():
    assert check_path(["project_miceps"], root=".") == []
    assert check_path_strict(["data/mice.csv", "analysis.Rmd"]) == []


def test_check_path_flags_absolute():
    findings = check_path([os.getcwd()])
    assert [f.problem for f in findings] == [PROBLEM_ABSOLUTE]
    with pytest.raises(PathViolationError) as err:
        check_path_strict([os.getcwd()])
    assert str(err.value) == MSG_ABSOLUTE == "Detected absolute paths"


def test_check_path_flags_escape():
    findings = check_path(["../report.Rmd"])
    assert [f.problem for f in findings] == [PROBLEM_OUTSIDE]
    with pytest.raises(PathViolationError) as err:
        check_path_strict(["../report.Rmd"])
    assert (
        str(err.value)
        == MSG_OUTSIDE
        == "Detected paths that lead outside the project directory"
    )


def test_absolute_takes_precedence_over_escape():
    with pytest.raises(PathViolationError, match="Detected absolute paths"):
        check_path_strict(["../escapes.csv", "/abs.csv"])


def test_check_path_nonportable_returned_not_raised():
    findings = check_path_strict(["data\\x.csv", "files/~old/x.csv"])
    assert [f.problem for f in findings] == [PROBLEM_NONPORTABLE, PROBLEM_NONPORTABLE]
    assert findings[0] == PathFinding(
        path="data\\x.csv",
        problem="non-portable",
        solution="use a project-relative path",
    )


def test_escape_beats_nonportable_for_backslash_paths():
    assert classify_path("..\\x.csv") == PROBLEM_OUTSIDE


def test_check_path_skips_remote_urls():
    assert check_path(["http://example.com/data.csv", "s3://b/k.csv"]) == []


def test_check_path_rejects_empty_path():
    with pytest.raises(ValueError, match="empty path"):
        check_path(["ok.csv", ""])


def test_classify_path_respects_base():
    assert classify_path("../x.csv", base="R") is None
    assert classify_path("../x.csv", base="") == PROBLEM_OUTSIDE
