"""Project model: scanning, classification table, type predicates."""

from __future__ import annotations

import os

import pytest

from reprolint.errors import NotProjectDirectoryError
from reprolint.project import (
    EXT_TABLE,
    classify_file,
    file_ext,
    file_stem,
    human_size,
    is_data_file,
    is_image_file,
    is_r_file,
    is_text_file,
    scan_project,
)

from conftest import make_project

# Frozen classification oracle: one row per category plus the edge cases.
CLASSIFY_ORACLE = [
    ("mice.csv", "csv", "text/csv", "raw-data"),
    ("model.rds", "rds", "application/x-rds", "derived-data"),
    ("analysis.R", "r", "text/x-r", "script"),
    ("analysis.Rmd", "rmd", "text/x-markdown", "script"),
    ("report.html", "html", "text/html", "rendered-doc"),
    ("Estrogen_Receptors.docx", "docx",
     "application/vnd.openxmlformats-officedocument.wordprocessingml.document",
     "rendered-doc"),
    ("citrate_v_time.png", "png", "image/png", "image"),
    ("talk.mp4", "mp4", "video/mp4", "media"),
    ("README.md", "md", "text/markdown", "text-doc"),
    ("miceps.Rproj", "rproj", "text/rstudio", "project-metadata"),
    (".gitignore", "gitignore", "text/plain", "project-metadata"),
    ("LICENSE", "", "text/plain", "project-metadata"),
    ("CITATION", "", "text/plain", "project-metadata"),
    ("README", "", "text/plain", "text-doc"),
    ("blob.xyz", "xyz", "application/octet-stream", "other"),
    ("Makefile", "", "application/octet-stream", "other"),
    ("DATA.CSV", "csv", "text/csv", "raw-data"),  # case-insensitive ext
]


@pytest.mark.parametrize("name,ext,mime,category", CLASSIFY_ORACLE)
def test_classification_table(name, ext, mime, category):
    assert file_ext(name) == ext
    assert classify_file(name) == (mime, category)


def test_every_table_entry_has_known_category():
    from reprolint.project import CATEGORIES

    for ext, (mime, category) in EXT_TABLE.items():
        assert category in CATEGORIES, ext
        assert "/" in mime, ext


def test_predicates_match_table():
    # data/image exclusivity holds for every extension in the table
    for ext in EXT_TABLE:
        name = f"f.{ext}"
        assert not (is_data_file(name) and is_image_file(name))


@pytest.mark.parametrize(
    "name,expected",
    [
        ("mice.csv", True),
        ("model.rds", True),
        ("plot.png", False),
        ("analysis.Rmd", False),
    ],
)
def test_is_data_file(name, expected):
    assert is_data_file(name) is expected


def test_is_image_file():
    assert is_image_file("citrate_v_time.png")
    assert not is_image_file("mice.csv")


def test_is_text_file():
    assert is_text_file("README.md")
    assert is_text_file("miceps.Rproj")
    assert not is_text_file("mice.csv")  # text/csv but data, not documentation
    assert not is_text_file("plot.png")


def test_is_r_file_case_insensitive():
    for name in ("a.R", "a.r", "a.Rmd", "a.RMD", "a.Rproj", "a.rds", "a.RData", "a.rda"):
        assert is_r_file(name), name
    assert not is_r_file("README.md")
    assert not is_r_file("script.py")


def test_file_stem():
    assert file_stem("README.md") == "README"
    assert file_stem("LICENSE") == "LICENSE"
    assert file_stem("a/b/report.final.html") == "report.final"


def test_scan_lists_files_sorted_with_sizes(tmp_path):
    root = make_project(tmp_path, {"b.txt": "abc", "a/c.csv": "1,2\n"})
    project = scan_project(root)
    assert [f.rel_path for f in project.files] == ["a/c.csv", "b.txt"]
    sizes = {f.rel_path: f.size for f in project.files}
    assert sizes == {"a/c.csv": 4, "b.txt": 3}


def test_scan_empty_project(tmp_path):
    project = scan_project(tmp_path)
    assert project.files == ()
    assert project.root_markers == ()


def test_scan_is_deterministic(tmp_path):
    root = make_project(tmp_path, {"z.txt": "1", "a.txt": "2", "m/k.csv": "3"})
    assert scan_project(root) == scan_project(root)


def test_scan_skips_state_dir_but_keeps_hidden_files(tmp_path):
    root = make_project(
        tmp_path,
        {".gitignore": "*.log\n", ".reprolint/log.tsv": "x\ty\tz\tw\n"},
    )
    project = scan_project(root)
    assert [f.rel_path for f in project.files] == [".gitignore"]


def test_scan_records_root_markers(tmp_path):
    root = make_project(
        tmp_path,
        {"proj.Rproj": "", ".here": "", "nested/inner.Rproj": ""},
    )
    (tmp_path / ".git").mkdir()
    project = scan_project(root)
    assert set(project.root_markers) == {".git", ".here", "proj.Rproj", "nested/inner.Rproj"}


def test_scan_does_not_follow_directory_symlinks(tmp_path):
    outside = tmp_path / "outside"
    outside.mkdir()
    (outside / "secret.csv").write_text("1\n")
    root = tmp_path / "proj"
    root.mkdir()
    (root / "a.txt").write_text("x")
    os.symlink(outside, root / "link")
    project = scan_project(root)
    assert [f.rel_path for f in project.files] == ["a.txt"]


def test_scan_skips_dangling_symlink(tmp_path):
    root = tmp_path / "proj"
    root.mkdir()
    os.symlink(root / "missing.csv", root / "dangling.csv")
    (root / "ok.txt").write_text("x")
    project = scan_project(root)
    assert [f.rel_path for f in project.files] == ["ok.txt"]
    assert any("dangling.csv" in w for w in project.warnings)


def test_scan_rejects_missing_root(tmp_path):
    with pytest.raises(NotProjectDirectoryError, match="not a project directory"):
        scan_project(tmp_path / "nope")


def test_scan_rejects_file_root(tmp_path):
    f = tmp_path / "file.txt"
    f.write_text("x")
    with pytest.raises(NotProjectDirectoryError):
        scan_project(f)


def test_miceps_listing(miceps):
    project = scan_project(miceps)
    assert len(project.files) == 9
    by_name = {f.rel_path: f for f in project.files}
    assert by_name["miceps.Rproj"].mime == "text/rstudio"
    assert by_name["analysis.Rmd"].mime == "text/x-markdown"
    assert by_name["README.md"].mime == "text/markdown"
    assert project.root_markers == ("miceps.Rproj",)


@pytest.mark.parametrize(
    "nbytes,rendered",
    [
        (0, "0"),
        (39, "39"),
        (204, "204"),
        (1023, "1023"),
        (1024, "1.00K"),
        (14677, "14.33K"),
        (192_808, "188.29K"),
        (1_048_576, "1.00M"),
        (5_300_000, "5.05M"),
    ],
)
def test_human_size(nbytes, rendered):
    assert human_size(nbytes) == rendered
