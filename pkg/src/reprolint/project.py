"""Project directory model: file listing, classification, and type predicates.

Classification is a fixed table keyed on the (lowercased) file extension,
never on OS-level content sniffing, so the same tree always classifies the
same way on every machine.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import NotProjectDirectoryError

# Directory holding reprolint's own log and local config; never scanned.
STATE_DIR = ".reprolint"

CATEGORIES = frozenset({
    "raw-data",
    "derived-data",
    "script",
    "rendered-doc",
    "image",
    "media",
    "text-doc",
    "project-metadata",
    "other",
})

# extension -> (mime type, category).  The table is deliberately closed:
# unknown extensions fall through to application/octet-stream / "other".
EXT_TABLE: dict[str, tuple[str, str]] = {
    # raw data
    "csv": ("text/csv", "raw-data"),
    "tsv": ("text/tab-separated-values", "raw-data"),
    "xls": ("application/vnd.ms-excel", "raw-data"),
    "xlsx": ("application/vnd.openxmlformats-officedocument.spreadsheetml.sheet", "raw-data"),
    "json": ("application/json", "raw-data"),
    "xml": ("application/xml", "raw-data"),
    # derived data (serialized R / columnar formats)
    "rds": ("application/x-rds", "derived-data"),
    "rda": ("application/x-rdata", "derived-data"),
    "rdata": ("application/x-rdata", "derived-data"),
    "feather": ("application/x-feather", "derived-data"),
    "parquet": ("application/vnd.apache.parquet", "derived-data"),
    # scripts
    "r": ("text/x-r", "script"),
    "rmd": ("text/x-markdown", "script"),
    "py": ("text/x-python", "script"),
    "sql": ("application/sql", "script"),
    # rendered documents
    "html": ("text/html", "rendered-doc"),
    "pdf": ("application/pdf", "rendered-doc"),
    "docx": ("application/vnd.openxmlformats-officedocument.wordprocessingml.document", "rendered-doc"),
    # images
    "png": ("image/png", "image"),
    "jpg": ("image/jpeg", "image"),
    "jpeg": ("image/jpeg", "image"),
    "gif": ("image/gif", "image"),
    "svg": ("image/svg+xml", "image"),
    "bmp": ("image/bmp", "image"),
    "tiff": ("image/tiff", "image"),
    # audio / video
    "mp3": ("audio/mpeg", "media"),
    "mp4": ("video/mp4", "media"),
    "wav": ("audio/x-wav", "media"),
    "mov": ("video/quicktime", "media"),
    "avi": ("video/x-msvideo", "media"),
    # text documents
    "md": ("text/markdown", "text-doc"),
    "txt": ("text/plain", "text-doc"),
    "bib": ("text/x-bibtex", "text-doc"),
    # project metadata
    "rproj": ("text/rstudio", "project-metadata"),
    "gitignore": ("text/plain", "project-metadata"),
    "license": ("text/plain", "project-metadata"),
    "citation": ("text/plain", "project-metadata"),
}

_UNKNOWN = ("application/octet-stream", "other")

# Extensions that count as R-related files for is_r_file().
R_EXTENSIONS = frozenset({"r", "rmd", "rproj", "rds", "rda", "rdata"})

_DATA_CATEGORIES = frozenset({"raw-data", "derived-data"})
_TEXT_CATEGORIES = frozenset({"text-doc", "project-metadata"})


@dataclass(frozen=True)
class FileRecord:
    """One regular file inside a project, as classified by the fixed table."""

    rel_path: str
    ext: str
    size: int
    mime: str
    category: str


@dataclass(frozen=True)
class ProjectDir:
    """Immutable snapshot of a scanned project tree."""

    root: str
    files: tuple[FileRecord, ...]
    root_markers: tuple[str, ...]
    warnings: tuple[str, ...] = field(default=())


def file_ext(name: str) -> str:
    """Extension of a file name, lowercased and without the dot.

    Leading-dot names with no other dot use the remainder as their
    extension (".gitignore" -> "gitignore"), so dotfiles hit the
    classification table like any other file.
    """
    base = os.path.basename(name)
    if base.startswith(".") and "." not in base[1:]:
        return base[1:].lower()
    _, _, ext = base.rpartition(".")
    if not ext or "." not in base:
        return ""
    return ext.lower()


def file_stem(name: str) -> str:
    """File name without its final extension."""
    base = os.path.basename(name)
    ext = file_ext(base)
    if ext and base.lower().endswith("." + ext):
        return base[: -(len(ext) + 1)]
    return base


def classify_file(path: str) -> tuple[str, str]:
    """Return (mime, category) for a path, from the fixed extension table."""
    ext = file_ext(path)
    if ext in EXT_TABLE:
        return EXT_TABLE[ext]
    stem = file_stem(path).lower()
    if stem in ("license", "citation"):
        return ("text/plain", "project-metadata")
    if stem == "readme":
        return ("text/plain", "text-doc")
    return _UNKNOWN


def is_data_file(path: str) -> bool:
    """True for raw or derived data files (mice.csv, model.rds, ...)."""
    return classify_file(path)[1] in _DATA_CATEGORIES


def is_image_file(path: str) -> bool:
    return classify_file(path)[1] == "image"


def is_text_file(path: str) -> bool:
    """True when the MIME major type is text and the file is documentation
    or project metadata (README.md yes, mice.csv no)."""
    mime, category = classify_file(path)
    return mime.startswith("text/") and category in _TEXT_CATEGORIES


def is_r_file(path: str) -> bool:
    """True for R sources, R markdown, RStudio project files and serialized
    R data, matched case-insensitively on the extension."""
    return file_ext(path) in R_EXTENSIONS


def _is_root_marker_file(name: str) -> bool:
    return file_ext(name) == "rproj" or name == ".here"


def scan_project(root: str | os.PathLike[str]) -> ProjectDir:
    """Walk a project directory into an immutable ``ProjectDir``.

    Every regular file is recorded (hidden files included); only the tool's
    own state directory ``.reprolint/`` is skipped.  Symlinked directories
    are not descended into.  Unreadable entries become warnings rather than
    aborting the scan.
    """
    root_abs = os.path.abspath(os.fspath(root))
    if not os.path.isdir(root_abs):
        raise NotProjectDirectoryError(f"not a project directory: {root}")

    records: list[FileRecord] = []
    markers: list[str] = []
    warnings: list[str] = []

    def on_error(err: OSError) -> None:
        warnings.append(f"unreadable: {err.filename}")

    for dirpath, dirnames, filenames in os.walk(
        root_abs, onerror=on_error, followlinks=False
    ):
        dirnames.sort()
        if STATE_DIR in dirnames:
            dirnames.remove(STATE_DIR)
        for d in dirnames:
            if d == ".git":
                rel = Path(os.path.join(dirpath, d)).relative_to(root_abs).as_posix()
                markers.append(rel)
        for name in sorted(filenames):
            full = os.path.join(dirpath, name)
            rel = Path(full).relative_to(root_abs).as_posix()
            try:
                st = os.stat(full)
            except OSError:
                warnings.append(f"unreadable: {full}")
                continue
            mime, category = classify_file(name)
            records.append(
                FileRecord(
                    rel_path=rel,
                    ext=file_ext(name),
                    size=st.st_size,
                    mime=mime,
                    category=category,
                )
            )
            if _is_root_marker_file(name):
                markers.append(rel)

    records.sort(key=lambda r: r.rel_path)
    return ProjectDir(
        root=root_abs,
        files=tuple(records),
        root_markers=tuple(sorted(markers)),
        warnings=tuple(warnings),
    )


def human_size(nbytes: int) -> str:
    """Render a byte count the way the report tables do: bare bytes below
    1024, otherwise two decimals with a 1024-based unit suffix."""
    if nbytes < 1024:
        return str(nbytes)
    value = float(nbytes)
    for unit in ("K", "M", "G", "T"):
        value /= 1024.0
        if value < 1024.0 or unit == "T":
            return f"{value:.2f}{unit}"
    return f"{value:.2f}T"
