"""Shared fixtures: tiny project builders and the nine-file demo project."""

from __future__ import annotations

import os
from pathlib import Path

import pytest

# A small PNG/DOCX stand-in is enough: classification is extension-based.
PNG_BYTES = b"\x89PNG\r\n\x1a\n" + b"\x00" * 8
DOCX_BYTES = b"PK\x03\x04" + b"\x00" * 8

MICEPS_RMD = """\
---
title: "Protein expression over time"
output: html_document
---

```{r setup}
library(broom)
library(dplyr)
library(ggplot2)
library(purrr)
library(readr)
library(rmarkdown)
library(skimr)
library(stargazer)
library(tidyr)
```

```{r load}
mice <- read_csv("mice.csv")
blot <- read_csv("Blot_data_updated.csv")
cs <- read_csv("CS_data_redone.csv")
```

```{r plots}
ggsave("citrate_v_time.png")
ggsave("proteins_v_time.png")
```
"""

MICEPS_FILES: dict[str, bytes | str] = {
    "mice.csv": "id,strain,citrate\n1,B6,0.4\n2,B6,0.6\n",
    "Blot_data_updated.csv": "id,band,intensity\n1,a,10\n",
    "CS_data_redone.csv": "id,cs,t\n1,0.2,0\n",
    "citrate_v_time.png": PNG_BYTES,
    "proteins_v_time.png": PNG_BYTES + b"\x01",
    "Estrogen_Receptors.docx": DOCX_BYTES,
    "README.md": "# Mice protein analysis\n",
    "miceps.Rproj": "Version: 1.0\n",
    "analysis.Rmd": MICEPS_RMD,
}

MICEPS_PACKAGES = (
    "broom",
    "dplyr",
    "ggplot2",
    "purrr",
    "readr",
    "rmarkdown",
    "skimr",
    "stargazer",
    "tidyr",
)


def make_project(base: Path, files: dict[str, bytes | str]) -> str:
    """Create files (text or bytes) under base and return its path."""
    base.mkdir(parents=True, exist_ok=True)
    for rel, content in files.items():
        path = base / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        if isinstance(content, bytes):
            path.write_bytes(content)
        else:
            path.write_text(content, encoding="utf-8")
    return str(base)


@pytest.fixture
def miceps(tmp_path: Path) -> str:
    """A fresh copy of the nine-file mice-protein demo project."""
    root = tmp_path / "project_miceps"
    root.mkdir()
    return make_project(root, MICEPS_FILES)


@pytest.fixture(autouse=True)
def _no_user_config(monkeypatch):
    """Keep the environment's config override out of every test."""
    monkeypatch.delenv("REPROLINT_CONFIG", raising=False)


def pytest_runtest_logreport(report):
    # One visible PASS/FAIL line per acceptance criterion test.
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    status = "PASS" if report.passed else "FAIL"
    name = report.nodeid.split("::")[-1]
    print(f"\nACCEPTANCE {name}: {status}")


def tree_digest(root: str) -> dict[str, bytes]:
    """rel path -> content for every file under root (state dir excluded)."""
    out: dict[str, bytes] = {}
    for dirpath, dirnames, filenames in os.walk(root):
        if ".reprolint" in dirnames:
            dirnames.remove(".reprolint")
        for name in filenames:
            full = os.path.join(dirpath, name)
            rel = os.path.relpath(full, root).replace(os.sep, "/")
            with open(full, "rb") as fh:
                out[rel] = fh.read()
    return out
