"""Function tables and package-origin registry.

Both are plain-text, tab-separated data files.  Defaults ship inside the
package; a directory named by the ``REPROLINT_CONFIG`` environment variable
and a project-local ``.reprolint/`` directory can override or extend them.

functions.tsv lines look like::

    read<TAB>utils::read.csv
    write<TAB>ggplot2::ggsave
    random<TAB>base::sample
    seed<TAB>base::set.seed
    chdir<TAB>base::setwd

registry.tsv maps package names to GitHub slugs; anything not listed is
assumed to come from CRAN.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources

ENV_CONFIG_DIR = "REPROLINT_CONFIG"
FUNCTIONS_FILE = "functions.tsv"
REGISTRY_FILE = "registry.tsv"

IO_READ = "read"
IO_WRITE = "write"
IO_UNKNOWN = "unknown"

_IO_CLASSES = frozenset({IO_READ, IO_WRITE})
_OTHER_CLASSES = frozenset({"random", "seed", "chdir"})


@dataclass(frozen=True)
class IoFunction:
    qualified: str  # name as listed in the table, e.g. "readr::read_csv"
    io: str         # "read", "write" or "unknown"


@dataclass(frozen=True)
class FunctionTables:
    """Lookup tables driving the script scanner.

    ``io`` is keyed both by the bare function name and by the qualified
    ``pkg::fn`` form, so calls match whether or not they are namespaced.
    ``random``/``seed``/``chdir`` hold bare names.
    """

    io: dict[str, IoFunction] = field(default_factory=dict)
    random: frozenset[str] = frozenset()
    seed: frozenset[str] = frozenset()
    chdir: frozenset[str] = frozenset()

    def lookup_io(self, name: str) -> IoFunction | None:
        return self.io.get(name)


def _bare(name: str) -> str:
    return name.rsplit(":", 1)[-1]


def parse_table(text: str) -> list[tuple[str, str]]:
    """Parse ``class<TAB>pattern`` lines; blank lines and # comments skipped."""
    entries: list[tuple[str, str]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cls, _, pattern = line.partition("\t")
        cls = cls.strip()
        pattern = pattern.strip()
        if not cls or not pattern:
            continue
        entries.append((cls, pattern))
    return entries


def _default_text(name: str) -> str:
    return resources.files("reprolint").joinpath(f"data/{name}").read_text(encoding="utf-8")


def _override_paths(name: str, root: str | None) -> list[str]:
    paths = []
    env_dir = os.environ.get(ENV_CONFIG_DIR)
    if env_dir:
        paths.append(os.path.join(env_dir, name))
    if root is not None:
        paths.append(os.path.join(os.fspath(root), ".reprolint", name))
    return [p for p in paths if os.path.isfile(p)]


def load_function_tables(root: str | None = None) -> FunctionTables:
    """Built-in function tables merged with env/project overrides."""
    entries = parse_table(_default_text(FUNCTIONS_FILE))
    for path in _override_paths(FUNCTIONS_FILE, root):
        with open(path, encoding="utf-8") as fh:
            entries.extend(parse_table(fh.read()))

    io: dict[str, IoFunction] = {}
    random: set[str] = set()
    seed: set[str] = set()
    chdir: set[str] = set()
    for cls, pattern in entries:
        if cls in _OTHER_CLASSES:
            {"random": random, "seed": seed, "chdir": chdir}[cls].add(_bare(pattern))
            continue
        fn = IoFunction(qualified=pattern, io=cls if cls in _IO_CLASSES else IO_UNKNOWN)
        io[pattern] = fn
        io[_bare(pattern)] = fn
    return FunctionTables(
        io=io,
        random=frozenset(random),
        seed=frozenset(seed),
        chdir=frozenset(chdir),
    )


def load_github_registry(root: str | None = None) -> dict[str, str]:
    """Package name -> GitHub slug; packages not listed resolve to CRAN."""
    registry: dict[str, str] = {}
    texts = [_default_text(REGISTRY_FILE)]
    for path in _override_paths(REGISTRY_FILE, root):
        with open(path, encoding="utf-8") as fh:
            texts.append(fh.read())
    for text in texts:
        for name, slug in parse_table(text):
            registry[name] = slug
    return registry
