"""Token-level scanning of R and R Markdown sources.

The scanner is deliberately not a full R parser.  A small lexer separates
comments and string literals from code; facts (package loads, I/O calls
with literal path arguments, randomness, seeds, setwd, lint findings) are
then matched against the function tables.  Matching ignores comment text
and string interiors except for the literal arguments being captured.

Call arguments are matched on the call's own line; a literal sitting on a
continuation line is reported as an unresolved path expression rather than
guessed at.
"""

from __future__ import annotations

import os
import posixpath
import re
from dataclasses import dataclass

from .config import IO_UNKNOWN, IO_WRITE, FunctionTables, load_function_tables
from .errors import ScriptDecodeError
from .paths import is_remote_url, normalize_within, path_kind, KIND_ABSOLUTE

KIND_R_SCRIPT = "r-script"
KIND_R_MARKDOWN = "r-markdown"

MECH_LIBRARY = "library"
MECH_REQUIRE = "require"
MECH_NAMESPACE = "namespace-colon"

LINT_LONG_LINE = "long-line"
LINT_ASSIGN_EQ = "assign-eq"
LINT_COMMA_SPACE = "comma-space"
LINT_TRAILING_WS = "trailing-ws"

MAX_LINE_LENGTH = 80

_IDENT = r"[A-Za-z.][A-Za-z0-9._]*"
_CALL_RE = re.compile(rf"(?<![A-Za-z0-9._:])(?:({_IDENT})\s*(:::?)\s*)?({_IDENT})\s*\(")
_NS_RE = re.compile(rf"(?<![A-Za-z0-9._:])({_IDENT})\s*:::?\s*(?=[A-Za-z.])")
_FENCE_RE = re.compile(r"^(\s*)(`{3,})(.*)$")
_NUM_PREFIX_RE = re.compile(r"(\d+)")


@dataclass(frozen=True)
class PackageUse:
    name: str
    mechanism: str  # "library" | "require" | "namespace-colon"


@dataclass(frozen=True)
class PathRef:
    """A path argument to an I/O function.  ``literal`` is None when the
    argument is computed (variable, paste0, ...); io is then "unknown"."""

    literal: str | None
    func: str  # qualified name from the function table
    line: int
    io: str    # "read" | "write" | "unknown"


@dataclass(frozen=True)
class RandomCall:
    func: str
    line: int


@dataclass(frozen=True)
class LintFinding:
    rule: str
    line: int


@dataclass(frozen=True)
class ScriptFacts:
    """Everything the scanner extracted from one script."""

    script: str
    packages: tuple[PackageUse, ...] = ()
    path_refs: tuple[PathRef, ...] = ()
    randomness_calls: tuple[RandomCall, ...] = ()
    seed_calls: tuple[int, ...] = ()
    chdir_calls: tuple[int, ...] = ()
    lint_findings: tuple[LintFinding, ...] = ()
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class BuildGraph:
    """Bipartite script/file graph.  Edges run script -> file for writes
    and file -> script for reads."""

    scripts: tuple[str, ...]
    files: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]


def decode_script(data: bytes) -> str:
    """Decode script bytes as UTF-8 text; binary content is rejected."""
    if b"\x00" in data:
        raise ScriptDecodeError("not a text script")
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as err:
        raise ScriptDecodeError("not a text script") from err


def source_kind(script: str) -> str:
    return KIND_R_MARKDOWN if script.lower().endswith(".rmd") else KIND_R_SCRIPT


# ── code extraction ──────────────────────────────────────────────────────


def _is_r_chunk_info(info: str) -> bool:
    if not info.startswith("{"):
        return False
    body = info[1:].lstrip()
    return body[:1] in ("r", "R") and (len(body) == 1 or body[1] in " ,}\t")


def _extract_rmd(source: str) -> tuple[list[tuple[str, int]], list[str]]:
    lines: list[tuple[str, int]] = []
    warnings: list[str] = []
    state: tuple[str, int] | None = None  # (chunk kind, fence length)
    pending: list[tuple[str, int]] = []
    for lineno, text in enumerate(source.splitlines(), 1):
        fence = _FENCE_RE.match(text)
        if state is None:
            if fence:
                info = fence.group(3).strip()
                kind = "r" if _is_r_chunk_info(info) else "other"
                state = (kind, len(fence.group(2)))
                pending = []
            continue
        kind, flen = state
        if fence and len(fence.group(2)) >= flen and not fence.group(3).strip():
            if kind == "r":
                lines.extend(pending)
            state = None
            pending = []
            continue
        if kind == "r" and not text.lstrip().startswith("#|"):
            pending.append((text, lineno))
    if state is not None:
        # facts come only from complete chunks
        warnings.append("unterminated code fence")
    return lines, warnings


def extract_code(source: str, kind: str) -> list[tuple[str, int]]:
    """R code lines of a source file as (text, original line number).

    For "r-script" this is every line; for "r-markdown" only lines inside
    completed ```{r} chunks, with chunk-option (#|) lines excluded.
    """
    if kind == KIND_R_SCRIPT:
        return [(text, i) for i, text in enumerate(source.splitlines(), 1)]
    if kind == KIND_R_MARKDOWN:
        return _extract_rmd(source)[0]
    raise ValueError(f"unknown source kind: {kind}")


# ── lexer ────────────────────────────────────────────────────────────────


@dataclass
class _Line:
    lineno: int
    raw: str
    masked: str
    strings: dict[int, str]  # opening-quote index -> literal value


def _lex(code_lines: list[tuple[str, int]]) -> list[_Line]:
    out: list[_Line] = []
    quote = ""       # active quote char, carried across lines
    capture = False  # whether the active string opened on the current line
    value: list[str] = []
    start = -1
    for raw, lineno in code_lines:
        chars = list(raw)
        strings: dict[int, str] = {}
        i, n = 0, len(raw)
        while i < n:
            ch = raw[i]
            if quote:
                if ch == "\\" and quote != "`" and i + 1 < n:
                    nxt = raw[i + 1]
                    value.append(nxt if nxt in "\\\"'`" else "\\" + nxt)
                    chars[i] = chars[i + 1] = "\x00"
                    i += 2
                    continue
                if ch == quote:
                    if capture and start >= 0:
                        strings[start] = "".join(value)
                    quote, capture, start, value = "", False, -1, []
                    i += 1
                    continue
                chars[i] = "\x00"
                value.append(ch)
                i += 1
                continue
            if ch in "\"'`":
                quote, capture, start, value = ch, ch != "`", i, []
                i += 1
                continue
            if ch == "#":
                for j in range(i, n):
                    chars[j] = " "
                break
            i += 1
        out.append(_Line(lineno, raw, "".join(chars), strings))
        if quote:
            # multi-line string: continuation lines are masked, not captured
            capture, start, value = False, -1, []
    return out


def _first_literal_arg(line: _Line, open_idx: int) -> str | None:
    """First string literal at argument depth 1, or None (computed path,
    call spanning lines, or no string argument)."""
    masked = line.masked
    depth = 0
    i = open_idx
    while i < len(masked):
        ch = masked[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return None
        elif depth == 1 and ch in "\"'":
            return line.strings.get(i)
        i += 1
    return None


def _library_arg(line: _Line, open_idx: int) -> str | None:
    rest = line.masked[open_idx + 1 :]
    m = re.match(r"\s*(?:package\s*=\s*)?", rest)
    pos = open_idx + 1 + m.end()
    if pos >= len(line.masked):
        return None
    if line.masked[pos] in "\"'":
        return line.strings.get(pos)
    ident = re.match(_IDENT, line.masked[pos:])
    return ident.group(0) if ident else None


# ── lint rules ───────────────────────────────────────────────────────────

_OPENERS = "([{"
_CLOSERS = ")]}"


def _lint_line(line: _Line) -> list[LintFinding]:
    found: list[LintFinding] = []
    if len(line.raw) > MAX_LINE_LENGTH:
        found.append(LintFinding(LINT_LONG_LINE, line.lineno))
    if line.raw != line.raw.rstrip():
        found.append(LintFinding(LINT_TRAILING_WS, line.lineno))
    masked = line.masked
    depth = 0
    saw_assign = saw_comma = False
    for i, ch in enumerate(masked):
        if ch in _OPENERS:
            depth += 1
        elif ch in _CLOSERS:
            depth -= 1
        elif ch == "=" and depth == 0 and not saw_assign:
            prev = masked[i - 1] if i > 0 else ""
            nxt = masked[i + 1] if i + 1 < len(masked) else ""
            if prev not in "=<>!" and nxt != "=":
                found.append(LintFinding(LINT_ASSIGN_EQ, line.lineno))
                saw_assign = True
        elif ch == "," and not saw_comma:
            if i + 1 < len(masked) and masked[i + 1] not in " \t":
                found.append(LintFinding(LINT_COMMA_SPACE, line.lineno))
                saw_comma = True
    return found


# ── fact extraction ──────────────────────────────────────────────────────


def scan_script(script: str, content: str, tables: FunctionTables | None = None) -> ScriptFacts:
    """Extract reproducibility facts from one script's text.

    ``script`` is the project-relative path; the source kind is inferred
    from its extension.  Packages are deduplicated per (name, mechanism)
    in first-appearance order; path references keep one entry per call.
    """
    if tables is None:
        tables = load_function_tables()
    kind = source_kind(script)
    if kind == KIND_R_MARKDOWN:
        code_lines, warnings = _extract_rmd(content)
    else:
        code_lines, warnings = extract_code(content, kind), []

    packages: dict[tuple[str, str], PackageUse] = {}
    path_refs: list[PathRef] = []
    randomness: list[RandomCall] = []
    seeds: list[int] = []
    chdirs: list[int] = []
    lint: list[LintFinding] = []

    def add_package(name: str, mechanism: str) -> None:
        packages.setdefault((name, mechanism), PackageUse(name, mechanism))

    for line in _lex(code_lines):
        lint.extend(_lint_line(line))
        for m in _NS_RE.finditer(line.masked):
            add_package(m.group(1), MECH_NAMESPACE)
        for m in _CALL_RE.finditer(line.masked):
            pkg, _, fn = m.group(1), m.group(2), m.group(3)
            open_idx = m.end() - 1
            written = f"{pkg}::{fn}" if pkg else fn
            if fn in (MECH_LIBRARY, MECH_REQUIRE) and pkg in (None, "base"):
                name = _library_arg(line, open_idx)
                if name:
                    add_package(name, fn)
                continue
            if fn in tables.seed:
                seeds.append(line.lineno)
                continue
            if fn in tables.chdir:
                chdirs.append(line.lineno)
                continue
            if fn in tables.random:
                randomness.append(RandomCall(written, line.lineno))
                continue
            entry = tables.lookup_io(written) or tables.lookup_io(fn)
            if entry is not None:
                literal = _first_literal_arg(line, open_idx)
                path_refs.append(
                    PathRef(
                        literal=literal,
                        func=entry.qualified,
                        line=line.lineno,
                        io=entry.io if literal is not None else IO_UNKNOWN,
                    )
                )

    return ScriptFacts(
        script=script,
        packages=tuple(packages.values()),
        path_refs=tuple(path_refs),
        randomness_calls=tuple(randomness),
        seed_calls=tuple(seeds),
        chdir_calls=tuple(chdirs),
        lint_findings=tuple(lint),
        warnings=tuple(warnings),
    )


def scan_all(project, tables: FunctionTables | None = None) -> tuple[list[ScriptFacts], list[str]]:
    """Scan every .R/.Rmd file of a scanned project.

    Undecodable scripts are skipped with a warning instead of aborting.
    """
    if tables is None:
        tables = load_function_tables(project.root)
    facts: list[ScriptFacts] = []
    warnings: list[str] = []
    for rec in project.files:
        if rec.ext not in ("r", "rmd"):
            continue
        full = os.path.join(project.root, rec.rel_path)
        try:
            with open(full, "rb") as fh:
                text = decode_script(fh.read())
        except (OSError, ScriptDecodeError) as err:
            warnings.append(f"{rec.rel_path}: {err}")
            continue
        facts.append(scan_script(rec.rel_path, text, tables))
    return facts, warnings


# ── build graph ──────────────────────────────────────────────────────────


def resolve_ref(facts: ScriptFacts, ref: PathRef) -> str | None:
    """Root-relative target of a path reference, or None when the literal
    is missing, remote, absolute, or escapes the project."""
    if ref.literal is None or is_remote_url(ref.literal):
        return None
    if path_kind(ref.literal) == KIND_ABSOLUTE:
        return None
    target = normalize_within(ref.literal, posixpath.dirname(facts.script))
    return target or None


def build_graph(facts_list: list[ScriptFacts], project=None) -> BuildGraph:
    """Bipartite graph linking scripts to the files they read and write.

    Only references whose normalized target stays inside the project are
    edges; the target does not have to exist yet (a write may create it).
    io="unknown" references with a literal count as reads.
    """
    del project  # targets are resolved lexically; existence is not required
    scripts: list[str] = []
    files: list[str] = []
    edges: list[tuple[str, str]] = []
    seen_files: set[str] = set()
    seen_edges: set[tuple[str, str]] = set()
    for facts in facts_list:
        scripts.append(facts.script)
        for ref in facts.path_refs:
            target = resolve_ref(facts, ref)
            if target is None:
                continue
            if target not in seen_files:
                seen_files.add(target)
                files.append(target)
            edge = (facts.script, target) if ref.io == IO_WRITE else (target, facts.script)
            if edge not in seen_edges:
                seen_edges.add(edge)
                edges.append(edge)
    return BuildGraph(
        scripts=tuple(sorted(scripts)),
        files=tuple(sorted(files)),
        edges=tuple(sorted(edges)),
    )


def graph_has_cycle(graph: BuildGraph) -> bool:
    adj: dict[str, list[str]] = {}
    for src, dst in graph.edges:
        adj.setdefault(src, []).append(dst)
    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[str, int] = {}

    def visit(node: str) -> bool:
        color[node] = GRAY
        for nxt in adj.get(node, ()):
            c = color.get(nxt, WHITE)
            if c == GRAY or (c == WHITE and visit(nxt)):
                return True
        color[node] = BLACK
        return False

    for node in list(graph.scripts) + list(graph.files):
        if color.get(node, WHITE) == WHITE and visit(node):
            return True
    return False


def script_precedence(graph: BuildGraph) -> dict[str, set[str]]:
    """successor map: writer script -> scripts reading any file it writes."""
    writers: dict[str, list[str]] = {}
    readers: dict[str, list[str]] = {}
    script_set = set(graph.scripts)
    for src, dst in graph.edges:
        if src in script_set:
            writers.setdefault(dst, []).append(src)
        else:
            readers.setdefault(src, []).append(dst)
    succ: dict[str, set[str]] = {s: set() for s in graph.scripts}
    for file, ws in writers.items():
        for w in ws:
            for r in readers.get(file, ()):
                if r != w:
                    succ[w].add(r)
    return succ


def unique_script_order(graph: BuildGraph) -> bool:
    """True when the write/read dependencies force exactly one run order."""
    succ = script_precedence(graph)
    indeg = {s: 0 for s in succ}
    for outs in succ.values():
        for t in outs:
            indeg[t] += 1
    remaining = dict(indeg)
    done: set[str] = set()
    for _ in range(len(remaining)):
        ready = sorted(s for s, d in remaining.items() if d == 0 and s not in done)
        if len(ready) != 1:
            return False
        node = ready[0]
        done.add(node)
        remaining[node] = -1
        for t in succ[node]:
            remaining[t] -= 1
    return True


def numeric_prefix_chain(scripts: tuple[str, ...]) -> bool:
    """True when every script file name starts with a number and those
    numbers strictly increase in file-name order."""
    if not scripts:
        return False
    values: list[int] = []
    for script in sorted(scripts):
        m = _NUM_PREFIX_RE.match(posixpath.basename(script))
        if not m:
            return False
        values.append(int(m.group(1)))
    return all(a < b for a, b in zip(values, values[1:]))
