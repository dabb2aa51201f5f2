"""Text formats: group, permutation, flock and cochain files.

All element numbers in files are 1-based.  Blank lines and ``#`` comments are
ignored everywhere.

group file::

    group
    order N
    <N lines of N indices>
    labels            (optional)
    <N lines, one label each>

permutation file::

    perms
    points N
    explicit          (optional: the list is the whole group, in index order)
    <one cycle-notation permutation per line>

flock file::

    flock
    order N
    b B
    group <path>      (relative to the flock file)  | table + N rows | ternary + N blocks

cochain file::

    cocycle1          (or cocycle2)
    order N
    modulus p
    <N blocks (N^2 for cocycle2) of N rows of N values>

Rows of a table may be written as space-separated numbers or, when every
value is a single digit, as a run of digits.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import InvalidFile, InvalidGroupFile
from .groups import FiniteGroup, group_from_permutations, group_from_table
from .perm import Permutation
from .ternary import FlockSpec, TernaryTable, flock_from_group


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _row(line: str, n: int) -> list[int]:
    toks = line.split()
    if len(toks) == 1 and len(toks[0]) == n and n > 1 and toks[0].isdigit():
        return [int(c) for c in toks[0]]
    try:
        vals = [int(t) for t in toks]
    except ValueError as exc:
        raise InvalidFile(f"non-integer entry in row {line!r}") from exc
    if len(vals) != n:
        raise InvalidFile(f"expected {n} entries, got {len(vals)} in row {line!r}")
    return vals


def _keyword(line: str, key: str) -> str:
    parts = line.split(None, 1)
    if not parts or parts[0] != key or len(parts) < 2:
        raise InvalidFile(f"expected '{key} <value>', got {line!r}")
    return parts[1].strip()


# ------------------------------------------------------------------ groups

def parse_group(text: str, name: str | None = None) -> FiniteGroup:
    lines = _lines(text)
    if not lines:
        raise InvalidGroupFile("empty group file")
    if lines[0] == "perms":
        return parse_perms(text, name)
    if lines[0] != "group":
        raise InvalidGroupFile(f"first line must be 'group', got {lines[0]!r}")
    try:
        n = int(_keyword(lines[1], "order"))
        rows = [_row(line, n) for line in lines[2:2 + n]]
    except (IndexError, ValueError, InvalidFile) as exc:
        raise InvalidGroupFile(f"malformed group file: {exc}") from exc
    if len(rows) != n:
        raise InvalidGroupFile(f"expected {n} table rows")
    labels = None
    rest = lines[2 + n:]
    if rest:
        if rest[0] != "labels" or len(rest) != n + 1:
            raise InvalidGroupFile("trailing section must be 'labels' followed by N lines")
        labels = rest[1:]
    return group_from_table(rows, labels=labels, name=name)


def format_group(g: FiniteGroup, with_labels: bool = True) -> str:
    out = ["group", f"order {g.order}"]
    for row in g.table:
        out.append(" ".join(str(int(v) + 1) for v in row))
    if with_labels and g.labels is not None:
        out.append("labels")
        out.extend(g.labels)
    return "\n".join(out) + "\n"


def parse_perms(text: str, name: str | None = None) -> FiniteGroup:
    lines = _lines(text)
    if not lines or lines[0] != "perms":
        raise InvalidGroupFile("first line must be 'perms'")
    try:
        points = int(_keyword(lines[1], "points"))
    except (IndexError, ValueError, InvalidFile) as exc:
        raise InvalidGroupFile(f"malformed permutation file: {exc}") from exc
    body = lines[2:]
    explicit = bool(body) and body[0] == "explicit"
    if explicit:
        body = body[1:]
    perms = [Permutation.from_cycles(line, points) for line in body]
    if explicit:
        return group_from_permutations([], elements=perms, name=name)
    return group_from_permutations(perms, name=name)


def read_group(path: str | Path) -> FiniteGroup:
    path = Path(path)
    return parse_group(path.read_text(), name=path.stem)


def write_group(g: FiniteGroup, path: str | Path) -> None:
    Path(path).write_text(format_group(g))


# ------------------------------------------------------------------ flocks

def parse_flock(text: str, base_dir: Path | None = None) -> TernaryTable:
    lines = _lines(text)
    if not lines or lines[0] != "flock":
        raise InvalidFile("first line must be 'flock'")
    n = int(_keyword(lines[1], "order"))
    head = lines[2]
    if head == "ternary":
        body = lines[3:]
        if len(body) != n * n:
            raise InvalidFile(f"ternary section needs {n * n} rows, got {len(body)}")
        vals = np.array([_row(line, n) for line in body], dtype=np.int64).reshape(n, n, n) - 1
        return TernaryTable(vals)
    b = int(_keyword(head, "b")) - 1
    src = lines[3]
    if src.startswith("group"):
        ref = Path(_keyword(src, "group"))
        if not ref.is_absolute() and base_dir is not None:
            ref = base_dir / ref
        group = read_group(ref)
    elif src == "table":
        group = group_from_table([_row(line, n) for line in lines[4:4 + n]])
    else:
        raise InvalidFile(f"expected 'group <path>', 'table' or 'ternary', got {src!r}")
    if group.order != n:
        raise InvalidFile(f"flock declares order {n} but the group has order {group.order}")
    return flock_from_group(FlockSpec(group, b))


def read_flock(path: str | Path) -> TernaryTable:
    path = Path(path)
    return parse_flock(path.read_text(), base_dir=path.parent)


def format_ternary(t: TernaryTable) -> str:
    out = ["flock", f"order {t.order}", "ternary"]
    for i in range(t.order):
        out.append(f"# block {i + 1}")
        for j in range(t.order):
            out.append(" ".join(str(int(v) + 1) for v in t.values[i, j]))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- cochains

def parse_cochain(text: str):
    from .homology import CochainTable

    lines = _lines(text)
    kinds = {"cocycle1": 3, "cocycle2": 4, "cochain1": 3, "cochain2": 4}
    if not lines or lines[0] not in kinds:
        raise InvalidFile("first line must be 'cocycle1' or 'cocycle2'")
    arity = kinds[lines[0]]
    n = int(_keyword(lines[1], "order"))
    p = int(_keyword(lines[2], "modulus"))
    body = lines[3:]
    if len(body) != n ** (arity - 1):
        raise InvalidFile(f"expected {n ** (arity - 1)} rows, got {len(body)}")
    vals = np.array([_row(line, n) for line in body], dtype=np.int64).reshape((n,) * arity)
    return CochainTable(vals, p)


def format_cochain(f) -> str:
    n = f.order
    kind = "cocycle1" if f.arity == 3 else "cocycle2"
    out = [kind, f"order {n}", f"modulus {f.modulus}"]
    compact = f.modulus and f.modulus <= 10
    flat = f.values.reshape(-1, n, n)
    for b, block in enumerate(flat):
        idx = np.unravel_index(b, (n,) * (f.arity - 2))
        out.append("# i=" + ",".join(str(int(i) + 1) for i in idx))
        for row in block:
            out.append("".join(map(str, row)) if compact else " ".join(map(str, row)))
    return "\n".join(out) + "\n"


def read_cochain(path: str | Path):
    return parse_cochain(Path(path).read_text())


def write_cochain(f, path: str | Path) -> None:
    Path(path).write_text(format_cochain(f))


# ------------------------------------------------------------- braid lists

def read_braid_list(path: str | Path) -> list[tuple[str, str]]:
    """Lines ``<braid word> [| expected polynomial]``; returns (word, expected)."""
    out = []
    for line in _lines(Path(path).read_text()):
        word, _, expected = line.partition("|")
        out.append((word.strip(), expected.strip()))
    return out
