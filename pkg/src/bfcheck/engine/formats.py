"""Text formats for Cayley tables and permutation generators.

Cayley table file::

    n
    <n integers: row 0>
    ...
    <n integers: row n-1>

Entries lie in [0, n) and element 0 must be the identity.

Permutation generator file::

    d
    <d integers: images of points 0..d-1 under generator 1>
    ...

Blank lines and lines starting with ``#`` are ignored in both formats.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..errors import MalformedInputError
from .cayley import CayleyTableGroup
from .permutation import PermutationGroup


def _content_lines(path: Path) -> list[str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc}") from exc
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _ints(line: str, path, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise MalformedInputError(f"{path}: line {lineno} is not a list of integers") from exc


def parse_cayley_text(lines: list[str], source="<text>") -> np.ndarray:
    if not lines:
        raise MalformedInputError(f"{source}: empty Cayley table file")
    header = _ints(lines[0], source, 1)
    if len(header) != 1 or header[0] < 1:
        raise MalformedInputError(f"{source}: first line must be the positive order n")
    n = header[0]
    rows = [_ints(ln, source, i + 2) for i, ln in enumerate(lines[1:])]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise MalformedInputError(f"{source}: expected {n} rows of {n} integers")
    return np.array(rows, dtype=np.int64)


def load_cayley_file(path, *, name: str | None = None, cap: int | None = None) -> CayleyTableGroup:
    """Load and fully validate (Latin square, identity, associativity) a table file."""
    table = parse_cayley_text(_content_lines(path), path)
    return CayleyTableGroup(table, name=name or f"cayley:{path}", validate="full", cap=cap)


def load_perm_file(path, *, name: str | None = None, cap: int | None = None) -> PermutationGroup:
    lines = _content_lines(path)
    if not lines:
        raise MalformedInputError(f"{path}: empty permutation file")
    header = _ints(lines[0], path, 1)
    if len(header) != 1 or header[0] < 1:
        raise MalformedInputError(f"{path}: first line must be the positive degree d")
    gens = [_ints(ln, path, i + 2) for i, ln in enumerate(lines[1:])]
    return PermutationGroup(gens, header[0], name=name or f"perm:{path}", cap=cap)


def write_cayley_file(path, table) -> None:
    table = np.asarray(table)
    body = "\n".join(" ".join(str(int(x)) for x in row) for row in table)
    Path(path).write_text(f"{table.shape[0]}\n{body}\n")


def write_perm_file(path, degree: int, generators) -> None:
    body = "\n".join(" ".join(str(int(x)) for x in g) for g in generators)
    Path(path).write_text(f"{degree}\n{body}\n" if body else f"{degree}\n")
