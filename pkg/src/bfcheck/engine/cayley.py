"""Groups given by an explicit multiplication table."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import CapacityError, MalformedInputError
from .base import ID_DTYPE, TABLE_CAP, Group, check_associativity, check_capacity


def is_latin_square(table: np.ndarray) -> bool:
    n = table.shape[0]
    target = np.arange(n)
    rows_ok = np.array_equal(np.sort(table, axis=1), np.broadcast_to(target, (n, n)))
    cols_ok = np.array_equal(np.sort(table, axis=0), np.broadcast_to(target[:, None], (n, n)))
    return rows_ok and cols_ok


class CayleyTableGroup(Group):
    """Group backed by an n x n table; entry (i, j) is the id of i*j.

    ``validate`` may be ``"latin"`` (shape, range, identity row/column and
    Latin-square property) or ``"full"`` (additionally associativity, which
    is exhaustive up to order 64 and sampled above).
    """

    backend = "cayley"

    def __init__(
        self,
        table,
        *,
        name: str = "",
        labels: Sequence[str] | None = None,
        validate: str = "latin",
        cap: int | None = None,
    ):
        table = np.array(table, dtype=ID_DTYPE)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise MalformedInputError(f"Cayley table must be a non-empty square array, got shape {table.shape}")
        n = table.shape[0]
        check_capacity(n, cap, "Cayley table group")
        if n > TABLE_CAP:
            raise CapacityError(f"Cayley tables are limited to order {TABLE_CAP}, got {n}")
        if validate not in ("latin", "full", "none"):
            raise ValueError(f"unknown validation level {validate!r}")
        if validate != "none":
            _validate_table(table)
        if labels is not None and len(labels) != n:
            raise MalformedInputError(f"expected {n} labels, got {len(labels)}")
        self.order = n
        self.name = name
        self._labels = tuple(labels) if labels is not None else None
        self._table = table
        self._finish()
        if validate == "full" and not check_associativity(self):
            raise MalformedInputError("Cayley table is not associative")

    def _mul_raw(self, a, b):
        return self._table[a, b]

    def _compute_inverses(self):
        # each row is a permutation, so exactly one column per row holds the identity
        return np.argmin(self._table != 0, axis=1).astype(ID_DTYPE)

    def label(self, a: int) -> str:
        a = int(a)
        if self._labels is not None:
            return self._labels[a]
        return f"e{a}"


def _validate_table(table: np.ndarray) -> None:
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise MalformedInputError(f"table entries must lie in [0, {n})")
    ids = np.arange(n)
    if not np.array_equal(table[0], ids) or not np.array_equal(table[:, 0], ids):
        raise MalformedInputError("row 0 and column 0 must be the identity maps (element 0 is the identity)")
    if not is_latin_square(table):
        raise MalformedInputError("table is not a Latin square")


def to_cayley(G: Group, name: str | None = None) -> CayleyTableGroup:
    if isinstance(G, CayleyTableGroup):
        return G
    if G.table is None:
        raise CapacityError(f"{G.name or 'group'} of order {G.order} has no materialized table")
    labels = [G.label(a) for a in range(G.order)]
    return CayleyTableGroup(G.table, name=name if name is not None else G.name, labels=labels, validate="none")


def cyclic(n: int) -> CayleyTableGroup:
    ids = np.arange(n)
    table = (ids[:, None] + ids[None, :]) % n
    return CayleyTableGroup(table, name=f"cyclic:{n}", labels=[_power_label("a", k) or "e" for k in range(n)])


def dicyclic(m: int) -> CayleyTableGroup:
    """Dicyclic group of order 4m: <a, x | a^2m = 1, x^2 = a^m, x^-1 a x = a^-1>.

    Element a^k x^e has id k + 2m*e.
    """
    r = 2 * m
    k = np.arange(2 * r) % r
    e = np.arange(2 * r) // r
    k1, e1 = k[:, None], e[:, None]
    k2, e2 = k[None, :], e[None, :]
    sign = np.where(e1 == 1, -1, 1)
    kk = k1 + sign * k2 + np.where((e1 == 1) & (e2 == 1), m, 0)
    ee = (e1 + e2) % 2
    table = (kk % r) + r * ee
    labels = [(_power_label("a", int(i % r)) + ("x" if i >= r else "")) or "e" for i in range(2 * r)]
    return CayleyTableGroup(table, name=f"dicyclic:{m}", labels=labels)


def dihedral_table(n: int) -> CayleyTableGroup:
    """Dihedral group of order 2n as r^k s^e with id k + n*e (used for n < 3)."""
    k = np.arange(2 * n) % n
    e = np.arange(2 * n) // n
    k1, e1 = k[:, None], e[:, None]
    k2, e2 = k[None, :], e[None, :]
    kk = k1 + np.where(e1 == 1, -1, 1) * k2
    table = (kk % n) + n * ((e1 + e2) % 2)
    labels = [(_power_label("r", int(i % n)) + ("s" if i >= n else "")) or "e" for i in range(2 * n)]
    return CayleyTableGroup(table, name=f"dihedral:{n}", labels=labels)


def direct_product(G: Group, H: Group, cap: int | None = None) -> CayleyTableGroup:
    """Direct product as a Cayley-table group; (g, h) has id g*|H| + h."""
    A, B = to_cayley(G).table, to_cayley(H).table
    n1, n2 = A.shape[0], B.shape[0]
    n = n1 * n2
    check_capacity(n, cap, "direct product")
    if n > TABLE_CAP:
        raise CapacityError(f"Cayley tables are limited to order {TABLE_CAP}, got {n}")
    table = (A[:, None, :, None] * n2 + B[None, :, None, :]).reshape(n, n)
    labels = [f"({G.label(i)}, {H.label(j)})" for i in range(n1) for j in range(n2)]
    return CayleyTableGroup(table, name=f"product:{G.name}*{H.name}", labels=labels, validate="none")


def _power_label(sym: str, k: int) -> str:
    if k == 0:
        return ""
    return sym if k == 1 else f"{sym}^{k}"
