"""SL(2, q) and GL(2, q), enumerated directly as 2x2 matrices."""

from __future__ import annotations

import numpy as np

from ..errors import InvalidElementError, SpecError
from .base import ID_DTYPE, TABLE_CAP, Group, check_capacity
from .field import FiniteField


def sl2_order(q: int) -> int:
    return q * (q - 1) * (q + 1)


def gl2_order(q: int) -> int:
    return (q * q - 1) * (q * q - q)


class MatrixGroup(Group):
    """All 2x2 matrices over ``field`` with determinant 1 (SL) or non-zero (GL).

    Matrices are stored row-major as ``(a, b, c, d)``. The identity gets id 0;
    the remaining matrices follow in increasing order of the key
    ``((a*q + b)*q + c)*q + d``.
    """

    backend = "matrix"

    def __init__(self, field: FiniteField, kind: str = "SL", *, cap: int | None = None, table_cap: int = TABLE_CAP):
        kind = kind.upper()
        if kind not in ("SL", "GL"):
            raise SpecError(f"matrix group kind must be SL or GL, got {kind!r}")
        self.field, self.kind = field, kind
        q = field.q
        self.name = f"{kind.lower()}2:{q}"
        expected = sl2_order(q) if kind == "SL" else gl2_order(q)
        check_capacity(expected, cap, self.name)

        keys = np.arange(q**4, dtype=ID_DTYPE)
        a, b, c, d = keys // q**3, keys // q**2 % q, keys // q % q, keys % q
        det = self._det(a, b, c, d)
        keys = keys[det == 1] if kind == "SL" else keys[det != 0]
        if keys.size != expected:
            raise AssertionError(f"enumerated {keys.size} matrices, expected {expected}")
        ident_key = q**3 + 1
        self._sorted_keys = keys
        ident_pos = int(np.searchsorted(keys, ident_key))
        order_keys = np.concatenate([[ident_key], np.delete(keys, ident_pos)])
        self._keys = order_keys
        self._pos_to_id = np.empty(keys.size, dtype=ID_DTYPE)
        self._pos_to_id[np.searchsorted(keys, order_keys)] = np.arange(keys.size, dtype=ID_DTYPE)
        self.entries = np.stack([order_keys // q**3, order_keys // q**2 % q, order_keys // q % q, order_keys % q], axis=1)
        self.entries.flags.writeable = False
        self.order = int(keys.size)
        self._generators = tuple(sorted(self._standard_generators()))
        self._finish(table_cap)

    def _det(self, a, b, c, d):
        F = self.field
        return F.add_table[F.mul_table[a, d], F.neg_table[F.mul_table[b, c]]]

    def _ids_of(self, a, b, c, d) -> np.ndarray:
        q = self.field.q
        k = ((a * q + b) * q + c) * q + d
        return self._pos_to_id[np.searchsorted(self._sorted_keys, k)]

    def _mul_raw(self, x, y):
        add, mul = self.field.add_table, self.field.mul_table
        a1, b1, c1, d1 = self.entries[x].T
        a2, b2, c2, d2 = self.entries[y].T
        return self._ids_of(
            add[mul[a1, a2], mul[b1, c2]],
            add[mul[a1, b2], mul[b1, d2]],
            add[mul[c1, a2], mul[d1, c2]],
            add[mul[c1, b2], mul[d1, d2]],
        )

    def _compute_inverses(self):
        F = self.field
        a, b, c, d = self.entries.T
        s = F.inv_table[self._det(a, b, c, d)]
        neg, mul = F.neg_table, F.mul_table
        return self._ids_of(mul[s, d], mul[s, neg[b]], mul[s, neg[c]], mul[s, a])

    def _standard_generators(self) -> list[int]:
        # transvections over an additive basis generate SL(2, q); GL adds a diagonal unit
        F = self.field
        basis = [F.p**i for i in range(F.m)]
        gens = [self.index_of(((1, x), (0, 1))) for x in basis]
        gens += [self.index_of(((1, 0), (x, 1))) for x in basis]
        if self.kind == "GL" and F.q > 2:
            gens.append(self.index_of(((F.primitive_element(), 0), (0, 1))))
        return gens

    def index_of(self, matrix) -> int:
        """Element id of a matrix ``((a, b), (c, d))`` with integer-encoded entries."""
        (a, b), (c, d) = matrix
        q = self.field.q
        if not all(0 <= int(v) < q for v in (a, b, c, d)):
            raise InvalidElementError(f"matrix entries must lie in [0, {q})")
        det = int(self._det(a, b, c, d))
        if (self.kind == "SL" and det != 1) or det == 0:
            raise InvalidElementError(f"matrix {matrix} is not in {self.name}")
        return int(self._ids_of(np.int64(a), np.int64(b), np.int64(c), np.int64(d)))

    def matrix(self, x: int) -> tuple[tuple[int, int], tuple[int, int]]:
        a, b, c, d = (int(v) for v in self.entries[self._check(x)])
        return ((a, b), (c, d))

    def label(self, x: int) -> str:
        a, b, c, d = (int(v) for v in self.entries[int(x)])
        return f"[[{a},{b}],[{c},{d}]]"


def sl2(q: int, **kwargs) -> MatrixGroup:
    return MatrixGroup(FiniteField.of_order(q), "SL", **kwargs)


def gl2(q: int, **kwargs) -> MatrixGroup:
    return MatrixGroup(FiniteField.of_order(q), "GL", **kwargs)
