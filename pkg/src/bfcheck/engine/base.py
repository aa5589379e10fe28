"""Common interface shared by the concrete group backends.

Every backend enumerates its elements in a fixed order and identifies them
with dense integer ids ``0 .. order-1``; id 0 is the identity. All bulk
work goes through :meth:`Group.mul_many`, which multiplies numpy arrays of
ids elementwise (with broadcasting). Groups small enough get a full Cayley
table at construction time so that ``mul_many`` is a single fancy index.
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

import numpy as np

from ..errors import CapacityError, InvalidElementError

DEFAULT_CAP = 200_000
CAP_ENV = "BFCHECK_CAP"
# Full multiplication tables are materialized up to this order (S_7 fits).
TABLE_CAP = 6000

ID_DTYPE = np.int64


def resolve_cap(flag: int | None = None) -> int:
    """Return the enumeration cap: explicit value, then environment, then default."""
    if flag is not None:
        cap = int(flag)
    elif os.environ.get(CAP_ENV):
        try:
            cap = int(os.environ[CAP_ENV])
        except ValueError as exc:
            raise ValueError(f"{CAP_ENV} must be an integer, got {os.environ[CAP_ENV]!r}") from exc
    else:
        cap = DEFAULT_CAP
    if cap < 1:
        raise ValueError(f"enumeration cap must be positive, got {cap}")
    return cap


def check_capacity(order: int, cap: int | None, what: str = "group") -> None:
    cap = resolve_cap(cap)
    if order > cap:
        raise CapacityError(f"{what} has order {order}, above the enumeration cap {cap}")


class Group:
    """A finite group with elements identified by dense integer ids.

    Subclasses set ``order`` and implement ``_mul_raw`` (vectorized product of
    two equally shaped 1-d id arrays), ``_compute_inverses`` and ``label``,
    then call ``_finish()`` at the end of their constructor.
    """

    backend = "abstract"

    order: int
    inv: np.ndarray
    name: str
    _table: np.ndarray | None = None
    _generators: tuple[int, ...] | None = None

    def _finish(self, table_cap: int = TABLE_CAP) -> None:
        if self._table is None and self.order <= table_cap:
            self._table = self._build_table()
        if self._table is not None:
            self._table.flags.writeable = False
        inv = np.asarray(self._compute_inverses(), dtype=ID_DTYPE)
        inv.flags.writeable = False
        self.inv = inv
        self._cache: dict = {}

    # -- to be provided by backends -------------------------------------------

    def _mul_raw(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _compute_inverses(self) -> np.ndarray:
        raise NotImplementedError

    def label(self, a: int) -> str:
        return str(int(a))

    def _default_generators(self) -> Sequence[int]:
        return greedy_generators(self)

    # -- core arithmetic -------------------------------------------------------

    def _build_table(self) -> np.ndarray:
        # column h*s of the table is (column s) composed with (column h), so a
        # breadth-first walk over the generators fills it with one gather per element
        n = self.order
        ids = np.arange(n, dtype=ID_DTYPE)
        by_gen = [self._mul_raw(ids, np.full(n, s, dtype=ID_DTYPE)) for s in self.generators]
        cols = np.empty((n, n), dtype=ID_DTYPE)
        cols[0] = ids
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        queue = [0]
        for h in queue:
            for col_s in by_gen:
                hs = int(col_s[h])
                if not seen[hs]:
                    seen[hs] = True
                    cols[hs] = col_s[cols[h]]
                    queue.append(hs)
        if not seen.all():
            raise AssertionError("generators do not generate the group")
        return np.ascontiguousarray(cols.T)

    @property
    def table(self) -> np.ndarray | None:
        """The full multiplication table (row i, column j holds i*j), if built."""
        return self._table

    def mul_many(self, a, b) -> np.ndarray:
        """Elementwise product of id arrays, broadcasting like numpy."""
        a = np.asarray(a, dtype=ID_DTYPE)
        b = np.asarray(b, dtype=ID_DTYPE)
        if self._table is not None:
            return self._table[a, b]
        a, b = np.broadcast_arrays(a, b)
        shape = a.shape
        return self._mul_raw(a.ravel(), b.ravel()).reshape(shape)

    def _check(self, a) -> int:
        if isinstance(a, (bool, np.bool_)) or not isinstance(a, (int, np.integer)):
            raise InvalidElementError(f"element id must be an integer, got {a!r}")
        a = int(a)
        if not 0 <= a < self.order:
            raise InvalidElementError(f"element id {a} out of range for a group of order {self.order}")
        return a

    def multiply(self, a: int, b: int) -> int:
        a, b = self._check(a), self._check(b)
        return int(self.mul_many(a, b))

    def inverse(self, a: int) -> int:
        return int(self.inv[self._check(a)])

    def power(self, a: int, k: int) -> int:
        a = self._check(a)
        if k < 0:
            a, k = int(self.inv[a]), -k
        result = 0
        while k:
            if k & 1:
                result = int(self.mul_many(result, a))
            a = int(self.mul_many(a, a))
            k >>= 1
        return result

    def element_order(self, a: int) -> int:
        """Smallest k >= 1 with a^k equal to the identity."""
        a = self._check(a)
        k, cur = 1, a
        while cur != 0:
            cur = int(self.mul_many(cur, a))
            k += 1
        return k

    def element_orders(self) -> np.ndarray:
        """Orders of all elements, computed by repeated vectorized multiplication."""
        ids = np.arange(self.order, dtype=ID_DTYPE)
        orders = np.zeros(self.order, dtype=ID_DTYPE)
        cur = ids.copy()
        k = 1
        while True:
            done = (cur == 0) & (orders == 0)
            orders[done] = k
            if (orders > 0).all():
                return orders
            cur = self.mul_many(cur, ids)
            k += 1

    def enumerate(self) -> list[int]:
        """All element ids in enumeration order; the identity comes first."""
        return list(range(self.order))

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=ID_DTYPE)

    @property
    def generators(self) -> tuple[int, ...]:
        """A generating set, as element ids (empty for the trivial group)."""
        if self._generators is None:
            self._generators = tuple(int(g) for g in self._default_generators() if int(g) != 0)
        return self._generators

    def conjugates(self, a: int) -> np.ndarray:
        """Array over all g of g^-1 a g, indexed by g."""
        ids = self.elements
        return self.mul_many(self.mul_many(self.inv, a), ids)

    def commutes_with(self, a: int) -> np.ndarray:
        """Boolean mask of the elements g with g a = a g."""
        ids = self.elements
        return self.mul_many(ids, a) == self.mul_many(a, ids)

    def is_abelian(self) -> bool:
        gens = self.generators
        for i, g in enumerate(gens):
            for h in gens[i + 1:]:
                if self.mul_many(g, h) != self.mul_many(h, g):
                    return False
        return True

    def span(self, gens: Iterable[int]) -> np.ndarray:
        """Boolean mask of the subgroup generated by ``gens``."""
        return closure_mask(self, list(gens))

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name or '?'} order={self.order}>"


def closure_mask(G: Group, gens: list[int], normalizers: Sequence[int] = ()) -> np.ndarray:
    """Subgroup generated by ``gens``, optionally closed under conjugation.

    With ``normalizers`` given, the result is the normal closure of ``gens``
    under the group they generate. ``gens`` is extended in place with the
    conjugates that had to be added, so it ends up generating the result.
    """
    n = G.order
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    frontier = np.array([0], dtype=ID_DTYPE)
    while True:
        while frontier.size and gens:
            new = np.concatenate([G.mul_many(frontier, g) for g in gens])
            new = np.unique(new[~mask[new]])
            mask[new] = True
            frontier = new
        added = False
        for g in list(gens):
            for s in normalizers:
                c = int(G.mul_many(G.mul_many(G.inv[s], g), s))
                if not mask[c]:
                    gens.append(c)
                    added = True
        if not added:
            return mask
        frontier = np.flatnonzero(mask).astype(ID_DTYPE)


def greedy_generators(G: Group) -> list[int]:
    """Deterministic generating set: repeatedly add the least element not yet covered."""
    gens: list[int] = []
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    while not mask.all():
        g = int(np.argmin(mask))
        gens.append(g)
        mask = closure_mask(G, list(gens))
    return gens


def check_associativity(G: Group, exhaustive_limit: int = 64, samples: int = 10_000, seed: int = 0) -> bool:
    """Exhaustive triple check up to ``exhaustive_limit``, random triples above."""
    n = G.order
    if n <= exhaustive_limit:
        a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
        a, b, c = a.ravel(), b.ravel(), c.ravel()
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
    left = G.mul_many(G.mul_many(a, b), c)
    right = G.mul_many(a, G.mul_many(b, c))
    return bool(np.array_equal(left, right))
