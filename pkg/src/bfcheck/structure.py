"""Center, centralizers, conjugacy classes, commutators and solvability.

Results that are reused heavily (classes, center, squares) are memoized on
the group object; groups are immutable, so the cache never goes stale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .engine.base import ID_DTYPE, Group, closure_mask
from .errors import InternalInconsistencyError, NotApplicableError

# bound on the number of matrix cells materialized at once by the bulk scans
CHUNK_CELLS = 1 << 22


def _cached(G: Group, key: str, compute):
    cache = G._cache
    if key not in cache:
        cache[key] = compute()
    return cache[key]


def row_chunks(items: np.ndarray, width: int) -> Iterator[np.ndarray]:
    step = max(1, CHUNK_CELLS // max(width, 1))
    for start in range(0, len(items), step):
        yield items[start:start + step]


@dataclass(frozen=True)
class CenterData:
    members: tuple[int, ...]
    order: int
    involution_count: int

    def __contains__(self, a) -> bool:
        return int(a) in self.members


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    size: int
    members: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class ClassData:
    """Conjugacy classes ordered by their least member (the representative)."""

    classes: tuple[ConjugacyClass, ...]
    class_of: np.ndarray

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> np.ndarray:
        return np.array([c.size for c in self.classes], dtype=ID_DTYPE)

    def noncentral(self) -> tuple[ConjugacyClass, ...]:
        """The classes of size > 1; their representatives are y_1..y_r."""
        return tuple(c for c in self.classes if c.size > 1)

    def class_sizes_by_element(self) -> np.ndarray:
        return self.sizes[self.class_of]


def squares(G: Group) -> np.ndarray:
    return _cached(G, "squares", lambda: G.mul_many(G.elements, G.elements))


def central_mask(G: Group) -> np.ndarray:
    """Elements commuting with every generator, i.e. the center."""

    def compute():
        mask = np.ones(G.order, dtype=bool)
        for g in G.generators:
            mask &= G.commutes_with(g)
        mask.flags.writeable = False
        return mask

    return _cached(G, "central_mask", compute)


def center(G: Group) -> CenterData:
    mask = central_mask(G)
    members = np.flatnonzero(mask)
    sq = squares(G)
    involutions = int(np.count_nonzero((sq[members] == 0) & (members != 0)))
    return CenterData(tuple(int(z) for z in members), int(members.size), involutions)


def centralizer_mask(G: Group, a: int) -> np.ndarray:
    return G.commutes_with(G._check(a))


def centralizer(G: Group, a: int) -> frozenset[int]:
    """C_G(a) = {g : g a = a g}, by a direct scan over all elements."""
    return frozenset(int(g) for g in np.flatnonzero(centralizer_mask(G, a)))


def centralizer_order(G: Group, a: int) -> int:
    return int(np.count_nonzero(centralizer_mask(G, a)))


def conjugacy_classes(G: Group) -> ClassData:
    """Orbits of conjugation by the generators, found as graph components."""
    return _cached(G, "classes", lambda: _compute_classes(G))


def _compute_classes(G: Group) -> ClassData:
    n = G.order
    ids = G.elements
    src, dst = [ids], [ids]
    for s in G.generators:
        src.append(ids)
        dst.append(G.mul_many(G.mul_many(G.inv[s], ids), s))
    src, dst = np.concatenate(src), np.concatenate(dst)
    graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    # relabel components by least member so class order follows enumeration order
    first = np.full(labels.max() + 1, n, dtype=ID_DTYPE)
    np.minimum.at(first, labels, ids)
    order = np.argsort(first)
    relabel = np.empty_like(order)
    relabel[order] = np.arange(order.size)
    class_of = relabel[labels].astype(ID_DTYPE)
    class_of.flags.writeable = False
    members_sorted = np.argsort(class_of, kind="stable")
    bounds = np.searchsorted(class_of[members_sorted], np.arange(order.size + 1))
    classes = []
    for k in range(order.size):
        mem = members_sorted[bounds[k]:bounds[k + 1]]
        classes.append(ConjugacyClass(int(mem[0]), int(mem.size), tuple(int(x) for x in mem)))
    return ClassData(tuple(classes), class_of)


def centralizer_orders(G: Group) -> np.ndarray:
    """|C_G(a)| for every a, as |G| / |a^G|."""
    return G.order // conjugacy_classes(G).class_sizes_by_element()


def conjugacy_class_of(G: Group, t: int) -> np.ndarray:
    """t^G as a sorted id array, from conjugating t by every element."""
    return np.unique(G.conjugates(G._check(t)))


def commutators_with(G: Group, x) -> np.ndarray:
    """Array of [x, g] = x^-1 g^-1 x g over all g (x may be an id array of shape (k, 1))."""
    x = np.asarray(x, dtype=ID_DTYPE)
    ids = G.elements
    return G.mul_many(G.mul_many(G.inv[x], G.inv[ids]), G.mul_many(x, ids))


def commutator_set(G: Group, x: int) -> np.ndarray:
    """[x, G] as a sorted id array."""
    return np.unique(commutators_with(G, G._check(x)))


def is_abelian(G: Group) -> bool:
    return bool(central_mask(G).all())


def derived_subgroup(G: Group, gens: list[int]) -> tuple[np.ndarray, list[int]]:
    """Derived subgroup of <gens>: normal closure of commutators of generator pairs.

    Returns the membership mask and a generating list for the result.
    """
    comms: list[int] = []
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            c = int(G.mul_many(G.mul_many(G.inv[a], G.inv[b]), G.mul_many(a, b)))
            if c != 0 and c not in comms:
                comms.append(c)
    mask = closure_mask(G, comms, normalizers=gens)
    return mask, comms


def derived_series(G: Group) -> list[int]:
    """Orders of G, G', G'', ... until the series stabilizes."""

    def compute():
        gens = list(G.generators)
        orders = [G.order]
        depth_cap = max(1, G.order.bit_length())
        for _ in range(depth_cap + 1):
            if orders[-1] == 1:
                return orders
            mask, gens = derived_subgroup(G, gens)
            size = int(np.count_nonzero(mask))
            if size == orders[-1]:
                return orders
            orders.append(size)
        raise InternalInconsistencyError(f"derived series of {G.name} did not stabilize within {depth_cap} steps")

    return list(_cached(G, "derived_series", compute))


def is_solvable(G: Group) -> bool:
    return derived_series(G)[-1] == 1


def valid_t_mask(G: Group) -> np.ndarray:
    """Non-central elements whose square is central."""
    z = central_mask(G)
    return ~z & z[squares(G)]


def find_t(G: Group) -> int | None:
    """The enumeration-least non-central t with t^2 central, or None."""
    if is_abelian(G):
        raise NotApplicableError(f"{G.name or 'group'} is abelian; no non-central element exists")
    mask = valid_t_mask(G)
    return int(np.argmax(mask)) if mask.any() else None


def involutions(G: Group) -> np.ndarray:
    ids = G.elements
    return ids[(squares(G) == 0) & (ids != 0)]
