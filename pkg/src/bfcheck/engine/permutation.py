"""Permutation groups with a base and strong generating set.

Permutations are image tuples: ``p[i]`` is the image of point ``i``. Products
compose left to right, ``(a*b)[i] = b[a[i]]``, so ``a*b`` means "apply a,
then b".

Elements are enumerated from the stabilizer chain and sorted
lexicographically by image array. Looking an element up goes through the
chain as well: sifting a permutation records, for each level, the position
of the base point's image in that level's orbit. Read as a mixed-radix
number this gives a rank in ``[0, |G|)`` without any hashing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import InvalidElementError, MalformedGeneratorError
from .base import ID_DTYPE, TABLE_CAP, Group, check_capacity

Perm = tuple[int, ...]


def perm_mul(a: Perm, b: Perm) -> Perm:
    return tuple(b[i] for i in a)


def perm_inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def is_identity(p: Sequence[int]) -> bool:
    return all(i == x for i, x in enumerate(p))


def from_cycles(cycles: Iterable[Sequence[int]], degree: int) -> Perm:
    """Build a permutation from disjoint cycles on points 0..degree-1."""
    img = list(range(degree))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            img[x] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


def cycle_string(p: Sequence[int]) -> str:
    """Cycle notation with points shown 1-based, e.g. ``(1 2)(3 4 5)``."""
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        j = p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(out) or "()"


def _normalize_generators(generators: Iterable[Sequence[int]], degree: int | None) -> tuple[list[Perm], int]:
    try:
        gens = [tuple(int(x) for x in g) for g in generators]
    except (TypeError, ValueError) as exc:
        raise MalformedGeneratorError(f"generator entries must be integers: {exc}") from exc
    if degree is None:
        degree = len(gens[0]) if gens else 1
    for g in gens:
        if len(g) != degree:
            raise MalformedGeneratorError(f"generator of degree {len(g)} does not match degree {degree}")
        if sorted(g) != list(range(degree)):
            raise MalformedGeneratorError(f"{g} is not a permutation of 0..{degree - 1}")
    return gens, degree


@dataclass(frozen=True)
class BSGS:
    """Base, strong generators and one transversal per base point.

    ``transversals[i]`` lists ``(point, u)`` pairs in orbit order, where ``u``
    maps ``base[i]`` to ``point`` and fixes ``base[:i]``.
    """

    degree: int
    base: tuple[int, ...]
    strong_generators: tuple[Perm, ...]
    transversals: tuple[tuple[tuple[int, Perm], ...], ...]

    @property
    def order(self) -> int:
        out = 1
        for t in self.transversals:
            out *= len(t)
        return out

    def sift(self, g: Sequence[int]) -> tuple[Perm, int]:
        """Strip ``g`` through the chain; returns (residue, level reached)."""
        return _sift(tuple(g), self.base, [dict(t) for t in self.transversals], 0)

    def contains(self, g: Sequence[int]) -> bool:
        if len(g) != self.degree:
            return False
        residue, level = self.sift(g)
        return level == len(self.base) and is_identity(residue)


def _sift(h: Perm, base, trans: list[dict[int, Perm]], start: int) -> tuple[Perm, int]:
    for level in range(start, len(base)):
        beta = h[base[level]]
        u = trans[level].get(beta)
        if u is None:
            return h, level
        h = perm_mul(h, perm_inv(u))
    return h, len(base)


def _orbit_transversal(point: int, gens: Sequence[Perm], degree: int) -> dict[int, Perm]:
    trans = {point: identity_perm(degree)}
    queue = [point]
    for beta in queue:
        u = trans[beta]
        for s in gens:
            gamma = s[beta]
            if gamma not in trans:
                trans[gamma] = perm_mul(u, s)
                queue.append(gamma)
    return trans


def schreier_sims(generators: Iterable[Sequence[int]], degree: int | None = None) -> BSGS:
    """Deterministic Schreier-Sims.

    Works from the deepest level upward; every Schreier generator of level i
    is sifted through levels i+1.. and a non-trivial residue becomes a new
    strong generator, after which the affected level is redone.
    """
    gens, degree = _normalize_generators(generators, degree)
    ident = identity_perm(degree)
    strong: list[Perm] = []
    for g in gens:
        if g != ident and g not in strong:
            strong.append(g)
    base: list[int] = []
    if strong:
        base.append(next(i for i, x in enumerate(strong[0]) if x != i))

    def level_gens(i: int) -> list[Perm]:
        return [s for s in strong if all(s[b] == b for b in base[:i])]

    trans: list[dict[int, Perm]] = [_orbit_transversal(b, level_gens(i), degree) for i, b in enumerate(base)]

    i = len(base) - 1
    while i >= 0:
        S = level_gens(i)
        trans[i] = _orbit_transversal(base[i], S, degree)
        residue_found = False
        for beta, u in list(trans[i].items()):
            for s in S:
                gamma = s[beta]
                sch = perm_mul(perm_mul(u, s), perm_inv(trans[i][gamma]))
                if sch == ident:
                    continue
                residue, j = _sift(sch, base, trans, i + 1)
                if residue == ident:
                    continue
                strong.append(residue)
                if j == len(base):
                    base.append(next(p for p, x in enumerate(residue) if x != p))
                    trans.append({})
                for level in range(i + 1, j + 1):
                    trans[level] = _orbit_transversal(base[level], level_gens(level), degree)
                i = j
                residue_found = True
                break
            if residue_found:
                break
        if not residue_found:
            i -= 1

    return BSGS(
        degree=degree,
        base=tuple(base),
        strong_generators=tuple(strong),
        transversals=tuple(tuple(t.items()) for t in trans),
    )


class PermutationGroup(Group):
    """Permutation group given by generators; elements sorted by image array."""

    backend = "permutation"

    def __init__(
        self,
        generators: Iterable[Sequence[int]],
        degree: int | None = None,
        *,
        name: str = "",
        cap: int | None = None,
        table_cap: int = TABLE_CAP,
    ):
        gens, degree = _normalize_generators(generators, degree)
        self.degree = degree
        self.name = name
        self.bsgs = schreier_sims(gens, degree)
        self.order = self.bsgs.order
        check_capacity(self.order, cap, name or "permutation group")
        self._setup_chain()
        elems = self._enumerate_chain()
        elems = elems[np.lexsort(elems.T[::-1])]
        self.perms = elems
        self.perms.flags.writeable = False
        ranks = self._rank(elems)
        if not np.array_equal(np.sort(ranks), np.arange(self.order)):
            raise AssertionError("stabilizer chain ranks are not a bijection")
        self._rank_to_id = np.empty(self.order, dtype=ID_DTYPE)
        self._rank_to_id[ranks] = np.arange(self.order, dtype=ID_DTYPE)
        ident = identity_perm(degree)
        self._generators = tuple(sorted({self.index_of(g) for g in gens if g != ident}))
        self._finish(table_cap)

    def _setup_chain(self) -> None:
        d = self.degree
        self._levels = []
        for b, trans in zip(self.bsgs.base, self.bsgs.transversals):
            pos = np.full(d, -1, dtype=ID_DTYPE)
            uinv = np.empty((len(trans), d), dtype=ID_DTYPE)
            u = np.empty((len(trans), d), dtype=ID_DTYPE)
            for k, (point, perm) in enumerate(trans):
                pos[point] = k
                u[k] = perm
                uinv[k] = perm_inv(perm)
            self._levels.append((b, pos, u, uinv))

    def _enumerate_chain(self) -> np.ndarray:
        # every element is uniquely u_{k-1} * ... * u_1 * u_0 with u_i from level i
        elems = np.arange(self.degree, dtype=ID_DTYPE)[None, :]
        for _, _, u, _ in reversed(self._levels):
            m, t = elems.shape[0], u.shape[0]
            left = np.repeat(elems, t, axis=0)
            right = np.tile(u, (m, 1))
            elems = np.take_along_axis(right, left, axis=1)
        return elems

    def _rank(self, perms: np.ndarray) -> np.ndarray:
        h = np.array(perms, dtype=ID_DTYPE, copy=True)
        rank = np.zeros(h.shape[0], dtype=ID_DTYPE)
        rows = np.arange(h.shape[0])
        for b, pos, u, uinv in self._levels:
            k = pos[h[rows, b]]
            if (k < 0).any():
                raise InvalidElementError("permutation is not a member of the group")
            rank = rank * u.shape[0] + k
            h = np.take_along_axis(uinv[k], h, axis=1)
        return rank

    def _mul_raw(self, a, b):
        prod = np.take_along_axis(self.perms[b], self.perms[a], axis=1)
        return self._rank_to_id[self._rank(prod)]

    def _compute_inverses(self):
        return self._rank_to_id[self._rank(np.argsort(self.perms, axis=1))]

    def index_of(self, perm: Sequence[int]) -> int:
        """Element id of a permutation (image tuple); raises if not a member."""
        perm = tuple(int(x) for x in perm)
        if not self.bsgs.contains(perm):
            raise InvalidElementError(f"{perm} is not a member of {self.name or 'the group'}")
        return int(self._rank_to_id[self._rank(np.array([perm]))[0]])

    def perm(self, a: int) -> Perm:
        return tuple(int(x) for x in self.perms[self._check(a)])

    def contains(self, perm: Sequence[int]) -> bool:
        return self.bsgs.contains(perm)

    def label(self, a: int) -> str:
        return cycle_string(self.perms[int(a)].tolist())


def build_bsgs(generators: Iterable[Sequence[int]], degree: int | None = None, **kwargs) -> PermutationGroup:
    """Run Schreier-Sims on ``generators`` and return the enumerated group."""
    return PermutationGroup(generators, degree, **kwargs)


def closure_elements(generators: Iterable[Sequence[int]], degree: int | None = None) -> set[Perm]:
    """Brute-force closure of a generator set; independent of the BSGS code."""
    gens, degree = _normalize_generators(generators, degree)
    seen = {identity_perm(degree)}
    frontier = list(seen)
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = perm_mul(p, g)
                if q not in seen:
                    seen.add(q)
                    new.append(q)
        frontier = new
    return seen


def symmetric(n: int, **kwargs) -> PermutationGroup:
    gens = []
    if n >= 2:
        gens.append(from_cycles([(0, 1)], n))
    if n >= 3:
        gens.append(from_cycles([tuple(range(n))], n))
    return PermutationGroup(gens, max(n, 1), name=f"symmetric:{n}", **kwargs)


def alternating(n: int, **kwargs) -> PermutationGroup:
    gens = [from_cycles([(0, 1, k)], n) for k in range(2, n)]
    return PermutationGroup(gens, max(n, 1), name=f"alternating:{n}", **kwargs)


def dihedral(n: int, **kwargs) -> PermutationGroup:
    """Symmetries of the regular n-gon on points 0..n-1 (order 2n, n >= 3)."""
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((-i) % n for i in range(n))
    return PermutationGroup([rotation, reflection], n, name=f"dihedral:{n}", **kwargs)


def affine_frobenius(p: int, d: int, **kwargs) -> PermutationGroup:
    """The group x -> a x + b on Z_p with a ranging over the order-d subgroup of units."""
    root = _primitive_root(p)
    r = pow(root, (p - 1) // d, p)
    translation = tuple((i + 1) % p for i in range(p))
    scaling = tuple((r * i) % p for i in range(p))
    return PermutationGroup([translation, scaling], p, name=f"frobenius:{p}:{d}", **kwargs)


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = {q for q in range(2, p) if (p - 1) % q == 0 and all(q % r for r in range(2, int(q**0.5) + 1))}
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise ValueError(f"no primitive root modulo {p}")
