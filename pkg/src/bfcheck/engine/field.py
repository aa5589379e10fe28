"""Finite fields GF(p^m) with full addition and multiplication tables.

An element is the integer ``sum(c_i * p**i)`` of its coefficient vector
``(c_0, ..., c_{m-1})`` over GF(p), i.e. the polynomial sum(c_i x^i) reduced
modulo the field's modulus. 0 and 1 are the field's zero and one.

Unless a modulus is passed explicitly the field uses the least monic
irreducible polynomial of degree m, ordered by the same integer encoding.
That choice reproduces the conventional moduli::

    GF(4)   x^2 + x + 1
    GF(8)   x^3 + x + 1
    GF(9)   x^2 + 1
    GF(16)  x^4 + x + 1
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from ..errors import SpecError

Poly = tuple[int, ...]  # coefficients, lowest degree first


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, m) with q = p^m, or None if q is not a prime power."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    return (p, m) if r == 1 else None


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    """Remainder of a divided by b over GF(p); b must be non-zero."""
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        coef = a[-1] * lead_inv % p
        for i, c in enumerate(b):
            a[i + shift] = (a[i + shift] - coef * c) % p
        _trim(a)
    return tuple(a)


def monic_polys(p: int, degree: int):
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(low) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1 .. deg/2."""
    poly = tuple(_trim([x % p for x in poly]))
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in monic_polys(p, d):
            if not poly_mod(poly, f, p):
                return False
    return True


def poly_code(poly: Sequence[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(poly))


def default_modulus(p: int, m: int) -> Poly:
    """The least monic irreducible polynomial of degree m over GF(p)."""
    candidates = sorted(monic_polys(p, m), key=lambda f: poly_code(f, p))
    return next(f for f in candidates if is_irreducible(f, p))


class FiniteField:
    """GF(p^m); arithmetic by table lookup on integer-encoded elements."""

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise SpecError(f"field characteristic must be prime, got {p}")
        if m < 1:
            raise SpecError(f"field degree must be positive, got {m}")
        if modulus is None:
            modulus = default_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise SpecError(f"modulus must be monic of degree {m}")
        if not is_irreducible(modulus, p):
            raise SpecError(f"modulus {modulus} is reducible over GF({p})")
        self.p, self.m, self.modulus = p, m, modulus
        self.q = q = p**m
        vecs = [self.to_vector(a) for a in range(q)]
        codes = np.array([[poly_code([(x + y) % p for x, y in zip(u, v)], p) for v in vecs] for u in vecs])
        self.add_table = codes
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * m - 1)
                for i, x in enumerate(vecs[a]):
                    if x:
                        for j, y in enumerate(vecs[b]):
                            prod[i + j] += x * y
                mul[a, b] = mul[b, a] = poly_code(poly_mod(prod, modulus, p), p)
        self.mul_table = mul
        self.neg_table = np.argmin(self.add_table != 0, axis=1)
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = np.argmax(mul[1:] == 1, axis=1)
        self.inv_table = inv
        for t in (self.add_table, self.mul_table, self.neg_table, self.inv_table):
            t.flags.writeable = False

    @classmethod
    def of_order(cls, q: int) -> "FiniteField":
        pm = prime_power(q)
        if pm is None:
            raise SpecError(f"{q} is not a prime power")
        return cls(*pm)

    def to_vector(self, a: int) -> Poly:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inverse(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return int(self.inv_table[a])

    def primitive_element(self) -> int:
        """Least element generating the multiplicative group."""
        for g in range(1, self.q):
            seen, x = set(), 1
            for _ in range(self.q - 1):
                x = self.mul(x, g)
                seen.add(x)
            if len(seen) == self.q - 1:
                return g
        raise AssertionError("multiplicative group is not cyclic")

    def __repr__(self) -> str:
        return f"GF({self.q})"
