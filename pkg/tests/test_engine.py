from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

import oracles
from bfcheck.engine import (
    CayleyTableGroup,
    FiniteField,
    alternating,
    build_bsgs,
    check_associativity,
    closure_elements,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    from_cycles,
    gl2,
    is_latin_square,
    load_cayley_file,
    load_perm_file,
    resolve_cap,
    schreier_sims,
    sl2,
    symmetric,
    to_cayley,
    write_cayley_file,
    write_perm_file,
)
from bfcheck.engine.base import CAP_ENV, DEFAULT_CAP
from bfcheck.engine.cayley import dihedral_table
from bfcheck.engine.field import default_modulus, is_irreducible, monic_polys, prime_power
from bfcheck.engine.matrix import sl2_order
from bfcheck.engine.permutation import PermutationGroup, affine_frobenius, cycle_string, perm_inv, perm_mul
from bfcheck.errors import CapacityError, InvalidElementError, MalformedGeneratorError, MalformedInputError


# -- element operations -------------------------------------------------------------


def test_cyclic_product_wraps_to_identity():
    Z4 = cyclic(4)
    assert Z4.multiply(1, 3) == 0
    assert Z4.inverse(1) == 3
    assert Z4.element_order(1) == 4
    assert Z4.element_order(2) == 2


def test_symmetric3_transposition_and_three_cycle():
    S3 = symmetric(3)
    s = S3.index_of((1, 0, 2))
    assert S3.multiply(s, s) == 0
    assert S3.element_order(s) == 2
    c = S3.index_of((1, 2, 0))
    assert S3.perm(S3.inverse(c)) == (2, 0, 1)
    assert S3.element_order(c) == 3


def test_sl2_4_unipotent_has_order_two():
    G = sl2(4)
    u = G.index_of(((1, 1), (0, 1)))
    assert G.element_order(u) == 2
    assert G.matrix(G.multiply(u, u)) == ((1, 0), (0, 1))


def test_identity_is_zero_everywhere():
    for G in (cyclic(5), symmetric(4), sl2(3), gl2(3), dicyclic(3), dihedral(5)):
        assert G.label(0) is not None
        assert np.array_equal(G.mul_many(0, G.elements), G.elements)
        assert np.array_equal(G.mul_many(G.elements, 0), G.elements)
        assert G.inverse(0) == 0


def test_power_matches_repeated_multiplication():
    G = symmetric(4)
    for a in (3, 7, 17):
        acc = 0
        for k in range(6):
            assert G.power(a, k) == acc
            acc = G.multiply(acc, a)
        assert G.power(a, -1) == G.inverse(a)


@pytest.mark.parametrize("bad", [-1, 6, 2.0, "1", True, None])
def test_invalid_element_ids_raise(bad):
    S3 = symmetric(3)
    with pytest.raises(InvalidElementError):
        S3.multiply(bad, 0)


def test_non_member_permutation_raises():
    A3 = alternating(3)
    with pytest.raises(InvalidElementError):
        A3.index_of((1, 0, 2))


# -- Schreier-Sims -------------------------------------------------------------------


def test_bsgs_empty_generators_is_trivial():
    G = build_bsgs([], degree=3)
    assert G.order == 1
    assert schreier_sims([], 4).order == 1


def test_bsgs_symmetric3():
    gens = [from_cycles([(0, 1)], 3), from_cycles([(0, 1, 2)], 3)]
    G = build_bsgs(gens)
    assert G.order == 6
    assert {G.perm(a) for a in range(6)} == closure_elements(gens)


def test_bsgs_dihedral12():
    gens = [tuple((i + 1) % 6 for i in range(6)), tuple((-i) % 6 for i in range(6))]
    G = build_bsgs(gens)
    assert G.order == 12
    assert {G.perm(a) for a in range(12)} == closure_elements(gens)


@pytest.mark.parametrize("gens", [[(0, 0, 1)], [(0, 1, 3)], [(0, 1), (0, 1, 2)], [[0, "x", 2]]])
def test_malformed_generators_raise(gens):
    with pytest.raises(MalformedGeneratorError):
        build_bsgs(gens)


def test_enumeration_is_sorted_and_deterministic():
    a = symmetric(5)
    b = symmetric(5)
    assert np.array_equal(a.perms, b.perms)
    assert a.generators == b.generators
    keys = [tuple(p) for p in a.perms.tolist()]
    assert keys == sorted(keys)
    assert keys[0] == tuple(range(5))
    assert list(a.enumerate()) == list(range(a.order))


@pytest.mark.parametrize("n,order", [(1, 1), (2, 2), (3, 6), (4, 24), (5, 120), (6, 720), (7, 5040)])
def test_symmetric_orders(n, order):
    assert symmetric(n).order == order


@pytest.mark.parametrize("n,order", [(3, 3), (4, 12), (5, 60), (6, 360)])
def test_alternating_orders(n, order):
    assert alternating(n).order == order


def test_frobenius21_order_and_nonabelian():
    G = affine_frobenius(7, 3)
    assert G.order == 21
    assert not G.is_abelian()


def test_cycle_string_is_one_based():
    assert cycle_string((0, 2, 1)) == "(2 3)"
    assert cycle_string((0, 1, 2)) == "()"


perm5 = hs.permutations(list(range(5))).map(tuple)


@settings(max_examples=60, deadline=None)
@given(hs.lists(perm5, min_size=1, max_size=3))
def test_bsgs_order_matches_brute_closure(gens):
    G = build_bsgs(gens, degree=5)
    closure = closure_elements(gens, 5)
    assert G.order == len(closure)
    for p in itertools.islice(closure, 20):
        assert G.contains(p)
        assert G.perm(G.index_of(p)) == p


@settings(max_examples=60, deadline=None)
@given(perm5, perm5)
def test_multiplication_is_image_composition(p, q):
    G = symmetric(5)
    a, b = G.index_of(p), G.index_of(q)
    assert G.perm(G.multiply(a, b)) == tuple(q[i] for i in p)
    assert G.perm(G.inverse(a)) == perm_inv(p)
    assert perm_mul(p, perm_inv(p)) == tuple(range(5))


# -- Cayley tables --------------------------------------------------------------------


@pytest.mark.parametrize("factory", [lambda: symmetric(4), lambda: sl2(3), lambda: dicyclic(3), lambda: gl2(2)])
def test_tables_are_latin_and_associative(factory):
    G = factory()
    assert is_latin_square(G.table)
    assert check_associativity(G, exhaustive_limit=64)


def test_dicyclic2_is_the_quaternion_group():
    Q = dicyclic(2)
    orders = sorted(Q.element_orders().tolist())
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
    oracle = oracles.quaternion_group()
    assert sorted(oracle.element_order(g) for g in oracle.elements) == orders


def test_dihedral_table_matches_permutation_dihedral():
    a = oracles.BruteGroup(range(8), lambda x, y: int(dihedral_table(4).table[x, y]))
    b = oracles.perm_group([tuple((i + 1) % 4 for i in range(4)), tuple((-i) % 4 for i in range(4))])
    assert a.invariants() == b.invariants()


def test_direct_product_orders_and_center():
    G = direct_product(symmetric(3), cyclic(4))
    assert G.order == 24
    commuting = sum(1 for z in range(24) if G.commutes_with(z).all())
    assert commuting == 4


def test_to_cayley_preserves_products():
    G = sl2(3)
    C = to_cayley(G)
    rng = np.random.default_rng(3)
    a = rng.integers(0, G.order, 200)
    b = rng.integers(0, G.order, 200)
    assert np.array_equal(C.mul_many(a, b), G.mul_many(a, b))


def test_non_latin_table_rejected():
    with pytest.raises(MalformedInputError):
        CayleyTableGroup([[0, 1], [1, 1]])


def test_missing_identity_rejected():
    with pytest.raises(MalformedInputError):
        CayleyTableGroup([[1, 0], [0, 1]])


def test_latin_but_not_associative_rejected():
    # a loop of order 5 with identity 0 that is not a group
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    assert is_latin_square(np.array(table))
    CayleyTableGroup(table)  # the cheap level accepts it
    with pytest.raises(MalformedInputError):
        CayleyTableGroup(table, validate="full")


# -- finite fields ---------------------------------------------------------------------


def test_default_moduli():
    assert default_modulus(2, 2) == (1, 1, 1)
    assert default_modulus(2, 3) == (1, 1, 0, 1)
    assert default_modulus(2, 4) == (1, 1, 0, 0, 1)
    assert default_modulus(3, 2) == (1, 0, 1)


def test_irreducibility():
    assert is_irreducible((1, 1, 1), 2)
    assert not is_irreducible((1, 0, 1), 2)  # (x+1)^2
    assert not is_irreducible((0, 1, 1), 2)
    assert is_irreducible((1, 0, 1), 3)
    # x^4 + x^2 + 1 = (x^2 + x + 1)^2 has no roots but is reducible
    assert not is_irreducible((1, 0, 1, 0, 1), 2)


def test_irreducible_counts_match_necklace_formula():
    # number of monic irreducibles of degree m over GF(p): (1/m) sum_{d|m} mu(d) p^(m/d)
    expected = {(2, 2): 1, (2, 3): 2, (2, 4): 3, (3, 2): 3, (3, 3): 8, (5, 2): 10}
    for (p, m), count in expected.items():
        assert sum(1 for f in monic_polys(p, m) if is_irreducible(f, p)) == count


def test_prime_power_decomposition():
    assert prime_power(16) == (2, 4)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    assert prime_power(12) is None
    assert prime_power(1) is None


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
def test_field_axioms(q):
    F = FiniteField.of_order(q)
    els = range(q)
    for a, b in itertools.product(els, els):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
    for a, b, c in itertools.product(els, els, els):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    for a in range(1, q):
        assert F.mul(a, F.inverse(a)) == 1
    g = F.primitive_element()
    powers = {1}
    x = g
    while x != 1:
        powers.add(x)
        x = F.mul(x, g)
    assert len(powers) == q - 1


@pytest.mark.parametrize("m,modulus", [(2, 0b111), (3, 0b1011), (4, 0b10011)])
def test_char2_multiplication_matches_carryless_oracle(m, modulus):
    F = FiniteField(2, m)
    q = 2**m
    for a, b in itertools.product(range(q), range(q)):
        assert F.mul(a, b) == oracles.gf2_mul(a, b, m, modulus)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        FiniteField.of_order(5).inverse(0)


def test_non_prime_power_field_rejected():
    with pytest.raises(ValueError):
        FiniteField.of_order(6)


# -- matrix groups ----------------------------------------------------------------------


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_sl2_orders(q):
    G = sl2(q)
    assert G.order == q**3 - q == sl2_order(q)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_gl2_orders(q):
    assert gl2(q).order == (q * q - 1) * (q * q - q)


def test_sl2_products_match_explicit_matrices():
    G = sl2(16)
    m, modulus = 4, 0b10011
    rng = np.random.default_rng(11)
    for a, b in rng.integers(0, G.order, (300, 2)):
        (a1, b1), (c1, d1) = G.matrix(int(a))
        (a2, b2), (c2, d2) = G.matrix(int(b))

        def f(x, y):
            return oracles.gf2_mul(x, y, m, modulus)

        want = ((f(a1, a2) ^ f(b1, c2), f(a1, b2) ^ f(b1, d2)), (f(c1, a2) ^ f(d1, c2), f(c1, b2) ^ f(d1, d2)))
        assert G.matrix(G.multiply(int(a), int(b))) == want


def test_sl2_rejects_non_member_matrix():
    with pytest.raises(InvalidElementError):
        sl2(3).index_of(((2, 0), (0, 1)))


def test_on_the_fly_multiplication_matches_table():
    big = sl2(7, table_cap=0)
    small = sl2(7)
    assert big.table is None and small.table is not None
    rng = np.random.default_rng(0)
    a = rng.integers(0, small.order, 500)
    b = rng.integers(0, small.order, 500)
    assert np.array_equal(big.mul_many(a, b), small.mul_many(a, b))
    assert np.array_equal(big.inv, small.inv)


def test_permutation_on_the_fly_matches_table():
    big = PermutationGroup(symmetric(5).perms[1:3].tolist() + [from_cycles([(0, 1, 2, 3, 4)], 5)], 5, table_cap=0)
    small = PermutationGroup(big.bsgs.strong_generators, 5)
    assert big.order == small.order == 120
    a = np.arange(120)
    assert np.array_equal(big.mul_many(a[:, None], a[None, :]), small.table)


# -- capacity ----------------------------------------------------------------------------


def test_capacity_is_enforced_before_enumeration():
    with pytest.raises(CapacityError):
        symmetric(8, cap=1000)
    with pytest.raises(CapacityError):
        sl2(16, cap=4000)


def test_cap_resolution(monkeypatch):
    monkeypatch.delenv(CAP_ENV, raising=False)
    assert resolve_cap() == DEFAULT_CAP == 200_000
    monkeypatch.setenv(CAP_ENV, "500")
    assert resolve_cap() == 500
    assert resolve_cap(42) == 42
    monkeypatch.setenv(CAP_ENV, "lots")
    with pytest.raises(ValueError):
        resolve_cap()
    with pytest.raises(ValueError):
        resolve_cap(0)


# -- file formats ------------------------------------------------------------------------


def test_cayley_file_round_trip(tmp_path):
    G = dicyclic(2)
    path = tmp_path / "q8.cayley"
    write_cayley_file(path, G.table)
    H = load_cayley_file(path)
    assert np.array_equal(H.table, G.table)


def test_cayley_file_comments_and_blank_lines(tmp_path):
    path = tmp_path / "z2.cayley"
    path.write_text("# order two\n\n2\n0 1\n\n1 0\n")
    assert load_cayley_file(path).order == 2


@pytest.mark.parametrize(
    "text",
    [
        "",
        "3\n0 1 2\n1 2 0\n",  # missing row
        "2\n0 1\n1 x\n",  # not integers
        "2\n0 1\n1 2\n",  # out of range
        "2 2\n0 1\n1 0\n",  # bad header
        "3\n0 1 2\n1 0 2\n2 2 0\n",  # not Latin
    ],
)
def test_corrupted_cayley_files_raise(tmp_path, text):
    path = tmp_path / "bad.cayley"
    path.write_text(text)
    with pytest.raises(MalformedInputError):
        load_cayley_file(path)


def test_missing_file_raises(tmp_path):
    with pytest.raises(MalformedInputError):
        load_cayley_file(tmp_path / "nope.cayley")


def test_perm_file_round_trip(tmp_path):
    path = tmp_path / "f21.perm"
    gens = [(1, 2, 3, 4, 5, 6, 0), (0, 2, 4, 6, 1, 3, 5)]
    write_perm_file(path, 7, gens)
    G = load_perm_file(path)
    assert G.order == 21
    assert {G.perm(a) for a in range(21)} == closure_elements(gens)


@pytest.mark.parametrize("text", ["3\n0 1\n", "3\n0 0 1\n", "3\n0 1 5\n", "x\n0 1 2\n"])
def test_corrupted_perm_files_raise(tmp_path, text):
    path = tmp_path / "bad.perm"
    path.write_text(text)
    with pytest.raises(MalformedInputError):
        load_perm_file(path)
