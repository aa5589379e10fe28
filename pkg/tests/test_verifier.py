from __future__ import annotations

from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

import oracles
from bfcheck import structure as st
from bfcheck import verifier as vf
from bfcheck.engine import CayleyTableGroup, alternating, cyclic, dicyclic, dihedral, direct_product, sl2, symmetric
from bfcheck.engine.permutation import affine_frobenius, build_bsgs
from bfcheck.errors import NotApplicableError, PreconditionError

# Values below were first computed by the brute oracles in ``oracles.py``
# (checked again in the tests that follow) and then frozen.
S3_NUMBERS = {
    "order": 6, "center_order": 1, "central_involutions": 0, "class_count": 3,
    "centralizer_t": 2, "class_size_t": 3, "W_count": 12,
    "eq2_lower": 9, "eq1_upper": 15, "claim_rhs": 10,
}
Q8_NUMBERS = {
    "order": 8, "center_order": 2, "central_involutions": 1, "class_count": 5,
    "centralizer_t": 4, "class_size_t": 2, "W_count": 12,
    "eq2_lower": 4, "eq1_upper": 28, "claim_rhs": 56,
}


def test_frozen_s3_values_match_oracle():
    O = oracles.symmetric(3)
    assert O.claim_numbers((0, 2, 1)) == S3_NUMBERS


def test_frozen_q8_values_match_oracle():
    O = oracles.quaternion_group()
    assert O.claim_numbers((0, 1, 0, 0)) == Q8_NUMBERS


def test_claim_report_s3():
    G = symmetric(3)
    rep = vf.verify_claim(G, st.find_t(G))
    assert rep.numbers() == S3_NUMBERS
    assert rep.t_label == "(2 3)"
    assert rep.ok
    claim = next(c for c in rep.checks if c.name == "claim")
    assert (claim.lhs, claim.op, claim.rhs) == (6, "<=", 10)


def test_claim_report_q8():
    G = dicyclic(2)
    rep = vf.verify_claim(G, st.find_t(G))
    assert rep.numbers() == Q8_NUMBERS
    assert rep.ok


def test_count_W_s3_and_fibers_match_oracle():
    G = symmetric(3)
    t = st.find_t(G)
    wc = vf.count_W_brute(G, t)
    assert wc.total == 12
    O = oracles.symmetric(3)
    fibers = Counter(y for _, y in O.W(G.perm(t)))
    for y in range(G.order):
        assert wc.per_y[y] == fibers.get(G.perm(y), 0)


def test_eq1_and_eq2_on_s3():
    G = symmetric(3)
    t = st.find_t(G)
    assert vf.verify_eq2(G, t, 12)
    assert vf.verify_eq1(G, t, 12)
    checks = vf._eq1_checks(vf._quantities(G, t), 12)
    fiber = next(c for c in checks if c.name == "W upper, fiberwise form")
    # 1 * |t^G| + (3 transpositions * 2 + 2 three-cycles * 3) = 3 + 12
    assert fiber.rhs == 15
    assert next(c for c in checks if c.name == "W upper bound").rhs == 15


def test_eq_checks_reject_wrong_counts():
    G = symmetric(3)
    t = st.find_t(G)
    assert not vf.verify_eq2(G, t, 8)
    assert not vf.verify_eq1(G, t, 16)


def test_inversion_identity_s3_d4_q8():
    for G in (symmetric(3), dihedral(4), dicyclic(2)):
        assert vf.verify_inversion_identity(G, st.find_t(G))


def test_preconditions():
    S3 = symmetric(3)
    with pytest.raises(PreconditionError):
        vf.count_W_brute(S3, 0)  # central
    c3 = S3.index_of((1, 2, 0))
    with pytest.raises(PreconditionError):
        vf.verify_claim(S3, c3)  # square is not central
    with pytest.raises(PreconditionError):
        vf.verify_inversion_identity(S3, c3)
    with pytest.raises(NotApplicableError):
        vf.max_noncentral_centralizer(cyclic(4))


def test_wy_structure_holds():
    for G in (symmetric(4), dicyclic(3), sl2(5), dihedral(6)):
        res = vf.verify_Wy_structure(G, st.find_t(G))
        assert res.ok, res.failures


def test_witness_and_final_bounds_s3():
    G = symmetric(3)
    x, cx = vf.max_noncentral_centralizer(G)
    assert cx == 3 and G.element_order(x) == 3
    assert vf.verify_counting_bound(G, (x, cx))
    assert vf.verify_theorem_B(G, st.find_t(G), (x, cx))
    assert vf.verify_theorem_A(G, (x, cx))
    w = vf.witness_report(G, st.find_t(G))
    by_name = {c.name: c for c in w.checks}
    assert (by_name["class equation bound"].lhs, by_name["class equation bound"].rhs) == (6, 5)
    assert (by_name["non-central class count"].lhs, by_name["non-central class count"].rhs) == (2, 2)
    assert (by_name["half-unit bound (doubled)"].lhs, by_name["half-unit bound (doubled)"].rhs) == (12, 20)
    assert (by_name["cube bound"].lhs, by_name["cube bound"].rhs) == (6, 27)


def test_witness_q8_class_equation_is_tight():
    G = dicyclic(2)
    w = vf.witness_report(G, st.find_t(G))
    by_name = {c.name: c for c in w.checks}
    assert (by_name["class equation bound"].lhs, by_name["class equation bound"].rhs) == (8, 8)
    assert (by_name["non-central class count"].lhs, by_name["non-central class count"].rhs) == (3, 3)
    assert (by_name["half-unit bound (doubled)"].lhs, by_name["half-unit bound (doubled)"].rhs) == (16, 112)
    assert w.ok


def test_sl2_8_theorem_b():
    G = sl2(8)
    w = vf.witness_report(G, st.find_t(G))
    c = next(c for c in w.checks if c.name == "half-unit bound (doubled)")
    assert (c.lhs, c.rhs) == (1008, 8 * 8 * (2 * 9 - 1))
    assert w.max_centralizer == 9


def test_wrong_witness_fails_theorem_a():
    assert not vf.verify_theorem_A(sl2(8), (0, 7))


# -- backends agree ----------------------------------------------------------------------


def _oracle_cayley(O):
    index = {g: i for i, g in enumerate([O.identity] + [g for g in O.elements if g != O.identity])}
    elems = sorted(index, key=index.get)
    table = [[index[O.mul(a, b)] for b in elems] for a in elems]
    return CayleyTableGroup(table, validate="full")


def test_s3_three_backends_agree():
    perm = symmetric(3)
    table = _oracle_cayley(oracles.symmetric(3))
    matrix = sl2(2)
    reports = [vf.verify_claim(G, st.find_t(G)).numbers() for G in (perm, table, matrix)]
    assert reports[0] == reports[1] == reports[2] == S3_NUMBERS


def test_a5_and_sl2_4_invariants_agree():
    def invariants(G):
        cd = st.conjugacy_classes(G)
        return (G.order, cd.class_count, st.center(G).order, tuple(sorted(st.centralizer_orders(G).tolist())))

    a = invariants(alternating(5))
    b = invariants(sl2(4))
    assert a == b
    assert a == oracles.alternating(5).invariants()


# -- pipeline ---------------------------------------------------------------------------------


def test_pipeline_branches():
    assert vf.run_pipeline(cyclic(6)).branch == vf.BRANCH_ABELIAN
    odd = vf.run_pipeline(affine_frobenius(7, 3))
    assert odd.branch == vf.BRANCH_ODD and odd.solvable and odd.claim is None and odd.ok
    assert odd.witness.max_centralizer == 7
    even = vf.run_pipeline(symmetric(3))
    assert even.branch == vf.BRANCH_EVEN and even.claim.W_count == 12 and even.ok


def test_pipeline_on_nonsolvable_group():
    rep = vf.run_pipeline(sl2(8))
    assert not rep.solvable
    assert rep.derived_series == (504,)
    assert rep.witness.max_centralizer == 9
    assert not any(c.name.startswith("solvable bound") for c in rep.extra_checks)
    assert rep.status == "pass"


def test_pipeline_to_dict_is_plain_data():
    import json

    d = vf.run_pipeline(dicyclic(2)).to_dict()
    assert json.loads(json.dumps(d)) == d
    assert d["status"] == "pass"


def test_all_t_mode():
    rep = vf.run_pipeline(symmetric(4), all_t=True)
    # valid t in S_4: 6 transpositions and 3 double transpositions
    assert rep.all_t.checked == 9 and rep.all_t.ok
    rep = vf.run_pipeline(dicyclic(2), all_t=True)
    assert rep.all_t.checked == 6


@settings(max_examples=25, deadline=None)
@given(hs.lists(hs.permutations(list(range(5))).map(tuple), min_size=1, max_size=2))
def test_pipeline_passes_on_random_permutation_groups(gens):
    G = build_bsgs(gens, degree=5)
    rep = vf.run_pipeline(G)
    assert rep.ok
    if rep.claim is not None:
        O = oracles.perm_group([G.perm(g) for g in G.generators] or [tuple(range(5))])
        assert rep.claim.numbers() == O.claim_numbers(G.perm(rep.claim.t))


@pytest.mark.parametrize("factory", [
    lambda: dicyclic(5),
    lambda: direct_product(symmetric(3), cyclic(2)),
    lambda: direct_product(dicyclic(2), cyclic(3)),
    lambda: sl2(3),
])
def test_claim_matches_oracle_on_groups_with_center(factory):
    G = factory()
    t = st.find_t(G)
    table = G.table
    O = oracles.BruteGroup(range(G.order), lambda a, b: int(table[a, b]))
    assert vf.verify_claim(G, t).numbers() == O.claim_numbers(t)
    assert np.all(O.conjugacy_class(t) == set(st.conjugacy_class_of(G, t).tolist()))
