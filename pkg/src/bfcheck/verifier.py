"""Step-by-step exact verification of the centralizer bounds on a concrete group.

Notation in names and report fields:

* ``t``: a non-central element whose square is central; ``t^G`` its class.
* ``W``: pairs (x, y) with x in t^G and x^-1 y x = y^-1; ``W_y`` the x's for a fixed y.
* ``x`` (witness): a non-central element with the largest centralizer.

Every inequality is evaluated in Python integers. The one half-integer bound
is compared after doubling both sides. A failed inequality is returned as a
report field, never raised: the bounds are theorems, so a failure means the
code computing the quantities is wrong.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from . import structure as st
from .engine.base import ID_DTYPE, Group
from .errors import InternalInconsistencyError, NotApplicableError, PreconditionError

RELATIONS = {
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
    "==": lambda a, b: a == b,
}


@dataclass(frozen=True)
class Check:
    """One evaluated relation ``lhs op rhs``; structural checks leave both sides None."""

    name: str
    ok: bool
    lhs: int | None = None
    op: str | None = None
    rhs: int | None = None
    detail: str = ""

    @classmethod
    def compare(cls, name: str, lhs: int, op: str, rhs: int) -> "Check":
        lhs, rhs = int(lhs), int(rhs)
        return cls(name, bool(RELATIONS[op](lhs, rhs)), lhs, op, rhs)

    def __bool__(self) -> bool:
        return self.ok


# -- helpers -------------------------------------------------------------------


def _require_t(G: Group, t: int) -> int:
    t = G._check(t)
    z = st.central_mask(G)
    if z[t]:
        raise PreconditionError(f"t = {G.label(t)} is central")
    if not z[st.squares(G)[t]]:
        raise PreconditionError(f"t = {G.label(t)} does not have a central square")
    return t


def _inverted_by(G: Group, xs: np.ndarray) -> np.ndarray:
    """Boolean matrix M[i, y]: x_i^-1 y x_i == y^-1."""
    ids = G.elements
    x = xs[:, None]
    return G.mul_many(G.mul_many(G.inv[x], ids), x) == G.inv[ids][None, :]


def _fixed_by_sandwich(G: Group, xs: np.ndarray) -> np.ndarray:
    """Boolean matrix M[i, y]: y x_i y == x_i, an equivalent test for y^x = y^-1."""
    ids = G.elements
    x = xs[:, None]
    return G.mul_many(G.mul_many(ids, x), ids) == x


# -- W counting -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class WCount:
    total: int
    per_y: np.ndarray  # |W_y| for every y

    def __iter__(self):
        return iter((self.total, self.per_y))


def count_W_brute(G: Group, t: int) -> WCount:
    """|W| by a loop over x in t^G, and |W_y| for every y by an independent test.

    The total counts y with x^-1 y x = y^-1; the fibers count x with
    y x y = x. The two tests are algebraically equivalent but evaluate
    different products.
    """
    t = _require_t(G, t)
    tG = st.conjugacy_class_of(G, t)
    total = 0
    per_y = np.zeros(G.order, dtype=ID_DTYPE)
    for xs in st.row_chunks(tG, G.order):
        total += int(np.count_nonzero(_inverted_by(G, xs)))
        per_y += _fixed_by_sandwich(G, xs).sum(axis=0)
    return WCount(total, per_y)


def verify_inversion_identity(G: Group, t: int) -> bool:
    """Every x in t^G inverts every commutator [x, g]."""
    z = st.central_mask(G)
    t = G._check(t)
    if not z[st.squares(G)[t]]:
        raise PreconditionError(f"t = {G.label(t)} does not have a central square")
    tG = st.conjugacy_class_of(G, t)
    for xs in st.row_chunks(tG, G.order):
        x = xs[:, None]
        comm = st.commutators_with(G, x)
        conj = G.mul_many(G.mul_many(G.inv[x], comm), x)
        if not np.array_equal(conj, G.inv[comm]):
            return False
    return True


@dataclass(frozen=True)
class StructureResult:
    ok: bool
    failures: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_Wy_structure(G: Group, t: int, max_failures: int = 10) -> StructureResult:
    """Check the shape of every fiber W_y.

    * central y: W_y is empty, or y^2 = e and W_y = t^G;
    * involutions y: W_y = t^G n C_G(y);
    * non-central y: |W_y| <= |C_G(y)|, and a non-empty W_y lies in one
      right coset C_G(y) x0 and contains all of t^G n C_G(y) x0.
    """
    t = _require_t(G, t)
    n = G.order
    ids = G.elements
    tG = st.conjugacy_class_of(G, t)
    z = st.central_mask(G)
    sq = st.squares(G)
    c_orders = st.centralizer_orders(G)
    inv_mask = (sq == 0) & (ids != 0)

    count = np.zeros(n, dtype=ID_DTYPE)
    first = np.full(n, -1, dtype=ID_DTYPE)
    bad = np.zeros(n, dtype=bool)
    for xs in st.row_chunks(tG, n):
        fib = _fixed_by_sandwich(G, xs)
        count += fib.sum(axis=0)
        hit = fib.any(axis=0) & (first < 0)
        first[hit] = xs[np.argmax(fib[:, hit], axis=0)]
        commute = G.mul_many(xs[:, None], ids) == G.mul_many(ids, xs[:, None])
        bad |= inv_mask & (fib != commute).any(axis=0)

    failures: list[str] = []

    def fail(msg: str) -> None:
        if len(failures) < max_failures:
            failures.append(msg)

    for y in np.flatnonzero(bad):
        fail(f"involution y = {G.label(y)}: W_y differs from t^G n C_G(y)")
    for y in np.flatnonzero(z & (count > 0)):
        if sq[y] != 0 or count[y] != tG.size:
            fail(f"central y = {G.label(y)}: |W_y| = {count[y]} but expected y^2 = e and W_y = t^G")
    over = ~z & (count > c_orders)
    for y in np.flatnonzero(over):
        fail(f"non-central y = {G.label(y)}: |W_y| = {count[y]} > |C_G(y)| = {c_orders[y]}")

    # coset shape: W_y = {x in t^G : x x0^-1 in C_G(y)} with x0 the first member of W_y
    ys = np.flatnonzero(~z & (count > 0))
    x0inv = G.inv[first[ys]]
    for xs in st.row_chunks(tG, ys.size):
        fib = _fixed_by_sandwich(G, xs)[:, ys]
        d = G.mul_many(xs[:, None], x0inv[None, :])
        in_coset = G.mul_many(d, ys[None, :]) == G.mul_many(ys[None, :], d)
        wrong = (fib != in_coset).any(axis=0)
        for y in ys[wrong]:
            fail(f"non-central y = {G.label(y)}: W_y is not t^G n C_G(y) x0")
    return StructureResult(not failures, tuple(failures))


# -- the two bounds on |W| and the claim -----------------------------------------


@dataclass(frozen=True)
class _Quantities:
    order: int
    center_order: int
    central_involutions: int
    class_count: int
    centralizer_t: int
    class_size_t: int
    noncentral_centralizer_sum: int

    @property
    def r(self) -> int:
        return self.class_count - self.center_order


def _quantities(G: Group, t: int) -> _Quantities:
    Z = st.center(G)
    cd = st.conjugacy_classes(G)
    c_orders = st.centralizer_orders(G)
    return _Quantities(
        order=G.order,
        center_order=Z.order,
        central_involutions=Z.involution_count,
        class_count=cd.class_count,
        centralizer_t=st.centralizer_order(G, t),
        class_size_t=int(st.conjugacy_class_of(G, t).size),
        noncentral_centralizer_sum=int(c_orders[~st.central_mask(G)].sum()),
    )


def _eq1_checks(q: _Quantities, W_count: int) -> list[Check]:
    intermediate = (1 + q.central_involutions) * q.class_size_t + q.noncentral_centralizer_sum
    upper = (1 + q.central_involutions) * (q.order // q.centralizer_t) + q.r * q.order
    return [
        Check.compare("centralizer divides order", q.order % q.centralizer_t, "==", 0),
        Check.compare("W upper, fiberwise form", W_count, "<=", intermediate),
        Check.compare("class sum of centralizers", q.noncentral_centralizer_sum, "==", q.r * q.order),
        Check.compare("W upper bound", W_count, "<=", upper),
    ]


def verify_eq1(G: Group, t: int, W_count: int) -> bool:
    """|W| <= (1 + i(Z)) |G|/|C_G(t)| + (k(G) - |Z|) |G|, plus the fiberwise form."""
    t = _require_t(G, t)
    return all(_eq1_checks(_quantities(G, t), W_count))


def _eq2_checks(G: Group, t: int, q: _Quantities, W_count: int) -> list[Check]:
    tG = st.conjugacy_class_of(G, t)
    covered = True
    min_contrib = None
    sizes_ok = True
    for xs in st.row_chunks(tG, G.order):
        inv = _inverted_by(G, xs)
        comm = st.commutators_with(G, xs[:, None])
        covered &= bool(np.take_along_axis(inv, comm, axis=1).all())
        s = np.sort(comm, axis=1)
        distinct = 1 + np.count_nonzero(np.diff(s, axis=1), axis=1)
        sizes_ok &= bool((distinct == tG.size).all())
        low = int(inv.sum(axis=1).min())
        min_contrib = low if min_contrib is None else min(min_contrib, low)
    return [
        Check("each x in t^G inverts all of [x,G]", covered),
        Check("|[x,G]| = |t^G| for x in t^G", sizes_ok),
        Check.compare("least per-x count vs |t^G|", min_contrib, ">=", tG.size),
        Check.compare("W lower bound", W_count, ">=", q.class_size_t**2),
    ]


def verify_eq2(G: Group, t: int, W_count: int) -> bool:
    """|W| >= |t^G|^2, plus: x inverts every element of [x,G] for each x in t^G."""
    t = _require_t(G, t)
    return all(_eq2_checks(G, t, _quantities(G, t), W_count))


@dataclass(frozen=True)
class ClaimReport:
    t: int
    t_label: str
    order: int
    center_order: int
    central_involutions: int
    class_count: int
    centralizer_t: int
    class_size_t: int
    W_count: int
    eq2_lower: int
    eq1_upper: int
    claim_rhs: int
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def numbers(self) -> dict:
        """The numeric fields only (no labels, ids or checks)."""
        d = asdict(self)
        for k in ("t", "t_label", "checks"):
            d.pop(k)
        return d


def verify_claim(G: Group, t: int) -> ClaimReport:
    """Evaluate every quantity of the |W| sandwich and the resulting bound on |G|."""
    t = _require_t(G, t)
    q = _quantities(G, t)
    wc = count_W_brute(G, t)
    W = wc.total
    eq2_lower = q.class_size_t**2
    eq1_upper = (1 + q.central_involutions) * (q.order // q.centralizer_t) + q.r * q.order
    ct = q.centralizer_t
    claim_rhs = (1 + q.central_involutions) * ct + q.r * ct * ct
    structure = verify_Wy_structure(G, t)
    checks = [
        Check.compare("W count consistency (sum of fibers)", int(wc.per_y.sum()), "==", W),
        Check("inversion identity", verify_inversion_identity(G, t)),
        Check("W_y structure", structure.ok, detail="; ".join(structure.failures)),
        *_eq2_checks(G, t, q, W),
        *_eq1_checks(q, W),
        Check.compare("orbit-stabilizer for t", q.class_size_t * ct, "==", q.order),
        # the sandwich rescaled by |C_G(t)|^2 / |G| must reproduce the claim exactly
        Check.compare("rescaled lower bound", eq2_lower * ct * ct, "==", q.order * q.order),
        Check.compare("rescaled upper bound", eq1_upper * ct * ct, "==", claim_rhs * q.order),
        Check.compare("claim", q.order, "<=", claim_rhs),
    ]
    return ClaimReport(
        t=t,
        t_label=G.label(t),
        order=q.order,
        center_order=q.center_order,
        central_involutions=q.central_involutions,
        class_count=q.class_count,
        centralizer_t=ct,
        class_size_t=q.class_size_t,
        W_count=W,
        eq2_lower=eq2_lower,
        eq1_upper=eq1_upper,
        claim_rhs=claim_rhs,
        checks=tuple(checks),
    )


# -- witness and the final bounds -------------------------------------------------


def max_noncentral_centralizer(G: Group) -> tuple[int, int]:
    """Least non-central x of maximal centralizer order, with that order."""
    z = st.central_mask(G)
    if z.all():
        raise NotApplicableError(f"{G.name or 'group'} is abelian")
    orders = np.where(z, -1, st.centralizer_orders(G))
    x = int(np.argmax(orders))
    return x, int(orders[x])


def _counting_checks(G: Group, x: int, cx: int) -> list[Check]:
    Z = st.center(G)
    k = st.conjugacy_classes(G).class_count
    r = k - Z.order
    return [
        Check.compare("class equation bound", G.order, ">=", Z.order + r * (G.order // cx)),
        Check.compare("non-central class count", r, "<=", cx - 1),
    ]


def verify_counting_bound(G: Group, witness) -> bool:
    """|G| >= |Z| + (k - |Z|) |G|/|C_G(x)| and k - |Z| <= |C_G(x)| - 1."""
    x, cx = witness
    return all(_counting_checks(G, x, cx))


def _theorem_b_checks(G: Group, t: int, cx: int) -> list[Check]:
    Z = st.center(G)
    ct = st.centralizer_order(G, t)
    n, zc, i = G.order, Z.order, Z.involution_count
    return [
        Check.compare("1 + i(Z) vs |Z|", 1 + i, "<=", zc),
        Check.compare("2|Z| vs |C_G(t)|", 2 * zc, "<=", ct),
        Check.compare("2|C_G(t)| vs |G|", 2 * ct, "<=", n),
        Check.compare("bound with class count replaced", n, "<=", (1 + i) * ct + (cx - 1) * ct * ct),
        Check.compare("bound with |Z| absorbed (times |C_G(t)|)", n * ct, "<=", ct * ct * ((cx - 1) * ct + zc)),
        Check.compare("half-unit bound (doubled)", 2 * n, "<=", ct * ct * (2 * cx - 1)),
    ]


def verify_theorem_B(G: Group, t: int, witness) -> bool:
    """2|G| <= |C_G(t)|^2 (2|C_G(x)| - 1) and the steps leading to it."""
    t = _require_t(G, t)
    return all(_theorem_b_checks(G, t, witness[1]))


def verify_theorem_A(G: Group, witness) -> bool:
    """|G| < |C_G(x)|^3."""
    return G.order < witness[1] ** 3


@dataclass(frozen=True)
class WitnessReport:
    x: int
    x_label: str
    max_centralizer: int
    counting_bound_ok: bool
    theoremB_ok: bool | None
    theoremA_ok: bool
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def witness_report(G: Group, t: int | None) -> WitnessReport:
    x, cx = max_noncentral_centralizer(G)
    counting = _counting_checks(G, x, cx)
    checks = list(counting)
    b_ok = None
    if t is not None:
        b = _theorem_b_checks(G, t, cx)
        checks += b
        b_ok = all(b)
    a = Check.compare("cube bound", G.order, "<", cx**3)
    checks.append(a)
    return WitnessReport(x, G.label(x), cx, all(counting), b_ok, a.ok, tuple(checks))


# -- pipeline ---------------------------------------------------------------------

BRANCH_ABELIAN = "abelian"
BRANCH_ODD = "odd-G/Z-solvable"
BRANCH_EVEN = "even-G/Z-main"


@dataclass(frozen=True)
class AllTSummary:
    checked: int
    passed: int
    failed_t: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.checked == self.passed


@dataclass(frozen=True)
class PipelineReport:
    name: str
    backend: str
    order: int
    branch: str
    solvable: bool
    derived_series: tuple[int, ...]
    center_order: int
    class_count: int
    claim: ClaimReport | None = None
    witness: WitnessReport | None = None
    extra_checks: tuple[Check, ...] = ()
    all_t: AllTSummary | None = None

    @property
    def ok(self) -> bool:
        parts = [c.ok for c in self.extra_checks]
        if self.claim is not None:
            parts.append(self.claim.ok)
        if self.witness is not None:
            parts.append(self.witness.ok)
        if self.all_t is not None:
            parts.append(self.all_t.ok)
        return all(parts)

    @property
    def status(self) -> str:
        return "pass" if self.ok else "violation"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["status"] = self.status
        # lists instead of tuples, so the dict equals its own JSON round trip
        return json.loads(json.dumps(d))


def run_pipeline(G: Group, *, all_t: bool = False) -> PipelineReport:
    """Classify G and run every applicable check.

    Abelian groups stop immediately. When |G/Z| is odd the group must be
    solvable and only the cube bound and the solvable-group bound apply.
    Otherwise a t exists and the full chain is verified.
    """
    z = st.center(G)
    cd = st.conjugacy_classes(G)
    series = tuple(st.derived_series(G))
    solvable = series[-1] == 1
    base = dict(
        name=G.name,
        backend=G.backend,
        order=G.order,
        solvable=solvable,
        derived_series=series,
        center_order=z.order,
        class_count=cd.class_count,
    )
    if z.order == G.order:
        return PipelineReport(branch=BRANCH_ABELIAN, **base)

    quotient = G.order // z.order
    t = st.find_t(G)
    extra: list[Check] = []
    if quotient % 2 == 1:
        if t is not None:
            raise InternalInconsistencyError(f"{G.name}: |G/Z| = {quotient} is odd but t = {G.label(t)} exists")
        branch = BRANCH_ODD
        extra.append(Check("odd |G/Z| implies solvable", solvable))
        claim = None
    else:
        if t is None:
            raise InternalInconsistencyError(f"{G.name}: |G/Z| = {quotient} is even but no valid t was found")
        branch = BRANCH_EVEN
        claim = verify_claim(G, t)
    witness = witness_report(G, t)
    if solvable:
        extra.append(Check.compare("solvable bound |C_G(x)|^2 vs |G|", witness.max_centralizer**2, ">", G.order))

    summary = None
    if all_t and t is not None:
        summary = _all_t_summary(G, witness.max_centralizer)
    return PipelineReport(branch=branch, claim=claim, witness=witness, extra_checks=tuple(extra), all_t=summary, **base)


def _all_t_summary(G: Group, cx: int) -> AllTSummary:
    ts = np.flatnonzero(st.valid_t_mask(G))
    failed = []
    for t in ts:
        t = int(t)
        ok = verify_claim(G, t).ok and all(_theorem_b_checks(G, t, cx))
        if not ok:
            failed.append(t)
    return AllTSummary(int(ts.size), int(ts.size) - len(failed), tuple(failed))
