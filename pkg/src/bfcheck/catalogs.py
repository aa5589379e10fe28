"""Named group families, manifests, sweeps and the SL(2, 2^n) sharpness scan.

Spec syntax is ``family:param[:param]``; whitespace works as a separator
too, so manifest lines such as ``sl2 8`` or ``dihedral 24`` parse the same
way as ``sl2:8``. Products join factor specs with ``*``, e.g.
``product:cyclic:3*symmetric:3``. File families take the rest of the line as
a path, resolved against the manifest's directory when relative.

Families::

    cyclic n          Z_n                                 (Cayley)
    dihedral n        symmetries of the n-gon, order 2n   (permutation; Cayley for n < 3)
    dicyclic m        order 4m, Q_8 for m = 2             (Cayley)
    symmetric n       S_n                                 (permutation)
    alternating n     A_n                                 (permutation)
    frobenius p d     x -> ax + b on Z_p, a^d = 1, d | p-1 (permutation)
    sl2 q, gl2 q      2x2 matrices over GF(q)             (matrix)
    product A*B*...   direct product                      (Cayley)
    cayley PATH       Cayley table file                   (Cayley)
    perm PATH         permutation generator file          (permutation)
"""

from __future__ import annotations

import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import structure as st
from .engine import cayley, matrix, permutation
from .engine.base import Group, check_capacity
from .engine.field import is_prime, prime_power
from .engine.formats import load_cayley_file, load_perm_file
from .errors import BFCheckError, CapacityError, MalformedInputError, SpecError
from .verifier import run_pipeline

ALIASES = {
    "cyclic": "cyclic", "cyc": "cyclic", "c": "cyclic",
    "dihedral": "dihedral", "dih": "dihedral", "d": "dihedral",
    "dicyclic": "dicyclic", "dic": "dicyclic", "q": "dicyclic",
    "symmetric": "symmetric", "sym": "symmetric", "s": "symmetric",
    "alternating": "alternating", "alt": "alternating", "a": "alternating",
    "frobenius": "frobenius", "frob": "frobenius",
    "sl2": "sl2", "gl2": "gl2",
    "product": "product", "prod": "product",
    "cayley": "cayley-file", "cayley-file": "cayley-file",
    "perm": "perm-file", "perm-file": "perm-file",
}
ARITY = {
    "cyclic": 1, "dihedral": 1, "dicyclic": 1, "symmetric": 1, "alternating": 1,
    "frobenius": 2, "sl2": 1, "gl2": 1,
}


@dataclass(frozen=True)
class GroupSpec:
    family: str
    params: tuple[int, ...] = ()
    path: str | None = None
    factors: tuple["GroupSpec", ...] = ()

    def __str__(self) -> str:
        if self.family == "product":
            return "product:" + "*".join(str(f) for f in self.factors)
        if self.path is not None:
            return f"{self.family.removesuffix('-file')}:{self.path}"
        return ":".join([self.family, *map(str, self.params)])


def parse_spec(text: str) -> GroupSpec:
    """Parse ``family:param[:param]`` (or whitespace-separated) into a GroupSpec."""
    text = text.strip()
    m = re.match(r"([A-Za-z0-9_-]+)\s*(?::|\s)\s*(.*)$", text, re.S) or re.match(r"([A-Za-z0-9_-]+)()$", text)
    if not m:
        raise SpecError(f"cannot parse group spec {text!r}")
    name, rest = m.group(1).lower(), m.group(2).strip()
    family = ALIASES.get(name)
    if family is None:
        raise SpecError(f"unknown group family {name!r} in {text!r}")
    if family == "product":
        parts = [p for p in rest.split("*")]
        if len(parts) < 2 or not all(p.strip() for p in parts):
            raise SpecError(f"product needs at least two factors joined by '*': {text!r}")
        return GroupSpec("product", factors=tuple(parse_spec(p) for p in parts))
    if family in ("cayley-file", "perm-file"):
        if not rest:
            raise SpecError(f"{family} needs a file path: {text!r}")
        return GroupSpec(family, path=rest)
    tokens = [tok for tok in re.split(r"[:\s]+", rest) if tok]
    if len(tokens) != ARITY[family]:
        raise SpecError(f"{family} takes {ARITY[family]} integer parameter(s), got {tokens} in {text!r}")
    try:
        params = tuple(int(tok) for tok in tokens)
    except ValueError as exc:
        raise SpecError(f"non-integer parameter in {text!r}") from exc
    spec = GroupSpec(family, params)
    validate_spec(spec)
    return spec


def validate_spec(spec: GroupSpec) -> None:
    f, p = spec.family, spec.params
    if f in ("cyclic", "dihedral", "dicyclic", "symmetric", "alternating") and p[0] < 1:
        raise SpecError(f"{f} parameter must be at least 1, got {p[0]}")
    if f in ("sl2", "gl2") and prime_power(p[0]) is None:
        raise SpecError(f"{f} needs a prime power q >= 2, got {p[0]}")
    if f == "frobenius":
        prime, d = p
        if not is_prime(prime) or d < 1 or (prime - 1) % d:
            raise SpecError(f"frobenius needs a prime p and a divisor d of p-1, got {prime}, {d}")


def expected_order(spec: GroupSpec) -> int | None:
    """Order implied by the parameters, known before construction (None for files)."""
    f, p = spec.family, spec.params
    if f == "cyclic":
        return p[0]
    if f == "dihedral":
        return 2 * p[0]
    if f == "dicyclic":
        return 4 * p[0]
    if f == "symmetric":
        return math.factorial(p[0])
    if f == "alternating":
        return max(1, math.factorial(p[0]) // 2)
    if f == "frobenius":
        return p[0] * p[1]
    if f == "sl2":
        return matrix.sl2_order(p[0])
    if f == "gl2":
        return matrix.gl2_order(p[0])
    if f == "product":
        orders = [expected_order(s) for s in spec.factors]
        return None if None in orders else math.prod(orders)
    return None


def build(spec: GroupSpec | str, *, cap: int | None = None, base_dir: Path | None = None) -> Group:
    """Construct the group named by ``spec``; files resolve against ``base_dir``."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    order = expected_order(spec)
    if order is not None:
        check_capacity(order, cap, str(spec))
    f, p = spec.family, spec.params
    name = str(spec)
    if f == "cyclic":
        G = cayley.cyclic(p[0])
    elif f == "dihedral":
        G = permutation.dihedral(p[0], cap=cap) if p[0] >= 3 else cayley.dihedral_table(p[0])
    elif f == "dicyclic":
        G = cayley.dicyclic(p[0])
    elif f == "symmetric":
        G = permutation.symmetric(p[0], cap=cap)
    elif f == "alternating":
        G = permutation.alternating(p[0], cap=cap)
    elif f == "frobenius":
        G = permutation.affine_frobenius(p[0], p[1], cap=cap)
    elif f == "sl2":
        G = matrix.sl2(p[0], cap=cap)
    elif f == "gl2":
        G = matrix.gl2(p[0], cap=cap)
    elif f == "product":
        G = build(spec.factors[0], cap=cap, base_dir=base_dir)
        for factor in spec.factors[1:]:
            G = cayley.direct_product(G, build(factor, cap=cap, base_dir=base_dir), cap=cap)
    elif f in ("cayley-file", "perm-file"):
        path = Path(spec.path)
        if not path.is_absolute() and base_dir is not None:
            path = Path(base_dir) / path
        loader = load_cayley_file if f == "cayley-file" else load_perm_file
        G = loader(path, name=name, cap=cap)
    else:
        raise SpecError(f"unknown family {f!r}")
    G.name = name
    return G


# -- manifests ---------------------------------------------------------------------


@dataclass(frozen=True)
class ManifestEntry:
    line: int
    text: str


def read_manifest(path) -> list[ManifestEntry]:
    """Non-blank, non-comment lines of a manifest; parsing is deferred to the sweep."""
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise MalformedInputError(f"cannot read manifest {path}: {exc}") from exc
    out = []
    for i, raw in enumerate(lines, 1):
        text = raw.split("#", 1)[0].strip()
        if text:
            out.append(ManifestEntry(i, text))
    return out


def default_manifest_path() -> Path:
    return Path(str(resources.files("bfcheck") / "data" / "default_manifest.txt"))


# -- sweeps ------------------------------------------------------------------------

STATUS_PASS = "pass"
STATUS_VIOLATION = "violation"
STATUS_SKIPPED = "skipped"
STATUS_ERROR = "error"
STATUS_INTERNAL = "internal-error"


@dataclass
class SweepResult:
    spec: str
    status: str
    report: dict | None = None
    error: str | None = None


def verify_spec_text(text: str, *, all_t: bool = False, cap: int | None = None, base_dir: str | None = None) -> SweepResult:
    """Parse, build and verify one spec; every failure mode becomes a status."""
    try:
        spec = parse_spec(text)
        G = build(spec, cap=cap, base_dir=Path(base_dir) if base_dir else None)
        report = run_pipeline(G, all_t=all_t)
    except CapacityError as exc:
        return SweepResult(text, STATUS_SKIPPED, error=str(exc))
    except (SpecError, MalformedInputError) as exc:
        return SweepResult(text, STATUS_ERROR, error=str(exc))
    except BFCheckError as exc:
        return SweepResult(text, STATUS_INTERNAL, error=f"{type(exc).__name__}: {exc}")
    return SweepResult(str(spec), report.status, report=report.to_dict())


def _sweep_worker(args) -> SweepResult:
    text, all_t, cap, base_dir = args
    return verify_spec_text(text, all_t=all_t, cap=cap, base_dir=base_dir)


def catalog_sweep(
    specs: list[str],
    *,
    all_t: bool = False,
    jobs: int = 1,
    cap: int | None = None,
    base_dir: Path | None = None,
) -> list[SweepResult]:
    """Verify every spec; results come back in input order regardless of ``jobs``."""
    work = [(s, all_t, cap, str(base_dir) if base_dir else None) for s in specs]
    if jobs <= 1 or len(work) <= 1:
        return [_sweep_worker(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_sweep_worker, work, chunksize=1))


# -- sharpness -----------------------------------------------------------------------


@dataclass(frozen=True)
class SharpnessRecord:
    spec: str
    q: int
    order: int
    involution_centralizer: int | None  # common order of all involution centralizers
    involution_centralizers: tuple[int, ...]  # distinct values found
    max_noncentral_centralizer: int
    max_nonidentity_centralizer: int
    ratio_num: int
    ratio_den: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.ratio_num, self.ratio_den)


def sharpness_record(G: Group, q: int = 0) -> SharpnessRecord:
    """Centralizer extremes of G, with the cube ratio kept as an integer pair."""
    c_orders = st.centralizer_orders(G)
    z = st.central_mask(G)
    inv_c = sorted({int(c) for c in c_orders[st.involutions(G)]})
    max_nc = int(c_orders[~z].max()) if (~z).any() else 0
    max_ni = int(c_orders[1:].max()) if G.order > 1 else 0
    return SharpnessRecord(
        spec=G.name,
        q=q,
        order=G.order,
        involution_centralizer=inv_c[0] if len(inv_c) == 1 else None,
        involution_centralizers=tuple(inv_c),
        max_noncentral_centralizer=max_nc,
        max_nonidentity_centralizer=max_ni,
        ratio_num=max_nc**3,
        ratio_den=G.order,
    )


def sharpness_scan(n_values, *, cap: int | None = None) -> list[SharpnessRecord]:
    """Records for SL(2, 2^n), n in ``n_values``, from full centralizer scans."""
    n_values = list(n_values)
    if not n_values:
        raise SpecError("empty range for the sharpness scan")
    if min(n_values) < 1:
        raise SpecError("sharpness scan needs n >= 1")
    records = []
    for n in n_values:
        q = 2**n
        G = build(GroupSpec("sl2", (q,)), cap=cap)
        records.append(sharpness_record(G, q))
    return records


@dataclass(frozen=True)
class SharpnessCheck:
    n: int
    involution_ok: bool
    maximum_ok: bool
    decreasing_ok: bool

    @property
    def ok(self) -> bool:
        return self.involution_ok and self.maximum_ok and self.decreasing_ok


def check_sharpness(records: list[SharpnessRecord]) -> list[SharpnessCheck]:
    """Involution centralizers of order q, maximum q + 1, ratios strictly decreasing."""
    out = []
    prev = None
    for rec in records:
        n = rec.q.bit_length() - 1
        dec = prev is None or rec.ratio < prev
        out.append(
            SharpnessCheck(
                n=n,
                involution_ok=rec.involution_centralizers == (rec.q,),
                maximum_ok=rec.max_nonidentity_centralizer == rec.q + 1 and rec.max_noncentral_centralizer == rec.q + 1,
                decreasing_ok=dec and rec.ratio > 1,
            )
        )
        prev = rec.ratio
    return out
