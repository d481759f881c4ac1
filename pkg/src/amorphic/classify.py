"""Strong regularity, Latin-square typing, amorphicity certificates, and
the whole-corpus claim verifier."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    AssociationScheme,
    DEFAULT_TOL,
    SpectralData,
    Tolerance,
    spectral_decomposition,
)
from .errors import (
    Falsification,
    LimitExceeded,
    NotFusing,
    OracleDisagreement,
    PreconditionFailed,
    WrongClassCount,
)
from .fusion import (
    ClassPartition,
    PARTITION_LIMIT,
    SURVIVING_CASES,
    classify_triple,
    contraction_check,
    enumerate_fusing_tuples,
    enumerate_partitions,
    fuses,
    overlap_case,
)
from .hypergraph import build_fusing_hypergraph, sunflower_cores

__all__ = [
    "LatinInfo",
    "SrgInfo",
    "CanonicalFormCertificate",
    "EphemeralPattern",
    "AmorphicVerdict",
    "ClaimRecord",
    "ClaimReport",
    "srg_info",
    "canonical_form_check",
    "amorphic_oracle",
    "is_amorphic",
    "ephemeral_form_check",
    "row_lemma_check",
    "verify_paper_claims",
]


@dataclass(frozen=True)
class LatinInfo:
    n: int
    t: int
    sign: str  # "positive" or "negative"


@dataclass(frozen=True)
class SrgInfo:
    index: int
    restricted: tuple[float, ...]
    strongly_regular: bool
    degenerate: bool
    latin: LatinInfo | None


def _distinct(values, tol: Tolerance):
    reps: list[float] = []
    for x in values:
        if not any(tol.close(x, r) for r in reps):
            reps.append(float(x))
    return sorted(reps)


def srg_info(spec: SpectralData, i: int) -> SrgInfo:
    """Restricted eigenvalues of class i and its (negative) Latin typing.

    A class with a single restricted eigenvalue (the complete-graph
    degenerate case) is flagged, not classified as strongly regular.
    """
    if not 1 <= i <= spec.d:
        raise PreconditionFailed(f"class index {i} out of 1..{spec.d}")
    tol = spec.tol
    restricted = _distinct(spec.P[1:, i], tol)
    degenerate = len(restricted) == 1
    strongly_regular = len(restricted) == 2

    latin = None
    root = math.isqrt(spec.v)
    if strongly_regular and root * root == spec.v:
        snapped, mask = tol.snap(np.asarray(restricted))
        if mask.all():
            eigs = {int(e) for e in snapped}
            k = spec.valencies[i]
            for n in (root, -root):
                for e in eigs:
                    t = -e
                    if t == 0 or (t > 0) != (n > 0):
                        continue
                    if {-t, n - t} == eigs and k == t * (n - 1):
                        latin = LatinInfo(n=n, t=t,
                                          sign="positive" if n > 0 else "negative")
                        break
                if latin:
                    break
    return SrgInfo(index=i, restricted=tuple(restricted),
                   strongly_regular=strongly_regular,
                   degenerate=degenerate, latin=latin)


@dataclass(frozen=True)
class CanonicalFormCertificate:
    """Witness that a principal eigenmatrix has one distinguished entry per
    column, the distinguished cells forming a transversal."""

    which: str  # "P" or "Q"
    distinguished_rows: tuple[int, ...]  # row of b_i per column, 1-based
    a: tuple[float, ...]
    b: tuple[float, ...]
    n: float | None  # b_i - a_i when constant across columns
    t: tuple[float, ...] | None  # -a_i
    parameterized: bool  # n, t_i integers, all one sign
    sign: str | None


def _canonical_on(M: np.ndarray, tol: Tolerance):
    d = M.shape[0]
    rows, a_vals, b_vals = [], [], []
    for j in range(d):
        col = M[:, j]
        groups: dict[int, list[int]] = {}
        reps: list[float] = []
        for r, x in enumerate(col):
            for gi, rep in enumerate(reps):
                if tol.close(x, rep):
                    groups[gi].append(r)
                    break
            else:
                groups[len(reps)] = [r]
                reps.append(float(x))
        if len(reps) != 2:
            return None
        sizes = {gi: len(rs) for gi, rs in groups.items()}
        single = [gi for gi, s in sizes.items() if s == 1]
        if len(single) != 1 or sizes[1 - single[0]] != d - 1:
            return None
        gi = single[0]
        rows.append(groups[gi][0])
        b_vals.append(reps[gi])
        a_vals.append(reps[1 - gi])
    if sorted(rows) != list(range(d)):
        return None
    return rows, a_vals, b_vals


def canonical_form_check(spec: SpectralData) -> CanonicalFormCertificate | None:
    """Search P, then Q, for the one-distinguished-entry-per-column form.

    The distinguished entries must form a transversal; with d >= 3 each
    matching column determines its distinguished row uniquely, so no
    permutation search is needed.  On a match, derives n = b_i - a_i and
    t_i = -a_i and reports whether they give the integer parameterization
    with all values of one sign.
    """
    if spec.d < 3:
        raise PreconditionFailed(f"canonical form needs d >= 3, got d={spec.d}")
    tol = spec.tol
    for which in ("P", "Q"):
        hit = _canonical_on(spec.principal(which), tol)
        if hit is None:
            continue
        rows, a_vals, b_vals = hit
        diffs = [b - a for a, b in zip(a_vals, b_vals)]
        n = diffs[0] if all(tol.close(x, diffs[0]) for x in diffs) else None
        t = tuple(-a for a in a_vals) if n is not None else None
        parameterized = False
        sign = None
        if n is not None:
            n_s, n_ok = tol.snap(np.array([n]))
            t_s, t_ok = tol.snap(np.asarray(t))
            if n_ok.all() and t_ok.all():
                n_i, t_i = int(n_s[0]), [int(x) for x in t_s]
                vals = [n_i] + t_i
                if all(x > 0 for x in vals):
                    parameterized, sign, n, t = True, "positive", n_i, tuple(t_i)
                elif all(x < 0 for x in vals):
                    parameterized, sign, n, t = True, "negative", n_i, tuple(t_i)
        return CanonicalFormCertificate(
            which=which,
            distinguished_rows=tuple(r + 1 for r in rows),
            a=tuple(a_vals), b=tuple(b_vals),
            n=n, t=t, parameterized=parameterized, sign=sign)
    return None


def amorphic_oracle(scheme: AssociationScheme,
                    tol: Tolerance = DEFAULT_TOL, seed: int = 0,
                    limit: int = PARTITION_LIMIT) -> bool:
    """Exhaustive exact check: every class partition must fuse."""
    if scheme.d > limit:
        raise LimitExceeded(f"d={scheme.d} exceeds the oracle limit {limit}")
    return all(fuses(scheme, pi, tol=tol, seed=seed)
               for pi in enumerate_partitions(scheme.d, limit=limit))


@dataclass(frozen=True)
class AmorphicVerdict:
    amorphic: bool
    certificate: CanonicalFormCertificate | None
    oracle_checked: bool


def is_amorphic(scheme: AssociationScheme,
                tol: Tolerance = DEFAULT_TOL, seed: int = 0,
                limit: int = PARTITION_LIMIT) -> AmorphicVerdict:
    """Canonical-form fast path, cross-checked by the exhaustive oracle
    whenever d is small enough; disagreement is fatal.

    For d <= 2 every admissible partition fuses vacuously, so the verdict
    is amorphic by convention (the form equivalence starts at d = 3).
    """
    if scheme.d <= 2:
        ok = amorphic_oracle(scheme, tol=tol, seed=seed, limit=limit)
        if not ok:
            raise OracleDisagreement("a d <= 2 scheme failed the vacuous oracle")
        return AmorphicVerdict(amorphic=True, certificate=None, oracle_checked=True)
    spec = spectral_decomposition(scheme, tol=tol, seed=seed)
    cert = canonical_form_check(spec)
    fast = cert is not None
    checked = False
    if scheme.d <= limit:
        slow = amorphic_oracle(scheme, tol=tol, seed=seed, limit=limit)
        if slow != fast:
            raise OracleDisagreement(
                f"canonical form says amorphic={fast}, exhaustive oracle says {slow}")
        checked = True
    return AmorphicVerdict(amorphic=fast, certificate=cert, oracle_checked=checked)


@dataclass(frozen=True)
class EphemeralPattern:
    """Witness of the distinguished 4-class eigenmatrix shape: one column
    of valency k1 with values {b1, a1, a1, a1} and three columns of common
    valency k2 whose lower block rows are {aaa, bba, bab, abb}."""

    k1: float
    k2: float
    a1: float
    a2: float
    b1: float
    b2: float
    special_column: int
    row_order: tuple[int, ...]
    column_order: tuple[int, ...]


_EPHEMERAL_BLOCK = ((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1))  # 1 marks b2


def ephemeral_form_check(spec: SpectralData) -> EphemeralPattern | None:
    """Permutation search for the 4-class pattern; None when it cannot match."""
    if spec.d != 4:
        raise WrongClassCount(f"pattern is defined for d=4, got d={spec.d}")
    tol = spec.tol
    P = spec.P
    k = P[0, 1:]
    M = P[1:, 1:]
    for c in range(4):
        others = [j for j in range(4) if j != c]
        if not all(tol.close(k[j], k[others[0]]) for j in others):
            continue
        k1, k2 = float(k[c]), float(k[others[0]])
        for rows in itertools.permutations(range(4)):
            b1 = float(M[rows[0], c])
            a1_vals = [float(M[r, c]) for r in rows[1:]]
            if not all(tol.close(x, a1_vals[0]) for x in a1_vals):
                continue
            a1 = a1_vals[0]
            if tol.close(a1, b1):
                continue
            for cols in itertools.permutations(others):
                cells_b, cells_a = [], []
                for ri, r in enumerate(rows):
                    for ci, j in enumerate(cols):
                        (cells_b if _EPHEMERAL_BLOCK[ri][ci] else cells_a).append(float(M[r, j]))
                if not all(tol.close(x, cells_a[0]) for x in cells_a):
                    continue
                if not all(tol.close(x, cells_b[0]) for x in cells_b):
                    continue
                a2, b2 = cells_a[0], cells_b[0]
                if tol.close(a2, b2):
                    continue
                return EphemeralPattern(
                    k1=k1, k2=k2, a1=a1, a2=a2, b1=b1, b2=b2,
                    special_column=c + 1,
                    row_order=tuple(r + 1 for r in rows),
                    column_order=tuple(j + 1 for j in cols))
    return None


def row_lemma_check(M: np.ndarray, rows, tol: Tolerance = DEFAULT_TOL) -> bool:
    """At least |rows| columns of a principal eigenmatrix part must be
    non-constant on any chosen row subset; False falsifies the theory."""
    rows = sorted(rows)
    if len(rows) < 2:
        raise PreconditionFailed("need at least 2 rows")
    sub = np.asarray(M, dtype=float)[rows, :]
    nonconstant = 0
    for j in range(sub.shape[1]):
        col = sub[:, j]
        if not all(tol.close(x, col[0]) for x in col[1:]):
            nonconstant += 1
    return nonconstant >= len(rows)


@dataclass(frozen=True)
class ClaimRecord:
    claim: str
    applicable: bool
    verified: bool
    witness: str = ""


@dataclass(frozen=True)
class ClaimReport:
    records: tuple[ClaimRecord, ...]

    @property
    def falsified(self) -> bool:
        return any(r.applicable and not r.verified for r in self.records)

    def as_dict(self):
        return {r.claim: {"applicable": r.applicable, "verified": r.verified,
                          "witness": r.witness}
                for r in self.records}


def verify_paper_claims(scheme: AssociationScheme,
                        tol: Tolerance = DEFAULT_TOL, seed: int = 0,
                        limit: int = PARTITION_LIMIT) -> ClaimReport:
    """Machine-check every theorem-shaped claim that applies to one scheme.

    A claim whose hypothesis fails is recorded as not applicable; a claim
    that applies and fails to verify is a falsification event (fatal for
    corpus runs).  Per-claim enumeration limits are recorded, not fatal.
    """
    d = scheme.d
    spec = spectral_decomposition(scheme, tol=tol, seed=seed)
    records: list[ClaimRecord] = []

    triples = enumerate_fusing_tuples(scheme, 3, tol=tol, seed=seed) if d >= 3 else []
    H3 = None
    cores = []
    if d >= 3:
        H3 = build_fusing_hypergraph(scheme, 3, side="relations", tol=tol, seed=seed)
        cores = sunflower_cores(H3)

    def verdict() -> bool:
        return is_amorphic(scheme, tol=tol, seed=seed, limit=limit).amorphic

    # (a) two different 3-sunflowers force amorphicity (d >= 5)
    applicable = d >= 5 and len(cores) >= 2
    ok = verdict() if applicable else False
    records.append(ClaimRecord(
        "two_sunflowers_imply_amorphic", applicable, ok,
        witness=f"{len(cores)} cores" if d >= 5 else f"d={d} < 5"))

    # (b) complete fusing 3-hypergraph forces amorphicity (d >= 5)
    applicable = d >= 5 and H3 is not None and H3.is_complete()
    ok = verdict() if applicable else False
    records.append(ClaimRecord(
        "complete_3hypergraph_implies_amorphic", applicable, ok,
        witness=f"{len(H3.edges) if H3 else 0} edges"))

    # (c) at d = 5, a sunflower core is itself a fusing pair
    applicable = d == 5 and len(cores) >= 1
    ok = True
    if applicable:
        for c in cores:
            if not fuses(scheme, ClassPartition.merge(d, c.core), tol=tol, seed=seed):
                ok = False
                break
    records.append(ClaimRecord(
        "sunflower_core_fuses", applicable, applicable and ok,
        witness=f"cores {[c.core for c in cores]}" if applicable else ""))

    # (d) dual statements on the idempotent side
    for name, pred in (("dual_two_sunflowers_imply_amorphic", "cores"),
                       ("dual_complete_3hypergraph_implies_amorphic", "complete")):
        applicable, ok, note = False, False, ""
        if d >= 5:
            try:
                Hd = build_fusing_hypergraph(scheme, 3, side="idempotents",
                                             tol=tol, seed=seed, limit=limit)
                if pred == "cores":
                    applicable = len(sunflower_cores(Hd)) >= 2
                else:
                    applicable = Hd.is_complete()
                ok = verdict() if applicable else False
            except LimitExceeded as exc:
                note = str(exc)
        records.append(ClaimRecord(name, applicable, ok, witness=note))

    # (e) contraction: every admissible (triple, outside class) pair
    applicable, ok, checked = False, True, 0
    if d >= 4:
        for T in triples:
            for ell in range(1, d + 1):
                if ell in T:
                    continue
                try:
                    res = contraction_check(scheme, T, ell, tol=tol, seed=seed)
                except PreconditionFailed:
                    continue
                applicable = True
                checked += 1
                if not res:
                    ok = False
    records.append(ClaimRecord(
        "contraction", applicable, applicable and ok,
        witness=f"{checked} admissible pairs"))

    # (f) every fusing triple is exactly type 1 or type 2
    applicable, ok = bool(triples), True
    for T in triples:
        try:
            classify_triple(spec, T)
        except (Falsification, NotFusing):
            ok = False
    records.append(ClaimRecord(
        "triple_types", applicable, applicable and ok,
        witness=f"{len(triples)} fusing triples"))

    # (g) row subsets of the principal parts have enough non-constant columns
    applicable = 2 <= d <= 6
    ok = True
    if applicable:
        for M in (spec.principal("P"), spec.principal("Q")):
            for r in range(2, d + 1):
                for rows in itertools.combinations(range(d), r):
                    if not row_lemma_check(M, rows, tol=tol):
                        ok = False
    records.append(ClaimRecord("row_lemma", applicable, applicable and ok))

    # (h) overlapping fusing triples fall only in the surviving subcases
    pairs = [(T1, T2) for T1, T2 in itertools.combinations(triples, 2)
             if len(set(T1) & set(T2)) == 2]
    applicable, ok, labels = bool(pairs), True, set()
    for T1, T2 in pairs:
        try:
            labels.add(overlap_case(spec, T1, T2).label)
        except (Falsification, PreconditionFailed):
            ok = False
    if not labels <= SURVIVING_CASES:
        ok = False
    records.append(ClaimRecord(
        "overlap_cases", applicable, applicable and ok,
        witness=",".join(sorted(labels))))

    return ClaimReport(records=tuple(records))
