"""Fusion-scheme questions: exact integer oracle, eigenmatrix criterion,
fusing-tuple enumeration, triple types, contraction, and overlap cases.

The exact oracle (:func:`fuse_direct`) is ground truth; the row-sum
criterion on the eigenmatrix (:func:`bm_check`) is the fast path.  Any
disagreement between the two aborts with :class:`OracleDisagreement`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import (
    AssociationScheme,
    DEFAULT_TOL,
    LabelMatrix,
    SpectralData,
    Tolerance,
    spectral_decomposition,
    validate_scheme,
)
from .errors import (
    AxiomViolation,
    Falsification,
    LimitExceeded,
    NotAFusion,
    NotFusing,
    OracleDisagreement,
    PreconditionFailed,
    Unclassified,
)

__all__ = [
    "ClassPartition",
    "DualPartition",
    "FusionOutcome",
    "TripleType",
    "OverlapCase",
    "enumerate_partitions",
    "fuse_direct",
    "bm_check",
    "enumerate_fusing_tuples",
    "classify_triple",
    "contraction_check",
    "overlap_case",
    "PARTITION_LIMIT",
]

PARTITION_LIMIT = 8  # Bell(8) = 4140, the most we ever enumerate
EXACT_CHECK_BUDGET = 64  # max v for which enumeration cross-checks the exact oracle


@dataclass(frozen=True)
class ClassPartition:
    """Partition of {0,...,d} with {0} as its own block.

    Blocks are stored sorted by minimum element, so the block containing 0
    is always blocks[0] == (0,).
    """

    d: int
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks, d: int) -> "ClassPartition":
        norm = sorted(tuple(sorted(set(b))) for b in blocks if len(b))
        seen = [i for b in norm for i in b]
        if sorted(seen) != list(range(d + 1)):
            if 0 not in seen:
                norm = sorted(norm + [(0,)])
                seen = sorted(seen + [0])
            if sorted(seen) != list(range(d + 1)):
                raise ValueError(f"blocks {blocks} do not partition 0..{d}")
        if norm[0] != (0,):
            raise ValueError("the block containing 0 must be exactly {0}")
        return cls(d=d, blocks=tuple(norm))

    @classmethod
    def from_string(cls, text: str, d: int) -> "ClassPartition":
        """Parse "0|1,3|2" (the 0 block may be omitted)."""
        blocks = []
        for part in text.split("|"):
            part = part.strip()
            if not part:
                continue
            try:
                blocks.append([int(tok) for tok in part.split(",")])
            except ValueError as exc:
                raise ValueError(f"bad partition block {part!r}") from exc
        return cls.from_blocks(blocks, d)

    @classmethod
    def singletons(cls, d: int) -> "ClassPartition":
        return cls.from_blocks([[i] for i in range(d + 1)], d)

    @classmethod
    def merge(cls, d: int, subset) -> "ClassPartition":
        """Merge exactly ``subset`` (of nontrivial classes), all else singleton."""
        subset = set(subset)
        if 0 in subset:
            raise ValueError("cannot merge the trivial class")
        blocks = [[0], sorted(subset)] + [[i] for i in range(1, d + 1) if i not in subset]
        return cls.from_blocks(blocks, d)

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    def block_index(self) -> np.ndarray:
        """index[i] = which block class i belongs to."""
        idx = np.empty(self.d + 1, dtype=np.int64)
        for b, block in enumerate(self.blocks):
            for i in block:
                idx[i] = b
        return idx

    def rgs(self) -> tuple[int, ...]:
        """Restricted growth string over 1..d (the canonical key)."""
        idx = self.block_index()
        remap, out = {}, []
        for i in range(1, self.d + 1):
            out.append(remap.setdefault(int(idx[i]), len(remap)))
        return tuple(out)

    def __str__(self) -> str:
        return "|".join(",".join(str(i) for i in b) for b in self.blocks)


@dataclass(frozen=True)
class DualPartition:
    """Result of the row-sum criterion: the unique dual partition and the
    fused eigenmatrix (rows ordered by dual block minimum)."""

    rho: ClassPartition
    P_fused: np.ndarray


@dataclass(frozen=True)
class FusionOutcome:
    scheme: AssociationScheme
    rho: ClassPartition
    P_fused: np.ndarray


def enumerate_partitions(d: int, limit: int = PARTITION_LIMIT):
    """All partitions of {1,...,d} (0 stays singleton), in restricted-growth
    string order, each exactly once."""
    if d > limit:
        raise LimitExceeded(f"d={d} exceeds the partition enumeration limit {limit}")
    if d == 0:
        yield ClassPartition.from_blocks([[0]], 0)
        return

    def rec(prefix, nmax):
        if len(prefix) == d:
            yield tuple(prefix)
            return
        for a in range(nmax + 2):
            yield from rec(prefix + [a], max(nmax, a))

    for rgs in rec([0], 0):
        nblocks = max(rgs) + 1
        blocks = [[] for _ in range(nblocks)]
        for i, a in enumerate(rgs):
            blocks[a].append(i + 1)
        yield ClassPartition.from_blocks([[0]] + blocks, d)


def _fused_labels(scheme: AssociationScheme, pi: ClassPartition) -> LabelMatrix:
    idx = pi.block_index()
    fused = idx[scheme.labels]
    return LabelMatrix(v=scheme.v, d=pi.n_blocks - 1, labels=fused)


def fuse_direct(scheme: AssociationScheme, pi: ClassPartition,
                tol: Tolerance = DEFAULT_TOL, seed: int = 0) -> FusionOutcome:
    """Exact oracle: build the fused label matrix and re-validate the axioms.

    On success the dual partition is read off the eigenmatrix criterion,
    whose agreement is asserted.
    """
    if pi.d != scheme.d:
        raise PreconditionFailed(f"partition is over 0..{pi.d}, scheme has d={scheme.d}")
    try:
        fused = validate_scheme(_fused_labels(scheme, pi))
    except AxiomViolation as exc:
        raise NotAFusion(f"partition {pi} does not fuse: {exc}") from exc
    spec = spectral_decomposition(scheme, tol=tol, seed=seed)
    try:
        dual = bm_check(spec, pi)
    except NotAFusion as exc:
        raise OracleDisagreement(
            f"exact oracle accepts {pi} but the eigenmatrix criterion rejects it: {exc}"
        ) from exc
    return FusionOutcome(scheme=fused, rho=dual.rho, P_fused=dual.P_fused)


def bm_check(spec: SpectralData, pi: ClassPartition) -> DualPartition:
    """Row-sum criterion on the first eigenmatrix.

    Folds the columns of P over the blocks of pi and groups identical rows;
    pi fuses iff the number of distinct rows equals the number of blocks.
    The dual partition of idempotent indices is the row grouping.
    """
    if pi.d != spec.d:
        raise PreconditionFailed(f"partition is over 0..{pi.d}, spectral data has d={spec.d}")
    tol = spec.tol
    folded = np.column_stack([spec.P[:, list(b)].sum(axis=1) for b in pi.blocks])
    groups: list[list[int]] = []
    for j in range(spec.d + 1):
        for g in groups:
            if tol.rows_equal(folded[j], folded[g[0]]):
                g.append(j)
                break
        else:
            groups.append([j])
    if len(groups) != pi.n_blocks:
        raise NotAFusion(
            f"partition {pi}: {len(groups)} distinct folded rows, need {pi.n_blocks}")
    if groups[0] != [0]:
        # the valency row must stay alone for a genuine fusion
        raise NotAFusion(f"partition {pi}: valency row folds onto another eigenrow")
    rho = ClassPartition.from_blocks(groups, spec.d)
    order = sorted(range(len(groups)), key=lambda g: groups[g][0])
    P_fused, _ = tol.snap(np.array([folded[groups[g][0]] for g in order]))
    return DualPartition(rho=rho, P_fused=P_fused)


def fuses(scheme: AssociationScheme, pi: ClassPartition,
          tol: Tolerance = DEFAULT_TOL, seed: int = 0) -> bool:
    """Exact yes/no for a single partition."""
    try:
        fuse_direct(scheme, pi, tol=tol, seed=seed)
        return True
    except NotAFusion:
        return False


def enumerate_fusing_tuples(scheme: AssociationScheme, k: int,
                            tol: Tolerance = DEFAULT_TOL, seed: int = 0,
                            exact_budget: int = EXACT_CHECK_BUDGET) -> list[tuple[int, ...]]:
    """All k-subsets of nontrivial classes whose merge fuses.

    Decided by the eigenmatrix criterion; cross-validated against the exact
    oracle whenever v is within the exact-check budget.
    """
    if k not in (2, 3):
        raise ValueError("k must be 2 or 3")
    if scheme.d < k:
        return []
    spec = spectral_decomposition(scheme, tol=tol, seed=seed)
    out = []
    for T in itertools.combinations(range(1, scheme.d + 1), k):
        pi = ClassPartition.merge(scheme.d, T)
        try:
            bm_check(spec, pi)
            ok = True
        except NotAFusion:
            ok = False
        if scheme.v <= exact_budget:
            exact = fuses(scheme, pi, tol=tol, seed=seed)
            if exact != ok:
                raise OracleDisagreement(
                    f"tuple {T}: criterion says {ok}, exact oracle says {exact}")
        if ok:
            out.append(T)
    return out


@dataclass(frozen=True)
class TripleType:
    """Dual shape of a fusing triple: one 3-set of idempotents merges
    (type 1) or two disjoint 2-sets do (type 2)."""

    kind: int  # 1 or 2
    sets: tuple[frozenset, ...]

    @property
    def is_type1(self) -> bool:
        return self.kind == 1


def classify_triple(spec, T) -> TripleType:
    """Type of a fusing triple, read off the dual partition.

    Accepts spectral data or a scheme (decomposed with defaults).
    """
    if isinstance(spec, AssociationScheme):
        spec = spectral_decomposition(spec)
    T = tuple(sorted(T))
    if len(T) != 3:
        raise PreconditionFailed(f"{T} is not a 3-subset")
    pi = ClassPartition.merge(spec.d, T)
    try:
        dual = bm_check(spec, pi)
    except NotAFusion as exc:
        raise NotFusing(str(exc)) from exc
    big = [frozenset(b) for b in dual.rho.blocks if len(b) >= 2]
    sizes = sorted(len(b) for b in big)
    if sizes == [3]:
        return TripleType(kind=1, sets=(big[0],))
    if sizes == [2, 2]:
        j1, j2 = sorted(big, key=min)
        return TripleType(kind=2, sets=(j1, j2))
    raise Falsification(
        f"fusing triple {T} has dual block sizes {sizes}, expected [3] or [2, 2]")


def contraction_check(scheme: AssociationScheme, t1, ell: int,
                      tol: Tolerance = DEFAULT_TOL, seed: int = 0) -> bool:
    """Merge a fusing triple and test whether the merged class still fuses
    with a fourth class that completes a second fusing triple.

    Preconditions: t1 fuses, ell is outside t1, and some 2-subset of t1
    together with ell also fuses.  By the contraction property the result
    must be True; the caller treats False as a falsification event.
    """
    t1 = tuple(sorted(t1))
    if len(t1) != 3 or ell in t1:
        raise PreconditionFailed(f"need a 3-subset and an outside class, got {t1}, {ell}")
    if not fuses(scheme, ClassPartition.merge(scheme.d, t1), tol=tol, seed=seed):
        raise PreconditionFailed(f"{set(t1)} does not fuse")
    overlapping = [
        s for s in itertools.combinations(t1, 2)
        if fuses(scheme, ClassPartition.merge(scheme.d, set(s) | {ell}), tol=tol, seed=seed)
    ]
    if not overlapping:
        witness = set(list(t1)[1:]) | {ell}
        raise PreconditionFailed(f"no second fusing triple through {ell} ({witness} does not fuse)")

    pi = ClassPartition.merge(scheme.d, t1)
    contracted = fuse_direct(scheme, pi, tol=tol, seed=seed).scheme
    idx = pi.block_index()
    merged_new, ell_new = int(idx[t1[0]]), int(idx[ell])
    # independent verification path: fresh spectral data of the contracted
    # scheme is computed inside fuse_direct, nothing is reused from P_fused
    pair = ClassPartition.merge(contracted.d, (merged_new, ell_new))
    return fuses(contracted, pair, tol=tol, seed=seed)


# Representative dual-set layouts for the 18 overlap subcases: for each
# label, the dual images of the triples playing the {1,2,3} and {2,3,4}
# roles.  Type-1 triples map to one 3-set, type-2 triples to two 2-sets.
CASE_REPRESENTATIVES: dict[str, tuple[tuple[frozenset, ...], tuple[frozenset, ...]]] = {
    "I.1": ((frozenset({1, 2, 3}),), (frozenset({4, 5, 6}),)),
    "I.2": ((frozenset({1, 2, 3}),), (frozenset({3, 4, 5}),)),
    "I.3": ((frozenset({1, 2, 3}),), (frozenset({2, 3, 4}),)),
    "I.4": ((frozenset({1, 2, 3}),), (frozenset({1, 2, 3}),)),
    "II.1": ((frozenset({1, 2, 3}),), (frozenset({4, 5}), frozenset({6, 7}))),
    "II.2": ((frozenset({1, 2, 3}),), (frozenset({3, 4}), frozenset({5, 6}))),
    "II.3": ((frozenset({1, 2, 3}),), (frozenset({2, 3}), frozenset({4, 5}))),
    "II.4": ((frozenset({2, 3, 4}),), (frozenset({1, 2}), frozenset({4, 5}))),
    "II.5": ((frozenset({1, 2, 3}),), (frozenset({1, 2}), frozenset({3, 4}))),
    "III.1": ((frozenset({1, 2}), frozenset({3, 4})), (frozenset({5, 6}), frozenset({7, 8}))),
    "III.2": ((frozenset({1, 2}), frozenset({3, 4})), (frozenset({4, 5}), frozenset({6, 7}))),
    "III.3": ((frozenset({1, 2}), frozenset({3, 4})), (frozenset({3, 4}), frozenset({5, 6}))),
    "III.4": ((frozenset({2, 3}), frozenset({4, 5})), (frozenset({1, 2}), frozenset({5, 6}))),
    "III.5": ((frozenset({1, 2}), frozenset({3, 4})), (frozenset({2, 3}), frozenset({5, 6}))),
    "III.6": ((frozenset({1, 2}), frozenset({3, 4})), (frozenset({1, 2}), frozenset({4, 5}))),
    "III.7": ((frozenset({1, 2}), frozenset({3, 4})), (frozenset({2, 3}), frozenset({4, 5}))),
    "III.8": ((frozenset({1, 2}), frozenset({3, 4})), (frozenset({1, 2}), frozenset({3, 4}))),
    "III.9": ((frozenset({1, 2}), frozenset({3, 4})), (frozenset({1, 4}), frozenset({2, 3}))),
}

# Subcases that survive the case analysis; any other label on a real
# scheme falsifies the analysis.
SURVIVING_CASES = frozenset({"I.3", "II.3", "II.5", "III.6", "III.9"})


@dataclass(frozen=True)
class OverlapCase:
    label: str
    relation_map: dict[int, int]
    idempotent_map: dict[int, int]


def _signature_map(concrete: tuple[frozenset, ...], rep: tuple[frozenset, ...]):
    """Bijection on dual indices matching concrete sets onto representative
    sets, or None.  Elements are matched by their membership pattern; ties
    are broken towards the lexicographically smallest witness."""
    if tuple(len(s) for s in concrete) != tuple(len(s) for s in rep):
        return None
    c_elems = set().union(*concrete)
    r_elems = set().union(*rep)
    if len(c_elems) != len(r_elems):
        return None

    def patterns(sets, elems):
        return {e: tuple(e in s for s in sets) for e in elems}

    cp, rp = patterns(concrete, c_elems), patterns(rep, r_elems)
    buckets: dict[tuple, list[int]] = {}
    for e in sorted(r_elems):
        buckets.setdefault(rp[e], []).append(e)
    out = {}
    for e in sorted(c_elems):
        pool = buckets.get(cp[e])
        if not pool:
            return None
        out[e] = pool.pop(0)
    return out


def _overlap_label(sets_a, sets_b) -> str:
    """Subcase label from the dual-set intersection signature.

    The signature is invariant under relabeling idempotents and swapping
    the two dual pairs of a type-2 triple, so any representative works.
    The first argument must be the type-1 side when the types differ.
    """
    kinds = (len(sets_a), len(sets_b))
    if kinds == (1, 1):
        inter = len(sets_a[0] & sets_b[0])
        return {0: "I.1", 1: "I.2", 2: "I.3", 3: "I.4"}[inter]
    if kinds == (1, 2):
        sig = tuple(sorted(len(sets_a[0] & s) for s in sets_b))
        table = {(0, 0): "II.1", (0, 1): "II.2", (0, 2): "II.3",
                 (1, 1): "II.4", (1, 2): "II.5"}
        if sig not in table:
            raise Unclassified(("II", sig))
        return table[sig]
    M = [[len(a & b) for b in sets_b] for a in sets_a]
    flat = sorted(x for row in M for x in row)
    if flat == [0, 0, 1, 1]:
        # one overlap per dual pair on each side vs both overlaps
        # through one shared dual pair (transpose-invariant test)
        diag = (M[0][0] and M[1][1]) or (M[0][1] and M[1][0])
        return "III.4" if diag else "III.5"
    table = {(0, 0, 0, 0): "III.1", (0, 0, 0, 1): "III.2",
             (0, 0, 0, 2): "III.3", (0, 0, 1, 2): "III.6",
             (0, 1, 1, 1): "III.7", (0, 0, 2, 2): "III.8",
             (1, 1, 1, 1): "III.9"}
    if tuple(flat) not in table:
        raise Unclassified(("III", tuple(flat)))
    return table[tuple(flat)]


def overlap_case(spec, t1, t2,
                 ruled_out_fatal: bool = True) -> OverlapCase:
    """Match a pair of fusing triples sharing two classes against the 18
    subcases, up to relabeling of relations and idempotents."""
    if isinstance(spec, AssociationScheme):
        spec = spectral_decomposition(spec)
    t1, t2 = tuple(sorted(t1)), tuple(sorted(t2))
    common = sorted(set(t1) & set(t2))
    if len(common) != 2:
        raise PreconditionFailed(f"triples {t1}, {t2} must share exactly 2 classes")
    try:
        ty1 = classify_triple(spec, t1)
        ty2 = classify_triple(spec, t2)
    except NotFusing as exc:
        raise PreconditionFailed(str(exc)) from exc

    # role assignments: which triple plays {1,2,3} and which {2,3,4}.
    # Mixed types pin the type-1 triple to the {1,2,3} role (the subcase
    # list is stated that way); equal types allow either role.
    if (ty1.kind, ty2.kind) == (2, 1):
        roles = [(t2, ty2, t1, ty1)]
    elif ty1.kind == ty2.kind:
        roles = [(t1, ty1, t2, ty2), (t2, ty2, t1, ty1)]
    else:
        roles = [(t1, ty1, t2, ty2)]

    tya, tyb = roles[0][1], roles[0][3]
    label = _overlap_label(tya.sets, tyb.sets)

    rep_a, rep_b = CASE_REPRESENTATIVES[label]
    idem_map = None
    relation_map = None
    for first, fty, second, sty in roles:
        only_a = (set(first) - set(common)).pop()
        only_b = (set(second) - set(common)).pop()
        orders_a = [fty.sets] if len(fty.sets) == 1 else [fty.sets, fty.sets[::-1]]
        orders_b = [sty.sets] if len(sty.sets) == 1 else [sty.sets, sty.sets[::-1]]
        for sa in orders_a:
            for sb in orders_b:
                idem_map = _signature_map(tuple(sa) + tuple(sb), rep_a + rep_b)
                if idem_map is not None:
                    relation_map = {only_a: 1, common[0]: 2, common[1]: 3, only_b: 4}
                    break
            if idem_map is not None:
                break
        if idem_map is not None:
            break
    if idem_map is None:
        raise Unclassified((label, "no idempotent relabeling found"))

    if ruled_out_fatal and label not in SURVIVING_CASES:
        raise Falsification(
            f"overlapping fusing triples {t1}, {t2} realize ruled-out case {label}")
    return OverlapCase(label=label, relation_map=relation_map, idempotent_map=idem_map)
