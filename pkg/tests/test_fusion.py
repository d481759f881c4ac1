"""Fusion machinery: partitions, the two fusion oracles, triple types,
contraction, and the overlap case analysis."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import amorphic as am
from amorphic.fusion import CASE_REPRESENTATIVES, EXACT_CHECK_BUDGET, _overlap_label

TOL = am.DEFAULT_TOL


# ------------------------------------------------------------- partitions

BELL = {1: 1, 2: 2, 3: 5, 4: 15, 5: 52, 6: 203}


def test_partition_counts_are_bell_numbers():
    for d, bell in BELL.items():
        parts = list(am.enumerate_partitions(d))
        assert len(parts) == bell
        assert len({p.rgs() for p in parts}) == bell  # no duplicates
        for p in parts:
            assert p.blocks[0] == (0,)


def test_partition_limit_enforced():
    with pytest.raises(am.LimitExceeded):
        list(am.enumerate_partitions(9))


def test_partition_from_string_forms():
    p = am.ClassPartition.from_string("0|1,3|2", 3)
    assert p.blocks == ((0,), (1, 3), (2,))
    assert p == am.ClassPartition.from_string("1,3|2", 3)  # 0 block optional
    assert str(p) == "0|1,3|2"


def test_partition_rejects_zero_in_nontrivial_block():
    with pytest.raises(ValueError):
        am.ClassPartition.from_string("0,1|2", 2)
    with pytest.raises(ValueError):
        am.ClassPartition.merge(3, {0, 1})


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.data())
def test_partition_string_round_trip(d, data):
    rgs = [0] + [data.draw(st.integers(0, min(i, 5))) for i in range(1, d)]
    # normalize to a restricted growth string
    out, top = [], -1
    for a in rgs:
        a = min(a, top + 1)
        top = max(top, a)
        out.append(a)
    blocks = [[] for _ in range(top + 1)]
    for i, a in enumerate(out):
        blocks[a].append(i + 1)
    p = am.ClassPartition.from_blocks([[0]] + blocks, d)
    assert am.ClassPartition.from_string(str(p), d) == p


# ------------------------------------------------------------- the oracles

def test_hamming3_fuse_known_partition():
    scheme = am.gen_hamming_binary(3)
    out = am.fuse_direct(scheme, am.ClassPartition.from_string("1,3|2", 3))
    assert str(out.rho) == "0|1|2,3"
    assert TOL.allclose(out.P_fused, np.array([
        [1, 4, 3],
        [1, -4, 3],
        [1, 0, -1],
    ], dtype=float))
    assert out.scheme.d == 2
    assert out.scheme.valencies == (1, 4, 3)


def test_hamming3_rejects_bad_partition():
    scheme = am.gen_hamming_binary(3)
    with pytest.raises(am.NotAFusion):
        am.fuse_direct(scheme, am.ClassPartition.from_string("2,3|1", 3))


def test_bm_check_matches_direct_everywhere_small():
    """Exhaustive two-oracle agreement on several small schemes."""
    schemes = [
        am.gen_hamming_binary(3),
        am.gen_hamming_binary(4),
        am.gen_net_scheme(3, am.SlopeGrouping.singletons(3)),
        am.gen_cyclotomic(am.CyclotomicSpec(q=13, d=6)),
    ]
    for scheme in schemes:
        spec = am.spectral_decomposition(scheme)
        for pi in am.enumerate_partitions(scheme.d):
            try:
                direct = am.fuse_direct(scheme, pi)
                ok_direct = True
            except am.NotAFusion:
                ok_direct = False
            try:
                dual = am.bm_check(spec, pi)
                ok_bm = True
            except am.NotAFusion:
                ok_bm = False
            assert ok_direct == ok_bm, (scheme, str(pi))
            if ok_direct:
                # fused eigenmatrix must agree with a fresh decomposition of
                # the fused scheme, up to row order
                fresh = am.spectral_decomposition(direct.scheme)
                got = sorted(map(tuple, np.round(dual.P_fused, 6)))
                want = sorted(map(tuple, np.round(fresh.P, 6)))
                assert got == want


def test_trivial_partitions():
    scheme = am.gen_hamming_binary(4)
    assert am.fuse_direct(scheme, am.ClassPartition.singletons(4)).scheme == scheme
    merged = am.fuse_direct(scheme, am.ClassPartition.merge(4, {1, 2, 3, 4}))
    assert merged.scheme.d == 1  # complete scheme


def test_enumerate_fusing_tuples_hamming():
    h3 = am.gen_hamming_binary(3)
    assert am.enumerate_fusing_tuples(h3, 2) == [(1, 2), (1, 3)]
    h5 = am.gen_hamming_binary(5)
    assert am.enumerate_fusing_tuples(h5, 2) == []
    assert am.enumerate_fusing_tuples(h5, 3) == [(1, 3, 5)]


def test_enumerate_fusing_tuples_amorphic_complete():
    scheme = am.gen_net_scheme(4, am.SlopeGrouping.singletons(4))
    assert len(am.enumerate_fusing_tuples(scheme, 2)) == 10  # C(5,2)
    assert len(am.enumerate_fusing_tuples(scheme, 3)) == 10  # C(5,3)


def test_exact_budget_covers_test_schemes():
    assert am.gen_hamming_binary(5).v <= EXACT_CHECK_BUDGET


# ------------------------------------------------------------ triple types

def test_hamming4_triple_123_is_type2():
    scheme = am.gen_hamming_binary(4)
    spec = am.spectral_decomposition(scheme)
    t = am.classify_triple(spec, (1, 2, 3))
    assert t.kind == 2
    pairs = sorted(sorted(s) for s in t.sets)
    assert pairs == [[1, 4], [2, 3]]
    # multiplicity content is ordering-independent: {1,6} and {4,4}
    mult = sorted(sorted(spec.multiplicities[j] for j in s) for s in t.sets)
    assert mult == [[1, 6], [4, 4]]


def test_hamming5_triple_type2():
    t = am.classify_triple(am.gen_hamming_binary(5), (1, 3, 5))
    assert t.kind == 2


def test_amorphic_triples_are_type1():
    scheme = am.gen_net_scheme(4, am.SlopeGrouping.singletons(4))
    spec = am.spectral_decomposition(scheme)
    for T in am.enumerate_fusing_tuples(scheme, 3):
        assert am.classify_triple(spec, T).kind == 1


def test_classify_triple_rejects_nonfusing():
    with pytest.raises(am.NotFusing):
        am.classify_triple(am.gen_hamming_binary(4), (1, 3, 4))


# ------------------------------------------------------------- contraction

def test_contraction_on_amorphic_net():
    scheme = am.gen_net_scheme(4, am.SlopeGrouping.singletons(4))
    triples = am.enumerate_fusing_tuples(scheme, 3)
    for T in triples:
        for ell in range(1, 6):
            if ell not in T:
                assert am.contraction_check(scheme, T, ell)


def test_contraction_preconditions():
    scheme = am.gen_hamming_binary(5)
    with pytest.raises(am.PreconditionFailed):
        am.contraction_check(scheme, (1, 2, 3), 4)  # triple does not fuse
    with pytest.raises(am.PreconditionFailed):
        am.contraction_check(scheme, (1, 3, 5), 3)  # ell inside the triple
    with pytest.raises(am.PreconditionFailed):
        # no second fusing triple through ell
        am.contraction_check(scheme, (1, 3, 5), 2)


# ------------------------------------------------------------ overlap cases

def test_eighteen_representatives_self_classify():
    assert len(CASE_REPRESENTATIVES) == 18
    for label, (sa, sb) in CASE_REPRESENTATIVES.items():
        assert _overlap_label(sa, sb) == label


def test_overlap_label_invariant_under_relabeling():
    """The signature is preserved by any permutation of idempotent names."""
    import random
    rng = random.Random(7)
    for label, (sa, sb) in CASE_REPRESENTATIVES.items():
        universe = sorted(set().union(*sa, *sb))
        for _ in range(5):
            perm = {x: y for x, y in zip(universe, rng.sample(universe, len(universe)))}
            pa = tuple(frozenset(perm[x] for x in s) for s in sa)
            pb = tuple(frozenset(perm[x] for x in s) for s in sb)
            assert _overlap_label(pa, pb) == label
        if len(sa) == 2:
            assert _overlap_label(sa[::-1], sb) == label
        if len(sb) == 2:
            assert _overlap_label(sa, sb[::-1]) == label


def test_surviving_cases_frozen():
    assert am.SURVIVING_CASES == {"I.3", "II.3", "II.5", "III.6", "III.9"}


def test_amorphic_overlaps_all_I3():
    scheme = am.gen_net_scheme(4, am.SlopeGrouping.singletons(4))
    spec = am.spectral_decomposition(scheme)
    triples = am.enumerate_fusing_tuples(scheme, 3)
    seen = set()
    for a, b in itertools.combinations(triples, 2):
        if len(set(a) & set(b)) == 2:
            oc = am.overlap_case(spec, a, b)
            seen.add(oc.label)
            # the relabeling maps must cover the four relations involved
            assert sorted(oc.relation_map.values()) == [1, 2, 3, 4]
    assert seen == {"I.3"}


def test_overlap_requires_two_common_classes():
    scheme = am.gen_net_scheme(5, am.SlopeGrouping.singletons(5))
    with pytest.raises(am.PreconditionFailed):
        am.overlap_case(scheme, (1, 2, 3), (4, 5, 6))
