"""Scheme generators and the finite-field tables behind them."""

import math

import numpy as np
import pytest

import amorphic as am
from amorphic.generators import SUPPORTED_FIELD_ORDERS, SmallField


def test_field_tables_all_supported_orders():
    # SmallField verifies the field axioms on its own tables at construction
    for n in sorted(SUPPORTED_FIELD_ORDERS):
        F = SmallField(n)
        assert F.order == n
        g = F.multiplicative_generator()
        seen = set()
        x = 1
        for _ in range(n - 1):
            seen.add(x)
            x = int(F.mul[x, g])
        assert len(seen) == n - 1


def test_field_inverse_and_subtraction():
    F = SmallField(9)
    for a in range(9):
        for b in range(9):
            assert F.add[F.sub(a, b), b] == a
        if a:
            assert F.mul[a, F.inv(a)] == 1


def test_unsupported_order_rejected():
    with pytest.raises(am.FieldUnsupported):
        SmallField(6)
    with pytest.raises(am.FieldUnsupported):
        SmallField(32)


def test_hamming_valencies_are_binomials():
    for m in (1, 2, 3, 4, 5, 6):
        scheme = am.gen_hamming_binary(m)
        assert scheme.v == 2 ** m and scheme.d == m
        assert scheme.valencies == tuple(math.comb(m, i) for i in range(m + 1))


def test_hamming_limit():
    with pytest.raises(am.LimitExceeded):
        am.gen_hamming_binary(11)


def test_net_scheme_valencies_from_group_sizes():
    groups = [[0, 1], [2], [3], [4]]
    scheme = am.gen_net_scheme(4, am.SlopeGrouping.from_groups(4, groups))
    assert scheme.v == 16 and scheme.d == 4
    # class valency = (#slopes in group) * (n - 1), after group sort
    sizes = sorted(len(g) for g in groups)
    by_group = sorted(scheme.valencies[1:])
    assert by_group == sorted(s * 3 for s in sizes)


def test_net_grouping_validation():
    with pytest.raises(ValueError):
        am.SlopeGrouping.from_groups(3, [[0, 1], [2]])  # slope 3 missing
    with pytest.raises(ValueError):
        am.gen_net_scheme(4, am.SlopeGrouping.singletons(3))  # n mismatch


def test_cyclotomic_symmetry_condition():
    # (q-1)/d odd over an odd field puts -1 outside the subgroup
    with pytest.raises(am.NotSymmetric):
        am.gen_cyclotomic(am.CyclotomicSpec(q=11, d=2))
    with pytest.raises(am.NotSymmetric):
        am.gen_cyclotomic(am.CyclotomicSpec(q=13, d=4))
    # even field: always symmetric
    scheme = am.gen_cyclotomic(am.CyclotomicSpec(q=8, d=7))
    assert scheme.v == 8 and scheme.d == 7


def test_cyclotomic_divisibility():
    with pytest.raises(ValueError):
        am.gen_cyclotomic(am.CyclotomicSpec(q=13, d=5))


def test_cyclotomic_valencies_equal():
    scheme = am.gen_cyclotomic(am.CyclotomicSpec(q=25, d=4))
    assert set(scheme.valencies[1:]) == {6}  # (q-1)/d


def test_paley_is_conference_graph():
    # Paley(13): (13, 6, 2, 3) strongly regular graph
    scheme = am.gen_cyclotomic(am.CyclotomicSpec(q=13, d=2))
    A = scheme.relation(1)
    assert set(A.sum(axis=1)) == {6}
    A2 = A @ A
    lam = {int(A2[i, j]) for i in range(13) for j in range(13) if A[i, j]}
    mu = {int(A2[i, j]) for i in range(13) for j in range(13)
          if i != j and not A[i, j]}
    assert lam == {2} and mu == {3}


def test_complete_scheme():
    scheme = am.gen_complete(7)
    assert scheme.d == 1 and scheme.valencies == (1, 6)
    with pytest.raises(ValueError):
        am.gen_complete(1)


def test_standard_corpus_deterministic():
    names = [name for name, _ in am.standard_corpus()]
    assert len(names) == len(set(names)) == 46
    assert names == [name for name, _ in am.standard_corpus()]
    assert "net_n4_0-1-2-3-4" in names and "cyclotomic_q13_d3" in names


def test_write_standard_corpus_round_trips(tmp_path):
    paths = am.write_standard_corpus(tmp_path)
    assert len(paths) == 46
    by_name = {name: s for name, s in am.standard_corpus()}
    for path in paths[:8]:
        loaded = am.load_scheme(path)
        assert loaded == by_name[path.stem]
