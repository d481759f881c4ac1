"""Fusing hypergraphs, sunflower cores, and graph shape predicates."""

import pytest

import amorphic as am


def test_hamming3_fusing_graph_is_path():
    H = am.build_fusing_hypergraph(am.gen_hamming_binary(3), 2)
    assert H.sorted_edges() == [(1, 2), (1, 3)]
    shape = am.graph_shape(H)
    assert shape.connected and shape.is_path


def test_hamming5_fusing_graph_disconnected():
    H = am.build_fusing_hypergraph(am.gen_hamming_binary(5), 2)
    assert len(H.edges) == 0
    assert not am.graph_shape(H).connected


def test_amorphic_net_complete_3hypergraph():
    scheme = am.gen_net_scheme(4, am.SlopeGrouping.singletons(4))
    H = am.build_fusing_hypergraph(scheme, 3)
    assert H.is_complete()
    cores = am.sunflower_cores(H)
    assert [c.core for c in cores] == [
        (1, 2), (1, 3), (1, 4), (1, 5),
        (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]


def test_hamming5_single_sunflower_free():
    H = am.build_fusing_hypergraph(am.gen_hamming_binary(5), 3)
    assert H.sorted_edges() == [(1, 3, 5)]
    assert am.sunflower_cores(H) == []  # (1,3) misses petals 2 and 4


def test_idempotent_side_hypergraph():
    scheme = am.gen_net_scheme(4, am.SlopeGrouping.singletons(4))
    Hr = am.build_fusing_hypergraph(scheme, 3, side="relations")
    Hd = am.build_fusing_hypergraph(scheme, 3, side="idempotents")
    assert Hd.side == "idempotents"
    # formally self-dual amorphic scheme: both sides complete
    assert Hd.is_complete() and Hr.is_complete()


def test_idempotent_side_respects_limit():
    scheme = am.gen_net_scheme(4, am.SlopeGrouping.singletons(4))
    with pytest.raises(am.LimitExceeded):
        am.build_fusing_hypergraph(scheme, 3, side="idempotents", limit=4)


def test_uniformity_checks():
    scheme = am.gen_hamming_binary(3)
    with pytest.raises(am.WrongUniformity):
        am.build_fusing_hypergraph(scheme, 4)
    H2 = am.build_fusing_hypergraph(scheme, 2)
    with pytest.raises(am.WrongUniformity):
        am.sunflower_cores(H2)
    H3 = am.build_fusing_hypergraph(scheme, 3)
    with pytest.raises(am.WrongUniformity):
        am.graph_shape(H3)
    with pytest.raises(am.WrongUniformity):
        am.to_dot(H3)


def test_edge_validation():
    with pytest.raises(ValueError):
        am.UniformHypergraph(k=2, vertices=(1, 2), edges=frozenset({(1, 2, 3)}))


def test_dot_and_edge_list_deterministic():
    H = am.build_fusing_hypergraph(am.gen_hamming_binary(3), 2)
    dot = am.to_dot(H)
    assert dot == ("graph fusing {\n  1;\n  2;\n  3;\n"
                   "  1 -- 2;\n  1 -- 3;\n}\n")
    H3 = am.build_fusing_hypergraph(
        am.gen_net_scheme(3, am.SlopeGrouping.singletons(3)), 3)
    assert am.to_edge_list(H3) == "1 2 3\n1 2 4\n1 3 4\n2 3 4\n"


def test_graph_shape_cycle_is_not_path():
    H = am.UniformHypergraph(
        k=2, vertices=(1, 2, 3),
        edges=frozenset({(1, 2), (2, 3), (1, 3)}))
    shape = am.graph_shape(H)
    assert shape.connected and not shape.is_path
