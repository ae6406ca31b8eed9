import pytest

from paramspace.degrees import (
    brd_upper_bound,
    enumerate_canonical_types,
    realized_census,
    realized_type_oracle,
    structure_key,
)
from paramspace.envelopes import dim_bound, is_canonical_type
from paramspace.errors import CapExceeded, KindUnsupported
from paramspace.structures import graph, poset

EDGE = graph(2, [(0, 1)])


def elements(census):
    return {T.elements for T in census.types()}


def test_vertex_types(gw):
    g = enumerate_canonical_types("graph", 1)
    assert elements(g) == {frozenset({gw("<0>")})}
    p = enumerate_canonical_types("poset", 1)
    assert elements(p) == {frozenset({()})}
    assert realized_type_oracle("graph", 1, 4) == g.types()
    assert realized_type_oracle("poset", 1, 3) == p.types()
    assert brd_upper_bound(graph(1)) == brd_upper_bound(poset(1)) == 1


def test_empty_set_has_one_type():
    assert enumerate_canonical_types("graph", 0).total() == 1


def test_graph_pairs_three_routes():
    census = enumerate_canonical_types("graph", 2)
    assert census.dim_cap == dim_bound(1, 1, 2) == 5
    assert census.total() == 34
    assert len(census.bucket_of(graph(2))) == 31
    assert census.types() == enumerate_canonical_types("graph", 2, method="filter").types()
    assert census.types() == realized_type_oracle("graph", 2, 5)
    assert all(is_canonical_type(T.elements) for T in census.types())


def test_edge_types_listed(gw):
    edge_types = {T.elements for T in enumerate_canonical_types("graph", 2).bucket_of(EDGE)}
    assert edge_types == {
        frozenset({gw("<0>"), gw("0<0>")}),
        frozenset({gw("0<0>"), gw("<0>0<0>")}),
        frozenset({gw("<0>0"), gw("0<0><0>")}),
    }
    assert brd_upper_bound(EDGE) == 3


def test_poset_pair_counts():
    census = enumerate_canonical_types("poset", 2)
    chain, anti = poset(2, [(0, 1)]), poset(2)
    assert census.total() == 6849
    assert len(census.bucket_of(chain)) == 3416
    assert len(census.bucket_of(anti)) == 3433
    assert all(max(len(w) for w in T.elements) <= census.dim_cap for T in census.types())


@pytest.mark.parametrize("cap", [3, 4, 5])
def test_pair_fast_path_matches_tau(cap):
    assert realized_type_oracle("poset", 2, cap) == realized_type_oracle("poset", 2, cap, fast=False)


def test_realized_poset_pairs_grow_towards_census():
    full = enumerate_canonical_types("poset", 2).types()
    partial = realized_type_oracle("poset", 2, 5)
    assert partial < full


def test_realized_census_buckets():
    census = realized_census("graph", 2, 5)
    assert census.counts()[structure_key(EDGE)] == 3


def test_no_triangle_types():
    census = enumerate_canonical_types("graph", 3)
    assert census.total() == 160323
    triangle = graph(3, [(0, 1), (1, 2), (0, 2)])
    assert census.bucket_of(triangle) == []
    counts = {n: len(census.bucket_of(graph(3, es))) for n, es in ((0, []), (1, [(0, 1)]), (2, [(0, 1), (1, 2)]))}
    assert counts == {0: 155510, 1: 4472, 2: 341}


def test_caps_and_kinds():
    with pytest.raises(CapExceeded):
        enumerate_canonical_types("poset", 3)
    with pytest.raises(CapExceeded):
        enumerate_canonical_types("poset", 2, method="filter")
    with pytest.raises(CapExceeded):
        realized_type_oracle("poset", 2, 9, cap=1000)
    with pytest.raises(KindUnsupported):
        enumerate_canonical_types("metric", 1)
    with pytest.raises(ValueError):
        enumerate_canonical_types("graph", 2, method="magic")
