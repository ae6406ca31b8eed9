import itertools
import random

import pytest
from hypothesis import given, strategies as st

from paramspace.errors import ExtensionConflict, InvalidTriple, KindUnsupported, NotAChain, NotTriangleFree
from paramspace.interpretations import (
    GrowablePoset,
    all_chains,
    chain_distance,
    derived_bipartite_graph,
    embed_triangle_free_into_gp,
    gp_adjacency,
    gp_edge,
    gp_triangles,
    gp_vertices,
    is_bipartite,
    metric_from_chains,
    projection_preserves,
    reduct_age_check,
    superpose,
    tuple_distance,
    ultrametric_from_tuples,
    unary_from_pairs,
)
from paramspace.structures import (
    all_graphs,
    all_posets,
    all_triangle_free_graphs,
    distance_matrix,
    graph,
    is_metric,
    is_partial_order,
    is_ultrametric,
    isomorphic,
    linear,
    metric,
    poset,
    Structure,
    unary,
)


def edge_pattern():
    """Six points with exactly u0 < v1 < u2, v0 < u1 < v2 and the two
    within-triple orders u0 < u2, v0 < v2 forced by transitivity."""
    u0, u1, u2, v0, v1, v2 = range(6)
    P = poset(6, [(u0, v1), (v1, u2), (u0, u2), (v0, u1), (u1, v2), (v0, v2)])
    assert is_partial_order(P)
    return P, (u0, u1, u2), (v0, v1, v2)


def test_gp_edge_on_the_pattern():
    P, t, s = edge_pattern()
    assert gp_edge(t, s, P) and gp_edge(s, t, P)
    with pytest.raises(InvalidTriple):
        gp_edge(t, t[::-1], P)
    assert not gp_edge(t, t, P)


def test_two_edges_force_a_non_edge():
    # on a path u - v - w the two edges make some pair across u and w comparable
    H = graph(3, [(0, 1), (1, 2)])
    P, ts = embed_triangle_free_into_gp(H)
    assert not gp_edge(ts[0], ts[2], P)
    G = GrowablePoset.from_structure(P.to_structure())
    u, w = ts[0], ts[2]
    assert G.comparable(u[0], w[0]) or G.comparable(u[2], w[2]) or G.comparable(u[0], w[2])


def test_gp_examples():
    P, ts = embed_triangle_free_into_gp(graph(2, [(0, 1)]))
    assert P.size == 6 and gp_edge(ts[0], ts[1], P)
    P, ts = embed_triangle_free_into_gp(graph(2))
    assert not gp_edge(ts[0], ts[1], P)
    c5 = graph(5, [(i, (i + 1) % 5) for i in range(5)])
    P, ts = embed_triangle_free_into_gp(c5)
    assert all(gp_edge(ts[i], ts[j], P) == c5.adjacent(i, j) for i, j in itertools.combinations(range(5), 2))
    with pytest.raises(NotTriangleFree):
        embed_triangle_free_into_gp(graph(3, [(0, 1), (1, 2), (0, 2)]))


@pytest.mark.parametrize("m", range(6))
def test_gp_embeds_every_triangle_free_graph(m):
    for H in all_triangle_free_graphs(m):
        P, ts = embed_triangle_free_into_gp(H)
        assert is_partial_order(P.to_structure())
        adj = gp_adjacency(P)
        assert all((ts[j] in adj[ts[i]]) == H.adjacent(i, j) for i, j in itertools.combinations(range(m), 2))
        assert gp_triangles(P) == []


def test_gp_adjacency_matches_pairwise_check():
    rng = random.Random(3)
    for _ in range(20):
        P = rng.choice(list(all_posets(5)))
        verts = gp_vertices(P)
        adj = gp_adjacency(P)
        for t, s in itertools.permutations(verts, 2):
            assert (s in adj[t]) == gp_edge(t, s, P)


def test_extension_conflicts():
    G = GrowablePoset(2)
    G.extend((), (0,))
    with pytest.raises(ExtensionConflict):
        G.extend((0,), (1,))
    with pytest.raises(ExtensionConflict):
        G.extend((0,), ())
    assert G.extend((2, 0), ()) == 3


def test_chain_distance_examples():
    P = linear(6).with_kind("poset")
    assert chain_distance(P, (0, 1, 2), (0, 1, 2), 3) == 0
    Q = poset(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert chain_distance(Q, (0, 1, 2), (3, 4, 5), 3) == 3
    with pytest.raises(NotAChain):
        metric_from_chains(Q, 3, [(0, 3, 4)])
    with pytest.raises(NotAChain):
        metric_from_chains(Q, 2, [(0, 1, 2)])


def test_chain_metric_shifted_copies():
    # chains sliding along a line: distance is the shift, capped at d
    P = linear(8).with_kind("poset")
    chains = [(0, 1, 2), (1, 2, 3), (2, 3, 4)]
    M = metric_from_chains(P, 3, chains)
    d = distance_matrix(M)
    assert d[0][1] == d[1][2] == 1 and d[0][2] == 2
    assert is_metric(d)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_chain_metrics_exhaustive(d):
    for m in range(6):
        for Q in all_posets(m, linext=True):
            chains = all_chains(Q, d)
            if chains:
                assert is_metric(distance_matrix(metric_from_chains(Q, d, chains)), range(d + 1))


def test_tuple_distance_examples():
    assert tuple_distance((1, 2, 3), (1, 2, 3), 3) == 0
    assert tuple_distance((1, 2, 3), (1, 2, 0), 3) == 1
    assert tuple_distance((0, 2, 3), (1, 2, 3), 3) == 3


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_ultrametric_exhaustive(d):
    tuples = list(itertools.product(range(2), repeat=d))
    U = ultrametric_from_tuples(d, tuples)
    assert is_ultrametric(distance_matrix(U))


@given(st.integers(1, 4), st.lists(st.lists(st.integers(0, 2), min_size=4, max_size=4), min_size=3, max_size=3))
def test_ultrametric_isosceles(d, rows):
    a, b, c = (tuple(r[:d]) for r in rows)
    ds = sorted([tuple_distance(a, b, d), tuple_distance(b, c, d), tuple_distance(a, c, d)])
    assert ds[1] == ds[2]


def test_unary_from_pairs():
    P = poset(3, [(0, 1)])
    U = unary_from_pairs([(0, 1), (1, 0), (0, 2)], P)
    assert U.rel("R") == {(0,)}
    with pytest.raises(ValueError):
        unary_from_pairs([(1, 1)], P)


def test_superpose_poset_linear():
    sp = superpose([poset(2, [(0, 1)]), linear(2)])
    assert sp.structure.size == 4
    le = sp.structure.rel("c0.le")
    # same first coordinate: only the reflexive pair survives
    a, b = sp.vertices.index((0, 0)), sp.vertices.index((0, 1))
    assert (a, b) not in le and (a, a) in le
    assert (a, sp.vertices.index((1, 1))) in le
    assert reduct_age_check(sp) == {0: [], 1: []}


def test_superpose_graph_unary_bipartite():
    for H in all_graphs(3):
        sp = superpose([H, unary(2, [0])])
        assert is_bipartite(derived_bipartite_graph(sp, 0, 1))
        assert reduct_age_check(sp) == {0: [], 1: []}


def test_single_component_blowup():
    H = graph(3, [(0, 1)])
    sp = superpose([H])
    assert isomorphic(sp.reduct(0), H)
    assert projection_preserves(sp, [0, 1, 2])


def test_transversal_projection():
    sp = superpose([poset(3, [(0, 2)]), linear(3), metric(3, [[0, 1, 2], [1, 0, 1], [2, 1, 0]])])
    for sub in itertools.combinations(range(sp.structure.size), 3):
        if sp.is_transversal(sub):
            assert projection_preserves(sp, sub)


def test_superpose_rejects_unknown_kind():
    with pytest.raises(KindUnsupported):
        superpose([Structure("product", 1)])


def test_bipartite_check():
    assert not is_bipartite(graph(3, [(0, 1), (1, 2), (0, 2)]))
    assert is_bipartite(graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
