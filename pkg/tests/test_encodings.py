import itertools
import random

import pytest
from hypothesis import given, strategies as st

from conftest import words
from paramspace.encodings import (
    check_substitution_preservation,
    encode_poset,
    encode_triangle_free,
    graph_edge,
    induced_structure,
    is_graph_vertex,
    leq,
    lex_less,
    order_leq,
    parameter_free_indices,
)
from paramspace.errors import NotPartialOrder, NotTriangleFree, SubstitutionArity
from paramspace.structures import (
    all_graphs,
    all_posets,
    all_triangle_free_graphs,
    graph,
    is_triangle_free,
    poset,
)
from paramspace.words import GRAPH_ALPHABET, POSET_ALPHABET, identity_word, substitute, words_up_to

G, P = GRAPH_ALPHABET, POSET_ALPHABET


def edge_oracle(U, V):
    if len(U) == len(V):
        return False
    if len(U) > len(V):
        U, V = V, U
    return V[len(U)] == 0 and not any(a == b == 0 for a, b in zip(U, V))


def leq_oracle(w, v):
    if w == v:
        return True
    rank = {"L": 0, "X": 1, "R": 2}
    for i in range(min(len(w), len(v))):
        if (w[i], v[i]) == ("L", "R"):
            return True
        if rank[w[i]] > rank[v[i]]:
            return False
    return False


def test_edge_examples(gw):
    assert graph_edge(gw("<0>"), gw("0<0>"))
    assert not graph_edge(gw("<0>"), gw("<0>0"))
    assert not graph_edge(gw("<0>"), gw("<0><0>"))
    assert graph_edge(gw("0<0>"), gw("<0>"))
    assert not graph_edge(gw("0<0>"), gw("0<0>"))


def test_order_examples(pw):
    assert order_leq(pw("L"), pw("R")) == (True, 0)
    assert not leq(pw("LX"), pw("XR")) and not leq(pw("XR"), pw("LX"))
    assert leq(pw("XLX"), pw("XLX"))
    assert order_leq(pw("XLR"), pw("XRL")) == (True, 1)


def test_graph_encoder_examples(gw):
    assert encode_triangle_free(graph(2, [(0, 1)])) == [(), gw("<0>")]
    assert encode_triangle_free(graph(3, [(0, 1), (1, 2)]))[2] == gw("0<0>")
    with pytest.raises(NotTriangleFree):
        encode_triangle_free(graph(3, [(0, 1), (1, 2), (0, 2)]))


def test_isolated_prefix_vertices_are_flagged(gw):
    ws = encode_triangle_free(graph(3, [(1, 2)]))
    assert parameter_free_indices(ws) == [0, 1]
    assert not is_graph_vertex(ws[0]) and is_graph_vertex(ws[2])


def test_poset_encoder_examples(pw):
    assert encode_poset(poset(1)) == [pw("LR")]
    assert encode_poset(poset(2, [(0, 1)]))[1] == pw("RRLR")
    anti = encode_poset(poset(2))
    assert anti == [pw("LR"), pw("XXLR")]
    assert not leq(*anti) and not leq(*reversed(anti))
    assert [len(w) for w in encode_poset(poset(4))] == [2, 4, 6, 8]
    with pytest.raises(NotPartialOrder):
        encode_poset(poset(2, [(0, 1), (1, 0)]))


def test_induced_examples(gw, pw):
    assert induced_structure([gw("0<0>"), gw("<0>")], "graph") == graph(2, [(0, 1)])
    assert induced_structure([pw("R"), pw("L")], "poset") == poset(2, [(0, 1)])
    assert induced_structure([pw("X")], "poset").size == 1


def test_graph_edge_matches_oracle():
    ws = words_up_to(G, 5, 1)
    for U, V in itertools.product(ws, repeat=2):
        assert graph_edge(U, V) == edge_oracle(U, V)


def test_order_matches_oracle():
    ws = words_up_to(P, 4, 0)
    for w, v in itertools.product(ws, repeat=2):
        assert leq(w, v) == leq_oracle(w, v)


def test_no_triangles_length_6():
    ws = words_up_to(G, 6, 1)
    nbrs = {w: {v for v in ws if edge_oracle(w, v)} for w in ws}
    assert all(not (nbrs[u] & nbrs[v]) for u in ws for v in nbrs[u])


def test_partial_order_axioms_length_4():
    ws = words_up_to(P, 4, 0)
    rel = {(w, v): order_leq(w, v) for w in ws for v in ws}
    for w in ws:
        assert rel[w, w][0]
    for w, v in itertools.permutations(ws, 2):
        if rel[w, v][0]:
            assert not rel[v, w][0]
            assert lex_less(P, w, v)
            for u in ws:
                if u not in (w, v) and rel[v, u][0]:
                    assert rel[w, u][0]
                    assert rel[w, u][1] <= min(rel[w, v][1], rel[v, u][1])


@pytest.mark.parametrize("m", range(7))
def test_graph_encoder_exhaustive(m):
    for H in all_triangle_free_graphs(m):
        ws = encode_triangle_free(H)
        assert [len(w) for w in ws] == list(range(m))
        for i, j in itertools.combinations(range(m), 2):
            assert graph_edge(ws[i], ws[j]) == H.adjacent(i, j)


def test_graph_encoder_random_seven():
    rng = random.Random(7)
    pairs = list(itertools.combinations(range(7), 2))
    done = 0
    while done < 200:
        H = graph(7, [p for p in pairs if rng.random() < 0.3])
        if not is_triangle_free(H):
            continue
        done += 1
        ws = encode_triangle_free(H)
        assert all(graph_edge(ws[i], ws[j]) == H.adjacent(i, j) for i, j in pairs)


@pytest.mark.parametrize("m", range(5))
def test_poset_encoder_exhaustive_any_labelling(m):
    for Q in all_posets(m):
        ws = encode_poset(Q)
        for i, j in itertools.permutations(range(m), 2):
            assert leq(ws[i], ws[j]) == Q.leq(i, j)


def test_identity_substitution_preserves(gw):
    S = [gw("<0>"), gw("0<0>"), gw("<0>00")]
    assert check_substitution_preservation(identity_word(4), S, "graph")
    with pytest.raises(SubstitutionArity):
        check_substitution_preservation(identity_word(2), S, "graph")


@st.composite
def fuzz_case(draw, alphabet, k):
    """A word with 8 to 12 parameters and a pair of distinct short words."""
    params = draw(st.integers(8, 12))
    W = draw(words(alphabet, k=params, min_len=params, max_len=12))
    pair = draw(st.lists(words(alphabet, k=k, min_len=k, max_len=6), min_size=2, max_size=2, unique=True))
    return W, pair


@given(fuzz_case(G, 1))
def test_graph_substitution_preserves_edges(case):
    W, pair = case
    images = [substitute(W, U) for U in pair]
    assert images[0] != images[1]
    assert edge_oracle(*pair) == edge_oracle(*images)
    assert check_substitution_preservation(W, pair, "graph")


@given(fuzz_case(P, 0))
def test_poset_substitution_preserves_order(case):
    W, pair = case
    images = [substitute(W, U) for U in pair]
    assert leq_oracle(*pair) == leq_oracle(*images)
    assert leq_oracle(*reversed(pair)) == leq_oracle(*reversed(images))
    assert check_substitution_preservation(W, pair, "poset")
