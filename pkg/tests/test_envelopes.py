import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import words
from paramspace.envelopes import (
    EmbeddingType,
    Envelope,
    brute_force_minimal_envelopes,
    dim_bound,
    embedding_type,
    first_occurrences,
    is_canonical_type,
    is_envelope,
    minimal_envelope,
    preimage,
    tau,
)
from paramspace.errors import NotInSubspace
from paramspace.words import (
    GRAPH_ALPHABET,
    POSET_ALPHABET,
    Space,
    enumerate_space,
    identity_word,
    param_count,
    substitute,
    substitute_set,
    words_up_to,
)

G, P = GRAPH_ALPHABET, POSET_ALPHABET


def oracle_min_dim(S, alphabet, k):
    """Least d such that some d-parameter word of length max|S| has every
    element of S as an image, by direct search over preimages."""
    S = set(S)
    m = max(len(w) for w in S)
    for d in range(m + 1):
        candidates = words_up_to(alphabet, d, k)
        for W in enumerate_space(Space(alphabet, m, d, exact=True)):
            images = {substitute(W, U) for U in candidates if param_count(U) <= k}
            if S <= images:
                return d
    raise AssertionError


def test_example_set(gw):
    S = [gw("0"), gw("000")]
    env = minimal_envelope(S)
    assert env.word == gw("0<0>0") and env.dim == 1
    assert embedding_type(env, S).elements == {(), ("0",)}
    assert is_envelope(identity_word(4), S)
    assert Envelope.of(identity_word(4)).dim == 4
    d, found = brute_force_minimal_envelopes(S, G)
    assert d == 1
    assert set(found) == {gw("0<0>0"), gw("0<0><0>")}


def test_small_cases(gw):
    assert minimal_envelope([]) == Envelope((), ())
    env = minimal_envelope([gw("<0><0>")])
    assert env.word == (0, 0) and env.dim == 1
    assert embedding_type(gw("0<0>0"), [gw("0"), gw("000")]).elements == {(), ("0",)}
    assert embedding_type((0, 1), [("a", "b")]).elements == {("a", "b")}


def test_preimage_outside_subspace(gw):
    with pytest.raises(NotInSubspace):
        preimage(Envelope.of(gw("0<0>0")), gw("00"))
    assert not is_envelope(gw("0<0>0"), [gw("00")])


def test_tau_examples(gw):
    assert tau([gw("0"), gw("000")]).elements == {(), ("0",)}
    assert tau([gw("00")]).elements == {()}
    assert tau([gw("0<0><0>")]).elements == {(0,)}
    assert tau([("L", "X")]) == EmbeddingType(frozenset({()}), 0)


def test_canonical_examples(gw):
    assert is_canonical_type([(), gw("0")])
    assert not is_canonical_type([gw("00")])
    assert is_canonical_type([gw("<0>")])


def test_dim_bound_examples():
    assert dim_bound(1, 1, 2) == 5
    assert dim_bound(3, 0, 2) == 8
    assert dim_bound(1, 0, 0) == 0
    with pytest.raises(ValueError):
        dim_bound(0, 1, 1)


def test_wildcard_padding(pw):
    # a word that has ended does not pin later columns to a parameter
    S = [(), pw("LX")]
    env = minimal_envelope(S)
    assert env.word == pw("<0>X")
    assert brute_force_minimal_envelopes(S, P)[0] == 1


def test_first_occurrences():
    assert first_occurrences(("0", 0, 1, 0, 2)) == (1, 2, 4)
    assert first_occurrences(()) == ()


def pairs_up_to(alphabet, n, k):
    ws = words_up_to(alphabet, n, k)
    for size in (1, 2):
        yield from itertools.combinations(ws, size)


@pytest.mark.parametrize("alphabet,n,k", [(G, 3, 0), (G, 3, 1), (P, 2, 0), (P, 2, 1)])
def test_slice_envelope_is_minimal(alphabet, n, k):
    for S in pairs_up_to(alphabet, n, k):
        env = minimal_envelope(S)
        assert substitute_set(env.word, embedding_type(env, S).elements) == set(S)
        assert env.dim == oracle_min_dim(S, alphabet, k), S


@pytest.mark.parametrize("alphabet,k", [(G, 0), (G, 1), (P, 0)])
def test_rigidity(alphabet, k):
    for S in pairs_up_to(alphabet, 3, k):
        d, envs = brute_force_minimal_envelopes(S, alphabet)
        assert len({first_occurrences(W) for W in envs}) == 1
        assert minimal_envelope(S).word in envs


@st.composite
def word_sets(draw):
    alphabet = draw(st.sampled_from([G, P]))
    k = draw(st.integers(0, 1))
    S = draw(st.sets(words(alphabet, k=k, min_len=k, max_len=8), min_size=1, max_size=3))
    return alphabet, k, sorted(S, key=alphabet.sort_key)


@given(word_sets())
def test_envelope_soundness_and_bound(case):
    alphabet, k, S = case
    env = minimal_envelope(S)
    T = embedding_type(env, S)
    assert substitute_set(env.word, T.elements) == set(S)
    assert env.dim <= dim_bound(len(alphabet), k, len(S))
    assert all(len(U) <= env.dim for U in T.elements)
    assert all(param_count(U) <= k for U in T.elements)


@given(word_sets())
def test_tau_is_idempotent_and_canonical(case):
    _, _, S = case
    T = tau(S)
    assert is_canonical_type(T.elements)
    assert tau(T.elements) == T
    assert minimal_envelope(T.elements).word == identity_word(T.dim)


@given(word_sets(), st.data())
def test_tau_is_substitution_invariant(case, data):
    # moving S by an injective-on-S word keeps its type when dimensions agree
    alphabet, k, S = case
    T = tau(S)
    W = data.draw(words(alphabet, k=T.dim, min_len=T.dim, max_len=T.dim + 3))
    image = [substitute(W, U) for U in T.elements]
    if len(set(image)) == len(image) and minimal_envelope(image).dim == T.dim:
        assert tau(image) == T
