"""Word models of the universal triangle-free graph and the universal partial
order, and the encoders of finite graphs/posets into them.

Graph vertices are 1-parameter words over ``0``; order vertices are
parameter-free words over ``L < X < R``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import NotPartialOrder, NotTriangleFree, InternalCheckFailed
from .structures import Structure, is_partial_order, is_triangle_free, poset as make_poset, graph as make_graph
from .words import GRAPH_ALPHABET, POSET_ALPHABET, Alphabet, Word, param_count, substitute

LAMBDA = 0  # the parameter lambda_0
ZERO = "0"
_LEX = {"L": 0, "X": 1, "R": 2}


def graph_edge(U: Word, V: Word) -> bool:
    """Adjacency in the word graph: the longer word passes lambda_0 at the
    shorter one's length, and the two never carry lambda_0 in parallel."""
    if len(U) == len(V):
        return False
    if len(U) > len(V):
        U, V = V, U
    n = len(U)
    if V[n] != LAMBDA:
        return False
    # '0' != 0, so this only matches parameter entries
    return not any(a == LAMBDA == b for a, b in zip(U, V))


def is_graph_vertex(U: Word) -> bool:
    return LAMBDA in U and all(x == ZERO or x == LAMBDA for x in U)


def encode_triangle_free(H: Structure) -> list:
    """Word for vertex i has length i with lambda_0 exactly at earlier neighbours.

    Vertices with no earlier neighbour (vertex 0 in particular) get a
    parameter-free word; adjacency is unaffected since it only reads
    positions.  Use :func:`parameter_free_indices` to flag them.
    """
    if not is_triangle_free(H):
        raise NotTriangleFree("input graph contains a triangle")
    words = [tuple(LAMBDA if H.adjacent(j, i) else ZERO for j in range(i)) for i in range(H.size)]
    for i in range(H.size):
        for j in range(i + 1, H.size):
            if graph_edge(words[i], words[j]) != H.adjacent(i, j):
                raise InternalCheckFailed(f"adjacency of {i},{j} not reproduced")
    return words


def parameter_free_indices(words: Sequence[Word]) -> list:
    return [i for i, w in enumerate(words) if param_count(w) == 0]


def order_leq(w: Word, v: Word) -> tuple:
    """(w <= v, witness): witness is the first (L, R) position, None when w == v
    or the relation fails."""
    if w == v:
        return True, None
    for i, (a, b) in enumerate(zip(w, v)):
        if a == "L" and b == "R":
            return True, i
        if _LEX[a] > _LEX[b]:
            return False, None
    return False, None


def leq(w: Word, v: Word) -> bool:
    return order_leq(w, v)[0]


def encode_poset(P: Structure) -> list:
    """Word for vertex j: a pair per earlier vertex i ((L,L) if j<=i, (R,R) if
    i<=j, (X,X) if incomparable) followed by (L,R); length 2j+2."""
    if not is_partial_order(P):
        raise NotPartialOrder("input relation is not a partial order")
    words = []
    for j in range(P.size):
        w = []
        for i in range(j):
            if P.leq(j, i):
                w += ["L", "L"]
            elif P.leq(i, j):
                w += ["R", "R"]
            else:
                w += ["X", "X"]
        w += ["L", "R"]
        words.append(tuple(w))
    for i in range(P.size):
        for j in range(P.size):
            if i != j and leq(words[i], words[j]) != P.leq(i, j):
                raise InternalCheckFailed(f"comparability of {i},{j} not reproduced")
    return words


def sort_vertices(S: Iterable[Word], kind: str) -> list:
    alphabet = GRAPH_ALPHABET if kind == "graph" else POSET_ALPHABET
    return sorted(set(S), key=alphabet.sort_key)


def induced_structure(S: Iterable[Word], kind: str) -> Structure:
    """The graph (via graph_edge) or poset (via order_leq) induced on S, with
    vertices numbered in (length, lex) order."""
    vs = sort_vertices(S, kind)
    m = len(vs)
    if kind == "graph":
        return make_graph(m, [(i, j) for i in range(m) for j in range(i + 1, m) if graph_edge(vs[i], vs[j])])
    if kind == "poset":
        return make_poset(m, [(i, j) for i in range(m) for j in range(m) if i != j and leq(vs[i], vs[j])])
    raise ValueError(f"kind must be 'graph' or 'poset', not {kind!r}")


def relation_for(kind: str):
    if kind == "graph":
        return graph_edge
    if kind == "poset":
        return leq
    raise ValueError(f"kind must be 'graph' or 'poset', not {kind!r}")


def check_substitution_preservation(W: Word, S: Iterable[Word], kind: str) -> bool:
    """Does substitution into W preserve the induced structure on S?

    W needs at least max|S| parameters (SubstitutionArity otherwise).
    """
    rel = relation_for(kind)
    S = list(dict.fromkeys(S))
    images = [substitute(W, U) for U in S]
    if len(set(images)) != len(images):
        return False
    for a in range(len(S)):
        for b in range(len(S)):
            if a != b and rel(S[a], S[b]) != rel(images[a], images[b]):
                return False
    return True


def lex_less(alphabet: Alphabet, u: Word, v: Word) -> bool:
    """Lexicographic order; a proper prefix is smaller."""
    return alphabet.lex_key(u) < alphabet.lex_key(v)
