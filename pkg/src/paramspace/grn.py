"""Finite Ramsey embeddings of ordered triangle-free graphs into G_n and of
posets with linear extension into O_n, plus the copy words W with
W(phi'(A)) = phi(copy of A).

Every constructor re-checks its output (embedding property, order,
substitution round trip) before returning.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .encodings import LAMBDA, ZERO, graph_edge, leq
from .errors import (
    InternalCheckFailed,
    MalformedWord,
    NotAnEmbedding,
    NotPartialOrder,
    NotTriangleFree,
)
from .structures import Structure, is_embedding, is_linear_extension, is_partial_order, is_triangle_free
from .words import GRAPH_ALPHABET, POSET_ALPHABET, Word, param_count, substitute, validate
from .envelopes import first_occurrences


@dataclass(frozen=True)
class KatetovSystem:
    """Lex-sorted one-point extensions of an ordered triangle-free graph, each
    a word over {0, lambda_0} of length |B| whose lambda_0-set is independent."""

    base: Structure
    functions: tuple

    @property
    def d(self) -> int:
        return len(self.functions)


@dataclass(frozen=True)
class DownsetSystem:
    """Lex-sorted {L, X}-words of length |B| whose L-set is a downset."""

    base: Structure
    functions: tuple

    @property
    def d(self) -> int:
        return len(self.functions)


@dataclass(frozen=True)
class GRNEmbedding:
    d: int
    n: int
    words: tuple
    system: object = field(repr=False, compare=False, default=None)


@dataclass
class CopyWord:
    word: Word
    k: int
    problems: list

    @property
    def ok(self) -> bool:
        return not self.problems


def _require_graph(B: Structure):
    if B.kind not in ("graph", "ordered-graph"):
        raise ValueError(f"expected an (ordered) graph, got {B.kind}")
    if not is_triangle_free(B):
        raise NotTriangleFree("base graph contains a triangle")


def _require_poset(B: Structure):
    if B.kind not in ("poset", "poset-with-linext"):
        raise ValueError(f"expected a poset with linear extension, got {B.kind}")
    if not is_partial_order(B):
        raise NotPartialOrder("base relation is not a partial order")
    if not is_linear_extension(B):
        raise NotPartialOrder("integer order is not a linear extension of the base order")


def katetov_functions(B: Structure) -> KatetovSystem:
    _require_graph(B)
    m = B.size
    funcs = []
    for bits in itertools.product((ZERO, LAMBDA), repeat=m):
        on = [v for v in range(m) if bits[v] == LAMBDA]
        if not any(B.adjacent(u, v) for u, v in itertools.combinations(on, 2)):
            funcs.append(tuple(bits))
    funcs.sort(key=GRAPH_ALPHABET.lex_key)
    return KatetovSystem(B, tuple(funcs))


def downset_functions(B: Structure) -> DownsetSystem:
    _require_poset(B)
    m = B.size
    funcs = []
    for bits in itertools.product("LX", repeat=m):
        low = {v for v in range(m) if bits[v] == "L"}
        if all(u in low for u, v in B.rel("le") if v in low):
            funcs.append(tuple(bits))
    funcs.sort(key=POSET_ALPHABET.lex_key)
    return DownsetSystem(B, tuple(funcs))


def _lex_monotone(words, alphabet) -> bool:
    keys = [alphabet.lex_key(w) for w in words]
    return all(a < b for a, b in zip(keys, keys[1:]))


def embed_graph_grn(B: Structure) -> GRNEmbedding:
    """phi(v): the column of v in the Katetov table, then lambda_0 at each
    earlier neighbour; |phi(v)| = d + v, n = d + |B|."""
    system = katetov_functions(B)
    d = system.d
    words = []
    for v in range(B.size):
        head = tuple(f[v] for f in system.functions)
        tail = tuple(LAMBDA if B.adjacent(u, v) else ZERO for u in range(v))
        words.append(head + tail)
    for u, v in itertools.combinations(range(B.size), 2):
        if graph_edge(words[u], words[v]) != B.adjacent(u, v):
            raise InternalCheckFailed(f"adjacency of {u},{v} not reproduced")
    if not _lex_monotone(words, GRAPH_ALPHABET):
        raise InternalCheckFailed("lexicographic order of vertex words is not the vertex order")
    return GRNEmbedding(d, d + B.size, tuple(words), system)


def embed_poset_grn(B: Structure) -> GRNEmbedding:
    """phi(v): the column of v in the downset table, then v letters R and a
    final L; |phi(v)| = d + v + 1, n = d + |B| + 1."""
    system = downset_functions(B)
    d = system.d
    words = [tuple(f[v] for f in system.functions) + ("R",) * v + ("L",) for v in range(B.size)]
    for u in range(B.size):
        for v in range(B.size):
            if u != v and leq(words[u], words[v]) != B.leq(u, v):
                raise InternalCheckFailed(f"comparability of {u},{v} not reproduced")
    if not _lex_monotone(words, POSET_ALPHABET):
        raise InternalCheckFailed("lexicographic order of vertex words is not the linear extension")
    return GRNEmbedding(d, d + B.size + 1, tuple(words), system)


def _copy_tuple(copy, A: Structure, B: Structure) -> tuple:
    if isinstance(copy, Mapping):
        if sorted(copy) != list(range(A.size)):
            raise NotAnEmbedding(f"copy map must be defined on 0..{A.size - 1}")
        copy = [copy[a] for a in range(A.size)]
    copy = tuple(copy)
    B_ord = B.with_kind("ordered-graph" if B.kind in ("graph", "ordered-graph") else "poset-with-linext")
    A_ord = A.with_kind(B_ord.kind)
    if not is_embedding(copy, A_ord, B_ord):
        raise NotAnEmbedding(f"{copy} is not an order-preserving embedding")
    return copy


def _first_occurrence_problems(W: Word, k: int, expected_first: Sequence[int]) -> list:
    problems = []
    try:
        validate(W, GRAPH_ALPHABET if not any(x in ("L", "X", "R") for x in W) else POSET_ALPHABET)
    except MalformedWord as exc:
        problems.append(f"not a parameter word: {exc}")
        return problems
    if param_count(W) != k:
        problems.append(f"has {param_count(W)} parameters, expected {k}")
        return problems
    first = first_occurrences(W)
    for j, pos in enumerate(expected_first):
        if first[j] != pos:
            problems.append(f"lambda_{j} first occurs at {first[j]}, minimal extension predicts {pos}")
    return problems


def copy_word_graph_report(B: Structure, A: Structure, copy) -> CopyWord:
    _require_graph(A)
    _require_graph(B)
    copy = _copy_tuple(copy, A, B)
    sysB, sysA = katetov_functions(B), katetov_functions(A)
    d, d2 = sysB.d, sysA.d
    indexA = {f: i for i, f in enumerate(sysA.functions)}
    inverse = {b: a for a, b in enumerate(copy)}

    h = [indexA[tuple(f[b] for b in copy)] for f in sysB.functions]
    top = max(copy, default=-1)
    W = [h[j] for j in range(d)]
    for u in range(top + 1):
        if u in inverse:
            W.append(d2 + inverse[u])
        else:
            # Katetov index of u's neighbourhood inside the copy
            W.append(indexA[tuple(LAMBDA if B.adjacent(u, b) else ZERO for b in copy)])
    W = tuple(W)
    k = d2 + A.size

    # zero extension of f'_j is the lex-least B-function restricting to it
    indexB = {f: i for i, f in enumerate(sysB.functions)}
    expected = []
    for f in sysA.functions:
        ext = [ZERO] * B.size
        for a, b in enumerate(copy):
            ext[b] = f[a]
        expected.append(indexB[tuple(ext)])
    expected += [d + b for b in copy]

    problems = _first_occurrence_problems(W, k, expected)
    if W and W[0] != LAMBDA:
        problems.append("W_0 is not lambda_0")
    if not problems:
        phiA = embed_graph_grn(A).words
        phiB = embed_graph_grn(B).words
        for a, b in enumerate(copy):
            if substitute(W, phiA[a]) != phiB[b]:
                problems.append(f"W(phi'({a})) != phi({b})")
    return CopyWord(W, k, problems)


def copy_word_poset_report(B: Structure, A: Structure, copy) -> CopyWord:
    _require_poset(A)
    _require_poset(B)
    copy = _copy_tuple(copy, A, B)
    sysB, sysA = downset_functions(B), downset_functions(A)
    d, d2 = sysB.d, sysA.d
    indexA = {f: i for i, f in enumerate(sysA.functions)}
    inverse = {b: a for a, b in enumerate(copy)}

    h = [indexA[tuple(f[b] for b in copy)] for f in sysB.functions]
    top = max(copy, default=-1)
    W = [h[j] for j in range(d)]
    for u in range(top + 1):
        W.append(d2 + inverse[u] if u in inverse else "R")
    # one more parameter so W has the parameter count of A's own target space
    W.append(d2 + A.size)
    W = tuple(W)
    k = d2 + A.size + 1

    # lex-least downset extending f'_j: X only where forced by an X below
    indexB = {f: i for i, f in enumerate(sysB.functions)}
    expected = []
    for f in sysA.functions:
        ext = []
        for v in range(B.size):
            if v in inverse:
                ext.append(f[inverse[v]])
            elif any(f[a] == "X" and B.leq(b, v) for a, b in enumerate(copy)):
                ext.append("X")
            else:
                ext.append("L")
        expected.append(indexB[tuple(ext)])
    expected += [d + b for b in copy] + [d + top + 1]

    problems = _first_occurrence_problems(W, k, expected)
    if not problems:
        phiA = embed_poset_grn(A).words
        phiB = embed_poset_grn(B).words
        for a, b in enumerate(copy):
            if substitute(W, phiA[a]) != phiB[b]:
                problems.append(f"W(phi'({a})) != phi({b})")
    return CopyWord(W, k, problems)


def copy_word_graph(B: Structure, A: Structure, copy) -> Word:
    rep = copy_word_graph_report(B, A, copy)
    if rep.problems:
        raise InternalCheckFailed("; ".join(rep.problems))
    return rep.word


def copy_word_poset(B: Structure, A: Structure, copy) -> Word:
    rep = copy_word_poset_report(B, A, copy)
    if rep.problems:
        raise InternalCheckFailed("; ".join(rep.problems))
    return rep.word


def is_interval_copy(copy: Sequence[int]) -> bool:
    """Images form a block of consecutive vertices."""
    return all(b - a == 1 for a, b in zip(copy, copy[1:]))


def solve_substitution(sources: Sequence[Word], targets: Sequence[Word], k: int, alphabet) -> Word | None:
    """Search every k-parameter word W with W(sources[i]) == targets[i] for all i.

    Returns the lexicographically first solution, or None when none exists.
    Entries beyond the longest target are never read except for the
    truncation points, so only unopened parameters are appended there.
    """
    if any(len(U) > k for U in sources) or len(sources) != len(targets):
        raise ValueError("each source needs at most k entries, one target per source")
    if k == 0:
        return () if all(T == () for T in targets) else None
    L = max((len(T) for T in targets), default=0)
    pairs = list(zip(sources, targets))

    def fits(x, p):
        for U, T in pairs:
            if type(x) is int and x >= len(U):
                # lambda_{|U|} truncates here: T has to end exactly at p
                if x == len(U) and len(T) != p:
                    return False
                continue
            if p >= len(T):
                continue
            if (U[x] if type(x) is int else x) != T[p]:
                return False
        return True

    buf: list = []

    def rec(nxt):
        p = len(buf)
        if p == L:
            # parameters not yet opened go last; nothing reads past L
            W = tuple(buf) + tuple(range(nxt, k))
            if all(substitute(W, U) == T for U, T in pairs):
                return W
            return None
        for x in list(alphabet) + list(range(min(nxt + 1, k))):
            if fits(x, p):
                buf.append(x)
                found = rec(nxt + (x == nxt))
                buf.pop()
                if found is not None:
                    return found
        return None

    return rec(0)


def copy_word_exists(B: Structure, A: Structure, copy) -> bool:
    """Whether any parameter word at all sends phi'(A) onto phi(copy of A)."""
    if B.kind in ("graph", "ordered-graph"):
        emb, embA, alphabet = embed_graph_grn(B), embed_graph_grn(A), GRAPH_ALPHABET
        k = embA.n
    else:
        emb, embA, alphabet = embed_poset_grn(B), embed_poset_grn(A), POSET_ALPHABET
        k = embA.n
    copy = _copy_tuple(copy, A, B)
    return solve_substitution(embA.words, [emb.words[b] for b in copy], k, alphabet) is not None
