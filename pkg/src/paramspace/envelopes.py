"""Minimal envelopes and embedding types of finite sets of parameter words."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import MalformedWord, NotInSubspace
from .words import (
    Alphabet,
    Space,
    Word,
    enumerate_space,
    format_word,
    identity_word,
    param_count,
    substitute,
)

_PAD = None  # the padding symbol past a word's end; never part of a word


@dataclass(frozen=True)
class Envelope:
    word: Word
    first_occ: tuple

    @property
    def dim(self) -> int:
        return len(self.first_occ)

    @classmethod
    def of(cls, word: Word) -> "Envelope":
        first = []
        for pos, x in enumerate(word):
            if type(x) is int and x == len(first):
                first.append(pos)
        return cls(tuple(word), tuple(first))

    def __str__(self):
        return format_word(self.word)


def generic_key(word: Word):
    # alphabet-free total order used only for canonical hashing/printing
    return (len(word), tuple((1, x) if type(x) is int else (0, x) for x in word))


@dataclass(frozen=True)
class EmbeddingType:
    elements: frozenset
    dim: int

    def sorted(self, alphabet: Alphabet | None = None) -> list:
        key = alphabet.sort_key if alphabet is not None else generic_key
        return sorted(self.elements, key=key)

    @property
    def max_length(self) -> int:
        return max((len(w) for w in self.elements), default=0)

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return "{" + ", ".join(format_word(w) for w in self.sorted()) + "}"


def minimal_envelope(S: Iterable[Word]) -> Envelope:
    """Envelope built column by column from the slices of S.

    Column j gets the common letter if its slice is constant over the
    alphabet, otherwise copies the entry of the first earlier compatible
    column, otherwise opens a fresh parameter.  Ties go to the smallest
    earlier column, so the result is deterministic.

    Padding past the end of a word counts as a wildcard unless j is exactly
    that word's length.  Compatibility already reads it that way; reading the
    constant-letter case literally instead gives non-minimal envelopes such
    as <0><1> for {@empty, LX}, whose minimal envelope is <0>X.
    """
    words = list(S)
    if not words:
        return Envelope((), ())
    lengths = [len(w) for w in words]
    m = max(lengths)
    slices = [tuple(w[j] if j < n else _PAD for w, n in zip(words, lengths)) for j in range(m)]
    out: list = []
    first: list = []
    for j, s in enumerate(slices):
        # padding strictly past a word's end is a wildcard, here as in compatibility
        live = {x for x, n in zip(s, lengths) if x is not _PAD or j == n}
        if len(live) == 1:
            (s0,) = live
            if type(s0) is str:
                out.append(s0)
                continue
        for i in range(j):
            t = slices[i]
            for a, b, n in zip(t, s, lengths):
                if a != b and (b is not _PAD or j == n):
                    break
            else:
                out.append(out[i])
                break
        else:
            out.append(len(first))
            first.append(j)
    return Envelope(tuple(out), tuple(first))


def preimage(env: Envelope, U: Word) -> Word:
    """The unique U' with env.word(U') == U, found by truncation point lookup."""
    W = env.word
    n = len(U)
    if n == len(W):
        j = env.dim
    else:
        try:
            j = env.first_occ.index(n)
        except ValueError:
            raise NotInSubspace(U, f"length {n} is not a truncation point of {format_word(W)}") from None
    Up = tuple(U[p] for p in env.first_occ[:j])
    if substitute(W, Up) != tuple(U):
        raise NotInSubspace(U, f"round trip through {format_word(W)} fails")
    # a round trip onto a valid word forces U' to be valid, but keep the guard cheap
    nxt = 0
    for pos, x in enumerate(Up):
        if type(x) is int:
            if x > nxt:
                raise MalformedWord(pos, "preimage has out-of-order parameters")
            nxt += x == nxt
    return Up


def embedding_type(W, S: Iterable[Word]) -> EmbeddingType:
    env = W if isinstance(W, Envelope) else Envelope.of(W)
    return EmbeddingType(frozenset(preimage(env, U) for U in S), env.dim)


def is_envelope(W, S: Iterable[Word]) -> bool:
    try:
        embedding_type(W, S)
    except (NotInSubspace, MalformedWord):
        return False
    return True


def tau(S: Iterable[Word]) -> EmbeddingType:
    S = list(S)
    return embedding_type(minimal_envelope(S), S)


def is_canonical_type(T: Iterable[Word]) -> bool:
    env = minimal_envelope(T)
    return env.word == identity_word(env.dim)


def dim_bound(sigma_size: int, k: int, ell: int, limit: int = 2**63 - 1) -> int:
    """(sigma+k)^ell + ell - sigma: bound on the parameters of a minimal envelope."""
    if sigma_size < 1 or k < 0 or ell < 0:
        raise ValueError("need sigma_size >= 1, k >= 0, ell >= 0")
    value = (sigma_size + k) ** ell + ell - sigma_size
    if value > limit:
        raise OverflowError(f"dimension bound {sigma_size},{k},{ell} exceeds {limit}")
    return value


def brute_force_minimal_envelopes(S: Iterable[Word], alphabet: Alphabet) -> tuple:
    """All minimal envelopes of S of length max|S|, by exhaustive search.

    Returns (dimension, list of envelope words).  Envelopes never shrink
    under substitution, so none is shorter than the longest element.
    """
    S = list(S)
    m = max((len(w) for w in S), default=0)
    # a longest element is an untruncated image, so W's letters must match it
    top = next((w for w in S if len(w) == m), ())
    for d in range(m + 1):
        found = [
            W
            for W in enumerate_space(Space(alphabet, m, d, exact=True))
            if all(type(x) is int or x == y for x, y in zip(W, top)) and is_envelope(W, S)
        ]
        if found:
            return d, found
    raise AssertionError("the identity word of length max|S| is always an envelope")


def first_occurrences(W: Word) -> tuple:
    return Envelope.of(W).first_occ


__all__ = [
    "Envelope",
    "EmbeddingType",
    "minimal_envelope",
    "embedding_type",
    "preimage",
    "is_envelope",
    "tau",
    "is_canonical_type",
    "dim_bound",
    "brute_force_minimal_envelopes",
    "first_occurrences",
    "param_count",
]
