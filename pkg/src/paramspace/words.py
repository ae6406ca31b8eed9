"""Parameter words over a finite alphabet.

A word is a plain tuple.  Alphabet symbols are single-character strings and
the parameter lambda_i is the integer ``i``, so ``('0', 0, 0)`` is the word
written ``0<0><0>`` in literal syntax.  Keeping words as tuples makes them
hashable, cheap to slice and fast to compare, which matters for the
exhaustive sweeps built on top of this module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import BoundTooLarge, MalformedWord, SubstitutionArity

Word = tuple

DEFAULT_ENUMERATION_CAP = 10**7
EMPTY_TOKEN = "@empty"
_RESERVED = set("<>@*# \t\n")


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of symbols; list position defines the lexicographic order."""

    symbols: str
    rank: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("alphabet must contain at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"alphabet symbols must be distinct: {self.symbols!r}")
        bad = [c for c in self.symbols if c in _RESERVED or not c.isprintable()]
        if bad:
            raise ValueError(f"reserved or unprintable symbols in alphabet: {bad!r}")
        object.__setattr__(self, "rank", {c: i for i, c in enumerate(self.symbols)})

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, c):
        return c in self.rank

    def entry_rank(self, x) -> int:
        # letters first, then parameters by index
        if type(x) is int:
            return len(self.symbols) + x
        return self.rank[x]

    def sort_key(self, word: Word):
        """Length-major, then lexicographic with all letters before parameters."""
        rank = self.rank
        s = len(self.symbols)
        return (len(word), tuple(s + x if type(x) is int else rank[x] for x in word))

    def lex_key(self, word: Word):
        """Pure lexicographic key; a proper prefix sorts first."""
        rank = self.rank
        s = len(self.symbols)
        return tuple(s + x if type(x) is int else rank[x] for x in word)


GRAPH_ALPHABET = Alphabet("0")
POSET_ALPHABET = Alphabet("LXR")


def param_count(word: Word) -> int:
    k = 0
    for x in word:
        if type(x) is int and x >= k:
            k = x + 1
    return k


def identity_word(n: int) -> Word:
    """lambda_0 lambda_1 ... lambda_{n-1}"""
    return tuple(range(n))


def validate(letters: Iterable, alphabet: Alphabet) -> Word:
    """Check the parameter-word invariants and return the word as a tuple.

    Raises MalformedWord on an unknown symbol, a skipped parameter index or
    first occurrences out of order (the last two are the same condition when
    scanning left to right).
    """
    out = []
    nxt = 0
    for pos, x in enumerate(letters):
        if type(x) is int:
            if x < 0:
                raise MalformedWord(pos, f"negative parameter index {x}")
            if x > nxt:
                raise MalformedWord(pos, f"parameter {x} occurs before parameter {nxt}")
            if x == nxt:
                nxt += 1
        elif isinstance(x, str) and x in alphabet:
            pass
        else:
            raise MalformedWord(pos, f"symbol {x!r} not in alphabet {alphabet.symbols!r}")
        out.append(x)
    return tuple(out)


def is_valid(letters: Iterable, alphabet: Alphabet) -> bool:
    try:
        validate(letters, alphabet)
    except MalformedWord:
        return False
    return True


_TOKEN = re.compile(r"<(\d+)>|(.)", re.S)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse literal syntax: letters verbatim, parameter i as ``<i>``."""
    if text == EMPTY_TOKEN:
        return ()
    letters = []
    for m in _TOKEN.finditer(text):
        if m.group(1) is not None:
            letters.append(int(m.group(1)))
        else:
            letters.append(m.group(2))
    return validate(letters, alphabet)


def format_word(word: Word, empty: str = EMPTY_TOKEN) -> str:
    if not word:
        return empty
    return "".join(f"<{x}>" if type(x) is int else x for x in word)


def substitute(W: Word, U: Word) -> Word:
    """W(U): replace lambda_i by U_i, truncating before the first lambda_{|U|}."""
    m = len(U)
    if m > param_count(W):
        raise SubstitutionArity(f"|U|={m} exceeds the {param_count(W)} parameters of W")
    out = []
    for x in W:
        if type(x) is int:
            if x == m:
                break
            out.append(U[x])
        else:
            out.append(x)
    return tuple(out)


def substitute_set(W: Word, S: Iterable[Word]) -> frozenset:
    return frozenset(substitute(W, U) for U in S)


def collisions(W: Word, S: Iterable[Word]) -> dict:
    """Images of W hit by more than one element of S, with their preimages."""
    pre = {}
    for U in S:
        pre.setdefault(substitute(W, U), []).append(U)
    return {img: us for img, us in pre.items() if len(us) > 1}


@dataclass(frozen=True)
class Space:
    """All k-parameter words of length exactly n (exact) or at most n.

    ``n=None`` is the unbounded space; it supports membership tests but not
    enumeration.
    """

    alphabet: Alphabet
    n: int | None
    k: int
    exact: bool = False

    def __post_init__(self):
        if self.k < 0 or (self.n is not None and self.n < 0):
            raise ValueError("negative bound")
        if self.exact and self.n is not None and self.k > self.n:
            raise ValueError(f"exact space needs k <= n, got k={self.k}, n={self.n}")

    def lengths(self) -> range:
        if self.n is None:
            raise ValueError("unbounded space has no finite length range")
        if self.exact:
            return range(self.n, self.n + 1)
        return range(self.k, self.n + 1)

    def __contains__(self, word) -> bool:
        if not is_valid(word, self.alphabet) or param_count(word) != self.k:
            return False
        if self.n is None:
            return True
        return len(word) == self.n if self.exact else len(word) <= self.n

    def __len__(self):
        return space_size(self)


@lru_cache(maxsize=None)
def count_words(sigma: int, length: int, k: int) -> int:
    """Number of k-parameter words of the given length over sigma letters."""

    @lru_cache(maxsize=None)
    def rest(left, used):
        if used > k or k - used > left:
            return 0
        if left == 0:
            return 1
        total = (sigma + used) * rest(left - 1, used)
        if used < k:
            total += rest(left - 1, used + 1)
        return total

    return rest(length, 0)


def space_size(space: Space) -> int:
    sigma = len(space.alphabet)
    return sum(count_words(sigma, n, space.k) for n in space.lengths())


def _words_of_length(alphabet: Alphabet, length: int, k: int) -> Iterator[Word]:
    letters = alphabet.symbols
    buf: list = []

    def rec(left, used):
        if left == 0:
            if used == k:
                yield tuple(buf)
            return
        # only spend a position on an old symbol if the remaining parameters still fit
        if k - used < left:
            for c in letters:
                buf.append(c)
                yield from rec(left - 1, used)
                buf.pop()
            for i in range(used):
                buf.append(i)
                yield from rec(left - 1, used)
                buf.pop()
        if used < k:
            buf.append(used)
            yield from rec(left - 1, used + 1)
            buf.pop()

    yield from rec(length, 0)


def enumerate_space(space: Space, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Word]:
    """Yield every word of the space once, ordered by Alphabet.sort_key."""
    total = space_size(space)
    if total > cap:
        raise BoundTooLarge(f"space has {total} words, cap is {cap}")
    for n in space.lengths():
        yield from _words_of_length(space.alphabet, n, space.k)


def words_up_to(alphabet: Alphabet, n: int, k: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list:
    return list(enumerate_space(Space(alphabet, n, k), cap))


def is_prefix(u: Sequence, v: Sequence) -> bool:
    return len(u) <= len(v) and tuple(v[: len(u)]) == tuple(u)
