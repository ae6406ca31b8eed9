"""Upper bounds on big Ramsey degrees of the word-encoded triangle-free graph
and partial order: enumerate canonical embedding types of l-element vertex
sets and bucket them by the structure they induce.

Graph vertices are 1-parameter words over ``0``; order vertices are words
over ``LXR``.  Two independent routes produce the type sets:

* :func:`enumerate_canonical_types` builds canonical types column by column,
  keeping only columns that open a fresh parameter of the envelope;
* :func:`realized_type_oracle` applies ``tau`` to every l-subset of vertex
  words up to a length cap.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .encodings import LAMBDA, ZERO, induced_structure
from .envelopes import EmbeddingType, dim_bound, is_canonical_type, tau
from .errors import CapExceeded, InternalCheckFailed, KindUnsupported
from .structures import Structure, canonical_form
from .words import GRAPH_ALPHABET, POSET_ALPHABET, Space, count_words, enumerate_space

DEFAULT_MAX_ELL = {"graph": 3, "poset": 2}
DEFAULT_ORACLE_CAP = 10**8
DEFAULT_FILTER_CAP = 5 * 10**6

_PAD = None


def _kind_setup(kind: str):
    if kind == "graph":
        return GRAPH_ALPHABET, 1
    if kind == "poset":
        return POSET_ALPHABET, 0
    raise KindUnsupported(f"degree bounds cover 'graph' and 'poset', not {kind!r}")


def structure_key(S: Structure) -> tuple:
    """Isomorphism class of a graph or poset, ignoring any vertex order."""
    base = "graph" if S.kind in ("graph", "ordered-graph") else "poset"
    return canonical_form(S.with_kind(base))


@dataclass
class TypeCensus:
    kind: str
    ell: int
    dim_cap: int
    buckets: dict = field(default_factory=dict)
    representatives: dict = field(default_factory=dict)

    def add(self, T: EmbeddingType):
        S = induced_structure(T.elements, self.kind)
        key = structure_key(S)
        self.buckets.setdefault(key, []).append(T)
        self.representatives.setdefault(key, S)

    def types(self) -> set:
        return {T for ts in self.buckets.values() for T in ts}

    def counts(self) -> dict:
        return {key: len(ts) for key, ts in self.buckets.items()}

    def bucket_of(self, A: Structure) -> list:
        return self.buckets.get(structure_key(A), [])

    def total(self) -> int:
        return sum(len(ts) for ts in self.buckets.values())

    @staticmethod
    def max_length(T: EmbeddingType) -> int:
        return T.max_length


def _check_ell(kind: str, ell: int, max_ell: int | None):
    limit = DEFAULT_MAX_ELL[kind] if max_ell is None else max_ell
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if ell > limit:
        raise CapExceeded(f"ell={ell} exceeds the configured cap {limit} for {kind}", None)


def _canonical_by_slices(kind: str, ell: int, depth_cap: int):
    """Depth-first over envelope columns, keeping only fresh ones.

    Each set is produced once, as the lexicographically increasing list of
    its words (a proper prefix first).  ``tied[i]`` records that words i and
    i+1 agree so far; while tied, word i+1 may not end before word i, nor
    take a smaller entry.
    """
    alphabet, _ = _kind_setup(kind)
    entries = (ZERO, LAMBDA) if kind == "graph" else tuple(alphabet)
    rank = {x: alphabet.entry_rank(x) for x in entries}
    words = [[] for _ in range(ell)]
    lengths = [None] * ell
    columns: list = []

    def fresh(col, j):
        live = {x for x, n in zip(col, lengths) if x is not _PAD or n == j}
        if len(live) == 1 and type(next(iter(live))) is str:
            return False
        for t in columns:
            if all(a == b or (b is _PAD and n != j) for a, b, n in zip(t, col, lengths)):
                return False
        return True

    def rec(j, tied):
        if j > depth_cap:
            raise InternalCheckFailed(f"canonical type longer than the dimension bound {depth_cap}")
        active = [i for i in range(ell) if lengths[i] is None]
        for stop in itertools.product((False, True), repeat=len(active)):
            closing = [i for i, s in zip(active, stop) if s]
            going = [i for i, s in zip(active, stop) if not s]
            if any(tied[i] and lengths[i] is None and i + 1 in closing for i in range(ell - 1) if i not in closing):
                continue
            if any(tied[i] and i in closing and i + 1 in closing for i in range(ell - 1)):
                continue  # two equal words
            if kind == "graph" and any(LAMBDA not in words[i] for i in closing):
                continue
            for i in closing:
                lengths[i] = j
            if not going:
                yield EmbeddingType(frozenset(tuple(w) for w in words), j)
            else:
                yield from _extend(j, going, [t and i not in closing for i, t in enumerate(tied)])
            for i in closing:
                lengths[i] = None

    def _extend(j, going, tied):
        for combo in itertools.product(entries, repeat=len(going)):
            entry = dict(zip(going, combo))
            new_tied = list(tied)
            ok = True
            for i in range(ell - 1):
                if tied[i]:
                    a, b = entry[i], entry[i + 1]
                    if rank[a] > rank[b]:
                        ok = False
                        break
                    new_tied[i] = a == b
            if not ok:
                continue
            col = tuple(entry.get(i, _PAD) for i in range(ell))
            if not fresh(col, j):
                continue
            for i in going:
                words[i].append(col[i])
            columns.append(col)
            yield from rec(j + 1, new_tied)
            columns.pop()
            for i in going:
                words[i].pop()

    yield from rec(0, [True] * max(ell - 1, 0))


def _vertex_words(kind: str, cap: int):
    alphabet, k = _kind_setup(kind)
    return list(enumerate_space(Space(alphabet, cap, k), cap=10**7))


def _filter_count(kind: str, ell: int, cap: int) -> int:
    alphabet, k = _kind_setup(kind)
    n = sum(count_words(len(alphabet), m, k) for m in range(k, cap + 1))
    return math.comb(n, ell)


def enumerate_canonical_types(
    kind: str,
    ell: int,
    method: str = "slices",
    max_ell: int | None = None,
    filter_cap: int = DEFAULT_FILTER_CAP,
) -> TypeCensus:
    """Every canonical embedding type of an ell-set of vertices, bucketed by
    the induced structure.

    ``method="filter"`` instead tests every ell-set of words up to the
    dimension bound, which is only feasible for very small cases.
    """
    alphabet, k = _kind_setup(kind)
    _check_ell(kind, ell, max_ell)
    cap = dim_bound(len(alphabet), k, ell)
    census = TypeCensus(kind, ell, cap)
    if method == "slices":
        found = _canonical_by_slices(kind, ell, cap)
    elif method == "filter":
        total = _filter_count(kind, ell, cap)
        if total > filter_cap:
            raise CapExceeded(f"filtered enumeration needs {total} sets, cap is {filter_cap}", total)
        found = (
            EmbeddingType(frozenset(S), max((len(w) for w in S), default=0))
            for S in itertools.combinations(_vertex_words(kind, cap), ell)
            if is_canonical_type(S)
        )
    else:
        raise ValueError(f"unknown method {method!r}")
    for T in found:
        if not is_canonical_type(T.elements):
            raise InternalCheckFailed(f"non-canonical type {T} produced")
        census.add(T)
    for ts in census.buckets.values():
        ts.sort(key=_type_sort_key(alphabet))
    return census


def _type_sort_key(alphabet):
    return lambda T: (T.dim, [alphabet.sort_key(w) for w in T.sorted(alphabet)])


def brd_upper_bound(A: Structure, kind: str | None = None, **kw) -> int:
    """Number of canonical types whose vertices induce a copy of A."""
    if kind is None:
        kind = "graph" if A.kind in ("graph", "ordered-graph") else "poset"
    census = enumerate_canonical_types(kind, A.size, **kw)
    return len(census.bucket_of(A))


# --- realized types ----------------------------------------------------------


def _letter_pair_types(words, letters) -> set:
    """tau of every pair of parameter-free words, vectorized over the second
    element.

    For two letter words the envelope columns are easy to name: inside the
    common prefix a column is fresh iff its letter pair differs and has not
    occurred before; the column at the shorter length is always fresh; every
    later column carries one live letter and is constant.  The type is read
    off the fresh columns.
    """
    s = len(letters)
    code_of = {c: i for i, c in enumerate(letters)}
    N = len(words)
    width = max((len(w) for w in words), default=0)
    arr = np.full((N, max(width, 1)), -1, dtype=np.int64)
    for r, w in enumerate(words):
        arr[r, : len(w)] = [code_of[c] for c in w]
    lens = np.array([len(w) for w in words], dtype=np.int64)
    base = s * s + 1
    keys = set()
    for i in range(N - 1):
        u = arr[i]
        lu = lens[i]
        V = arr[i + 1 :]
        lv = lens[i + 1 :]
        mn = np.minimum(lv, lu)
        sig = np.zeros(len(V), dtype=np.int64)
        seen = np.zeros(len(V), dtype=np.int64)
        for j in range(int(lu)):
            live = j < mn
            b = V[:, j]
            differ = live & (b != u[j])
            code = u[j] * s + b
            bit = np.left_shift(1, np.where(differ, code, 0))
            new = differ & ((seen & bit) == 0)
            sig = np.where(new, sig * base + code + 1, sig)
            seen = np.where(differ, seen | bit, seen)
        # letter in the column where the shorter word ends, on the longer word
        tail = np.full(len(V), -1, dtype=np.int64)
        longer_v = lv > lu
        if lu < width:
            tail = np.where(longer_v, V[:, min(int(lu), width - 1)], tail)
        shorter_v = lv < lu
        tail = np.where(shorter_v, u[np.minimum(lv, width - 1)], tail)
        orient = np.where(longer_v, 1, np.where(shorter_v, 2, 0))
        for key in np.unique(np.stack([sig, orient, tail], axis=1), axis=0):
            keys.add(tuple(int(x) for x in key))
    out = set()
    for sig, orient, tail in keys:
        codes = []
        while sig:
            codes.append(sig % base - 1)
            sig //= base
        codes.reverse()
        a = tuple(letters[c // s] for c in codes)
        b = tuple(letters[c % s] for c in codes)
        if orient == 1:
            b += (letters[tail],)
        elif orient == 2:
            a += (letters[tail],)
        out.add(EmbeddingType(frozenset((a, b)), len(codes) + (orient != 0)))
    return out


def realized_type_oracle(kind: str, ell: int, length_cap: int, cap: int = DEFAULT_ORACLE_CAP, fast: bool = True) -> set:
    """{tau(S)} over all ell-sets S of vertex words of length <= length_cap."""
    alphabet, k = _kind_setup(kind)
    total = _filter_count(kind, ell, length_cap)
    if total > cap:
        raise CapExceeded(f"{total} vertex sets exceed the oracle cap {cap}", total)
    words = _vertex_words(kind, length_cap)
    if fast and kind == "poset" and ell == 2:
        return _letter_pair_types(words, alphabet.symbols)
    return {tau(S) for S in itertools.combinations(words, ell)}


def realized_census(kind: str, ell: int, length_cap: int, **kw) -> TypeCensus:
    alphabet, k = _kind_setup(kind)
    census = TypeCensus(kind, ell, length_cap)
    for T in realized_type_oracle(kind, ell, length_cap, **kw):
        census.add(T)
    for ts in census.buckets.values():
        ts.sort(key=_type_sort_key(alphabet))
    return census
