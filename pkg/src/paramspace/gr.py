"""Exhaustive checks of the finite Graham-Rothschild statement for tiny
parameters: for every r-colouring of the k-parameter words of length <= N
there is an n-parameter word W of length <= N whose subspace
W([Sigma](<=n, k)) is monochromatic.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .errors import SearchCapExceeded
from .words import Alphabet, Word, format_word, substitute, words_up_to

DEFAULT_COLORING_CAP = 2**24
DEFAULT_NODE_CAP = 2**24
DEFAULT_SYMBOLS = "0123456789abcdefghijklmnopqrstuvwxyz"


def default_alphabet(sigma_size: int) -> Alphabet:
    if not 1 <= sigma_size <= len(DEFAULT_SYMBOLS):
        raise ValueError(f"alphabet size must be in 1..{len(DEFAULT_SYMBOLS)}")
    return Alphabet(DEFAULT_SYMBOLS[:sigma_size])


@dataclass(frozen=True)
class ColoringAssignment:
    domain: tuple
    colors: Mapping

    def __post_init__(self):
        missing = [w for w in self.domain if w not in self.colors]
        if missing:
            raise ValueError(f"colouring undefined on {format_word(missing[0])}")

    def __call__(self, word: Word) -> int:
        return self.colors[word]

    @classmethod
    def from_list(cls, domain: Sequence[Word], colors: Sequence[int]) -> "ColoringAssignment":
        return cls(tuple(domain), dict(zip(domain, colors)))

    def is_constant(self) -> bool:
        return len({self.colors[w] for w in self.domain}) <= 1

    def __str__(self):
        return " ".join(f"{format_word(w)}:{self.colors[w]}" for w in self.domain)


@dataclass
class GRInstance:
    """Domain words, subspace words and, for each subspace word, the domain
    indices its subspace covers."""

    alphabet: Alphabet
    k: int
    n: int
    N: int
    domain: list
    subspace_words: list
    images: list = field(repr=False)

    @classmethod
    def build(cls, sigma_size: int, k: int, n: int, N: int, alphabet: Alphabet | None = None) -> "GRInstance":
        alphabet = alphabet or default_alphabet(sigma_size)
        domain = words_up_to(alphabet, N, k)
        index = {w: i for i, w in enumerate(domain)}
        small = words_up_to(alphabet, n, k)
        subspace = words_up_to(alphabet, N, n) if n <= N else []
        images = [tuple(sorted({index[substitute(W, U)] for U in small})) for W in subspace]
        return cls(alphabet, k, n, N, domain, subspace, images)


@dataclass
class GRResult:
    verdict: bool | None
    exhaustive: bool
    searched: int
    counterexample: ColoringAssignment | None = None
    witnesses: dict = field(default_factory=dict)
    unit: str = "colourings"

    def summary(self) -> str:
        label = {True: "true", False: "false", None: "unknown"}[self.verdict]
        mode = "exhaustive" if self.exhaustive else "sampled (non-exhaustive)"
        return f"verdict={label} mode={mode} searched={self.searched} {self.unit}"


def find_witness(inst: GRInstance, coloring: Sequence[int] | ColoringAssignment) -> Word | None:
    """First subspace word, in (length, lex) order, with a monochromatic image."""
    if isinstance(coloring, ColoringAssignment):
        coloring = [coloring(w) for w in inst.domain]
    for W, img in zip(inst.subspace_words, inst.images):
        if len({coloring[i] for i in img}) <= 1:
            return W
    return None


def verify_gr(
    sigma_size: int,
    k: int,
    n: int,
    r: int,
    N: int,
    method: str = "enumerate",
    cap: int | None = None,
    samples: int | None = None,
    seed: int = 0,
    alphabet: Alphabet | None = None,
    keep_witnesses: bool = False,
) -> GRResult:
    """Decide the statement at N.

    ``enumerate`` walks all r^|domain| colourings (capped at 2^24 colourings)
    and records a witness per colouring when asked.  ``backtrack`` searches
    for a counterexample colouring directly, pruning as soon as a subspace is
    monochromatic, and caps the number of search nodes instead.  ``sample``
    draws random colourings and can only ever falsify.
    """
    inst = GRInstance.build(sigma_size, k, n, N, alphabet)
    if r < 1:
        raise ValueError("need at least one colour")
    if method == "enumerate":
        return _enumerate(inst, r, cap or DEFAULT_COLORING_CAP, keep_witnesses)
    if method == "backtrack":
        return _backtrack(inst, r, cap or DEFAULT_NODE_CAP)
    if method == "sample":
        return _sample(inst, r, samples or 10**4, seed)
    raise ValueError(f"unknown method {method!r}")


def _enumerate(inst: GRInstance, r: int, cap: int, keep: bool) -> GRResult:
    total = r ** len(inst.domain)
    if total > cap:
        raise SearchCapExceeded(f"{total} colourings exceed the cap {cap}")
    witnesses = {}
    for count, coloring in enumerate(itertools.product(range(r), repeat=len(inst.domain)), 1):
        W = find_witness(inst, coloring)
        if W is None:
            return GRResult(False, True, count, ColoringAssignment.from_list(inst.domain, coloring))
        if keep:
            witnesses[coloring] = W
    return GRResult(True, True, total, witnesses=witnesses)


def _backtrack(inst: GRInstance, r: int, cap: int) -> GRResult:
    m = len(inst.domain)
    # subspaces whose last domain index is i are decided once i is coloured
    closing = [[] for _ in range(m)]
    for img in inst.images:
        if img:
            closing[img[-1]].append(img)
    if any(not img for img in inst.images):
        return GRResult(True, True, 0, unit="nodes")
    coloring = [0] * m
    nodes = 0

    def rec(i, used):
        nonlocal nodes
        if i == m:
            return True
        # colours beyond the first unused one are symmetric copies
        for c in range(min(used + 1, r)):
            nodes += 1
            if nodes > cap:
                raise SearchCapExceeded(f"backtracking passed {cap} nodes")
            coloring[i] = c
            if all(any(coloring[j] != c for j in img) for img in closing[i]):
                if rec(i + 1, max(used, c + 1)):
                    return True
        return False

    if rec(0, 0):
        return GRResult(False, True, nodes, ColoringAssignment.from_list(inst.domain, list(coloring)), unit="nodes")
    return GRResult(True, True, nodes, unit="nodes")


def _sample(inst: GRInstance, r: int, samples: int, seed: int) -> GRResult:
    rng = random.Random(seed)
    for count in range(1, samples + 1):
        coloring = [rng.randrange(r) for _ in inst.domain]
        if find_witness(inst, coloring) is None:
            return GRResult(False, False, count, ColoringAssignment.from_list(inst.domain, coloring))
    return GRResult(None, False, samples)


def minimal_n(sigma_size: int, k: int, n: int, r: int, N_max: int = 12, method: str = "backtrack", cap: int | None = None):
    """Least N at which the statement holds, with the result at each N tried."""
    history = []
    for N in range(n, N_max + 1):
        res = verify_gr(sigma_size, k, n, r, N, method=method, cap=cap)
        history.append((N, res))
        if res.verdict:
            return N, history
    raise SearchCapExceeded(f"no N <= {N_max} found")


def pull_back(chi: ColoringAssignment, W: Word, domain: Sequence[Word]) -> ColoringAssignment:
    """U -> chi(W(U)) on the given domain."""
    return ColoringAssignment(tuple(domain), {U: chi(substitute(W, U)) for U in domain})


monochromatic_compose = pull_back


def append_result(path, line: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a") as fh:
        fh.write(line.rstrip("\n") + "\n")


def result_line(kind: str, sigma_size: int, k: int, n: int, r: int, N: int, res: GRResult) -> str:
    return f"{kind} sigma={sigma_size} k={k} n={n} r={r} N={N} {res.summary()}"
