"""Finite relational structures on vertices 0..m-1, brute-force embeddings,
isomorphism and axiom checks.

Relations are stored as frozensets of vertex tuples keyed by name.  Graphs
use ``edge`` (both orientations stored), partial orders ``le`` (reflexive),
linear orders ``le`` as well, metric spaces one binary relation ``R<l>``
per nonzero distance l, unary structures one arity-1 relation per symbol.
For the ordered kinds the linear order is the integer order on vertex names
and is not stored.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import SizeCap

KINDS = (
    "graph",
    "ordered-graph",
    "poset",
    "poset-with-linext",
    "linear",
    "metric",
    "ultrametric",
    "unary",
    "product",
)
ORDERED_KINDS = frozenset({"ordered-graph", "poset-with-linext", "linear"})
DEFAULT_SIZE_CAP = 12


@dataclass(frozen=True)
class Structure:
    kind: str
    size: int
    relations: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown structure kind {self.kind!r}")
        rels = {name: frozenset(tuple(t) for t in ts) for name, ts in self.relations.items()}
        for name, ts in rels.items():
            for t in ts:
                if any(not (0 <= v < self.size) for v in t):
                    raise ValueError(f"relation {name} mentions a vertex outside 0..{self.size - 1}: {t}")
        object.__setattr__(self, "relations", rels)

    def __hash__(self):
        return hash((self.kind, self.size, frozenset(self.relations.items())))

    def __eq__(self, other):
        if not isinstance(other, Structure):
            return NotImplemented
        names = set(self.relations) | set(other.relations)
        return (
            self.kind == other.kind
            and self.size == other.size
            and all(self.rel(n) == other.rel(n) for n in names)
        )

    @property
    def ordered(self) -> bool:
        return self.kind in ORDERED_KINDS

    def rel(self, name: str) -> frozenset:
        return self.relations.get(name, frozenset())

    def adjacent(self, u, v) -> bool:
        return (u, v) in self.rel("edge")

    def leq(self, u, v) -> bool:
        return (u, v) in self.rel("le")

    def neighbours(self, v) -> set:
        return {b for a, b in self.rel("edge") if a == v}

    def induced(self, vertices: Sequence[int]) -> "Structure":
        """Substructure on the given vertices, renamed 0..len-1 in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        rels = {}
        for name, ts in self.relations.items():
            rels[name] = frozenset(
                tuple(index[v] for v in t) for t in ts if all(v in index for v in t)
            )
        return Structure(self.kind, len(vertices), rels)

    def with_kind(self, kind: str) -> "Structure":
        return Structure(kind, self.size, self.relations)


# --- constructors --------------------------------------------------------


def graph(m: int, edges: Iterable = (), ordered: bool = False) -> Structure:
    es = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop at {u}")
        es.add((u, v))
        es.add((v, u))
    return Structure("ordered-graph" if ordered else "graph", m, {"edge": es})


def poset(m: int, pairs: Iterable = (), linext: bool = False, close: bool = False) -> Structure:
    """Partial order from strict pairs u <= v; reflexive pairs are added.

    With ``close=True`` the transitive closure is taken as well.
    """
    le = {(v, v) for v in range(m)} | {tuple(p) for p in pairs}
    if close:
        le = transitive_closure(m, le)
    return Structure("poset-with-linext" if linext else "poset", m, {"le": le})


def linear(m: int) -> Structure:
    return Structure("linear", m, {"le": {(u, v) for u in range(m) for v in range(u, m)}})


def metric(m: int, dist, kind: str = "metric") -> Structure:
    """Metric structure from a distance matrix or a {(u, v): d} mapping."""
    rels: dict = {}
    for u in range(m):
        for v in range(m):
            if u == v:
                continue
            d = dist[u][v] if not isinstance(dist, Mapping) else dist.get((u, v), dist.get((v, u)))
            if d is None:
                raise ValueError(f"missing distance for {u},{v}")
            if d:
                rels.setdefault(f"R{d}", set()).add((u, v))
    return Structure(kind, m, rels)


def unary(m: int, members: Iterable[int], name: str = "R") -> Structure:
    return Structure("unary", m, {name: {(v,) for v in members}})


def transitive_closure(m: int, pairs: Iterable) -> set:
    reach = [0] * m
    for u, v in pairs:
        reach[u] |= 1 << v
    for k in range(m):
        bit = 1 << k
        rk = reach[k]
        for i in range(m):
            if reach[i] & bit:
                reach[i] |= rk
    return {(u, v) for u in range(m) for v in range(m) if reach[u] >> v & 1}


def distance_matrix(s: Structure) -> list:
    d = [[0] * s.size for _ in range(s.size)]
    for name, ts in s.relations.items():
        if not name.startswith("R"):
            continue
        value = int(name[1:])
        for u, v in ts:
            d[u][v] = value
    return d


# --- axiom checks --------------------------------------------------------


def is_graph(s: Structure) -> bool:
    e = s.rel("edge")
    return all(u != v and (v, u) in e for u, v in e)


def is_triangle_free(s: Structure) -> bool:
    nb = [set() for _ in range(s.size)]
    for u, v in s.rel("edge"):
        nb[u].add(v)
    for u, v in s.rel("edge"):
        if u < v and nb[u] & nb[v]:
            return False
    return True


def is_partial_order(s: Structure, rel: str = "le") -> bool:
    le = s.rel(rel)
    m = s.size
    if any((v, v) not in le for v in range(m)):
        return False
    for u, v in le:
        if u != v and (v, u) in le:
            return False
    for u, v in le:
        for w in range(m):
            if (v, w) in le and (u, w) not in le:
                return False
    return True


def is_linear_extension(s: Structure, order: Sequence[int] | None = None, rel: str = "le") -> bool:
    """Is the vertex sequence (default: integer order) a linear extension of rel?"""
    if order is None:
        order = range(s.size)
    pos = {v: i for i, v in enumerate(order)}
    if sorted(pos) != list(range(s.size)):
        return False
    return all(pos[u] <= pos[v] for u, v in s.rel(rel))


def is_metric(dist, allowed: Iterable | None = None) -> bool:
    """Distance matrix check: values in allowed, zero iff equal, symmetric,
    triangle inequality."""
    m = len(dist)
    allowed = None if allowed is None else set(allowed)
    for u in range(m):
        for v in range(m):
            d = dist[u][v]
            if allowed is not None and d not in allowed:
                return False
            if (d == 0) != (u == v) or d != dist[v][u]:
                return False
    for u, v, w in itertools.product(range(m), repeat=3):
        if dist[u][w] > dist[u][v] + dist[v][w]:
            return False
    return True


def is_ultrametric(dist) -> bool:
    m = len(dist)
    if not is_metric(dist):
        return False
    return all(
        dist[u][w] <= max(dist[u][v], dist[v][w])
        for u, v, w in itertools.product(range(m), repeat=3)
    )


# --- embeddings ----------------------------------------------------------


def _relation_table(A: Structure, B: Structure):
    table = []
    for name in sorted(set(A.relations) | set(B.relations)):
        ra, rb = A.rel(name), B.rel(name)
        arity = len(next(iter(ra or rb), ()))
        if arity:
            table.append((arity, ra, rb))
    return table


def iter_embeddings(A: Structure, B: Structure, cap: int = DEFAULT_SIZE_CAP) -> Iterator[tuple]:
    """Yield every embedding A -> B as the tuple of images, lexicographically."""
    if B.size > cap:
        raise SizeCap(f"|B|={B.size} exceeds brute-force cap {cap}")
    if A.size > B.size:
        return
    ordered = A.ordered or B.ordered
    table = _relation_table(A, B)
    f: list = []

    def consistent(v):
        for arity, ra, rb in table:
            for t in itertools.product(range(v + 1), repeat=arity):
                if v not in t:
                    continue
                if (t in ra) != (tuple(f[x] for x in t) in rb):
                    return False
        return True

    def rec(v):
        if v == A.size:
            yield tuple(f)
            return
        start = f[-1] + 1 if ordered and f else 0
        used = set(f)
        for b in range(start, B.size):
            if b in used:
                continue
            f.append(b)
            if consistent(v):
                yield from rec(v + 1)
            f.pop()

    yield from rec(0)


def find_embeddings(A: Structure, B: Structure, cap: int = DEFAULT_SIZE_CAP) -> list:
    return list(iter_embeddings(A, B, cap))


def is_embedding(f: Sequence[int], A: Structure, B: Structure) -> bool:
    if len(f) != A.size or len(set(f)) != len(f) or any(not (0 <= b < B.size) for b in f):
        return False
    if (A.ordered or B.ordered) and any(f[i] >= f[i + 1] for i in range(len(f) - 1)):
        return False
    for arity, ra, rb in _relation_table(A, B):
        for t in itertools.product(range(A.size), repeat=arity):
            if (t in ra) != (tuple(f[x] for x in t) in rb):
                return False
    return True


def isomorphic(A: Structure, B: Structure, cap: int = DEFAULT_SIZE_CAP) -> bool:
    if A.size != B.size:
        return False
    if max(A.size, B.size) > cap:
        raise SizeCap(f"size {B.size} exceeds brute-force cap {cap}")
    return next(iter_embeddings(A, B, cap), None) is not None


def canonical_form(s: Structure) -> tuple:
    """Isomorphism-invariant key: least relation encoding over all relabellings.

    Ordered kinds are rigid under their linear order, so only the identity
    relabelling is considered for them.
    """
    names = sorted(s.relations)
    perms = [tuple(range(s.size))] if s.ordered else itertools.permutations(range(s.size))
    best = None
    for p in perms:
        enc = tuple(tuple(sorted(tuple(p[v] for v in t) for t in s.relations[n])) for n in names)
        if best is None or enc < best:
            best = enc
    return (s.size, tuple(names), best)


# --- file format ---------------------------------------------------------


def parse_structure(text: str) -> Structure:
    """Read the line format: ``structure <kind> <m>`` then one tuple per line."""
    kind = None
    m = 0
    rels: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0]
        try:
            if kind is None:
                if head != "structure" or len(tok) != 3:
                    raise ValueError("expected header 'structure <kind> <m>'")
                kind, m = tok[1], int(tok[2])
                if kind not in KINDS:
                    raise ValueError(f"unknown kind {kind!r}")
                continue
            if head == "edge":
                u, v = map(int, tok[1:3])
                rels.setdefault("edge", set()).update({(u, v), (v, u)})
            elif head == "le":
                u, v = map(int, tok[1:3])
                rels.setdefault("le", set()).add((u, v))
            elif head == "dist":
                u, v, d = map(int, tok[1:4])
                if d:
                    rels.setdefault(f"R{d}", set()).update({(u, v), (v, u)})
            elif head == "unary":
                rels.setdefault(tok[1], set()).add((int(tok[2]),))
            elif head == "rel":
                rels.setdefault(tok[1], set()).add(tuple(int(x) for x in tok[2:]))
            else:
                raise ValueError(f"unknown directive {head!r}")
        except (ValueError, IndexError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if kind is None:
        raise ValueError("missing 'structure' header")
    if kind in ("poset", "poset-with-linext", "linear"):
        rels.setdefault("le", set()).update((v, v) for v in range(m))
    if kind == "linear":
        rels["le"] = {(u, v) for u in range(m) for v in range(u, m)}
    return Structure(kind, m, rels)


def format_structure(s: Structure) -> str:
    lines = [f"structure {s.kind} {s.size}"]
    for name in sorted(s.relations):
        ts = sorted(s.relations[name])
        if name == "edge" and s.kind != "product":
            lines += [f"edge {u} {v}" for u, v in ts if u < v]
        elif name == "le" and s.kind in ("poset", "poset-with-linext"):
            lines += [f"le {u} {v}" for u, v in ts if u != v]
        elif name == "le" and s.kind == "linear":
            continue
        elif s.kind in ("metric", "ultrametric") and name[:1] == "R" and name[1:].isdigit():
            lines += [f"dist {u} {v} {name[1:]}" for u, v in ts if u < v]
        elif s.kind == "unary" and all(len(t) == 1 for t in ts):
            lines += [f"unary {name} {t[0]}" for t in ts]
        else:
            lines += [f"rel {name} " + " ".join(map(str, t)) for t in ts]
    return "\n".join(lines) + "\n"


def read_structure(path) -> Structure:
    with open(path) as fh:
        return parse_structure(fh.read())


# --- small-structure generators used by sweeps ---------------------------


def all_graphs(m: int) -> Iterator[Structure]:
    pairs = list(itertools.combinations(range(m), 2))
    for mask in range(1 << len(pairs)):
        yield graph(m, [p for i, p in enumerate(pairs) if mask >> i & 1])


def all_triangle_free_graphs(m: int) -> Iterator[Structure]:
    for g in all_graphs(m):
        if is_triangle_free(g):
            yield g


def all_posets(m: int, linext: bool = False) -> Iterator[Structure]:
    """Every labelled partial order on 0..m-1, or only those having the
    integer order as a linear extension when ``linext``."""
    pairs = list(itertools.combinations(range(m), 2))
    natural = []
    for mask in range(1 << len(pairs)):
        s = poset(m, [p for i, p in enumerate(pairs) if mask >> i & 1], linext=True)
        if is_partial_order(s):
            natural.append(s)
    if linext:
        yield from natural
        return
    # every labelled order is a relabelling of a naturally labelled one
    seen = set()
    for s in natural:
        for perm in itertools.permutations(range(m)):
            le = frozenset((perm[u], perm[v]) for u, v in s.rel("le"))
            if le not in seen:
                seen.add(le)
                yield Structure("poset", m, {"le": le})
