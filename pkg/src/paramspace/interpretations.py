"""Other structures interpreted inside a finite fragment of a partial order:
triangle-free graphs on vertex triples, {0..d}-metric spaces on chains,
ultrametric spaces on tuples, unary structures on pairs, and free
superpositions of several such structures on tuple vertices.

The infinite homogeneous order is replaced by :class:`GrowablePoset`, which
adds one vertex at a time with a prescribed down-set and up-set.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ExtensionConflict, InternalCheckFailed, InvalidTriple, KindUnsupported, NotAChain, NotTriangleFree
from .structures import (
    Structure,
    canonical_form,
    distance_matrix,
    graph,
    is_partial_order,
    is_triangle_free,
    metric,
    unary,
)


class GrowablePoset:
    """A finite partial order that grows by one vertex at a time.

    ``below[v]`` and ``above[v]`` hold the strict down- and up-sets.
    """

    def __init__(self, size: int = 0):
        self.below: list = [set() for _ in range(size)]
        self.above: list = [set() for _ in range(size)]

    @classmethod
    def from_structure(cls, P: Structure) -> "GrowablePoset":
        if not is_partial_order(P):
            raise ValueError("not a partial order")
        gp = cls(P.size)
        for u, v in P.rel("le"):
            if u != v:
                gp.below[v].add(u)
                gp.above[u].add(v)
        return gp

    @property
    def size(self) -> int:
        return len(self.below)

    def less(self, u, v) -> bool:
        return u in self.below[v]

    def leq(self, u, v) -> bool:
        return u == v or u in self.below[v]

    def comparable(self, u, v) -> bool:
        return self.leq(u, v) or self.leq(v, u)

    def down_closure(self, vs: Iterable[int]) -> set:
        out = set(vs)
        for v in list(out):
            out |= self.below[v]
        return out

    def up_closure(self, vs: Iterable[int]) -> set:
        out = set(vs)
        for v in list(out):
            out |= self.above[v]
        return out

    def extend(self, down: Iterable[int] = (), up: Iterable[int] = ()) -> int:
        """Add a vertex strictly above ``down`` and strictly below ``up``.

        Both sets must already be closed and every element of ``down`` must
        lie below every element of ``up``; otherwise transitivity would add
        comparabilities nobody asked for and ExtensionConflict is raised.
        """
        D, U = set(down), set(up)
        if self.down_closure(D) != D:
            raise ExtensionConflict(f"down-set {sorted(D)} is not downward closed")
        if self.up_closure(U) != U:
            raise ExtensionConflict(f"up-set {sorted(U)} is not upward closed")
        for d in D:
            for u in U:
                if not self.less(d, u):
                    raise ExtensionConflict(f"{d} would be forced below {u}")
        v = self.size
        self.below.append(D)
        self.above.append(U)
        for d in D:
            self.above[d].add(v)
        for u in U:
            self.below[u].add(v)
        return v

    def to_structure(self, linext: bool = False) -> Structure:
        le = {(v, v) for v in range(self.size)}
        le |= {(u, v) for v in range(self.size) for u in self.below[v]}
        return Structure("poset-with-linext" if linext else "poset", self.size, {"le": le})


def _as_growable(P) -> GrowablePoset:
    return P if isinstance(P, GrowablePoset) else GrowablePoset.from_structure(P)


# --- triangle-free graphs on triples ------------------------------------------


def is_gp_vertex(t: Sequence[int], P) -> bool:
    P = _as_growable(P)
    if len(t) != 3 or len(set(t)) != 3:
        return False
    u0, u1, u2 = t
    return P.less(u0, u2) and not P.comparable(u0, u1) and not P.comparable(u1, u2)


def gp_edge(t: Sequence[int], s: Sequence[int], P) -> bool:
    """u0 < v1 < u2 and v0 < u1 < v2 with the remaining seven pairs incomparable."""
    P = _as_growable(P)
    for x in (t, s):
        if not is_gp_vertex(x, P):
            raise InvalidTriple(f"{tuple(x)} is not a vertex of the triple graph")
    u0, u1, u2 = t
    v0, v1, v2 = s
    if not (P.less(u0, v1) and P.less(v1, u2) and P.less(v0, u1) and P.less(u1, v2)):
        return False
    rest = {(a, b) for a in range(3) for b in range(3)} - {(0, 1), (1, 2), (1, 0), (2, 1)}
    return not any(P.comparable(t[a], s[b]) for a, b in rest)


def embed_triangle_free_into_gp(H: Structure, cap: int = 6):
    """Grow a poset with a triple per vertex of H so that gp_edge reproduces H.

    Returns (poset, triples).
    """
    if H.size > cap:
        raise ValueError(f"|H|={H.size} exceeds the cap {cap}")
    if not is_triangle_free(H):
        raise NotTriangleFree("input graph contains a triangle")
    P = GrowablePoset()
    triples: list = []
    for i in range(H.size):
        edge = [H.adjacent(i, j) for j in range(i)]
        up0 = [t[1] if e else t[2] for t, e in zip(triples, edge)]
        i0 = P.extend((), P.up_closure(up0))
        down1 = [t[0] for t, e in zip(triples, edge) if e]
        up1 = [t[2] for t, e in zip(triples, edge) if e]
        i1 = P.extend(P.down_closure(down1), P.up_closure(up1))
        down2 = [i0] + [t[1] if e else t[0] for t, e in zip(triples, edge)]
        i2 = P.extend(P.down_closure(down2), ())
        triples.append((i0, i1, i2))
    if not is_partial_order(P.to_structure()):
        raise InternalCheckFailed("ambient relation is not a partial order")
    for i, j in itertools.combinations(range(H.size), 2):
        if gp_edge(triples[i], triples[j], P) != H.adjacent(i, j):
            raise InternalCheckFailed(f"pair {i},{j} not reproduced")
    return P, triples


def gp_vertices(P) -> list:
    """Every triple of the poset that is a vertex of the triple graph."""
    P = _as_growable(P)
    out = []
    for u0 in range(P.size):
        for u2 in P.above[u0]:
            for u1 in range(P.size):
                if u1 not in (u0, u2) and not P.comparable(u0, u1) and not P.comparable(u1, u2):
                    out.append((u0, u1, u2))
    return out


def gp_adjacency(P) -> dict:
    """Neighbour sets of the whole triple graph of P.

    Neighbours of u are found from the required comparabilities:
    v1 sits strictly between u0 and u2, v0 below u1 and v2 above u1.
    """
    P = _as_growable(P)
    verts = gp_vertices(P)
    vset = set(verts)
    adj = {t: set() for t in verts}
    for u in verts:
        u0, u1, u2 = u
        for v1 in P.above[u0] & P.below[u2]:
            for v0 in P.below[u1]:
                for v2 in P.above[u1]:
                    v = (v0, v1, v2)
                    if v in vset and gp_edge(u, v, P):
                        adj[u].add(v)
    return adj


def gp_triangles(P) -> list:
    adj = gp_adjacency(P)
    found = []
    for u, nu in adj.items():
        for v in nu:
            if v <= u:
                continue
            for w in nu & adj[v]:
                if w > v:
                    found.append((u, v, w))
    return found


# --- metric spaces on chains ----------------------------------------------


def _check_chain(P: GrowablePoset, chain, d):
    if len(chain) != d:
        raise NotAChain(f"{tuple(chain)} has length {len(chain)}, expected {d}")
    if any(not (0 <= v < P.size) for v in chain):
        raise NotAChain(f"{tuple(chain)} mentions a vertex outside the poset")
    if any(not P.less(a, b) for a, b in zip(chain, chain[1:])):
        raise NotAChain(f"{tuple(chain)} is not a strictly increasing chain")


def chain_distance(P, u: Sequence[int], v: Sequence[int], d: int) -> int:
    """Least l in 0..d with u_i <= v_{i+l} and v_i <= u_{i+l} whenever i+l < d."""
    P = _as_growable(P)
    for ell in range(d + 1):
        if all(P.leq(u[i], v[i + ell]) and P.leq(v[i], u[i + ell]) for i in range(d - ell)):
            return ell
    return d  # unreachable: l = d has no conditions


def metric_from_chains(P, d: int, chains: Sequence[Sequence[int]]) -> Structure:
    if d < 1:
        raise ValueError("d must be at least 1")
    P = _as_growable(P)
    chains = [tuple(c) for c in chains]
    for c in chains:
        _check_chain(P, c, d)
    m = len(chains)
    dist = [[chain_distance(P, chains[a], chains[b], d) for b in range(m)] for a in range(m)]
    return metric(m, dist, kind="metric")


def all_chains(P, d: int) -> list:
    P = _as_growable(P)
    out = []

    def rec(chain):
        if len(chain) == d:
            out.append(tuple(chain))
            return
        nxt = range(P.size) if not chain else sorted(P.above[chain[-1]])
        for v in nxt:
            chain.append(v)
            rec(chain)
            chain.pop()

    rec([])
    return out


# --- ultrametric spaces on tuples -------------------------------------------


def tuple_distance(u: Sequence, v: Sequence, d: int) -> int:
    lcp = 0
    while lcp < d and u[lcp] == v[lcp]:
        lcp += 1
    return d - lcp


def ultrametric_from_tuples(d: int, tuples: Sequence[Sequence]) -> Structure:
    tuples = [tuple(t) for t in tuples]
    for t in tuples:
        if len(t) != d:
            raise ValueError(f"{t} has length {len(t)}, expected {d}")
    m = len(tuples)
    dist = [[tuple_distance(tuples[a], tuples[b], d) for b in range(m)] for a in range(m)]
    return metric(m, dist, kind="ultrametric")


# --- unary structures on pairs ----------------------------------------------


def unary_from_pairs(pairs: Sequence[Sequence[int]], P, name: str = "R") -> Structure:
    P = _as_growable(P)
    members = []
    for i, (a, b) in enumerate(pairs):
        if a == b:
            raise ValueError(f"pair {i} repeats vertex {a}")
        if P.leq(a, b):
            members.append(i)
    return unary(len(pairs), members, name)


# --- free superposition -------------------------------------------------------

_UNORDERED = {"ordered-graph": "graph", "poset-with-linext": "poset", "linear": "poset"}


def _distance_set(S: Structure) -> list:
    return sorted(int(name[1:]) for name in S.relations if name.startswith("R") and S.relations[name])


@dataclass
class Superposition:
    structure: Structure
    vertices: list
    components: list

    def prefix(self, i: int) -> str:
        return f"c{i}."

    def is_transversal(self, subset: Iterable[int]) -> bool:
        subset = list(subset)
        return all(
            self.vertices[a][i] != self.vertices[b][i]
            for a, b in itertools.combinations(subset, 2)
            for i in range(len(self.components))
        )

    def reduct(self, i: int) -> Structure:
        """The component-i relations of the product, with the prefix removed."""
        p = self.prefix(i)
        comp = self.components[i]
        rels = {name[len(p):]: ts for name, ts in self.structure.relations.items() if name.startswith(p)}
        kind = _UNORDERED.get(comp.kind, comp.kind)
        return Structure(kind, self.structure.size, rels)

    def project(self, i: int, subset: Sequence[int]) -> list:
        return [self.vertices[v][i] for v in subset]


def superpose(components: Sequence[Structure]) -> Superposition:
    """Product structure on all tuples of component vertices.

    Relation names get a ``c<i>.`` prefix so the languages stay disjoint.
    Linear components order the tuples lexicographically with that component
    as the leading key.
    """
    components = list(components)
    verts = list(itertools.product(*(range(c.size) for c in components)))
    N = len(verts)
    rels: dict = {}
    pairs = [(a, b) for a in range(N) for b in range(N)]
    for i, comp in enumerate(components):
        p = f"c{i}."
        kind = comp.kind
        if kind in ("poset", "poset-with-linext"):
            rels[p + "le"] = {
                (a, b) for a, b in pairs if a == b or (verts[a][i] != verts[b][i] and comp.leq(verts[a][i], verts[b][i]))
            }
        elif kind in ("graph", "ordered-graph"):
            rels[p + "edge"] = {(a, b) for a, b in pairs if comp.adjacent(verts[a][i], verts[b][i])}
        elif kind == "linear":
            key = [(comp_rank(comp, verts[a][i]),) + verts[a][:i] + verts[a][i + 1:] for a in range(N)]
            rels[p + "le"] = {(a, b) for a, b in pairs if key[a] <= key[b]}
        elif kind in ("metric", "ultrametric"):
            dist = distance_matrix(comp)
            S = _distance_set(comp)
            near = 1 if kind == "ultrametric" else (S[0] if S else 1)
            for a, b in pairs:
                if a == b:
                    continue
                x, y = verts[a][i], verts[b][i]
                dd = near if x == y else dist[x][y]
                rels.setdefault(f"{p}R{dd}", set()).add((a, b))
        elif kind == "unary":
            for name, ts in comp.relations.items():
                rels[p + name] = {(a,) for a in range(N) if (verts[a][i],) in ts}
        else:
            raise KindUnsupported(f"cannot superpose a {kind} component")
    return Superposition(Structure("product", N, rels), verts, components)


def comp_rank(comp: Structure, v: int) -> int:
    """Position of v in a linear order."""
    return sum(1 for u in range(comp.size) if u != v and comp.leq(u, v))


def _age(S: Structure, size: int, subsets=None) -> set:
    kind = _UNORDERED.get(S.kind, S.kind)
    S = S.with_kind(kind)
    if subsets is None:
        subsets = itertools.combinations(range(S.size), size)
    return {canonical_form(S.induced(sub)) for sub in subsets}


def reduct_age_check(sp: Superposition, max_size: int = 4) -> dict:
    """For each component, compare the age of the component with the age of
    the product's reduct restricted to transversal sets, size by size.

    Returns {component index: list of sizes where the two differ}.
    """
    limit = min([max_size] + [c.size for c in sp.components])
    N = sp.structure.size
    report = {}
    for i, comp in enumerate(sp.components):
        red = sp.reduct(i)
        bad = []
        for size in range(1, limit + 1):
            transversal = (s for s in itertools.combinations(range(N), size) if sp.is_transversal(s))
            if _age(red, size, transversal) != _age(comp, size):
                bad.append(size)
        report[i] = bad
    return report


def projection_preserves(sp: Superposition, subset: Sequence[int]) -> bool:
    """On a transversal subset, projection i is an isomorphism onto its image."""
    if not sp.is_transversal(subset):
        raise ValueError("subset is not transversal")
    for i, comp in enumerate(sp.components):
        red = sp.reduct(i).induced(list(subset))
        img = comp.with_kind(red.kind).induced(sp.project(i, subset))
        for name in set(red.relations) | set(img.relations):
            if red.rel(name) != img.rel(name):
                return False
    return True


def derived_bipartite_graph(sp: Superposition, graph_index: int, unary_index: int, name: str = "R") -> Structure:
    """Keep the edges of the graph component with exactly one endpoint in
    the unary relation."""
    E = sp.structure.rel(f"c{graph_index}.edge")
    R = {a for (a,) in sp.structure.rel(f"c{unary_index}.{name}")}
    return graph(sp.structure.size, [(a, b) for a, b in E if a < b and (a in R) != (b in R)])


def is_bipartite(G: Structure) -> bool:
    colour: dict = {}
    for s in range(G.size):
        if s in colour:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in G.neighbours(v):
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return False
    return True
