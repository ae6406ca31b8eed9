"""Verification batteries run by ``paramspace suite <name>``.

Each check returns how many cases it examined and the failing cases, the
latter already rendered in word-literal or structure-file syntax.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from . import degrees, encodings, envelopes, gr, grn, interpretations
from .errors import UnknownSuite
from .structures import (
    all_posets,
    all_triangle_free_graphs,
    distance_matrix,
    format_structure,
    graph,
    is_metric,
    is_ultrametric,
    linear,
    poset,
    unary,
)
from .words import (
    GRAPH_ALPHABET,
    POSET_ALPHABET,
    Space,
    count_words,
    enumerate_space,
    format_word,
    parse_word,
    substitute,
    substitute_set,
    words_up_to,
)


@dataclass
class CheckResult:
    name: str
    status: str
    count: int
    elapsed: float
    failures: list = field(default_factory=list)
    note: str = ""

    def line(self) -> str:
        out = f"{self.status.upper():4} {self.name} cases={self.count} time={self.elapsed:.2f}s"
        if self.note:
            out += f" {self.note}"
        if self.failures:
            out += f"\n     counterexample: {self.failures[0]}"
            if len(self.failures) > 1:
                out += f" (+{len(self.failures) - 1} more)"
        return out


@dataclass
class SuiteReport:
    name: str
    checks: list

    @property
    def failures(self) -> int:
        return sum(c.status == "fail" for c in self.checks)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def summary_line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return f"SUITE {self.name} {verdict} checks={len(self.checks)} failures={self.failures}"

    def text(self) -> str:
        return "\n".join([c.line() for c in self.checks] + [self.summary_line()]) + "\n"


def _fmt_set(S) -> str:
    return "{" + ", ".join(format_word(w) for w in S) + "}"


# --- envelopes -------------------------------------------------------------


def _random_word(rng, alphabet, k, max_len):
    n = rng.randint(k, max_len)
    words = list(enumerate_space(Space(alphabet, n, k, exact=True))) if count_words(len(alphabet), n, k) < 5000 else None
    if words is not None:
        return rng.choice(words)
    # rejection-free construction: place first occurrences, then fill
    firsts = sorted(rng.sample(range(n), k))
    w, nxt = [], 0
    for p in range(n):
        if nxt < k and p == firsts[nxt]:
            w.append(nxt)
            nxt += 1
        else:
            w.append(rng.choice(list(alphabet) + list(range(nxt))))
    return tuple(w)


ALL_CONFIGS = ((GRAPH_ALPHABET, 0), (GRAPH_ALPHABET, 1), (POSET_ALPHABET, 0), (POSET_ALPHABET, 1))


def random_sets(seed: int, count: int, max_len: int = 8, max_size: int = 3):
    rng = random.Random(seed)
    for _ in range(count):
        alphabet, k = rng.choice(ALL_CONFIGS)
        size = rng.randint(1, max_size)
        S = {_random_word(rng, alphabet, k, max_len) for _ in range(size)}
        yield alphabet, k, sorted(S, key=alphabet.sort_key)


def check_example_envelope():
    A = GRAPH_ALPHABET
    S = [parse_word("0", A), parse_word("000", A)]
    fails = []
    env = envelopes.minimal_envelope(S)
    if env.word != ("0", 0, "0") or env.dim != 1:
        fails.append(f"envelope {format_word(env.word)} dim {env.dim}")
    T = envelopes.embedding_type(env, S)
    if T.elements != frozenset({(), ("0",)}):
        fails.append(f"type {T}")
    ident = (0, 1, 2, 3)
    if not envelopes.is_envelope(ident, S) or envelopes.Envelope.of(ident).dim <= env.dim:
        fails.append("identity word of length 4 is not a strictly larger envelope")
    d, found = envelopes.brute_force_minimal_envelopes(S, A)
    if d != 1 or set(found) != {("0", 0, 0), ("0", 0, "0")}:
        fails.append("minimal envelopes " + _fmt_set(found))
    return 4, fails


def check_envelope_soundness(seed: int, count: int = 500):
    fails = []
    for alphabet, k, S in random_sets(seed, count):
        env = envelopes.minimal_envelope(S)
        T = envelopes.embedding_type(env, S)
        if substitute_set(env.word, T.elements) != frozenset(S):
            fails.append(f"soundness {_fmt_set(S)}")
        if env.dim > envelopes.dim_bound(len(alphabet), k, len(S)):
            fails.append(f"dimension {env.dim} above bound for {_fmt_set(S)}")
    return count, fails


def small_sets(max_len: int, max_size: int = 2, configs=ALL_CONFIGS[:3]):
    for alphabet, k in configs:
        words = words_up_to(alphabet, max_len, k)
        for size in range(1, max_size + 1):
            for S in itertools.combinations(words, size):
                yield alphabet, k, list(S)


def check_rigidity(max_len: int = 4, configs=ALL_CONFIGS[:3]):
    count, fails = 0, []
    for alphabet, k, S in small_sets(max_len, configs=configs):
        d, envs = envelopes.brute_force_minimal_envelopes(S, alphabet)
        count += 1
        if len({envelopes.first_occurrences(W) for W in envs}) != 1:
            fails.append(f"first occurrences differ for {_fmt_set(S)}")
        if envelopes.minimal_envelope(S).dim != d:
            fails.append(f"slice envelope not minimal for {_fmt_set(S)}")
    return count, fails


def check_tau(max_len: int = 4, seed: int = 0, count: int = 500, configs=ALL_CONFIGS[:3]):
    n, fails = 0, []
    cases = [S for _, _, S in small_sets(max_len, configs=configs)] + [S for _, _, S in random_sets(seed, count)]
    for S in cases:
        n += 1
        T = envelopes.tau(S)
        if envelopes.tau(T.elements) != T or not envelopes.is_canonical_type(T.elements):
            fails.append(f"tau not idempotent on {_fmt_set(S)}")
    return n, fails


def check_type_stabilization():
    # graph alphabet, one parameter, pairs
    b = envelopes.dim_bound(1, 1, 2)
    at = degrees.realized_type_oracle("graph", 2, b)
    after = degrees.realized_type_oracle("graph", 2, b + 1)
    fails = [] if at == after else [f"{len(at)} types at cap {b}, {len(after)} at cap {b + 1}"]
    return 2, fails


# --- encodings -------------------------------------------------------------


def check_graph_triangle_free(max_len: int = 7):
    words = words_up_to(GRAPH_ALPHABET, max_len, 1)
    adj = {w: set() for w in words}
    for U in words:
        for V in words:
            if len(U) < len(V) and encodings.graph_edge(U, V):
                adj[U].add(V)
                adj[V].add(U)
    fails = []
    for U in words:
        for V in adj[U]:
            if len(V) <= len(U):
                continue
            for W in adj[U] & adj[V]:
                fails.append(_fmt_set([U, V, W]))
    return len(words), fails


def check_order_axioms(max_len: int = 5):
    words = words_up_to(POSET_ALPHABET, max_len, 0)
    fails = []
    leq = {}
    for w in words:
        for v in words:
            leq[w, v] = encodings.order_leq(w, v)
    up = {w: [v for v in words if leq[w, v][0]] for w in words}
    for w in words:
        if not leq[w, w][0]:
            fails.append(f"not reflexive at {format_word(w)}")
        for v in up[w]:
            if v != w and leq[v, w][0]:
                fails.append(f"antisymmetry {format_word(w)} {format_word(v)}")
            if v != w and not POSET_ALPHABET.lex_key(w) < POSET_ALPHABET.lex_key(v):
                fails.append(f"lex order {format_word(w)} {format_word(v)}")
            for u in up[v]:
                if not leq[w, u][0]:
                    fails.append(f"transitivity {format_word(w)} {format_word(v)} {format_word(u)}")
                elif len({w, v, u}) == 3:
                    i1, i2, i3 = leq[w, v][1], leq[v, u][1], leq[w, u][1]
                    if i3 > min(i1, i2):
                        fails.append(f"witness {format_word(w)} {format_word(v)} {format_word(u)}")
    return len(words), fails


def random_substitution_cases(seed: int, count: int, kind: str):
    rng = random.Random(seed)
    alphabet, k = (GRAPH_ALPHABET, 1) if kind == "graph" else (POSET_ALPHABET, 0)
    for _ in range(count):
        params = rng.randint(8, 10)
        W = _random_word(rng, alphabet, params, 12)
        pair = [_random_word(rng, alphabet, k, 6) for _ in range(2)]
        yield W, pair


def check_substitution_preservation(seed: int, count: int = 10**4):
    fails, n = [], 0
    for kind in ("graph", "poset"):
        for W, pair in random_substitution_cases(seed, count, kind):
            n += 1
            if not encodings.check_substitution_preservation(W, pair, kind):
                fails.append(f"{kind} W={format_word(W)} pair={_fmt_set(pair)}")
    return n, fails


def check_encoders(max_graph: int = 6, max_poset: int = 5):
    fails, n = [], 0
    for m in range(max_graph + 1):
        for H in all_triangle_free_graphs(m):
            n += 1
            ws = encodings.encode_triangle_free(H)
            if encodings.induced_structure(ws, "graph").size != H.size:
                fails.append(format_structure(H))
            for i, j in itertools.combinations(range(m), 2):
                if encodings.graph_edge(ws[i], ws[j]) != H.adjacent(i, j):
                    fails.append(format_structure(H))
                    break
    for m in range(max_poset + 1):
        for P in all_posets(m, linext=True):
            n += 1
            ws = encodings.encode_poset(P)
            for i in range(m):
                for j in range(m):
                    if i != j and encodings.leq(ws[i], ws[j]) != P.leq(i, j):
                        fails.append(format_structure(P))
    return n, fails


# --- grn ------------------------------------------------------------------


def check_function_counts(max_size: int = 5):
    fails, n = [], 0
    for m in range(max_size + 1):
        for B in all_triangle_free_graphs(m):
            n += 1
            indep = sum(
                1
                for mask in range(1 << m)
                if not any(mask >> u & 1 and mask >> v & 1 and B.adjacent(u, v) for u, v in itertools.combinations(range(m), 2))
            )
            if grn.katetov_functions(B.with_kind("ordered-graph")).d != indep:
                fails.append(format_structure(B))
        if m <= 4:
            for B in all_posets(m, linext=True):
                n += 1
                downs = sum(
                    1
                    for mask in range(1 << m)
                    if all(mask >> u & 1 for u, v in B.rel("le") if mask >> v & 1)
                )
                if grn.downset_functions(B).d != downs:
                    fails.append(format_structure(B))
    return n, fails


def check_grn_embeddings(max_graph: int = 5, max_poset: int = 4):
    n = 0
    for m in range(max_graph + 1):
        for B in all_triangle_free_graphs(m):
            grn.embed_graph_grn(B.with_kind("ordered-graph"))
            n += 1
    for m in range(max_poset + 1):
        for B in all_posets(m, linext=True):
            grn.embed_poset_grn(B)
            n += 1
    # both constructors raise on any mismatch
    return n, []


def copy_instances(kind: str, max_b: int, max_a: int = 3):
    gen = (lambda m: (B.with_kind("ordered-graph") for B in all_triangle_free_graphs(m))) if kind == "graph" else (
        lambda m: all_posets(m, linext=True)
    )
    for m in range(max_b + 1):
        for B in gen(m):
            for a in range(min(max_a, m) + 1):
                for sub in itertools.combinations(range(m), a):
                    yield B, B.induced(sub), sub


def _copy_failure(B, A, sub, rep) -> str:
    return f"B=[{format_structure(B).strip()}] copy={list(sub)} W={format_word(rep.word)}: {rep.problems[0]}"


def check_copy_words(kind: str, max_b: int, only_intervals: bool = False):
    report = grn.copy_word_graph_report if kind == "graph" else grn.copy_word_poset_report
    fails, n = [], 0
    for B, A, sub in copy_instances(kind, max_b):
        if only_intervals and not grn.is_interval_copy(sub):
            continue
        n += 1
        rep = report(B, A, sub)
        if rep.problems:
            fails.append(_copy_failure(B, A, sub, rep).replace("\n", "; "))
    return n, fails


def check_gapped_copies_unsolvable(max_b: int = 4):
    """Copies with a gap admit no parameter word at all."""
    fails, n = [], 0
    for B, A, sub in copy_instances("poset", max_b):
        if grn.is_interval_copy(sub):
            continue
        n += 1
        if grn.copy_word_exists(B, A, sub):
            fails.append(f"word exists for copy {list(sub)} of [{format_structure(B).strip()}]".replace("\n", "; "))
    return n, fails


# --- degrees ----------------------------------------------------------------


def check_vertex_bounds():
    fails = []
    for kind, cap in (("graph", 4), ("poset", 3)):
        census = degrees.enumerate_canonical_types(kind, 1)
        oracle = degrees.realized_type_oracle(kind, 1, cap)
        if census.types() != oracle or census.total() != 1:
            fails.append(f"{kind}: {len(census.types())} enumerated, {len(oracle)} realized")
    return 2, fails


def check_graph_pairs():
    census = degrees.enumerate_canonical_types("graph", 2)
    filtered = degrees.enumerate_canonical_types("graph", 2, method="filter")
    oracle = degrees.realized_type_oracle("graph", 2, census.dim_cap)
    fails = []
    if census.types() != filtered.types() or census.types() != oracle:
        fails.append(f"{census.total()} enumerated, {filtered.total()} filtered, {len(oracle)} realized")
    return census.total(), fails


def check_poset_pairs(length_cap: int | None = None):
    census = degrees.enumerate_canonical_types("poset", 2)
    cap = census.dim_cap if length_cap is None else length_cap
    realized = degrees.realized_census("poset", 2, cap)
    fails = []
    if realized.counts() != census.counts() or realized.types() != census.types():
        fails.append(f"bucket counts {sorted(census.counts().values())} vs {sorted(realized.counts().values())}")
    return census.total(), fails


def check_edge_bound():
    bound = degrees.brd_upper_bound(graph(2, [(0, 1)]), "graph")
    return 1, [] if bound >= 4 else [f"edge bound is {bound}, below the known degree 4"]


def check_graph_triples():
    census = degrees.enumerate_canonical_types("graph", 3)
    triangle = graph(3, [(0, 1), (1, 2), (0, 2)])
    fails = [f"{len(census.bucket_of(triangle))} triangle types"] if census.bucket_of(triangle) else []
    return census.total(), fails


# --- interpretations --------------------------------------------------------


def check_gp(max_size: int = 5):
    fails, n = [], 0
    for m in range(max_size + 1):
        for H in all_triangle_free_graphs(m):
            n += 1
            P, _ = interpretations.embed_triangle_free_into_gp(H)
            tri = interpretations.gp_triangles(P)
            if tri:
                fails.append(f"triangle {tri[0]} over [{format_structure(H).strip()}]".replace("\n", "; "))
    return n, fails


def check_chain_metrics(max_poset: int = 5, max_d: int = 3):
    fails, n = [], 0
    for m in range(max_poset + 1):
        for Q in all_posets(m, linext=True):
            G = interpretations.GrowablePoset.from_structure(Q)
            for d in range(1, max_d + 1):
                chains = interpretations.all_chains(G, d)
                if not chains:
                    continue
                n += 1
                M = interpretations.metric_from_chains(G, d, chains)
                if not is_metric(distance_matrix(M), range(d + 1)):
                    fails.append(f"d={d} over [{format_structure(Q).strip()}]".replace("\n", "; "))
    return n, fails


def check_ultrametrics(max_d: int = 4):
    fails, n = [], 0
    for d in range(1, max_d + 1):
        points = range(3) if d < 4 else range(2)
        tuples = list(itertools.product(points, repeat=d))
        U = interpretations.ultrametric_from_tuples(d, tuples)
        n += len(tuples)
        if not is_ultrametric(distance_matrix(U)):
            fails.append(f"d={d}")
    return n, fails


def check_superpositions():
    fails = []
    chain = poset(3, [(0, 1), (1, 2), (0, 2)])
    vee = poset(3, [(0, 2), (1, 2)])
    cases = [
        ("poset x linear", [vee, linear(3)]),
        ("chain x linear", [chain, linear(3)]),
        ("graph x unary", [graph(3, [(0, 1), (1, 2)]), unary(2, [0])]),
        ("path x unary", [graph(4, [(0, 1), (1, 2), (2, 3)]), unary(3, [1])]),
    ]
    for name, comps in cases:
        sp = interpretations.superpose(comps)
        bad = {i: s for i, s in interpretations.reduct_age_check(sp).items() if s}
        if bad:
            fails.append(f"{name}: ages differ at {bad}")
        if comps[1].kind == "unary":
            B = interpretations.derived_bipartite_graph(sp, 0, 1)
            if not interpretations.is_bipartite(B):
                fails.append(f"{name}: derived graph not bipartite")
    return len(cases), fails


# --- gr ----------------------------------------------------------------------


def check_minimal_n():
    N, history = gr.minimal_n(1, 0, 1, 2, method="enumerate")
    fails = [] if N == 2 else [f"minimal N is {N}"]
    res = gr.verify_gr(1, 0, 1, 2, 2, keep_witnesses=True)
    if res.searched != 8 or not res.verdict:
        fails.append(f"N=2: {res.summary()}")
    return len(history), fails, f"minimalN(1,0,1,2)={N}"


def check_monotone(max_n: int = 4):
    fails, n = [], 0
    for params in ((1, 0, 1, 2), (1, 1, 1, 1), (2, 0, 1, 2), (1, 0, 2, 2)):
        prev = False
        for N in range(params[2], max_n + 1):
            v = gr.verify_gr(*params, N, method="backtrack").verdict
            n += 1
            if prev and not v:
                fails.append(f"{params} true at {N - 1}, false at {N}")
            prev = v
    return n, fails


def check_compose(seed: int):
    rng = random.Random(seed)
    A = GRAPH_ALPHABET
    inst = gr.GRInstance.build(1, 0, 1, 2)
    fails, n = [], 0
    for colors in itertools.product(range(2), repeat=len(inst.domain)):
        n += 1
        chi = gr.ColoringAssignment.from_list(inst.domain, colors)
        W = gr.find_witness(inst, chi)
        pulled = gr.pull_back(chi, W, words_up_to(A, 1, 0))
        if not pulled.is_constant():
            fails.append(str(chi))
    # associativity of repeated pulls
    dom3 = words_up_to(A, 3, 0)
    chi = gr.ColoringAssignment.from_list(dom3, [rng.randrange(3) for _ in dom3])
    for W in words_up_to(A, 3, 2):
        for Z in words_up_to(A, 2, 1):
            if len(Z) > 2:
                continue
            dom = words_up_to(A, 1, 0)
            n += 1
            lhs = gr.pull_back(gr.pull_back(chi, W, words_up_to(A, 2, 0)), Z, dom)
            rhs = gr.pull_back(chi, substitute(W, Z), dom)
            if lhs != rhs:
                fails.append(f"W={format_word(W)} Z={format_word(Z)}")
    return n, fails


SUITES = {
    "envelopes": lambda seed: [
        ("example envelope of {0, 000}", check_example_envelope),
        ("soundness and dimension bound", lambda: check_envelope_soundness(seed, 500)),
        ("first-occurrence rigidity", lambda: check_rigidity(3)),
        ("tau idempotent and canonical", lambda: check_tau(3, seed, 300)),
        ("type count stabilizes", check_type_stabilization),
    ],
    "encodings": lambda seed: [
        ("word graph triangle-free", lambda: check_graph_triangle_free(6)),
        ("word order axioms", lambda: check_order_axioms(4)),
        ("substitution preserves structure", lambda: check_substitution_preservation(seed, 2000)),
        ("encoder round trips", lambda: check_encoders(5, 4)),
    ],
    "grn": lambda seed: [
        ("Katetov and downset counts", lambda: check_function_counts(5)),
        ("finite embeddings", lambda: check_grn_embeddings(5, 4)),
        ("graph copy words", lambda: check_copy_words("graph", 4)),
        ("poset copy words, interval copies", lambda: check_copy_words("poset", 4, only_intervals=True)),
        ("poset copy words, all copies", lambda: check_copy_words("poset", 4)),
        ("gapped poset copies have no word", lambda: check_gapped_copies_unsolvable(4)),
    ],
    "degrees": lambda seed: [
        ("vertex bound is 1", check_vertex_bounds),
        ("graph pair types, three routes", check_graph_pairs),
        ("poset pair buckets, two routes", check_poset_pairs),
        ("no triangle types", check_graph_triples),
        ("edge bound at least 4", check_edge_bound),
    ],
    "interpretations": lambda seed: [
        ("triple graph embeddings", lambda: check_gp(5)),
        ("chain metrics", lambda: check_chain_metrics(5, 3)),
        ("tuple ultrametrics", lambda: check_ultrametrics(4)),
        ("superpositions", check_superpositions),
    ],
    "gr": lambda seed: [
        ("minimal N for (1,0,1,2)", check_minimal_n),
        ("monotone in N", check_monotone),
        ("pull-backs", lambda: check_compose(seed)),
    ],
}


def run_suite(name: str, seed: int = 0) -> SuiteReport:
    if name not in SUITES:
        raise UnknownSuite(name)
    checks = []
    for label, fn in SUITES[name](seed):
        t = time.perf_counter()
        count, fails, *note = fn()
        elapsed = time.perf_counter() - t
        checks.append(CheckResult(label, "fail" if fails else "pass", count, elapsed, fails, "".join(note)))
    return SuiteReport(name, checks)
