"""``paramspace`` command line: one subcommand per module."""

from __future__ import annotations

import argparse
import sys

from . import degrees, encodings, envelopes, gr, grn, interpretations, render, suites
from .errors import ParamSpaceError
from .structures import format_structure, parse_structure, read_structure
from .words import GRAPH_ALPHABET, POSET_ALPHABET, Alphabet, format_word, param_count, parse_word, substitute


def _alphabet(args, default: str = "0") -> Alphabet:
    return Alphabet(args.alphabet or default)


def _words(texts, alphabet):
    return [parse_word(t, alphabet) for t in texts]


def _parse_map(text: str) -> dict:
    out = {}
    for item in filter(None, text.split(",")):
        a, _, b = item.partition(":")
        out[int(a)] = int(b)
    return out


def _one_line(s) -> str:
    return format_structure(s).strip().replace("\n", "; ")


# --- handlers ----------------------------------------------------------------


def cmd_word(args, out):
    A = _alphabet(args)
    W = parse_word(args.word, A)
    if args.subst is None:
        print(format_word(W), file=out)
        print(f"length {len(W)}", file=out)
        print(f"params {param_count(W)}", file=out)
        return 0
    print(format_word(substitute(W, parse_word(args.subst, A))), file=out)
    return 0


def cmd_envelope(args, out):
    S = _words(args.words, _alphabet(args))
    too_many = [w for w in S if param_count(w) > args.params]
    if too_many:
        raise ValueError(f"{format_word(too_many[0])} has more than {args.params} parameters")
    env = envelopes.minimal_envelope(S)
    T = envelopes.embedding_type(env, S)
    print(format_word(env.word), file=out)
    print(env.dim, file=out)
    for w in T.sorted(_alphabet(args)):
        print(format_word(w), file=out)
    return 0


def cmd_type(args, out):
    A = _alphabet(args)
    T = envelopes.tau(_words(args.words, A))
    print(f"dim {T.dim}", file=out)
    for w in T.sorted(A):
        print(format_word(w), file=out)
    return 0


def cmd_encode(args, out):
    S = read_structure(args.file)
    words = encodings.encode_triangle_free(S) if args.kind == "graph" else encodings.encode_poset(S)
    for w in words:
        print(format_word(w), file=out)
    return 0


def cmd_edge(args, out):
    A = GRAPH_ALPHABET
    print(str(encodings.graph_edge(*_words([args.u, args.v], A))).lower(), file=out)
    return 0


def cmd_leq(args, out):
    A = POSET_ALPHABET
    ok, witness = encodings.order_leq(*_words([args.w, args.v], A))
    print(str(ok).lower(), file=out)
    print(f"witness {witness}", file=out)
    return 0


def cmd_grn(args, out):
    if args.what == "copyword":
        B, A = read_structure(args.files[0]), read_structure(args.files[1])
        copy = _parse_map(args.map) if args.map else list(range(A.size))
        graphish = B.kind in ("graph", "ordered-graph")
        report = (grn.copy_word_graph_report if graphish else grn.copy_word_poset_report)(B, A, copy)
        print(format_word(report.word), file=out)
        print(f"params {report.k}", file=out)
        print("verified" if report.ok else "failed", file=out)
        for p in report.problems:
            print(f"  {p}", file=out)
        return 0 if report.ok else 1
    B = read_structure(args.files[0])
    emb = grn.embed_graph_grn(B) if args.what == "graph" else grn.embed_poset_grn(B)
    print(f"d {emb.d}", file=out)
    print(f"n {emb.n}", file=out)
    for w in emb.words:
        print(format_word(w), file=out)
    return 0


def cmd_degrees(args, out):
    if args.bound:
        A = read_structure(args.bound)
        print(degrees.brd_upper_bound(A, args.kind, max_ell=args.max_ell), file=out)
        return 0
    census = degrees.enumerate_canonical_types(args.kind, args.ell, max_ell=args.max_ell)
    alphabet = POSET_ALPHABET if args.kind == "poset" else GRAPH_ALPHABET
    # each class is shown through its first type, so the line matches the words below it
    rows = sorted((_one_line(encodings.induced_structure(ts[0].elements, args.kind)), ts) for ts in census.buckets.values())
    for label, ts in rows:
        print(f"{label} -> {len(ts)}", file=out)
        for T in ts[: args.show]:
            print("  " + " ".join(format_word(w) for w in T.sorted(alphabet)), file=out)
    print(f"total {census.total()}", file=out)
    return 0


def _split_directive(path, directive):
    rows, rest = [], []
    with open(path) as fh:
        for raw in fh:
            tok = raw.split("#", 1)[0].split()
            if tok and tok[0] == directive:
                rows.append([int(x) for x in tok[1:]])
            else:
                rest.append(raw)
    return rows, "".join(rest)


def cmd_interpret(args, out):
    if args.what == "gp":
        P, triples = interpretations.embed_triangle_free_into_gp(read_structure(args.files[0]))
        out.write(format_structure(P.to_structure()))
        for t in triples:
            print("# triple " + " ".join(map(str, t)), file=out)
    elif args.what == "metric":
        chains, text = _split_directive(args.files[0], "chain")
        P = parse_structure(text)
        out.write(format_structure(interpretations.metric_from_chains(P, args.d, chains)))
    elif args.what == "ultra":
        tuples, _ = _split_directive(args.files[0], "tuple")
        out.write(format_structure(interpretations.ultrametric_from_tuples(args.d, tuples)))
    else:
        sp = interpretations.superpose([read_structure(f) for f in args.files])
        out.write(format_structure(sp.structure))
    return 0


def cmd_gr(args, out):
    params = (args.sigma, args.k, args.n, args.r)
    if args.what == "verify":
        res = gr.verify_gr(*params, args.N, method=args.method, cap=args.cap, samples=args.samples, seed=args.seed)
        lines = [gr.result_line("verify", *params, args.N, res)]
        if res.counterexample is not None:
            lines.append(f"counterexample {res.counterexample}")
    else:
        N, history = gr.minimal_n(*params, N_max=args.N_max, method=args.method, cap=args.cap)
        lines = [gr.result_line("verify", *params, M, res) for M, res in history]
        lines.append(f"minimal sigma={args.sigma} k={args.k} n={args.n} r={args.r} N={N}")
    for line in lines:
        print(line, file=out)
        if args.ledger:
            gr.append_result(args.ledger, line)
    return 0


def cmd_suite(args, out):
    code = 0
    for name in args.names:
        report = suites.run_suite(name, seed=args.seed)
        out.write(report.text())
        code |= not report.ok
    return code


def cmd_render(args, out):
    if args.copyword:
        B, A = read_structure(args.copyword[0]), read_structure(args.copyword[1])
        copy = _parse_map(args.map) if args.map else list(range(A.size))
        graphish = B.kind in ("graph", "ordered-graph")
        embed = grn.embed_graph_grn if graphish else grn.embed_poset_grn
        report = (grn.copy_word_graph_report if graphish else grn.copy_word_poset_report)(B, A, copy)
        sections = [
            ("B", embed(B).words, [f"phi({b})" for b in range(B.size)]),
            ("A", embed(A).words, [f"phi'({a})" for a in range(A.size)]),
            ("W", [report.word], ["W"]),
        ]
        out.write(render.render_word_table(sections=sections))
        return 0
    words = _words(args.words, _alphabet(args))
    out.write(render.render_word_table(words))
    return 0


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="paramspace", description="Parameter words, envelopes and word encodings.")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, handler, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(handler=handler)
        return sp

    sp = add("word", cmd_word, "validate a word literal, optionally substitute into it")
    sp.add_argument("word")
    sp.add_argument("--alphabet")
    sp.add_argument("--subst", metavar="U", help="print W(U) instead")

    sp = add("envelope", cmd_envelope, "minimal envelope, its dimension and the embedding type")
    sp.add_argument("words", nargs="+")
    sp.add_argument("--alphabet")
    sp.add_argument("--params", type=int, default=1, help="max parameters per word (default 1)")

    sp = add("type", cmd_type, "canonical embedding type of a set of words")
    sp.add_argument("words", nargs="+")
    sp.add_argument("--alphabet")

    sp = add("encode", cmd_encode, "word encoding of a structure file")
    sp.add_argument("kind", choices=("graph", "poset"))
    sp.add_argument("file")

    sp = add("edge", cmd_edge, "adjacency of two graph-vertex words")
    sp.add_argument("u")
    sp.add_argument("v")

    sp = add("leq", cmd_leq, "order between two LXR-words, with the witness index")
    sp.add_argument("w")
    sp.add_argument("v")

    sp = add("grn", cmd_grn, "finite embeddings and copy words")
    sp.add_argument("what", choices=("graph", "poset", "copyword"))
    sp.add_argument("files", nargs="+")
    sp.add_argument("--map", help="copy of A in B as a:b pairs, e.g. 0:2,1:4")

    sp = add("degrees", cmd_degrees, "canonical-type census and degree bounds")
    sp.add_argument("bound_word", nargs="?", choices=("bound",), help=argparse.SUPPRESS)
    sp.add_argument("bound_file", nargs="?", help=argparse.SUPPRESS)
    sp.add_argument("--kind", choices=("graph", "poset"), default="graph")
    sp.add_argument("--ell", type=int, default=2)
    sp.add_argument("--max-ell", type=int, default=None, help="raise the default size cap (graph 3, poset 2)")
    sp.add_argument("--show", type=int, default=3, help="representatives per class (default 3)")

    sp = add("interpret", cmd_interpret, "poset interpretations of other structures")
    sp.add_argument("what", choices=("gp", "metric", "ultra", "superpose"))
    sp.add_argument("files", nargs="+")
    sp.add_argument("--d", type=int, default=3)

    sp = add("gr", cmd_gr, "finite Graham-Rothschild search")
    sp.add_argument("what", choices=("verify", "minimal"))
    for flag, default in (("--sigma", 1), ("--k", 0), ("--n", 1), ("--r", 2)):
        sp.add_argument(flag, type=int, default=default)
    sp.add_argument("--N", type=int, default=None)
    sp.add_argument("--N-max", type=int, default=12)
    sp.add_argument("--method", choices=("enumerate", "backtrack", "sample"), default=None)
    sp.add_argument("--cap", type=int, default=None)
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--ledger", help="append result lines to this file")

    sp = add("suite", cmd_suite, "run verification suites")
    sp.add_argument("names", nargs="+", choices=sorted(suites.SUITES))

    sp = add("render", cmd_render, "monospace word table")
    sp.add_argument("words", nargs="*")
    sp.add_argument("--alphabet")
    sp.add_argument("--copyword", nargs=2, metavar=("B_FILE", "A_FILE"))
    sp.add_argument("--map")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "degrees":
        if args.bound_word and not args.bound_file:
            parser.error("degrees bound needs a structure file")
        args.bound = args.bound_file
    if args.command == "gr":
        if args.what == "verify" and args.N is None:
            parser.error("gr verify needs --N")
        args.method = args.method or ("enumerate" if args.what == "verify" else "backtrack")
    try:
        return args.handler(args, out)
    except (ParamSpaceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
