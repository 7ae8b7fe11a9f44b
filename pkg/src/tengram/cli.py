"""Command-line front end.

One command per invocation; every printed derivation is a replayable
script.  Exit codes: 0 success / derivable, 1 not derivable / not in
language / failed check, 2 usage or format errors, 3 inconclusive search
(a budget cap was hit before an answer was found).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import engine, prover, term
from .derivation import AxiomLeaf, check as check_derivation, from_script, to_script
from .errors import Inconclusive, ParseError, TengramError
from .syntax import format_judgement, parse_judgement
from .term import to_graph_text
from .types import free_subs, free_sups

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    elif text:
        print(text, end="" if text.endswith("\n") else "\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write_out(path: str | None, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="" if text.endswith("\n") else "\n")


# --- commands -----------------------------------------------------------------


def _cmd_check(args) -> int:
    script = _read(args.derivation)
    grammar = engine.load_grammar(args.grammar) if args.grammar else None
    axioms = dict(grammar.axioms) if grammar else None
    d = from_script(script)
    try:
        concl = check_derivation(d, axioms=axioms, restricted=args.lambek_restriction)
    except TengramError as err:
        _emit(args, {"command": "check", "status": "invalid", "reason": str(err)}, "")
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NEGATIVE
    text = format_judgement(concl)
    _emit(args, {"command": "check", "status": "ok", "conclusion": text},
          f"checked: {text}")
    return EXIT_OK


def _cmd_parse(args) -> int:
    g = engine.load_grammar(args.grammar)
    word = tuple(args.sentence.split())
    try:
        res = engine.generates(g, word, max_axioms=args.max_axioms)
    except Inconclusive as err:
        _emit(args, {"command": "parse", "status": "inconclusive",
                     "reason": str(err), "word": " ".join(word)}, "INCONCLUSIVE")
        print(f"inconclusive: {err}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    if res is None:
        _emit(args, {"command": "parse", "status": "not-in-language",
                     "word": " ".join(word)}, "NOT-IN-LANGUAGE")
        return EXIT_NEGATIVE
    script = to_script(res.derivation, axioms=g.axioms)
    _emit(args, {
        "command": "parse",
        "status": "in-language",
        "word": " ".join(word),
        "derivation": script,
        "used": dict(sorted(res.used.items())),
    }, script)
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    g = engine.load_grammar(args.grammar)
    words = engine.enumerate_words(g, args.max_len, bound=args.bound)
    _emit(args, {"command": "enumerate", "max_len": args.max_len, "words": words},
          "\n".join(words) + ("\n" if words else ""))
    return EXIT_OK


def _cmd_translate(args) -> int:
    text = _read(args.source)
    if args.source_kind == "acg":
        from .lambda_acg import parse_acg

        src = parse_acg(text)
    else:
        from .lambek import parse_lexicon

        src = parse_lexicon(text)
    g = engine.translate(src, source_name=args.source)
    out = engine.format_grammar(g)
    if args.format == "json":
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(out)
        _emit(args, {"command": "translate", "kind": g.kind,
                     "output": args.output, "grammar": out}, "")
    else:
        _write_out(args.output, out)
    return EXIT_OK


def _cmd_prove(args) -> int:
    goal = parse_judgement(args.judgement)
    try:
        d = prover.prove(goal, restricted=args.lambek_restriction)
    except Inconclusive as err:
        _emit(args, {"command": "prove", "status": "inconclusive",
                     "reason": str(err)}, "INCONCLUSIVE")
        print(f"inconclusive: {err}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    if d is None:
        _emit(args, {"command": "prove", "status": "not-derivable"}, "NOT-DERIVABLE")
        return EXIT_NEGATIVE
    script = to_script(d, restricted=args.lambek_restriction)
    _emit(args, {"command": "prove", "status": "derivable", "derivation": script},
          script)
    return EXIT_OK


def _cmd_lexicalize(args) -> int:
    g = engine.load_grammar(args.grammar)
    axioms = {}
    for name in sorted(g.axioms):
        lj, _ = prover.lexicalize(g.axioms[name], AxiomLeaf(name))
        axioms[name] = lj
    lex = engine.Grammar(
        kind="extended",
        literals=g.literals,
        terminals=g.terminals,
        axioms=axioms,
        start=g.start,
        restricted=g.restricted,
        source=g.source,
    )
    out = engine.format_grammar(lex)
    if args.format == "json":
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(out)
        _emit(args, {"command": "lexicalize", "grammar": out,
                     "output": args.output}, "")
    else:
        _write_out(args.output, out)
    return EXIT_OK


def _cmd_graph(args) -> int:
    j = parse_judgement(args.judgement)
    order: list[str] = []
    for m in j.members:
        for i in (*free_sups(m), *free_subs(m)):
            if i not in order:
                order.append(i)
    dot = to_graph_text(j.term, order)
    if args.format == "json":
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(dot)
        _emit(args, {"command": "graph", "dot": dot, "output": args.output}, "")
    else:
        _write_out(args.output, dot)
    return EXIT_OK


# --- selftest -------------------------------------------------------------------

_TOY_GRAMMAR = """\
literals:
  NP : (1,1)
  S : (1,1)
terminals: John Mary loves
axioms:
  [John]_a^b |- NP^a_b
  [Mary]_a^b |- NP^a_b
  [loves]_l^r*d_j^k*d_s^i |- S^j_i, ~NP^l_k, ~NP^s_r
start: S
"""

_TOY_LEXICON = """\
John : NP
Mary : NP
loves : (NP\\S)/NP
start: S
restriction: on
"""


def _suite_terms(rng: random.Random, trials: int) -> str | None:
    from .term import Edge, TermExpr, congruent, multiply, normalize, rename_free

    names = ["a", "b", "c", "e", "f", "g", "h", "k"]
    for _ in range(trials):
        n = rng.randint(1, 6)
        factors = []
        for _ in range(n):
            lo, up = rng.choice(names) + str(rng.randint(0, 3)), \
                rng.choice(names) + str(rng.randint(0, 3))
            word = tuple(rng.choice(["", "x", "y"]).split())
            factors.append(Edge(lo, up, word))
        try:
            t = normalize(TermExpr(factors))
        except TengramError:
            continue
        if normalize(t) != t:
            return "normalization is not idempotent"
        shuffled = factors[:]
        rng.shuffle(shuffled)
        try:
            t2 = normalize(TermExpr(shuffled))
        except TengramError:
            continue
        if not congruent(t, t2):
            return "factor order changed the normal form"
        free = sorted(t.free_subs | t.free_sups)
        mapping = {i: i for i in free}
        if rename_free(t, mapping) != t:
            return "identity renaming changed the term"
    return None


def _suite_lambek(rng: random.Random, trials: int) -> str | None:
    from .lambek import LAtom, Over, Prod, Under, lambek_cycle, lc_prove

    atoms = [LAtom("p"), LAtom("q"), LAtom("r")]

    def random_type(budget: int):
        if budget == 0 or rng.random() < 0.45:
            return rng.choice(atoms), 0
        a, ca = random_type(budget - 1)
        b, cb = random_type(budget - 1 - ca)
        return rng.choice([Over(b, a), Under(a, b), Prod(a, b)]), ca + cb + 1

    for _ in range(trials):
        nctx = rng.randint(0, 3)
        ctx = tuple(random_type(2)[0] for _ in range(nctx))
        goal = random_type(2)[0]
        for restricted in (False, True):
            sequent_side = lc_prove(ctx, goal, restricted=restricted) is not None
            cycle = lambek_cycle(ctx, goal)
            tensor_side = prover.prove(cycle, restricted=restricted) is not None
            if sequent_side != tensor_side:
                return (
                    f"embedding mismatch on {ctx} |- {goal} "
                    f"(restricted={restricted})"
                )
    return None


def _suite_engine(rng: random.Random, trials: int) -> str | None:
    g = engine.parse_grammar(_TOY_GRAMMAR)
    if engine.generates(g, ("John", "loves", "Mary")) is None:
        return "fixture sentence rejected"
    if engine.generates(g, ("loves", "John")) is not None:
        return "ungrammatical word accepted"
    want = sorted([
        "John loves John", "John loves Mary",
        "Mary loves John", "Mary loves Mary",
    ])
    if sorted(engine.enumerate_words(g, 3)) != want:
        return "enumeration differs from the expected language"
    return None


def _suite_lambek_pipeline(rng: random.Random, trials: int) -> str | None:
    from .lambek import lambek_language, parse_lexicon

    lg = parse_lexicon(_TOY_LEXICON)
    etg = engine.translate(lg)
    ours = sorted(engine.enumerate_words(etg, 3))
    reference = sorted(" ".join(w) for w in lambek_language(lg, 3))
    if ours != reference:
        return "translated grammar disagrees with the sequent-side language"
    return None


def _cmd_selftest(args) -> int:
    rng = random.Random(20240803)
    suites = [
        ("terms", _suite_terms),
        ("lambek-embedding", _suite_lambek),
        ("engine", _suite_engine),
        ("lambek-pipeline", _suite_lambek_pipeline),
    ]
    results = {}
    failed = False
    lines = []
    for name, fn in suites:
        reason = fn(rng, args.trials)
        ok = reason is None
        failed = failed or not ok
        results[name] = "pass" if ok else f"fail: {reason}"
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}"
                     + ("" if ok else f" ({reason})"))
    _emit(args, {"command": "selftest", "suites": results,
                 "status": "fail" if failed else "pass"}, "\n".join(lines))
    return EXIT_NEGATIVE if failed else EXIT_OK


# --- argument plumbing ----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="tengram",
        description="tensor term calculus, sequent provers, and grammar tools",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    p = add("check", _cmd_check, "replay a derivation script")
    p.add_argument("derivation", help="script file, or - for stdin")
    p.add_argument("--grammar", help="grammar file supplying the axioms")
    p.add_argument("--lambek-restriction", action="store_true")

    p = add("parse", _cmd_parse, "parse a sentence with a grammar")
    p.add_argument("grammar")
    p.add_argument("sentence")
    p.add_argument("--max-axioms", type=int, default=None)

    p = add("enumerate", _cmd_enumerate, "list generated words up to a length")
    p.add_argument("grammar")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--bound", type=int, default=engine.DEFAULT_ENUM_BOUND)

    p = add("translate", _cmd_translate, "translate a source grammar")
    p.add_argument("--from", dest="source_kind", choices=("acg", "lambek"),
                   required=True)
    p.add_argument("source")
    p.add_argument("-o", "--output", default=None)

    p = add("prove", _cmd_prove, "prove a judgement from no axioms")
    p.add_argument("judgement")
    p.add_argument("--lambek-restriction", action="store_true")

    p = add("lexicalize", _cmd_lexicalize, "lexicalize a grammar's axioms")
    p.add_argument("grammar")
    p.add_argument("-o", "--output", default=None)

    p = add("graph", _cmd_graph, "render a judgement's term as Graphviz")
    p.add_argument("judgement")
    p.add_argument("-o", "--output", default=None)

    p = add("selftest", _cmd_selftest, "run the built-in differential suites")
    p.add_argument("--trials", type=int, default=60)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    # identical invocations should print identical scripts, even when the
    # process has already numbered generated indices for earlier work
    term.reset_fresh_counter()
    try:
        return args.fn(args)
    except Inconclusive as err:
        print(f"inconclusive: {err}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except TengramError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
