import time
from collections import Counter

from tengram import engine, prover
from tengram.derivation import check, from_script, to_script
from tengram.errors import (
    BoundExceeded,
    Inconclusive,
    MalformedJudgement,
    UnknownAtom,
    UnknownTerminal,
)
from tengram.judgement import canonicalize
from tengram.lambda_acg import parse_acg
from tengram.lambek import lambek_language, parse_lexicon


def check_ok(label, cond):
    assert cond, label
    print("ok:", label)


g = engine.load_grammar("fixtures/john_loves_mary.tg")
check_ok("41 kind", g.kind == "tensor")
check_ok("41 start", g.start == "S")
check_ok("41 axiom count", len(g.axioms) == 3)

t0 = time.time()
res = engine.generates(g, "John loves Mary".split())
t1 = time.time()
check_ok(f"John loves Mary parses ({t1 - t0:.3f}s)", res is not None)
check_ok("parse under a second", t1 - t0 < 1.0)
check_ok("usage multiset", res.used == Counter({"ax0": 1, "ax1": 1, "ax2": 1}))

# the derivation replays and round-trips through the script format
goal = engine.goal_judgement(g, ("John", "loves", "Mary"))
script = to_script(res.derivation, axioms=g.axioms)
back = from_script(script)
concl = check(back, axioms=g.axioms)
check_ok("script round trip replays",
         canonicalize(concl).key == canonicalize(goal).key)

check_ok("Mary loves rejected", engine.generates(g, ("Mary", "loves")) is None)
check_ok("loves John rejected", engine.generates(g, ("loves", "John")) is None)
check_ok("empty word rejected", engine.generates(g, ()) is None)
try:
    engine.generates(g, ("John", "sings"))
    raise AssertionError("unknown terminal accepted")
except UnknownTerminal:
    print("ok: unknown terminal")

words = engine.enumerate_words(g, 3)
check_ok("41 language at 3",
         sorted(words) == sorted([
             "John loves John", "John loves Mary",
             "Mary loves John", "Mary loves Mary"]))
try:
    engine.enumerate_words(g, 99)
    raise AssertionError("bound ignored")
except BoundExceeded:
    print("ok: enumeration bound")

# grammar file round trip
text = engine.format_grammar(g)
g2 = engine.parse_grammar(text)
check_ok("file round trip",
         sorted(canonicalize(j).key for j in g.axioms.values())
         == sorted(canonicalize(j).key for j in g2.axioms.values())
         and g2.kind == g.kind and g2.start == g.start)

# --- relative clauses -------------------------------------------------------
g42 = engine.load_grammar("fixtures/relative_clauses.tg")
t0 = time.time()
res = engine.generates(g42, "Mary whom John loves madly leaves".split())
t1 = time.time()
check_ok(f"Mary whom John loves madly leaves parses ({t1 - t0:.2f}s)",
         res is not None)
check_ok("relative clause under ten seconds", t1 - t0 < 10.0)
concl = check(res.derivation, axioms=g42.axioms)
want = engine.goal_judgement(g42, tuple("Mary whom John loves madly leaves".split()))
check_ok("conclusion matches goal",
         canonicalize(concl).key == canonicalize(want).key)

res = engine.generates(g42, "John leaves".split())
check_ok("John leaves parses", res is not None)
check_ok("leaves John rejected",
         engine.generates(g42, ("leaves", "John")) is None)
check_ok("whom alone rejected", engine.generates(g42, ("whom",)) is None)

# --- ACG translation ---------------------------------------------------------
with open("fixtures/toy.acg", encoding="utf-8") as fh:
    acg = parse_acg(fh.read())
tg = engine.translate(acg, source_name="fixtures/toy.acg")
check_ok("toy grammar kind", tg.kind == "tensor")
check_ok("toy source tag", tg.source == "fixtures/toy.acg")
words = engine.enumerate_words(tg, 3)
check_ok("toy language at 3",
         sorted(words) == sorted([
             "john leaves", "mary leaves",
             "john loves john", "john loves mary",
             "mary loves john", "mary loves mary"]))

# the toy grammar's file form parses back
text = engine.format_grammar(tg)
tg2 = engine.parse_grammar(text)
check_ok("toy file round trip",
         sorted(canonicalize(j).key for j in tg.axioms.values())
         == sorted(canonicalize(j).key for j in tg2.axioms.values()))

# --- relative pronoun ACG ----------------------------------------------------
with open("fixtures/relative_pronoun.acg", encoding="utf-8") as fh:
    acg2 = parse_acg(fh.read())
tg_rel = engine.translate(acg2)
t0 = time.time()
res = engine.generates(tg_rel, "john whom mary loves leaves".split())
t1 = time.time()
check_ok(f"john whom mary loves leaves parses ({t1 - t0:.2f}s)", res is not None)

# --- Lambek translation --------------------------------------------------------
with open("fixtures/lambek.lex", encoding="utf-8") as fh:
    lg = parse_lexicon(fh.read())
etg = engine.translate(lg, source_name="fixtures/lambek.lex")
check_ok("lambek grammar kind", etg.kind == "extended")
check_ok("lambek restriction carried", etg.restricted is True)
res = engine.generates(etg, "John loves Mary".split())
check_ok("lambek John loves Mary parses", res is not None)
concl = check(res.derivation, axioms=etg.axioms)
want = engine.goal_judgement(etg, ("John", "loves", "Mary"))
check_ok("lambek conclusion matches",
         canonicalize(concl).key == canonicalize(want).key)
check_ok("lambek John loves rejected",
         engine.generates(etg, ("John", "loves")) is None)

t0 = time.time()
te = engine.enumerate_words(etg, 3)
lc = lambek_language(lg, 3)
t1 = time.time()
check_ok(f"lambek language equality at 3 ({t1 - t0:.2f}s)",
         sorted(te) == sorted(" ".join(w) for w in lc))

# extended grammar file round trip (quantified axioms)
text = engine.format_grammar(etg)
etg2 = engine.parse_grammar(text)
check_ok("extended file round trip",
         etg2.kind == "extended" and etg2.restricted is True
         and sorted(canonicalize(j).key for j in etg.axioms.values())
         == sorted(canonicalize(j).key for j in etg2.axioms.values()))

print("ALL ENGINE SMOKE TESTS PASSED")
