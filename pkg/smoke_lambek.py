"""Scratch smoke test for lambek.py (delete before commit)."""

import itertools
import random
import time

from tengram.lambek import (
    EmbedReport, LAtom, LambekGrammar, Over, Prod, Under,
    connective_count, embed_check, format_lambek_type, format_lexicon,
    is_locally_connected, lambek_cycle, lambek_generates, lambek_language,
    lc_check, lc_prove, parse_lambek_type, parse_lexicon,
    translate_lambek_type, translate_lambek_grammar,
)
from tengram.judgement import Judgement

p, q, r = LAtom("p"), LAtom("q"), LAtom("r")
NP, S = LAtom("NP"), LAtom("S")

# basic sequents
assert lc_prove([p], p) is not None
assert lc_prove([p], q) is None
assert lc_prove([NP, Under(NP, S)], S) is not None
assert lc_prove([Under(NP, S)], Under(NP, S)) is not None
assert lc_prove([p, q], Prod(p, q)) is not None
assert lc_prove([Prod(p, q)], Prod(p, q)) is not None
assert lc_prove([], Over(p, p)) is not None          # full calculus
assert lc_prove([], Over(p, p), restricted=True) is None   # restricted
assert lc_prove([Over(p, q), q], p) is not None
assert lc_prove([q, Over(p, q)], p) is None  # wrong side
d = lc_prove([NP, Over(Under(NP, S), NP), NP], S)
assert d is not None and lc_check(d)
# type lifting p |- q/(p\q)
assert lc_prove([p], Over(q, Under(p, q))) is not None
# associativity-flavoured: p\(q/r) vs (p\q)/r
assert lc_prove([Under(p, Over(q, r))], Over(Under(p, q), r)) is not None

# parse/format round trip
for text, expect in [
    ("NP", NP),
    ("NP \\ S", Under(NP, S)),
    ("(NP\\S)/NP", Over(Under(NP, S), NP)),
    ("NP\\S/NP", Over(Under(NP, S), NP)),  # left-assoc chain
    ("p*q/r", Over(Prod(p, q), r)),
    ("p/(q*r)", Over(p, Prod(q, r))),
]:
    got = parse_lambek_type(text)
    assert got == expect, (text, got)
    assert parse_lambek_type(format_lambek_type(got)) == got

# translation shapes + local connectivity
for t in [p, Over(q, p), Under(p, q), Prod(p, q),
          Over(Under(NP, S), NP), Prod(Over(p, q), Under(q, r))]:
    tt = translate_lambek_type(t, "i", "j")
    assert is_locally_connected(tt), t
    from tengram.types import free_sups, free_subs
    assert free_sups(tt) == ("i",) and free_subs(tt) == ("j",)

# cycle of p |- p is an Id-shaped judgement
cyc = lambek_cycle([p], p)
assert len(cyc.members) == 2 and len(cyc.term.edges) == 2

# embed_check on handpicked sequents, both modes
cases = [
    ([p], p),
    ([p], q),
    ([NP, Under(NP, S)], S),
    ([], Over(p, p)),
    ([p, q], Prod(p, q)),
    ([Prod(p, q)], Prod(p, q)),
    ([Over(p, q), q], p),
    ([q, Over(p, q)], p),
    ([p], Over(q, Under(p, q))),
    ([Under(p, Over(q, r))], Over(Under(p, q), r)),
    ([Over(p, q)], Over(p, q)),
    ([], p),
]
for ctx, goal in cases:
    for restricted in (False, True):
        rep = embed_check(ctx, goal, restricted)
        assert rep.status != "mismatch", (ctx, goal, restricted, rep)
print("handpicked embed checks agree")

# random differential sweep
random.seed(7)
ATOMS = [p, q, r]

def rand_type(n):
    if n == 0:
        return random.choice(ATOMS)
    k = random.randrange(n)
    a, b = rand_type(k), rand_type(n - 1 - k)
    return random.choice([Over(a, b), Under(a, b), Prod(a, b)])

t0 = time.time()
checked = 0
for trial in range(60):
    size = random.randrange(0, 4)
    ctx = [rand_type(random.randrange(0, 2)) for _ in range(size)]
    goal = rand_type(random.randrange(0, 3))
    total = sum(connective_count(t) for t in ctx) + connective_count(goal)
    if total > 6:
        continue
    for restricted in (False, True):
        rep = embed_check(ctx, goal, restricted)
        assert rep.status != "mismatch", (ctx, goal, restricted, rep)
        checked += 1
print(f"{checked} random embed checks agree in {time.time()-t0:.1f}s")

# lexicon + language
lex = parse_lexicon("""
# tiny fixture
start: S
restriction: on
John : NP
Mary : NP
loves : (NP\\S)/NP
""")
assert lex.restricted and lex.start == "S"
assert lambek_generates(lex, ("John", "loves", "Mary"))
assert not lambek_generates(lex, ("loves", "John"))
lang3 = lambek_language(lex, 3)
assert ("John", "loves", "Mary") in lang3 and ("Mary", "loves", "Mary") in lang3
assert len(lang3) == 4
assert parse_lexicon(format_lexicon(lex)) == lex

g = translate_lambek_grammar(lex)
assert g.kind == "extended" and g.restricted and len(g.axioms) == 3
print("lambek smoke ok")
