"""Scratch smoke test for the ttc/ettc faces (delete before commit)."""

from tengram import term as T
from tengram import ttc, ettc
from tengram.types import Atom, Bin, Lit, PAR, NABLA, TRI, bind, dual, par
from tengram.judgement import Judgement, alpha_equal
from tengram.derivation import check, replay, CutNode
from tengram.macros import eta_id
from tengram.errors import (
    NotANabla,
    AxiomNotSingleType, IndexCollision, NotAPar, SchemeMismatch, MalformedJudgement,
)
from tengram.term import Edge, TermExpr, normalize


def atom(name, sup, sub, positive=True):
    return Atom(Lit(name, len(sup), len(sub), positive), tuple(sup), tuple(sub))


# --- ttc face ---------------------------------------------------------------
np1 = atom("NP", ("i",), ("j",))
s1 = atom("S", ("k",), ("l",))
imp = ttc.implication(np1, s1)
assert isinstance(imp, Bin) and imp.op == PAR
assert ttc.valency(imp) == (2, 2)
try:
    ttc.implication(np1, atom("S", ("i",), ("m",)))
    raise AssertionError("expected IndexCollision")
except IndexCollision:
    pass

jid = ttc.id_axiom("p", ("i",), ("j",), ("i2",), ("j2",))
assert ttc.prove(jid) is not None

# apply_rule dispatch
j2 = ttc.apply_rule(("par", 0), jid)
assert len(j2.members) == 1
d0 = ttc.prove(j2)
assert d0 is not None
d1, j3 = ttc.par_inverse(d0, j2, 0)
assert alpha_equal(j3, jid)
assert alpha_equal(replay(d1), j3)
try:
    ttc.par_inverse(d0, jid, 0)
    raise AssertionError("expected NotAPar")
except NotAPar:
    pass

# loops fast-path
loopy = Judgement(normalize(TermExpr([T.Loop(("w",)), Edge("a", "b")])),
                  (atom("p", ("a",), ("b",)),))
assert ttc.prove(loopy) is None

# binder goal refused
bj = Judgement(normalize(TermExpr([Edge("a", "b")])),
               (bind(NABLA, Bin(PAR, atom("p", ("a", "x"), ("b",)), atom("q", (), ("y",), ), ), "y", "x"),))
try:
    ttc.prove(bj)
    raise AssertionError("expected MalformedJudgement")
except MalformedJudgement:
    pass

# from_axioms single-type enforcement
two = Judgement(normalize(TermExpr([Edge("a", "b", ("w",)), Edge("c", "d", ("u",))])),
                (atom("p", ("a",), ("b",)), atom("q", ("c",), ("d",))))
try:
    ttc.from_axioms(jid, {"ax": two})
    raise AssertionError("expected AxiomNotSingleType")
except AxiomNotSingleType:
    pass

# eliminate_cut passthrough
e1 = eta_id(atom("p", ("i",), ("j",)))
e2 = eta_id(atom("p", ("u",), ("v",)))
cut = CutNode(e1.deriv, e2.deriv, 1, 0)
out = ttc.eliminate_cut(cut)
assert alpha_equal(replay(out), replay(cut))
print("ttc face ok")

# --- ettc face --------------------------------------------------------------
def over(b, a, alpha, beta):
    # (b/a)^i_j = nab^a_b( b-part par ~a-part )
    return bind(NABLA, par(b, dual(a)), alpha, beta)

def under(a, b, alpha, beta):
    return bind(NABLA, par(dual(a), b), alpha, beta)

# right elimination: t |- ~X, X with X=(S/NP)^i_j ; s |- ~NP, NP
S_part = atom("S", ("i",), ("al",))
NP_arg = atom("NP", ("j",), ("be",))
slash = over(S_part, NP_arg, "al", "be")
et = eta_id(slash)
es = eta_id(atom("NP", ("m",), ("n",)))
d, j = ettc.slash_elim("right", et.deriv, et.judgement, es.deriv, es.judgement, spos=1)
assert alpha_equal(replay(d), j)
assert len(j.members) == 3
assert check(d) is not None

# left elimination: X=(NP\S)^i_j at tpos=1
NP_arg2 = atom("NP", ("al2",), ("i2",))
S_part2 = atom("S", ("be2",), ("j2",))
slashL = under(NP_arg2, S_part2, "al2", "be2")
etL = eta_id(slashL)
esL = eta_id(atom("NP", ("m2",), ("n2",)))
dL, jL = ettc.slash_elim("left", etL.deriv, etL.judgement, esL.deriv, esL.judgement, tpos=1, spos=1)
assert alpha_equal(replay(dL), jL)
assert check(dL) is not None

# mismatched argument symbol
esB = eta_id(atom("S", ("m3",), ("n3",)))
try:
    ettc.slash_elim("right", et.deriv, et.judgement, esB.deriv, esB.judgement, spos=1)
    raise AssertionError("expected SchemeMismatch")
except SchemeMismatch:
    pass
# non-slash member
try:
    ettc.slash_elim("right", es.deriv, es.judgement, et.deriv, et.judgement)
    raise AssertionError("expected SchemeMismatch")
except SchemeMismatch:
    pass

# nabla_inverse round trip on the eta judgement of a quantified type
dq = ettc.ext_prove(et.judgement)
assert dq is not None
d2, j2q = ettc.nabla_inverse(dq, et.judgement, 1, "q2", "p2")
assert alpha_equal(replay(d2), j2q)
assert Edge("p2", "q2") in j2q.term.edges
try:
    ettc.nabla_inverse(dq, et.judgement, 0, "a9", "b9")
    raise AssertionError("expected NotANabla")
except NotANabla:
    pass

# lexicalize face returns judgement only; words preserved
base = Judgement(normalize(TermExpr([Edge("x", "y", ("w",)), Edge("q", "p")])),
                 (atom("A", ("x", "q"), ("y", "p")),))
lex = ettc.lexicalize(base)
assert lex.term.is_lexical()
print("ettc face ok")
