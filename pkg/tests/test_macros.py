"""Derived constructions: generalized identities and inverse-rule macros."""

import pytest

from tengram.derivation import AxiomLeaf, check, replay
from tengram.errors import RuleMismatch
from tengram.macros import eta_id, open_quantifier, pack_pars, split_par
from tengram.syntax import parse_judgement
from tengram.term import Edge
from tengram.types import (
    NABLA,
    PAR,
    TRI,
    Atom,
    Bin,
    Lit,
    bind,
    dual,
    free_subs,
    free_sups,
    par,
    redecorate,
    tensor,
)

P = Lit("p", 1, 1, True)


def ap(i, j):
    return Atom(P, (i,), (j,))


NAB = bind(NABLA, par(ap("a", "x"), dual(ap("b", "y"))), "x", "y")
TRIB = bind(TRI, tensor(ap("a", "x"), ap("y", "b")), "b", "y")

SHAPES = [
    ap("i", "j"),
    dual(ap("i", "j")),
    tensor(ap("i", "j"), ap("k", "l")),
    par(ap("i", "j"), dual(ap("k", "l"))),
    tensor(par(ap("i", "j"), ap("k", "l")), dual(ap("m", "n"))),
    NAB,
    TRIB,
]


@pytest.mark.parametrize("a", SHAPES, ids=range(len(SHAPES)))
def test_eta_id_derives_its_generalized_identity(a):
    e = eta_id(a)
    assert replay(e.deriv) == e.judgement
    neg, copy = e.judgement.members
    assert neg == dual(a)
    assert copy == redecorate(
        a,
        tuple(e.fresh_of[i] for i in free_sups(a)),
        tuple(e.fresh_of[i] for i in free_subs(a)),
    )
    # wires: each slot of A hooked straight to its fresh twin
    want = {Edge(e.fresh_of[x], x) for x in free_sups(a)}
    want |= {Edge(y, e.fresh_of[y]) for y in free_subs(a)}
    assert set(e.judgement.term.edges) == want


@pytest.mark.parametrize("a", [NAB, TRIB], ids=["nabla", "tri"])
def test_eta_id_of_quantified_types_respects_the_restriction(a):
    e = eta_id(a)
    check(e.deriv, e.judgement, restricted=True)


def test_split_par_undoes_a_par():
    a = par(ap("i", "j"), dual(ap("k", "l")))
    e = eta_id(a)
    d, t = split_par(e.deriv, e.judgement, 1)
    assert replay(d) == t
    assert len(t.members) == 3
    assert t.members[0] == dual(a)
    assert isinstance(t.members[1], Atom) and isinstance(t.members[2], Atom)
    assert t.term == e.judgement.term  # splitting never touches the term


def test_split_par_rejects_other_members():
    e = eta_id(ap("i", "j"))
    with pytest.raises(RuleMismatch):
        split_par(e.deriv, e.judgement, 1)


def test_open_quantifier_names_the_bound_pair():
    e = eta_id(NAB)
    d, t = open_quantifier(e.deriv, e.judgement, 1, "o1", "o2")
    assert replay(d) == t
    m = t.members[1]
    assert isinstance(m, Bin) and m.op is PAR  # binder body is a par
    assert "o1" in free_subs(m) and "o2" in free_sups(m)
    assert Edge("o2", "o1") in t.term.edges
    check(d, t, restricted=True)


def test_open_quantifier_rejects_non_quantified_members():
    e = eta_id(NAB)
    # member 0 is the dual, a tri binder: not a quantifier to open
    with pytest.raises(RuleMismatch):
        open_quantifier(e.deriv, e.judgement, 0, "z1", "z2")
    e2 = eta_id(ap("i", "j"))
    with pytest.raises(RuleMismatch):
        open_quantifier(e2.deriv, e2.judgement, 1, "z1", "z2")


FOUR = parse_judgement("1 |- ~p, p, ~q, q")


def test_pack_then_split_is_the_identity():
    d, packed = pack_pars(AxiomLeaf("c"), FOUR)
    assert len(packed.members) == 1
    m = packed.members[0]
    assert isinstance(m, Bin) and m.op is PAR
    # unfold again, always splitting the left-nested head
    j = packed
    while len(j.members) < 4:
        d, j = split_par(d, j, 0)
    assert j == FOUR
    assert replay(d, axioms={"c": FOUR}) == FOUR


def test_pack_pars_keeps_single_members_alone():
    e = eta_id(ap("i", "j"))
    d, t = pack_pars(e.deriv, e.judgement)
    assert len(t.members) == 1
    assert replay(d) == t
