"""Quantifier-free calculus: rule dispatch, search, axiom-driven derivation."""

import random

import pytest

from tengram.derivation import check, id_judgement, replay
from tengram.errors import (
    AxiomNotSingleType,
    Inconclusive,
    IndexCollision,
    MalformedJudgement,
    NotAPar,
    RuleMismatch,
)
from tengram.macros import eta_id
from tengram.syntax import parse_judgement, parse_term
from tengram.ttc import (
    Valency,
    apply_rule,
    eliminate_cut,
    from_axioms,
    id_axiom,
    implication,
    par_inverse,
    prove,
    valency,
)
from tengram.types import NABLA, Atom, Lit, bind, dual, par, tensor

from genutil import has_cut, rand_pure_derivation

P = Lit("p", 1, 1, True)


def ap(i, j):
    return Atom(P, (i,), (j,))


def test_valency_counts_free_slots():
    assert valency(ap("i", "j")) == Valency(1, 1)
    assert valency(tensor(ap("i", "j"), ap("k", "l"))) == Valency(2, 2)
    assert valency(bind(NABLA, par(ap("a", "x"), dual(ap("b", "y"))), "x", "y")) == Valency(1, 1)
    assert valency(Atom(Lit("o", 0, 0, True), (), ())) == Valency(0, 0)


def test_implication_unfolds_to_par():
    a, b = ap("i", "j"), ap("k", "l")
    assert implication(a, b) == par(b, dual(a))
    with pytest.raises(IndexCollision):
        implication(a, ap("i", "m"))


def test_id_axiom_is_the_identity_judgement():
    args = ("p", ("a",), ("b",), ("c",), ("e",))
    assert id_axiom(*args) == id_judgement(*args)


IDP = id_judgement("p", ("a",), ("b",), ("c",), ("e",))
IDQ = id_judgement("p", ("u",), ("v",), ("x",), ("y",))


def test_apply_rule_dispatches_by_tag():
    assert apply_rule(("cut", 1, 0), IDP, IDQ) == id_judgement(
        "p", ("a",), ("b",), ("x",), ("y",)
    )
    assert apply_rule(("tensor", 1), IDP, IDQ).members[1].op == "tensor"
    assert len(apply_rule(("par", 0), IDP).members) == 1
    assert apply_rule(("move", 0, 1), IDP).members == (IDP.members[1], IDP.members[0])
    target = id_judgement("p", ("x",), ("y",), ("z",), ("w",))
    assert apply_rule(("eq", target), IDP) == target


@pytest.mark.parametrize(
    "rule,premises",
    [
        (("cut", 0, 0), (IDP,)),
        (("tensor", 0), (IDP,)),
        (("par", 0), (IDP, IDQ)),
        (("move", 0, 1), ()),
        (("frob", 1), (IDP,)),
    ],
)
def test_apply_rule_rejects_bad_arity_and_unknown_tags(rule, premises):
    with pytest.raises(RuleMismatch):
        apply_rule(rule, *premises)


def test_eliminate_cut_on_random_pure_trees():
    rng = random.Random(11)
    done = cuts = 0
    while done < 25:
        d, j = rand_pure_derivation(rng, steps=6, extended=False)
        if d is None:
            continue
        e = eliminate_cut(d)
        assert not has_cut(e)
        check(e, j)
        cuts += has_cut(d)
        done += 1
    assert cuts >= 8  # the sample must actually exercise cut elimination


def test_par_inverse_mirrors_split_par():
    a = par(ap("i", "j"), dual(ap("k", "l")))
    e = eta_id(a)
    d, t = par_inverse(e.deriv, e.judgement, 1)
    assert len(t.members) == 3 and replay(d) == t
    with pytest.raises(NotAPar):
        par_inverse(e.deriv, e.judgement, 0)
    with pytest.raises(NotAPar):
        par_inverse(e.deriv, e.judgement, 7)


def test_prove_finds_generalized_identities():
    goal = eta_id(tensor(ap("i", "j"), dual(ap("k", "l")))).judgement
    d = prove(goal)
    assert d is not None and not has_cut(d)
    check(d, goal)


def test_prove_decides_small_goals():
    assert prove(parse_judgement("1 |- ~p, p")) is not None
    assert prove(parse_judgement("1 |- p, p")) is None
    assert prove(parse_judgement("1 |- ~p")) is None


def test_prove_short_circuits_loops_and_refuses_binders():
    from tengram.judgement import Judgement

    from tengram.term import normalize

    assert prove(Judgement(normalize(parse_term("[a b]")), ())) is None
    quantified = eta_id(bind(NABLA, par(ap("a", "x"), dual(ap("b", "y"))), "x", "y"))
    with pytest.raises(MalformedJudgement):
        prove(quantified.judgement)


AX_P = parse_judgement("[u]_i^j |- p^i_j")
AX_F = parse_judgement("[v]_k^l*d_n^m |- p^k_m % ~p^n_l")
AXS = {"a": AX_P, "b": AX_F}


def test_from_axioms_composes_a_function_with_its_argument():
    goal = parse_judgement("[v u]_a^b |- p^a_b")
    got = from_axioms(goal, AXS)
    assert got is not None
    d, used = got
    assert dict(used) == {"a": 1, "b": 1}
    check(d, goal, axioms=AXS, counts=used)


def test_from_axioms_respects_word_order_and_supply():
    assert from_axioms(parse_judgement("[u v]_a^b |- p^a_b"), AXS) is None
    assert from_axioms(parse_judgement("[u u]_a^b |- p^a_b"), AXS) is None
    # multiset ruling out the function axiom
    assert from_axioms(parse_judgement("[v u]_a^b |- p^a_b"), AXS, multiset={"a": 1}) is None


def test_from_axioms_is_honest_about_truncation():
    with pytest.raises(Inconclusive):
        from_axioms(parse_judgement("[v u]_a^b |- p^a_b"), AXS, max_axioms=1)


def test_from_axioms_requires_single_type_axioms():
    with pytest.raises(AxiomNotSingleType):
        from_axioms(parse_judgement("[v u]_a^b |- p^a_b"), {"two": IDP})
