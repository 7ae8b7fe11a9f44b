"""Judgement invariants, canonical forms, relabelling."""

import random

import pytest

from genutil import rand_pure_derivation
from tengram.errors import MalformedJudgement
from tengram.judgement import (
    Judgement,
    alpha_equal,
    canonicalize,
    make_judgement,
    relabel_mapping,
    rename_judgement,
)
from tengram.term import Edge, TermExpr, normalize
from tengram.types import Atom, Lit, dual, par

P = Lit("p", 1, 1, positive=True)


def jud(text_edges, members):
    return Judgement(normalize(TermExpr(text_edges)), tuple(members))


def sample():
    # d_c^b . d_a^e |- ~p^a_b, p^c_e
    return jud(
        [Edge("c", "b"), Edge("a", "e")],
        [Atom(P.dual(), ("a",), ("b",)), Atom(P, ("c",), ("e",))],
    )


def test_pairing_invariant_enforced():
    with pytest.raises(MalformedJudgement):
        # term's lower "i" matches no member upper slot
        jud([Edge("i", "j", ("w",))], [Atom(P, ("k",), ("j",))])
    with pytest.raises(MalformedJudgement):
        # member slot "z" has no term endpoint
        jud([Edge("i", "j", ("w",))], [Atom(P, ("i",), ("z",))])


def test_make_judgement_normalizes():
    j = make_judgement(
        TermExpr([Edge("i", "k", ("u",)), Edge("k", "j", ("v",))]),
        (Atom(P, ("i",), ("j",)),),
    )
    assert j.term.edges == frozenset({Edge("i", "j", ("u", "v"))})


def test_sequent_slot_order():
    j = sample()
    assert j.sequent_sups() == ("a", "c")
    assert j.sequent_subs() == ("b", "e")


def test_alpha_equal_under_renaming():
    j = sample()
    r = rename_judgement(j, {"a": "1", "b": "2", "c": "3", "e": "4"})
    assert alpha_equal(j, r)
    assert relabel_mapping(j, r) == {"a": "1", "b": "2", "c": "3", "e": "4"}


def test_member_order_multiset_vs_relabelling():
    # conclusions compare as multisets (alpha_equal), but the explicit
    # relabelling step keeps member order
    j = sample()
    swapped = Judgement(j.term, (j.members[1], j.members[0]))
    assert alpha_equal(j, swapped)
    assert relabel_mapping(j, swapped) is None
    assert relabel_mapping(j, j) == {n: n for n in ("a", "b", "c", "e")}


def test_canonical_key_ignores_names_and_member_order():
    j = sample()
    r = rename_judgement(j, {"a": "x1", "e": "x2"})
    swapped = Judgement(j.term, (j.members[1], j.members[0]))
    assert canonicalize(j).key == canonicalize(r).key
    assert canonicalize(j).key == canonicalize(swapped).key


def test_canonical_key_separates_different_words():
    a = jud([Edge("i", "j", ("u",))], [Atom(P, ("i",), ("j",))])
    b = jud([Edge("i", "j", ("v",))], [Atom(P, ("i",), ("j",))])
    assert canonicalize(a).key != canonicalize(b).key


def test_canonical_key_separates_polarity():
    a = jud([Edge("i", "j", ("u",))], [Atom(P, ("i",), ("j",))])
    m = dual(Atom(P, ("j",), ("i",)))
    b = Judgement(a.term, (m,))
    assert canonicalize(a).key != canonicalize(b).key


def test_canonicalize_random_round_trip():
    rng = random.Random(5)
    for _ in range(40):
        _, j = rand_pure_derivation(rng, steps=4, extended=True)
        names = sorted(
            {e.lower for e in j.term.edges} | {e.upper for e in j.term.edges}
        )
        mapping = {n: f"n{k}" for k, n in enumerate(names)}
        r = rename_judgement(j, mapping)
        assert alpha_equal(j, r)
        assert canonicalize(j).key == canonicalize(r).key
        got = relabel_mapping(j, r)
        assert got is not None
        assert {k: v for k, v in got.items() if k != v} == {
            k: v for k, v in mapping.items() if k != v
        }
