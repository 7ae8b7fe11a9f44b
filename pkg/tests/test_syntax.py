"""Surface syntax: tokenizer, parsers, formatters, round trips."""

import pytest

from tengram.errors import ParseError
from tengram.judgement import alpha_equal
from tengram.syntax import (
    format_judgement,
    format_term,
    format_type,
    parse_judgement,
    parse_term,
    parse_type,
)
from tengram.term import Edge, Loop, TermExpr, normalize
from tengram.types import NABLA, TRI, Atom, Binder, Lit, bind, dual, par, tensor


# --- terms ------------------------------------------------------------------


def test_parse_word_edge():
    t = parse_term("[John loves]_i^j")
    assert t.factors == (Edge("i", "j", ("John", "loves")),)


def test_parse_delta_and_empty_brackets():
    assert parse_term("d_i^j").factors == (Edge("i", "j"),)
    assert parse_term("[]_i^j").factors == (Edge("i", "j"),)


def test_parse_loop_and_self_edge():
    assert parse_term("[a b]").factors == (Loop(("a", "b")),)
    t = normalize(parse_term("[u]_i^i"))
    assert t.loops == (("u",),)


def test_parse_braced_and_hash_indices():
    t = parse_term("[w]_{x1}^{y2}")
    assert t.factors == (Edge("x1", "y2", ("w",)),)
    t2 = parse_term("[w]_#1^#2")
    assert t2.factors == (Edge("#1", "#2", ("w",)),)


def test_parse_product():
    t = parse_term("[a]_i^j*d_j^k")
    assert len(t.factors) == 2


@pytest.mark.parametrize("bad", ["[w]_i", "[w]^j", "d_i^", "*", "[w]_i^j extra]"])
def test_term_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_term(bad)


@pytest.mark.parametrize(
    "src",
    ["[a b]_i^j*d_k^l", "[x]_{i1}^{j2}", "[a](1)*[b c]", "d_i^j"],
)
def test_term_format_round_trip(src):
    t = normalize(parse_term(src.replace("(1)", "")))
    assert normalize(parse_term(format_term(t))) == t


# --- types ---------------------------------------------------------------------

P = Lit("p", 1, 1, positive=True)
Q = Lit("q", 2, 1, positive=True)


def test_parse_atom_decorations():
    # repeated markers collect decoration blocks in reading order
    t = parse_type("q^{i}^j_k")
    assert t == Atom(Q, ("i", "j"), ("k",))
    assert parse_type("q_k^i^j") == t


def test_parse_dual_atom():
    t = parse_type("~p^a_b")
    assert isinstance(t, Atom) and not t.lit.positive
    assert dual(t) == Atom(P, ("b",), ("a",))


def test_parse_connectives():
    t = parse_type("(p^a_b*p^c_e)%~p^f_g")
    assert t.op == "par"
    assert t.left.op == "tensor"
    # same-operator chains associate left, mixed operators need parentheses
    assert parse_type("p^a_b%p^c_e%p^f_g").left.op == "par"
    with pytest.raises(ParseError):
        parse_type("p^a_b*p^c_e%~p^f_g")


def test_parse_binder():
    t = parse_type("nab^x_y(p^a_x % ~q^y_b)")
    assert isinstance(t, Binder) and t.op == NABLA
    t2 = parse_type("tri^x_y(p^a_x * q^y^{z}_b)")
    assert isinstance(t2, Binder) and t2.op == TRI


@pytest.mark.parametrize(
    "t",
    [
        Atom(P, ("i",), ("j",)),
        dual(Atom(Q, ("i", "k"), ("j",))),
        tensor(Atom(P, ("i",), ("j",)), dual(Atom(P, ("k",), ("l",)))),
        par(Atom(P, ("i",), ("j",)), Atom(P, ("k",), ("l",))),
        bind(NABLA, par(Atom(P, ("a", ), ("x",)), dual(Atom(P, ("b",), ("y",)))), "x", "y"),
        bind(TRI, tensor(Atom(P, ("a",), ("x",)), Atom(P, ("y",), ("b",))), "b", "y"),
    ],
)
def test_type_format_round_trip(t):
    assert parse_type(format_type(t)) == t


@pytest.mark.parametrize("bad", ["p^a_", "nab^x(p^a_x)", "p^a_b %", "(p^a_b", "q^a_b!"])
def test_type_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_type(bad)


# --- judgements --------------------------------------------------------------------


def test_parse_judgement_round_trip():
    src = "d_a^e*d_c^b |- ~p^a_b, p^c_e"
    j = parse_judgement(src)
    assert len(j.members) == 2
    again = parse_judgement(format_judgement(j))
    assert again == j


def test_parse_judgement_empty_term_side():
    j = parse_judgement("1 |- ~p, p")
    assert j.term.edges == frozenset()
    assert [m.lit.name for m in j.members] == ["p", "p"]


def test_parse_judgement_binder_member():
    j = parse_judgement("[w]_i^j |- nab^x_y(p^i_x % ~p^y_j)")
    assert isinstance(j.members[0], Binder)
    assert parse_judgement(format_judgement(j)) == j


@pytest.mark.parametrize(
    "bad",
    [
        "d_a^b |-",                      # no members
        "[w]_i^j p^i_j",                 # missing turnstile
        "[w]_i^j |- p^i_k",              # pairing broken
        "[w]_i^j |- p^i_j, q^a_b",       # unmatched member slots
    ],
)
def test_judgement_errors(bad):
    with pytest.raises(Exception):
        parse_judgement(bad)


def test_format_judgement_is_stable():
    j = parse_judgement("[loves]_l^r*d_j^k*d_s^i |- S^j_i, ~NP^l_k, ~NP^s_r")
    assert format_judgement(j) == format_judgement(parse_judgement(format_judgement(j)))
    assert alpha_equal(j, parse_judgement(format_judgement(j)))
