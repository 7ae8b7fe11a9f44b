"""Grammar container, parsing, enumeration, files, and translation dispatch."""

import dataclasses

import pytest

from tengram.derivation import check
from tengram.engine import (
    Grammar,
    ParseResult,
    enumerate_words,
    format_grammar,
    generates,
    goal_judgement,
    load_grammar,
    parse_grammar,
    save_grammar,
    translate,
)
from tengram.errors import (
    BoundExceeded,
    Inconclusive,
    MalformedJudgement,
    UnknownAtom,
    UnknownTerminal,
)
from tengram.judgement import alpha_equal
from tengram.lambek import parse_lexicon
from tengram.syntax import parse_judgement

JLM = load_grammar("fixtures/john_loves_mary.tg")
REL = load_grammar("fixtures/relative_clauses.tg")


def test_fixture_loads_as_a_tensor_grammar():
    assert JLM.kind == "tensor" and not JLM.restricted
    assert JLM.start == "S"
    assert JLM.terminals == ("John", "Mary", "loves")
    assert set(JLM.literals) == {"NP", "S"}
    assert list(JLM.axioms) == ["ax0", "ax1", "ax2"]


def test_goal_judgement_wraps_the_word():
    goal = goal_judgement(JLM, ("John", "loves", "Mary"))
    (member,) = goal.members
    assert member.lit.name == "S" and member.lit.positive
    (edge,) = goal.term.edges
    assert edge.word == ("John", "loves", "Mary")


def test_parse_returns_a_checkable_derivation():
    got = generates(JLM, ("John", "loves", "Mary"))
    assert isinstance(got, ParseResult)
    assert dict(got.used) == {"ax0": 1, "ax1": 1, "ax2": 1}
    goal = goal_judgement(JLM, got.word)
    check(got.derivation, goal, JLM.axioms, counts=got.used)


def test_parse_rejects_what_the_grammar_does_not_generate():
    assert generates(JLM, ("loves", "John", "Mary")) is None
    assert generates(JLM, ("John", "loves")) is None
    assert generates(JLM, ()) is None
    with pytest.raises(UnknownTerminal):
        generates(JLM, ("John", "sees", "Mary"))


def test_parse_is_honest_when_capped():
    with pytest.raises(Inconclusive):
        generates(JLM, ("John", "loves", "Mary"), max_axioms=1)


def test_enumerate_lists_the_transitive_language():
    assert enumerate_words(JLM, 3) == [
        "John loves John",
        "John loves Mary",
        "Mary loves John",
        "Mary loves Mary",
    ]
    with pytest.raises(BoundExceeded):
        enumerate_words(JLM, 9)


def test_relative_clause_grammar_parses_modifiers():
    assert generates(REL, ("John", "leaves")) is not None
    assert generates(REL, ("John", "loves", "Mary", "madly")) is not None
    assert generates(REL, ("madly", "John", "leaves")) is None


def test_grammar_validation():
    lit = {"S": (1, 1)}
    ax = {"a": parse_judgement("[w]_i^j |- S^i_j")}
    with pytest.raises(ValueError):
        Grammar("frob", lit, ("w",), ax, "S")
    with pytest.raises(UnknownAtom):
        Grammar("tensor", lit, ("w",), ax, "T")
    with pytest.raises(MalformedJudgement):
        Grammar("tensor", {"S": (2, 1)}, ("w",), {}, "S")
    with pytest.raises(UnknownAtom):
        Grammar("tensor", lit, ("w",), {"a": parse_judgement("[w]_i^j |- T^i_j")}, "S")
    with pytest.raises(MalformedJudgement):
        # valency of the literal disagrees with the declaration
        Grammar(
            "tensor",
            {"S": (1, 1), "Q": (2, 0)},
            ("w",),
            {"a": parse_judgement("[w]_i^j*d_k^l |- S^i_j, Q^k^l")},
            "S",
        )
    with pytest.raises(UnknownTerminal):
        Grammar("tensor", lit, ("v",), ax, "S")
    quantified = {"a": parse_judgement("[w]_i^j |- nab^x_y(S^i_x % ~S^y_j)")}
    lit2 = {"S": (1, 1)}
    with pytest.raises(MalformedJudgement):
        Grammar("tensor", lit2, ("w",), quantified, "S")
    # the same axiom set is fine once the grammar is declared extended
    assert Grammar("extended", lit2, ("w",), quantified, "S").kind == "extended"


def test_grammar_text_round_trip():
    for g in (JLM, REL):
        back = parse_grammar(format_grammar(g))
        assert back.kind == g.kind
        assert set(back.terminals) == set(g.terminals)
        assert dict(back.literals) == dict(g.literals)
        assert back.start == g.start and back.restricted == g.restricted
        assert list(back.axioms) == list(g.axioms)
        for name in g.axioms:
            assert alpha_equal(back.axioms[name], g.axioms[name])


def test_grammar_save_load(tmp_path):
    path = str(tmp_path / "out.tg")
    save_grammar(JLM, path)
    back = load_grammar(path)
    assert back.terminals == JLM.terminals and list(back.axioms) == list(JLM.axioms)
    assert all(alpha_equal(back.axioms[n], JLM.axioms[n]) for n in JLM.axioms)


def test_kind_is_inferred_from_the_text():
    text = format_grammar(JLM)
    assert parse_grammar(text).kind == "tensor"
    assert parse_grammar(text + "restriction: on\n").kind == "extended"
    quantified = text.replace(
        "[John]_a^b |- NP^a_b", "[John]_a^b |- nab^x_y(NP^a_x % ~NP^y_b)"
    )
    assert parse_grammar(quantified).kind == "extended"


LEXICON = parse_lexicon(open("fixtures/lambek.lex").read())


def test_translate_dispatches_and_tags():
    tg = translate(LEXICON, source_name="lambek.lex")
    assert tg.kind == "extended" and tg.restricted
    assert tg.source == "lambek.lex"
    with pytest.raises(TypeError):
        translate(42)


def test_translated_grammar_speaks_the_same_language():
    tg = translate(LEXICON)
    assert generates(tg, ("John", "loves", "Mary")) is not None
    assert generates(tg, ("Mary", "loves", "John")) is not None
    assert generates(tg, ("John", "Mary", "loves")) is None
    assert enumerate_words(tg, 3) == enumerate_words(JLM, 3)
