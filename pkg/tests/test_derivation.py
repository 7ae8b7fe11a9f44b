"""Single-step rule application, replay/check, and the script format."""

import random

import pytest

from tengram.derivation import (
    AxiomLeaf,
    AxiomReuse,
    BadStep,
    CutNode,
    IdLeaf,
    LambekRestrictionViolated,
    MissingEpsilonEdge,
    MoveNode,
    RuleMismatch,
    UnknownAxiom,
    apply_cut,
    apply_eq,
    apply_move,
    apply_nabla,
    apply_par,
    apply_tensor,
    apply_triangle,
    check,
    collect_axioms,
    from_script,
    id_judgement,
    render_tree,
    reorder,
    replay,
    to_script,
)
from tengram.judgement import alpha_equal
from tengram.syntax import ParseError, parse_judgement
from tengram.term import Edge, TensorTerm
from tengram.errors import NotAPar
from tengram.types import NABLA, PAR, TENSOR, TRI, Bin, Binder, free_subs, free_sups

from genutil import has_cut, rand_pure_derivation


def E(lo, up, word=""):
    return Edge(lo, up, tuple(word))


IDP = id_judgement("p", ("a",), ("b",), ("c",), ("e",))


def test_id_judgement_shape():
    assert IDP.term == TensorTerm(frozenset({E("a", "e"), E("c", "b")}), ())
    neg, pos = IDP.members
    assert not neg.lit.positive and pos.lit.positive
    assert (neg.sup, neg.sub) == (("a",), ("b",))
    assert (pos.sup, pos.sub) == (("c",), ("e",))
    assert alpha_equal(replay(IdLeaf("p", ("a",), ("b",), ("c",), ("e",))), IDP)


def test_cut_of_dual_identities_is_identity():
    other = id_judgement("p", ("u",), ("v",), ("x",), ("y",))
    j = apply_cut(IDP, other, 1, 0)
    # the positive member of the left premise is consumed against the
    # negative member of the right one; what is left is again an identity
    assert j == id_judgement("p", ("a",), ("b",), ("x",), ("y",))


def test_cut_errors():
    with pytest.raises(RuleMismatch):
        apply_cut(IDP, IDP, 5, 0)
    with pytest.raises(RuleMismatch):
        apply_cut(IDP, IDP, 1, 1)  # positive against positive


def test_cut_closing_both_members_leaves_a_loop():
    ja = parse_judgement("[x]_i^j |- p^i_j")
    jb = parse_judgement("[y]_k^l |- ~p^k_l")
    j = apply_cut(ja, jb, 0, 0)
    assert j.members == ()
    assert j.term.loops == (("x", "y"),)


def test_tensor_merges_and_keeps_spectators():
    other = id_judgement("q", ("u",), ("v",), ("x",), ("y",))
    j = apply_tensor(IDP, other, 1)
    assert len(j.members) == 3
    m = j.members[1]
    assert isinstance(m, Bin) and m.op is TENSOR
    assert m.left == IDP.members[1] and m.right == other.members[0]
    # spectator of the right premise rides along at the end
    assert j.members[2] == other.members[1]


def test_tensor_auto_renames_index_clashes():
    j = apply_tensor(IDP, IDP, 1)
    names = set(j.term.free_subs) | set(j.term.free_sups)
    assert len(names) == 4 + 4  # no silent identification of clashing indices
    with pytest.raises(RuleMismatch):
        apply_tensor(IDP, IDP, 1, auto_rename=False)


def test_par_joins_adjacent_members():
    j = apply_par(IDP, 0)
    assert len(j.members) == 1
    m = j.members[0]
    assert isinstance(m, Bin) and m.op is PAR
    assert (m.left, m.right) == IDP.members
    with pytest.raises(NotAPar):
        apply_par(IDP, 1)


NABLA_READY = parse_judgement("[w]_i^j*d_y^x |- p^i_x % ~p^y_j")


def test_nabla_consumes_the_epsilon_edge():
    j = apply_nabla(NABLA_READY, 0, "x", "y", restricted=False)
    (m,) = j.members
    assert isinstance(m, Binder) and m.op is NABLA
    assert free_sups(m) == ("i",) and free_subs(m) == ("j",)
    assert j.term == TensorTerm(frozenset({E("i", "j", "w")}), ())


def test_nabla_requires_the_epsilon_edge():
    with pytest.raises(MissingEpsilonEdge):
        apply_nabla(IDP, 0, "b", "a", restricted=False)
    with pytest.raises(RuleMismatch):
        apply_nabla(NABLA_READY, 3, "x", "y", restricted=False)


def test_nabla_lambek_restriction_guards_lone_members():
    with pytest.raises(LambekRestrictionViolated):
        apply_nabla(NABLA_READY, 0, "x", "y", restricted=True)
    # the unrestricted rule derives exactly the same conclusion
    assert apply_nabla(NABLA_READY, 0, "x", "y", restricted=False).members


def test_triangle_adds_the_epsilon_edge():
    j = apply_triangle(IDP, 1, "e", "c")
    (neg, m) = j.members
    assert isinstance(m, Binder) and m.op is TRI
    assert free_sups(m) == () and free_subs(m) == ()
    # the new edge contracted through both identity wires
    assert j.term == TensorTerm(frozenset({E("a", "b")}), ())
    with pytest.raises(RuleMismatch):
        apply_triangle(IDP, 4, "e", "c")


FOUR = parse_judgement("1 |- ~p, p, ~q, q")


def _tags(j):
    return [m.lit.name + ("+" if m.lit.positive else "-") for m in j.members]


def test_move_uses_insert_semantics():
    assert _tags(apply_move(FOUR, 0, 2)) == ["p+", "q-", "p-", "q+"]
    assert _tags(apply_move(FOUR, 2, 0)) == ["q-", "p-", "p+", "q+"]
    with pytest.raises(RuleMismatch):
        apply_move(FOUR, 0, 9)


def test_eq_relabels_or_refuses():
    target = id_judgement("p", ("x",), ("y",), ("z",), ("w",))
    assert apply_eq(IDP, target) == target
    with pytest.raises(BadStep):
        apply_eq(IDP, id_judgement("q", ("x",), ("y",), ("z",), ("w",)))
    with pytest.raises(BadStep):
        # same symbols, but the identity wires cross the other way
        bad = parse_judgement("d_x^y*d_z^w |- ~p^x_y, p^z_w")
        apply_eq(IDP, bad)


AXS = {
    "a": parse_judgement("[x]_i^j |- p^i_j"),
    "b": parse_judgement("[y]_k^l |- ~p^k_l"),
}
LOOPD = CutNode(AxiomLeaf("a"), AxiomLeaf("b"), 0, 0)


def test_replay_counts_and_check():
    goal = replay(LOOPD, axioms=AXS)
    assert collect_axioms(LOOPD) == {"a": 1, "b": 1}
    check(LOOPD, goal, axioms=AXS, counts={"a": 1, "b": 1})
    check(LOOPD, goal, axioms=AXS, counts={"a": 1, "b": 1, "unused": 0})
    with pytest.raises(AxiomReuse):
        check(LOOPD, goal, axioms=AXS, counts={"a": 2, "b": 1})
    with pytest.raises(BadStep):
        check(LOOPD, AXS["a"], axioms=AXS, counts={"a": 1, "b": 1})
    with pytest.raises(UnknownAxiom):
        replay(LOOPD, axioms={"a": AXS["a"]})


def test_reorder_sends_perm_k_to_position_k():
    jr = replay(reorder(AxiomLeaf("c"), (2, 0, 3, 1)), axioms={"c": FOUR})
    assert _tags(jr) == ["q-", "p-", "q+", "p+"]
    for _ in range(20):
        perm = random.sample(range(4), 4)
        jr = replay(reorder(AxiomLeaf("c"), perm), axioms={"c": FOUR})
        assert _tags(jr) == [_tags(FOUR)[p] for p in perm]


def test_script_round_trip_with_axioms():
    s = to_script(LOOPD, axioms=AXS)
    assert s.splitlines()[0] == "axiom a"
    d2 = from_script(s)
    assert alpha_equal(replay(d2, axioms=AXS), replay(LOOPD, axioms=AXS))


def test_script_round_trip_pure_random():
    rng = random.Random(82)
    done = 0
    while done < 25:
        d, j = rand_pure_derivation(rng, steps=5, extended=True)
        if d is None:
            continue
        d2 = from_script(to_script(d))
        assert replay(d2) == j
        done += 1


@pytest.mark.parametrize(
    "text",
    [
        "cut 0 0",  # nothing on the stack
        "id p 1 0 a",  # wrong index count
        "frobnicate",  # unknown step
        "id p 0 0\nid q 0 0",  # two derivations left over
        "axiom",  # malformed: name missing
    ],
)
def test_script_rejects_malformed_input(text):
    with pytest.raises(ParseError):
        from_script(text)


def test_render_tree_smoke():
    art = render_tree(LOOPD, axioms=AXS)
    assert "cut" in art and "axiom[a]" in art and "axiom[b]" in art


def test_random_trees_replay_and_check():
    rng = random.Random(4)
    built = 0
    while built < 30:
        d, j = rand_pure_derivation(rng, steps=6, extended=built % 2 == 0)
        if d is None:
            continue
        check(d, j)
        if has_cut(d):
            built += 1
        else:
            built += 1
