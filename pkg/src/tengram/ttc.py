"""Quantifier-free tensor type calculus: the public face.

Everything here works over binder-free types.  The quantified layer lives
in :mod:`tengram.ettc`; both share the same term, judgement and derivation
machinery underneath, so derivations produced here replay with the generic
:func:`check`.
"""

from __future__ import annotations

from collections import Counter
from typing import Mapping, NamedTuple

from . import cutelim, prover
from .derivation import (
    AxiomLeaf,
    CutNode,
    Derivation,
    EqNode,
    IdLeaf,
    MoveNode,
    ParNode,
    TensorNode,
    apply_cut,
    apply_eq,
    apply_move,
    apply_par,
    apply_tensor,
    check,
    collect_axioms,
    from_script,
    id_judgement,
    is_id_instance,
    replay,
    to_script,
)
from .errors import (
    AxiomNotSingleType,
    HasAxioms,
    IndexCollision,
    MalformedJudgement,
    NotAPar,
    RuleMismatch,
)
from .judgement import Judgement, alpha_equal, make_judgement
from .macros import pack_pars, split_par
from .term import normalize
from .types import (
    Atom,
    Bin,
    Lit,
    PAR,
    TENSOR,
    Type,
    dual,
    free_subs,
    free_sups,
    par,
    tensor,
)

__all__ = [
    "Valency",
    "valency",
    "dual",
    "implication",
    "id_axiom",
    "apply_rule",
    "check",
    "eliminate_cut",
    "par_inverse",
    "prove",
    "from_axioms",
]


class Valency(NamedTuple):
    up: int
    down: int


def valency(t: Type) -> Valency:
    """Number of free (upper, lower) index slots of a type."""
    return Valency(len(free_sups(t)), len(free_subs(t)))


def implication(a: Type, b: Type) -> Bin:
    """``a -o b``, spelled out as ``b par ~a``."""
    shared = (set(free_sups(a)) | set(free_subs(a))) & (
        set(free_sups(b)) | set(free_subs(b))
    )
    if shared:
        raise IndexCollision(f"implication arguments share indices {sorted(shared)}")
    return par(b, dual(a))


def id_axiom(
    name: str,
    neg_sup: tuple[str, ...],
    neg_sub: tuple[str, ...],
    pos_sup: tuple[str, ...],
    pos_sub: tuple[str, ...],
) -> Judgement:
    """Identity judgement  d^(I'.rev J)_(rev I.J') |- ~p^I_J, p^J'_I'."""
    return id_judgement(name, neg_sup, neg_sub, pos_sup, pos_sub)


def apply_rule(rule, *premises: Judgement) -> Judgement:
    """Apply one sequent rule, given as a tagged tuple.

    ``("cut", k, l)`` and ``("tensor", i)`` take two premises,
    ``("par", i)``, ``("move", src, dst)`` and ``("eq", target)`` take one.
    """
    kind, *args = rule
    if kind == "cut":
        _need(2, premises, kind)
        return apply_cut(premises[0], premises[1], args[0], args[1])
    if kind == "tensor":
        _need(2, premises, kind)
        return apply_tensor(premises[0], premises[1], args[0])
    if kind == "par":
        _need(1, premises, kind)
        return apply_par(premises[0], args[0])
    if kind == "move":
        _need(1, premises, kind)
        return apply_move(premises[0], args[0], args[1])
    if kind == "eq":
        _need(1, premises, kind)
        return apply_eq(premises[0], args[0])
    raise RuleMismatch(f"unknown rule {kind!r}")


def _need(n: int, premises, kind: str) -> None:
    if len(premises) != n:
        raise RuleMismatch(f"rule {kind!r} takes {n} premise(s), got {len(premises)}")


def eliminate_cut(d: Derivation) -> Derivation:
    """Cut-free derivation of the same judgement; pure derivations only."""
    return cutelim.eliminate_cuts(d)


def par_inverse(
    deriv: Derivation, j: Judgement, pos: int
) -> tuple[Derivation, Judgement]:
    """Split member ``pos`` (which must be a par) of a derived judgement.

    Derivations here are closed trees, so the premise derivation is passed
    in and extended, rather than returning a one-hole fragment.
    """
    a = j.members[pos] if 0 <= pos < len(j.members) else None
    if not (isinstance(a, Bin) and a.op == PAR):
        raise NotAPar(f"member {pos} is not a par")
    return split_par(deriv, j, pos)


def prove(goal: Judgement, restricted: bool = False) -> Derivation | None:
    """Cut-free backward proof search; ``None`` when not derivable.

    Quantified members are refused (use :func:`tengram.ettc.ext_prove`);
    goals with loops in the term are unprovable here and short-circuit.
    """
    for m in goal.members:
        if not prover._no_binders(m):
            raise MalformedJudgement("prove() is quantifier-free; use ettc.ext_prove")
    if goal.term.loops:
        return None
    return prover.prove(goal, restricted=restricted)


def from_axioms(
    goal: Judgement,
    axioms: Mapping[str, Judgement],
    multiset: Mapping[str, int] | None = None,
    max_axioms: int | None = None,
) -> tuple[Derivation, Counter] | None:
    """Derive ``goal`` from single-type axioms, each used exactly once.

    Axioms must have exactly one member right of the turnstile; sequent-shaped
    lexicon entries should be par-packed first (the grammar engine does this).
    Returns the derivation and the axiom multiset it consumed, or ``None``.
    """
    for name, j in axioms.items():
        if len(j.members) != 1:
            raise AxiomNotSingleType(
                f"axiom {name!r} has {len(j.members)} members; pack them into one par-type"
            )
    return prover.from_axioms(goal, axioms, multiset=multiset, max_axioms=max_axioms)
