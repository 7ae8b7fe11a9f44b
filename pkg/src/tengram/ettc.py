"""Tensor type calculus with index quantifiers: the public face.

Adds the binding connectives (written ``nab``/``tri`` in surface syntax) on
top of the quantifier-free layer, an optional Lambek restriction on the
binder-introduction rule, slash-style elimination macros, and proof search
that understands both binders.
"""

from __future__ import annotations

from collections import Counter
from typing import Mapping

from . import cutelim, prover
from .derivation import (
    AxiomLeaf,
    CutNode,
    Derivation,
    NablaNode,
    TriangleNode,
    apply_cut,
    apply_nabla,
    apply_par,
    apply_triangle,
    check,
    replay,
)
from .errors import (
    NonLexicalAxiom,
    NotANabla,
    RuleMismatch,
    SchemeMismatch,
)
from .judgement import Judgement
from .macros import open_quantifier, split_par
from .term import fresh_index
from .types import (
    Bin,
    Binder,
    NABLA,
    PAR,
    TRI,
    Type,
    dual,
    symbol_key,
)

__all__ = [
    "ext_dual",
    "apply_ext_rule",
    "nabla_inverse",
    "slash_elim",
    "ext_eliminate_cut",
    "ext_prove",
    "lexicalize",
    "ext_from_axioms",
]

# The restriction mode is a plain flag: restricted=False is the full calculus,
# restricted=True forbids binding the last free pair of a lone member.
ext_dual = dual


def apply_ext_rule(rule, *premises: Judgement, restricted: bool = False) -> Judgement:
    """One rule application, binder rules included.

    Tags: the quantifier-free five plus ``("nabla", pos, alpha, beta)`` and
    ``("tri", pos, alpha, beta)``, each taking one premise.
    """
    kind, *args = rule
    if kind == "nabla":
        _one(premises, kind)
        return apply_nabla(premises[0], *args, restricted=restricted)
    if kind == "tri":
        _one(premises, kind)
        return apply_triangle(premises[0], *args)
    from .ttc import apply_rule

    return apply_rule(rule, *premises)


def _one(premises, kind: str) -> None:
    if len(premises) != 1:
        raise RuleMismatch(f"rule {kind!r} takes 1 premise, got {len(premises)}")


def nabla_inverse(
    deriv: Derivation, j: Judgement, pos: int, alpha: str, beta: str
) -> tuple[Derivation, Judgement]:
    """Open the binder at member ``pos`` as the fresh pair (alpha, beta),
    multiplying the matching epsilon edge back into the term."""
    a = j.members[pos] if 0 <= pos < len(j.members) else None
    if not (isinstance(a, Binder) and a.op == NABLA):
        raise NotANabla(f"member {pos} is not quantified")
    return open_quantifier(deriv, j, pos, alpha, beta)


def _split_lambek_member(
    deriv: Derivation, j: Judgement, pos: int
) -> tuple[Derivation, Judgement]:
    """Open ``nab(X par Y)`` at ``pos`` into two members, checking the shape."""
    a = j.members[pos]
    if not (isinstance(a, Binder) and a.op == NABLA and isinstance(a.body, Bin)
            and a.body.op == PAR):
        raise SchemeMismatch(
            f"member {pos} is not a quantified par (a slash-style type)"
        )
    alpha, beta = fresh_index(), fresh_index()
    d, j = open_quantifier(deriv, j, pos, alpha, beta)
    return split_par(d, j, pos)


def slash_elim(
    side: str,
    t_deriv: Derivation,
    t_j: Judgement,
    s_deriv: Derivation,
    s_j: Judgement,
    tpos: int | None = None,
    spos: int | None = None,
) -> tuple[Derivation, Judgement]:
    """Slash elimination, expanded into open-binder + par-split + Cut.

    ``side="right"`` consumes an over-type ``nab(B par ~A)`` (written B/A) at
    ``tpos`` of ``t_j`` (default: last member) against an ``A`` member at
    ``spos`` of ``s_j`` (default: first).  ``side="left"`` consumes an
    under-type ``nab(~A par B)`` at ``tpos`` (default: first) against an
    ``A`` at ``spos`` (default: last).  Conclusions follow the usual
    elimination shapes Theta, B, Gamma  and  Gamma, B, Theta.
    """
    if side not in ("left", "right"):
        raise SchemeMismatch(f"side must be 'left' or 'right', not {side!r}")
    if tpos is None:
        tpos = len(t_j.members) - 1 if side == "right" else 0
    if spos is None:
        spos = 0 if side == "right" else len(s_j.members) - 1
    d, j = _split_lambek_member(t_deriv, t_j, tpos)
    # after the split the par components sit at tpos (left) and tpos+1 (right)
    neg = tpos + 1 if side == "right" else tpos
    want = dual(j.members[neg])
    have = s_j.members[spos]
    if symbol_key(want) != symbol_key(have):
        raise SchemeMismatch(
            "argument member does not match the slash type's argument"
        )
    try:
        if side == "right":
            out = apply_cut(j, s_j, neg, spos)
            return CutNode(d, s_deriv, neg, spos), out
        out = apply_cut(s_j, j, spos, neg)
        return CutNode(s_deriv, d, spos, neg), out
    except RuleMismatch as err:
        raise SchemeMismatch(str(err)) from err


def ext_eliminate_cut(d: Derivation) -> Derivation:
    """Cut-free derivation of the same judgement (binders handled)."""
    return cutelim.eliminate_cuts(d)


def ext_prove(goal: Judgement, restricted: bool = False) -> Derivation | None:
    """Backward search over the full rule set; ``None`` when not derivable.

    Regular goals (no loops) are decided outright.  Goals with loops can in
    rare shapes exhaust the unglue budget, which surfaces as Inconclusive
    rather than a wrong answer.
    """
    return prover.prove(goal, restricted=restricted)


def lexicalize(axiom: Judgement) -> Judgement:
    """Equivalent delta-free axiom: every epsilon edge becomes a binder.

    Members linked by an epsilon edge are first joined with a par (earlier
    member left), then the pair is bound.  Wholly-delta terms are refused.
    """
    j, _ = prover.lexicalize(axiom, AxiomLeaf("_source"))
    return j


def lexicalize_with_derivation(
    axiom: Judgement, base: Derivation
) -> tuple[Judgement, Derivation]:
    """Like :func:`lexicalize` but also derives the result from ``base``,
    a derivation of ``axiom`` (typically an axiom leaf)."""
    return prover.lexicalize(axiom, base)


def ext_from_axioms(
    goal: Judgement,
    axioms: Mapping[str, Judgement],
    multiset: Mapping[str, int] | None = None,
    max_axioms: int | None = None,
    restricted: bool = False,
) -> tuple[Derivation, Counter] | None:
    """Derive ``goal`` from lexical axioms, each used exactly once.

    Axioms must be lexical (no epsilon edges) so the goal's words can be
    tiled by axiom words; run :func:`lexicalize` first if needed.
    """
    return prover.ext_from_axioms(
        goal, axioms, multiset=multiset, max_axioms=max_axioms, restricted=restricted
    )
