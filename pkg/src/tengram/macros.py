"""Derived constructions on derivations.

``eta_id`` generalizes the identity leaf to arbitrary types: for a type A it
builds a primitive-rule derivation of ``|- ~A, A'`` where ``~A`` carries
exactly A's index names (dualized) and ``A'`` is a fresh-named copy, the
term wiring each slot of A to its fresh twin.  Cutting against such a
judgement is how all the inverse-rule macros below work:

* ``split_par`` undoes a par intro inside a derived judgement;
* ``open_quantifier`` undoes a quantifier intro, naming the opened pair;
* ``pack_pars`` folds a whole sequent into one par-joined member.

Every quantifier intro these constructions emit keeps a nonempty context,
so they stay valid under the restricted regime.
"""

from __future__ import annotations

from dataclasses import dataclass

from .derivation import (
    CutNode,
    Derivation,
    EqNode,
    IdLeaf,
    MoveNode,
    NablaNode,
    ParNode,
    TensorNode,
    TriangleNode,
    apply_par,
    reorder,
)
from .errors import RuleMismatch
from .judgement import Judgement
from .term import Edge, TermExpr, TensorTerm, fresh_indices, multiply, normalize
from .types import (
    NABLA,
    PAR,
    TENSOR,
    TRI,
    Atom,
    Bin,
    Binder,
    Type,
    dual,
    free_subs,
    free_sups,
    instantiate,
    redecorate,
)


@dataclass(frozen=True)
class Eta:
    deriv: Derivation
    judgement: Judgement  # |- ~A (A's own names), A' (fresh copy)
    fresh_of: dict[str, str]  # free index of A -> its name in the copy


def _eta_judgement(a: Type, fresh_of: dict[str, str], extra: TermExpr | None = None) -> Judgement:
    copy = redecorate(
        a,
        tuple(fresh_of[i] for i in free_sups(a)),
        tuple(fresh_of[i] for i in free_subs(a)),
    )
    edges = [Edge(fresh_of[x], x) for x in free_sups(a)]
    edges += [Edge(y, fresh_of[y]) for y in free_subs(a)]
    term = TermExpr(edges) if extra is None else multiply(TermExpr(edges), extra)
    return Judgement(normalize(term), (dual(a), copy))


def eta_id(a: Type) -> Eta:
    if isinstance(a, Atom):
        n, m = len(a.sup), len(a.sub)
        if a.lit.positive:
            pos_sup = fresh_indices(n)
            pos_sub = fresh_indices(m)
            leaf = IdLeaf(
                a.lit.name, tuple(reversed(a.sub)), tuple(reversed(a.sup)), pos_sup, pos_sub
            )
            deriv: Derivation = leaf
            fresh_of = dict(zip(a.sup, pos_sup)) | dict(zip(a.sub, pos_sub))
        else:
            neg_sup = fresh_indices(n)
            neg_sub = fresh_indices(m)
            leaf = IdLeaf(
                a.lit.name, neg_sup, neg_sub, tuple(reversed(a.sub)), tuple(reversed(a.sup))
            )
            deriv = MoveNode(leaf, 1, 0)
            fresh_of = dict(zip(a.sup, neg_sup)) | dict(zip(a.sub, neg_sub))
        return Eta(deriv, _eta_judgement(a, fresh_of), fresh_of)

    if isinstance(a, Bin) and a.op == TENSOR:
        ex, ey = eta_id(a.left), eta_id(a.right)
        deriv = TensorNode(ex.deriv, MoveNode(ey.deriv, 0, 1), 1)
        deriv = ParNode(MoveNode(deriv, 2, 0), 0)
        fresh_of = ex.fresh_of | ey.fresh_of
        return Eta(deriv, _eta_judgement(a, fresh_of), fresh_of)

    if isinstance(a, Bin) and a.op == PAR:
        parts = eta_par_parts(a)
        deriv = ParNode(parts.deriv, 1)
        return Eta(deriv, _eta_judgement(a, parts.fresh_of), parts.fresh_of)

    if isinstance(a, Binder) and a.op == NABLA:
        parts, alpha2, beta2 = eta_nabla_parts(a)
        deriv = NablaNode(parts.deriv, 1, alpha2, beta2)
        fresh_of = {
            k: v for k, v in parts.fresh_of.items() if v not in (alpha2, beta2)
        }
        return Eta(deriv, _eta_judgement(a, fresh_of), fresh_of)

    if isinstance(a, Binder) and a.op == TRI:
        alpha, beta = fresh_indices(2)
        x = instantiate(a, alpha, beta)
        ex = eta_id(x)
        alpha2, beta2 = ex.fresh_of[alpha], ex.fresh_of[beta]
        deriv = TriangleNode(ex.deriv, 1, alpha2, beta2)
        deriv = NablaNode(deriv, 0, beta, alpha)
        fresh_of = {k: v for k, v in ex.fresh_of.items() if k not in (alpha, beta)}
        return Eta(deriv, _eta_judgement(a, fresh_of), fresh_of)

    raise RuleMismatch(f"cannot build an identity for {a!r}")


def eta_par_parts(a: Bin) -> Eta:
    """For A = X par Y: ``|- ~A, X', Y'`` (the copy not yet joined)."""
    ex, ey = eta_id(a.left), eta_id(a.right)
    deriv = TensorNode(ey.deriv, ex.deriv, 0)
    deriv = MoveNode(deriv, 2, 1)
    fresh_of = ex.fresh_of | ey.fresh_of
    xc = redecorate(
        a.left,
        tuple(fresh_of[i] for i in free_sups(a.left)),
        tuple(fresh_of[i] for i in free_subs(a.left)),
    )
    yc = redecorate(
        a.right,
        tuple(fresh_of[i] for i in free_sups(a.right)),
        tuple(fresh_of[i] for i in free_subs(a.right)),
    )
    edges = [Edge(fresh_of[x], x) for x in free_sups(a)]
    edges += [Edge(y, fresh_of[y]) for y in free_subs(a)]
    judgement = Judgement(normalize(TermExpr(edges)), (dual(a), xc, yc))
    return Eta(deriv, judgement, fresh_of)


def eta_nabla_parts(a: Binder) -> tuple[Eta, str, str]:
    """For a quantified A: ``|- ~A, X'`` where X' is the freshly named opened
    body; returns the copy's names for the opened pair as well."""
    alpha, beta = fresh_indices(2)
    x = instantiate(a, alpha, beta)
    ex = eta_id(x)
    alpha2, beta2 = ex.fresh_of[alpha], ex.fresh_of[beta]
    deriv = TriangleNode(ex.deriv, 0, beta, alpha)
    fresh_outer = {k: v for k, v in ex.fresh_of.items() if k not in (alpha, beta)}
    xc = redecorate(
        x,
        tuple(ex.fresh_of[i] for i in free_sups(x)),
        tuple(ex.fresh_of[i] for i in free_subs(x)),
    )
    edges = [Edge(fresh_outer[i], i) for i in free_sups(a)]
    edges += [Edge(i, fresh_outer[i]) for i in free_subs(a)]
    edges.append(Edge(beta2, alpha2))
    judgement = Judgement(normalize(TermExpr(edges)), (dual(a), xc))
    return Eta(deriv, judgement, ex.fresh_of), alpha2, beta2


def split_par(deriv: Derivation, j: Judgement, pos: int) -> tuple[Derivation, Judgement]:
    """From a derivation of ``j`` whose member ``pos`` is ``X par Y``, derive
    the judgement with that member split in two (same term)."""
    a = j.members[pos]
    if not (isinstance(a, Bin) and a.op == PAR):
        raise RuleMismatch("member is not a par")
    parts = eta_par_parts(a)
    n = len(j.members)
    d: Derivation = CutNode(deriv, parts.deriv, pos, 0)
    d = reorder(d, [*range(pos), n - 1, n, *range(pos, n - 1)])
    target = Judgement(j.term, j.members[:pos] + (a.left, a.right) + j.members[pos + 1 :])
    return EqNode(d, target), target


def open_quantifier(
    deriv: Derivation, j: Judgement, pos: int, alpha: str, beta: str
) -> tuple[Derivation, Judgement]:
    """From a derivation of ``j`` whose member ``pos`` is quantified, derive
    the judgement with the binder opened as ``(alpha, beta)`` and the matching
    ``d^alpha_beta`` factor multiplied into the term.

    ``alpha`` and ``beta`` must not occur in ``j``.
    """
    a = j.members[pos]
    if not (isinstance(a, Binder) and a.op == NABLA):
        raise RuleMismatch("member is not quantified")
    parts, _, _ = eta_nabla_parts(a)
    n = len(j.members)
    d: Derivation = CutNode(deriv, parts.deriv, pos, 0)
    d = reorder(d, [*range(pos), n - 1, *range(pos, n - 1)])
    inst = instantiate(a, alpha, beta)
    term = normalize(multiply(j.term, TermExpr([Edge(beta, alpha)])))
    target = Judgement(term, j.members[:pos] + (inst,) + j.members[pos + 1 :])
    return EqNode(d, target), target


def pack_pars(deriv: Derivation, j: Judgement) -> tuple[Derivation, Judgement]:
    """Join the whole sequent into one left-nested par member."""
    while len(j.members) > 1:
        deriv = ParNode(deriv, 0)
        j = apply_par(j, 0)
    return deriv, j
