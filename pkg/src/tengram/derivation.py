"""Derivations: rule nodes, replay, checking, and a line-based script format.

A derivation is a tree of rule nodes.  Replaying it from the leaves
recomputes every intermediate judgement deterministically and validates
each step; ``check`` additionally compares the conclusion with a goal and
enforces an axiom-usage multiset.

Rules refer to sequent members by position in the stored order, so two
bookkeeping nodes exist besides the logical rules: ``MoveNode`` reorders
members and ``EqNode`` relabels free indices (keeping the order), which is
also how steps that invent fresh indices get pinned down in scripts.

Index conventions of the logical rules:

* the identity leaf for a literal ``p`` with ``n`` upper and ``m`` lower
  slots on its negative occurrence concludes
  ``d^{I2(n)}_{rev I(n)} * d^{rev J(m)}_{J2(m)} |- ~p^I_J, p^{J2}_{I2}``
  (each slot of one occurrence is wired to the mirror slot of the other);
* the quantifier intro removes a ``d^alpha_beta`` factor and captures the
  pair, lower ``alpha`` and upper ``beta``, in one member;
* its dual multiplies such a factor in, possibly closing a loop;
* cut requires the right premise's member to be the exact dual of the left
  one, renaming the right premise as needed (fresh names on clashes).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from .errors import (
    AxiomReuse,
    BadStep,
    LambekRestrictionViolated,
    MissingEpsilonEdge,
    NotAPar,
    RuleMismatch,
    SchemeMismatch,
    UnknownAxiom,
)
from .judgement import Judgement, alpha_equal, relabel_mapping, rename_judgement
from .term import EPSILON, Edge, TensorTerm, TermExpr, fresh_index, multiply, normalize
from .types import (
    NABLA,
    PAR,
    TENSOR,
    TRI,
    Atom,
    Bin,
    Lit,
    bind,
    dual,
    free_subs,
    free_sups,
    symbol_key,
)

# --- nodes -------------------------------------------------------------------


@dataclass(frozen=True)
class IdLeaf:
    name: str
    neg_sup: tuple[str, ...]
    neg_sub: tuple[str, ...]
    pos_sup: tuple[str, ...]
    pos_sub: tuple[str, ...]


@dataclass(frozen=True)
class AxiomLeaf:
    name: str


@dataclass(frozen=True)
class CutNode:
    left: "Derivation"
    right: "Derivation"
    left_pos: int
    right_pos: int


@dataclass(frozen=True)
class TensorNode:
    left: "Derivation"
    right: "Derivation"
    left_pos: int  # right component is the right premise's member 0


@dataclass(frozen=True)
class ParNode:
    child: "Derivation"
    pos: int  # joins members pos and pos+1


@dataclass(frozen=True)
class NablaNode:
    child: "Derivation"
    pos: int
    alpha: str
    beta: str


@dataclass(frozen=True)
class TriangleNode:
    child: "Derivation"
    pos: int
    alpha: str
    beta: str


@dataclass(frozen=True)
class MoveNode:
    child: "Derivation"
    src: int
    dst: int


@dataclass(frozen=True)
class EqNode:
    child: "Derivation"
    target: Judgement


Derivation = (
    IdLeaf
    | AxiomLeaf
    | CutNode
    | TensorNode
    | ParNode
    | NablaNode
    | TriangleNode
    | MoveNode
    | EqNode
)


# --- single-rule application -------------------------------------------------


def id_judgement(
    name: str,
    neg_sup: tuple[str, ...],
    neg_sub: tuple[str, ...],
    pos_sup: tuple[str, ...],
    pos_sub: tuple[str, ...],
) -> Judgement:
    n, m = len(neg_sup), len(neg_sub)
    if len(pos_sub) != n or len(pos_sup) != m:
        raise SchemeMismatch(
            f"identity on {name} needs index blocks of sizes {n},{m},{m},{n}"
        )
    edges = [Edge(neg_sup[n - 1 - t], pos_sub[t]) for t in range(n)]
    edges += [Edge(pos_sup[t], neg_sub[m - 1 - t]) for t in range(m)]
    members = (
        Atom(Lit(name, n, m, positive=False), neg_sup, neg_sub),
        Atom(Lit(name, m, n, positive=True), pos_sup, pos_sub),
    )
    return Judgement(normalize(TermExpr(edges)), members)


def is_id_instance(j: Judgement) -> bool:
    if len(j.members) != 2:
        return False
    for a, b in ((0, 1), (1, 0)):
        ma, mb = j.members[a], j.members[b]
        if not (isinstance(ma, Atom) and isinstance(mb, Atom)):
            continue
        if ma.lit.positive or not mb.lit.positive:
            continue
        if ma.lit.dual() != mb.lit:
            continue
        expected = id_judgement(ma.lit.name, ma.sup, ma.sub, mb.sup, mb.sub)
        if expected.term == j.term:
            return True
    return False


def _free_names(j: Judgement) -> set[str]:
    return set(j.term.free_subs) | set(j.term.free_sups)


def apply_cut(left: Judgement, right: Judgement, lpos: int, rpos: int) -> Judgement:
    if not (0 <= lpos < len(left.members) and 0 <= rpos < len(right.members)):
        raise RuleMismatch("cut position out of range")
    target = dual(left.members[lpos])
    rm = right.members[rpos]
    if symbol_key(rm) != symbol_key(target):
        raise RuleMismatch("cut members are not dual to each other")
    mapping: dict[str, str] = {}
    for x, y in zip(
        (*free_sups(rm), *free_subs(rm)), (*free_sups(target), *free_subs(target))
    ):
        if mapping.setdefault(x, y) != y:
            raise RuleMismatch("cut member decorations cannot be aligned")
    taken = _free_names(left) | set(mapping.values())
    for i in sorted(_free_names(right)):
        if i in mapping:
            continue
        mapping[i] = fresh_index() if i in taken else i
        taken.add(mapping[i])
    right2 = rename_judgement(right, mapping)
    members = (
        left.members[:lpos]
        + left.members[lpos + 1 :]
        + right2.members[:rpos]
        + right2.members[rpos + 1 :]
    )
    return Judgement(normalize(multiply(left.term, right2.term)), members)


def apply_tensor(
    left: Judgement, right: Judgement, lpos: int, auto_rename: bool = True
) -> Judgement:
    if not (0 <= lpos < len(left.members)) or not right.members:
        raise RuleMismatch("tensor needs a left member and a nonempty right premise")
    clash = _free_names(left) & _free_names(right)
    if clash:
        if not auto_rename:
            raise RuleMismatch(f"premises share indices {sorted(clash)}")
        right = rename_judgement(right, {i: fresh_index() for i in sorted(clash)})
    member = Bin(TENSOR, left.members[lpos], right.members[0])
    members = (
        left.members[:lpos] + (member,) + left.members[lpos + 1 :] + right.members[1:]
    )
    return Judgement(normalize(multiply(left.term, right.term)), members)


def apply_par(j: Judgement, pos: int) -> Judgement:
    if not (0 <= pos < len(j.members) - 1):
        raise NotAPar("par needs two adjacent members")
    member = Bin(PAR, j.members[pos], j.members[pos + 1])
    return Judgement(j.term, j.members[:pos] + (member,) + j.members[pos + 2 :])


def apply_nabla(
    j: Judgement, pos: int, alpha: str, beta: str, restricted: bool = False
) -> Judgement:
    if restricted and len(j.members) < 2:
        raise LambekRestrictionViolated(
            "quantifier intro on a lone member is barred in restricted mode"
        )
    if not (0 <= pos < len(j.members)):
        raise RuleMismatch("member position out of range")
    edge = Edge(beta, alpha, EPSILON)
    if edge not in j.term.edges:
        raise MissingEpsilonEdge(f"term has no factor d^{alpha}_{beta}")
    member = bind(NABLA, j.members[pos], alpha, beta)
    term = TensorTerm(j.term.edges - {edge}, j.term.loops)
    return Judgement(term, j.members[:pos] + (member,) + j.members[pos + 1 :])


def apply_triangle(j: Judgement, pos: int, alpha: str, beta: str) -> Judgement:
    if not (0 <= pos < len(j.members)):
        raise RuleMismatch("member position out of range")
    member = bind(TRI, j.members[pos], alpha, beta)
    term = normalize(multiply(j.term, TermExpr([Edge(alpha, beta, EPSILON)])))
    return Judgement(term, j.members[:pos] + (member,) + j.members[pos + 1 :])


def apply_move(j: Judgement, src: int, dst: int) -> Judgement:
    n = len(j.members)
    if not (0 <= src < n and 0 <= dst < n):
        raise RuleMismatch("move position out of range")
    members = list(j.members)
    members.insert(dst, members.pop(src))
    return Judgement(j.term, tuple(members))


def apply_eq(j: Judgement, target: Judgement) -> Judgement:
    if relabel_mapping(j, target) is None:
        raise BadStep("relabelling step does not match its target")
    return target


# --- replay and checking -----------------------------------------------------


def replay(
    d: Derivation,
    axioms: Mapping[str, Judgement] | None = None,
    restricted: bool = False,
) -> Judgement:
    """Recompute the conclusion, validating every step."""
    if isinstance(d, IdLeaf):
        return id_judgement(d.name, d.neg_sup, d.neg_sub, d.pos_sup, d.pos_sub)
    if isinstance(d, AxiomLeaf):
        if axioms is None or d.name not in axioms:
            raise UnknownAxiom(f"axiom {d.name!r} is not available here")
        return axioms[d.name]
    if isinstance(d, CutNode):
        return apply_cut(
            replay(d.left, axioms, restricted),
            replay(d.right, axioms, restricted),
            d.left_pos,
            d.right_pos,
        )
    if isinstance(d, TensorNode):
        return apply_tensor(
            replay(d.left, axioms, restricted),
            replay(d.right, axioms, restricted),
            d.left_pos,
        )
    if isinstance(d, ParNode):
        return apply_par(replay(d.child, axioms, restricted), d.pos)
    if isinstance(d, NablaNode):
        return apply_nabla(
            replay(d.child, axioms, restricted), d.pos, d.alpha, d.beta, restricted
        )
    if isinstance(d, TriangleNode):
        return apply_triangle(replay(d.child, axioms, restricted), d.pos, d.alpha, d.beta)
    if isinstance(d, MoveNode):
        return apply_move(replay(d.child, axioms, restricted), d.src, d.dst)
    if isinstance(d, EqNode):
        return apply_eq(replay(d.child, axioms, restricted), d.target)
    raise BadStep(f"unknown derivation node {d!r}")


def collect_axioms(d: Derivation) -> Counter:
    if isinstance(d, AxiomLeaf):
        return Counter({d.name: 1})
    if isinstance(d, (CutNode, TensorNode)):
        return collect_axioms(d.left) + collect_axioms(d.right)
    if isinstance(d, (ParNode, NablaNode, TriangleNode, MoveNode, EqNode)):
        return collect_axioms(d.child)
    return Counter()


def check(
    d: Derivation,
    goal: Judgement | None = None,
    axioms: Mapping[str, Judgement] | None = None,
    counts: Mapping[str, int] | None = None,
    restricted: bool = False,
) -> Judgement:
    """Replay ``d``; verify the conclusion and the axiom-usage multiset.

    ``counts`` demands that each named axiom is used exactly that many
    times (and no others at all); ``None`` leaves usage unconstrained.
    """
    concl = replay(d, axioms, restricted)
    if goal is not None and not alpha_equal(concl, goal):
        raise BadStep("derivation concludes a different judgement than the goal")
    if counts is not None:
        used = collect_axioms(d)
        want = {k: v for k, v in counts.items() if v}
        if used != Counter(want):
            raise AxiomReuse(f"axiom usage {dict(used)} differs from required {want}")
    return concl


def reorder(child: Derivation, perm: list[int] | tuple[int, ...]) -> Derivation:
    """Wrap ``child`` in moves so the member currently at position ``perm[k]``
    ends up at position ``k``."""
    cur = list(range(len(perm)))
    for dst, want in enumerate(perm):
        src = cur.index(want)
        if src != dst:
            cur.insert(dst, cur.pop(src))
            child = MoveNode(child, src, dst)
    return child


# --- script format -------------------------------------------------------


def to_script(
    d: Derivation,
    axioms: Mapping[str, Judgement] | None = None,
    restricted: bool = False,
) -> str:
    """Serialize as a replayable line script.

    Steps that invent fresh indices (cut, tensor) get an ``eq`` line pinning
    the judgement text, so replaying the script reproduces the conclusions
    exactly no matter what the fresh-name counter does.
    """
    from .syntax import format_judgement

    lines: list[str] = []

    def walk(node: Derivation) -> Judgement:
        if isinstance(node, IdLeaf):
            flat = (*node.neg_sup, *node.neg_sub, *node.pos_sup, *node.pos_sub)
            lines.append(
                f"id {node.name} {len(node.neg_sup)} {len(node.neg_sub)} "
                + " ".join(flat)
            )
            return replay(node)
        if isinstance(node, AxiomLeaf):
            lines.append(f"axiom {node.name}")
            return replay(node, axioms)
        if isinstance(node, CutNode):
            left = walk(node.left)
            right = walk(node.right)
            lines.append(f"cut {node.left_pos} {node.right_pos}")
            concl = apply_cut(left, right, node.left_pos, node.right_pos)
            lines.append(f"eq {format_judgement(concl)}")
            return concl
        if isinstance(node, TensorNode):
            left = walk(node.left)
            right = walk(node.right)
            lines.append(f"tensor {node.left_pos}")
            concl = apply_tensor(left, right, node.left_pos)
            lines.append(f"eq {format_judgement(concl)}")
            return concl
        if isinstance(node, ParNode):
            child = walk(node.child)
            lines.append(f"par {node.pos}")
            return apply_par(child, node.pos)
        if isinstance(node, NablaNode):
            child = walk(node.child)
            lines.append(f"nabla {node.pos} {node.alpha} {node.beta}")
            return apply_nabla(child, node.pos, node.alpha, node.beta, restricted)
        if isinstance(node, TriangleNode):
            child = walk(node.child)
            lines.append(f"tri {node.pos} {node.alpha} {node.beta}")
            return apply_triangle(child, node.pos, node.alpha, node.beta)
        if isinstance(node, MoveNode):
            child = walk(node.child)
            lines.append(f"move {node.src} {node.dst}")
            return apply_move(child, node.src, node.dst)
        if isinstance(node, EqNode):
            child = walk(node.child)
            lines.append(f"eq {format_judgement(node.target)}")
            return apply_eq(child, node.target)
        raise BadStep(f"unknown derivation node {node!r}")

    walk(d)
    return "\n".join(lines) + "\n"


def from_script(text: str) -> Derivation:
    """Parse the line script back into a derivation tree."""
    from .errors import ParseError
    from .syntax import parse_judgement

    stack: list[Derivation] = []

    def pop2(what: str) -> tuple[Derivation, Derivation]:
        if len(stack) < 2:
            raise ParseError(f"{what} needs two derivations on the stack")
        right = stack.pop()
        left = stack.pop()
        return left, right

    def pop1(what: str) -> Derivation:
        if not stack:
            raise ParseError(f"{what} needs a derivation on the stack")
        return stack.pop()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        op, _, rest = line.partition(" ")
        args = rest.split()
        try:
            if op == "id":
                name, n, m = args[0], int(args[1]), int(args[2])
                flat = args[3:]
                if len(flat) != 2 * (n + m):
                    raise ParseError(f"id expects {2 * (n + m)} indices")
                neg_sup = tuple(flat[:n])
                neg_sub = tuple(flat[n : n + m])
                pos_sup = tuple(flat[n + m : n + 2 * m])
                pos_sub = tuple(flat[n + 2 * m :])
                stack.append(IdLeaf(name, neg_sup, neg_sub, pos_sup, pos_sub))
            elif op == "axiom":
                stack.append(AxiomLeaf(args[0]))
            elif op == "cut":
                left, right = pop2("cut")
                stack.append(CutNode(left, right, int(args[0]), int(args[1])))
            elif op == "tensor":
                left, right = pop2("tensor")
                stack.append(TensorNode(left, right, int(args[0])))
            elif op == "par":
                stack.append(ParNode(pop1("par"), int(args[0])))
            elif op == "nabla":
                stack.append(NablaNode(pop1("nabla"), int(args[0]), args[1], args[2]))
            elif op == "tri":
                stack.append(TriangleNode(pop1("tri"), int(args[0]), args[1], args[2]))
            elif op == "move":
                stack.append(MoveNode(pop1("move"), int(args[0]), int(args[1])))
            elif op == "eq":
                stack.append(EqNode(pop1("eq"), parse_judgement(rest)))
            else:
                raise ParseError(f"unknown step {op!r}")
        except (IndexError, ValueError) as exc:
            raise ParseError(f"line {lineno}: malformed {op!r} step: {exc}") from exc
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    if len(stack) != 1:
        raise ParseError(f"script leaves {len(stack)} derivations on the stack, not 1")
    return stack[0]


def render_tree(
    d: Derivation,
    axioms: Mapping[str, Judgement] | None = None,
    restricted: bool = False,
) -> str:
    """Indented human-readable view with every intermediate judgement."""
    from .syntax import format_judgement

    lines: list[str] = []

    def walk(node: Derivation, depth: int) -> Judgement:
        pad = "  " * depth
        if isinstance(node, IdLeaf):
            concl = replay(node)
            lines.append(f"{pad}id[{node.name}]  {format_judgement(concl)}")
            return concl
        if isinstance(node, AxiomLeaf):
            concl = replay(node, axioms)
            lines.append(f"{pad}axiom[{node.name}]  {format_judgement(concl)}")
            return concl
        if isinstance(node, CutNode):
            left = walk(node.left, depth + 1)
            right = walk(node.right, depth + 1)
            concl = apply_cut(left, right, node.left_pos, node.right_pos)
            lines.append(f"{pad}cut  {format_judgement(concl)}")
            return concl
        if isinstance(node, TensorNode):
            left = walk(node.left, depth + 1)
            right = walk(node.right, depth + 1)
            concl = apply_tensor(left, right, node.left_pos)
            lines.append(f"{pad}tensor  {format_judgement(concl)}")
            return concl
        label = type(node).__name__.removesuffix("Node").lower()
        if isinstance(node, EqNode):
            child = walk(node.child, depth + 1)
            concl = apply_eq(child, node.target)
        elif isinstance(node, MoveNode):
            child = walk(node.child, depth + 1)
            concl = apply_move(child, node.src, node.dst)
        elif isinstance(node, ParNode):
            child = walk(node.child, depth + 1)
            concl = apply_par(child, node.pos)
        elif isinstance(node, NablaNode):
            child = walk(node.child, depth + 1)
            concl = apply_nabla(child, node.pos, node.alpha, node.beta, restricted)
        elif isinstance(node, TriangleNode):
            child = walk(node.child, depth + 1)
            concl = apply_triangle(child, node.pos, node.alpha, node.beta)
        else:
            raise BadStep(f"unknown derivation node {node!r}")
        lines.append(f"{pad}{label}  {format_judgement(concl)}")
        return concl

    walk(d, 0)
    return "\n".join(reversed(lines)) + "\n"
