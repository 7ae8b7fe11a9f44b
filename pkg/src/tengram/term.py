"""Tensor terms: products of word-labelled edges and loops over index vertices.

A term expression is a product of factors ``[w]_i^j`` (an edge from vertex
``i`` to vertex ``j`` labelled with the word ``w``) and closed loops ``[w]``.
An index may occur at most once in lower position and at most once in upper
position; an index occurring in both is bound.  Multiplication is associative
and commutative, adjacent edges contract along bound indices, and an edge
whose endpoints coincide closes into a loop.  ``normalize`` performs all
contractions and returns the normal form, which is unique up to the choice
of loop starting points; loops are stored rotated to their least rotation so
that equality of normal forms is literal equality.

Edges with the empty word are Kronecker deltas, written ``d_i^j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    FreshnessViolation,
    IndexCollision,
    LengthMismatch,
    MissingIndexInOrder,
    NonInjectiveRename,
)

Word = tuple[str, ...]

EPSILON: Word = ()

# Generated indices use a prefix users cannot type directly; when the parser
# meets one in printed-back text it reserves the number so later generated
# names never collide.
FRESH_PREFIX = "#"
_next_fresh = 0


def fresh_index() -> str:
    global _next_fresh
    name = f"{FRESH_PREFIX}{_next_fresh}"
    _next_fresh += 1
    return name


def reserve_index(name: str) -> None:
    """Keep the fresh-name counter ahead of a parsed generated index."""
    global _next_fresh
    if name.startswith(FRESH_PREFIX):
        _next_fresh = max(_next_fresh, int(name[len(FRESH_PREFIX) :]) + 1)


def reset_fresh_counter() -> None:
    """Restart generated-index numbering.

    Safe only at the start of an isolated piece of work (a CLI invocation,
    a reproducibility harness): afterwards the counter again stays ahead of
    any generated name it meets through ``reserve_index``.
    """
    global _next_fresh
    _next_fresh = 0


def fresh_indices(n: int) -> tuple[str, ...]:
    return tuple(fresh_index() for _ in range(n))


@dataclass(frozen=True)
class Edge:
    """A single factor ``[word]_lower^upper``."""

    lower: str
    upper: str
    word: Word = EPSILON

    def is_delta(self) -> bool:
        return self.word == EPSILON


@dataclass(frozen=True)
class Loop:
    """A closed factor ``[word]`` with no endpoints."""

    word: Word


Factor = Edge | Loop


def canonical_rotation(word: Word) -> Word:
    """Least rotation of a loop word, the stored representative of its class."""
    if len(word) <= 1:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))


class TermExpr:
    """An unreduced product of factors.

    Validates that no index occurs twice in the same polarity.  Use
    :func:`normalize` to contract bound indices into a :class:`TensorTerm`.
    """

    __slots__ = ("factors",)

    def __init__(self, factors: Iterable[Factor] = ()):
        factors = tuple(factors)
        lowers: set[str] = set()
        uppers: set[str] = set()
        for f in factors:
            if isinstance(f, Edge):
                if f.lower in lowers:
                    raise IndexCollision(f"lower index {f.lower!r} occurs twice")
                if f.upper in uppers:
                    raise IndexCollision(f"upper index {f.upper!r} occurs twice")
                lowers.add(f.lower)
                uppers.add(f.upper)
        self.factors = factors

    def subs(self) -> frozenset[str]:
        """All lower indices, bound ones included."""
        return frozenset(f.lower for f in self.factors if isinstance(f, Edge))

    def sups(self) -> frozenset[str]:
        """All upper indices, bound ones included."""
        return frozenset(f.upper for f in self.factors if isinstance(f, Edge))

    def __iter__(self):
        return iter(self.factors)

    def __repr__(self):
        return f"TermExpr({list(self.factors)!r})"


@dataclass(frozen=True)
class TensorTerm:
    """A term in normal form: contracted edges plus a multiset of loops.

    Every edge endpoint is free and endpoints are pairwise distinct.  Loops
    are stored as least rotations, sorted.  A term is *regular* if it has no
    loops and *lexical* if no edge carries the empty word.
    """

    edges: frozenset[Edge]
    loops: tuple[Word, ...] = ()

    @property
    def free_subs(self) -> frozenset[str]:
        return frozenset(e.lower for e in self.edges)

    @property
    def free_sups(self) -> frozenset[str]:
        return frozenset(e.upper for e in self.edges)

    def is_regular(self) -> bool:
        return not self.loops

    def is_lexical(self) -> bool:
        """True when every edge is labelled with a nonempty word."""
        return all(e.word != EPSILON for e in self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=lambda e: (e.lower, e.upper, e.word))

    def as_expr(self) -> TermExpr:
        return TermExpr([*self.sorted_edges(), *(Loop(w) for w in self.loops)])

    def find_edge(self, lower: str | None = None, upper: str | None = None) -> Edge | None:
        for e in self.edges:
            if lower is not None and e.lower != lower:
                continue
            if upper is not None and e.upper != upper:
                continue
            return e
        return None

    def __repr__(self):
        from .syntax import format_term

        return f"<term {format_term(self)}>"


EMPTY_TERM = TensorTerm(frozenset())


def normalize(expr: TermExpr | TensorTerm) -> TensorTerm:
    """Contract all bound indices of ``expr`` and close cycles into loops."""
    if isinstance(expr, TensorTerm):
        return expr
    edges = [f for f in expr.factors if isinstance(f, Edge)]
    loops = [canonical_rotation(f.word) for f in expr.factors if isinstance(f, Loop)]

    by_lower = {e.lower: e for e in edges}
    upper_set = {e.upper for e in edges}

    visited: set[int] = set()
    out_edges: list[Edge] = []
    for e in edges:
        if e.lower in upper_set:
            continue  # chained onto some other edge; not a path start
        cur = e
        word: list[str] = []
        while True:
            visited.add(id(cur))
            word.extend(cur.word)
            nxt = by_lower.get(cur.upper)
            if nxt is None:
                break
            cur = nxt
        out_edges.append(Edge(e.lower, cur.upper, tuple(word)))

    for e in edges:
        if id(e) in visited:
            continue
        cur = e
        word = []
        while id(cur) not in visited:
            visited.add(id(cur))
            word.extend(cur.word)
            cur = by_lower[cur.upper]
        loops.append(canonical_rotation(tuple(word)))

    return TensorTerm(frozenset(out_edges), tuple(sorted(loops)))


def multiply(*terms: TermExpr | TensorTerm) -> TermExpr:
    """Product of term expressions; indices may not collide in polarity."""
    factors: list[Factor] = []
    for t in terms:
        if isinstance(t, TensorTerm):
            t = t.as_expr()
        factors.extend(t.factors)
    return TermExpr(factors)


def congruent(a: TermExpr | TensorTerm, b: TermExpr | TensorTerm) -> bool:
    return normalize(a) == normalize(b)


def delta(lower: str, upper: str) -> Edge:
    return Edge(lower, upper, EPSILON)


def delta_seq(lowers: Sequence[str], uppers: Sequence[str]) -> TermExpr:
    """Product of deltas pairing the sequences positionally.

    All ``2n`` indices must be distinct: a repeat across the two sequences
    would make a bound pair rather than a renaming block.
    """
    if len(lowers) != len(uppers):
        raise LengthMismatch(f"{len(lowers)} lower vs {len(uppers)} upper indices")
    seen: set[str] = set()
    for name in (*lowers, *uppers):
        if name in seen:
            raise IndexCollision(f"index {name!r} repeats in the delta block")
        seen.add(name)
    return TermExpr([delta(lo, up) for lo, up in zip(lowers, uppers)])


def rename_free(t: TensorTerm, mapping: Mapping[str, str]) -> TensorTerm:
    """Rename free indices of a normal term.

    The mapping must be injective and its targets must not collide with
    indices that stay untouched.  Renaming is the same thing as multiplying
    with a matching product of deltas and renormalizing.
    """
    free = t.free_subs | t.free_sups
    relevant = {k: v for k, v in mapping.items() if k in free}
    targets = list(relevant.values())
    if len(set(targets)) != len(targets):
        raise NonInjectiveRename(f"targets {sorted(targets)} collide")
    untouched = free - set(relevant)
    bad = untouched & set(targets)
    if bad:
        raise FreshnessViolation(f"targets {sorted(bad)} collide with untouched indices")
    edges = frozenset(
        Edge(relevant.get(e.lower, e.lower), relevant.get(e.upper, e.upper), e.word)
        for e in t.edges
    )
    return TensorTerm(edges, t.loops)


def freshen(t: TensorTerm) -> tuple[TensorTerm, dict[str, str]]:
    """Rename every free index of ``t`` to a fresh one; returns the mapping."""
    mapping = {i: fresh_index() for i in sorted(t.free_subs | t.free_sups)}
    return rename_free(t, mapping), mapping


def to_graph_text(t: TensorTerm, order: Sequence[str]) -> str:
    """Render the term as a Graphviz digraph, vertices laid out in ``order``."""
    free = t.free_subs | t.free_sups
    missing = free - set(order)
    if missing:
        raise MissingIndexInOrder(f"order omits indices {sorted(missing)}")
    seen: set[str] = set()
    ordered = [i for i in order if not (i in seen or seen.add(i))]
    lines = ["digraph term {", "  rankdir=LR;"]
    pos = {idx: n for n, idx in enumerate(ordered)}
    for idx in ordered:
        lines.append(f'  v{pos[idx]} [label="{idx}" shape=circle];')
    for a, b in zip(ordered, ordered[1:]):
        lines.append(f"  v{pos[a]} -> v{pos[b]} [style=invis];")
    for e in t.sorted_edges():
        label = " ".join(e.word)
        lines.append(f'  v{pos[e.lower]} -> v{pos[e.upper]} [label="{label}"];')
    for n, w in enumerate(t.loops):
        label = " ".join(w)
        lines.append(f'  loop{n} [label="({label})" shape=ellipse];')
    lines.append("}")
    return "\n".join(lines) + "\n"
