"""Judgements: a tensor term deriving an ordered sequent of decorated types.

Well-formedness ties the two sides together: the free lower indices of the
term are exactly the free upper decorations of the sequent, and vice versa,
with no index repeated in one polarity.  The stored member order matters
for rule application (``par`` joins adjacent members); equality of
judgements is order-insensitive and rename-insensitive, decided through a
canonical form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import IndexCollision, MalformedJudgement
from .term import TensorTerm, TermExpr, normalize, rename_free
from .types import BOUND, Type, free_subs, free_sups, rename_type, symbol_key

# Above this many candidate member orderings we keep the sorted order only;
# equality then remains sound for the sizes this package actually handles.
_PERM_CAP = 40320


@dataclass(frozen=True)
class Judgement:
    term: TensorTerm
    members: tuple[Type, ...]

    def __post_init__(self):
        sups: list[str] = []
        subs: list[str] = []
        for m in self.members:
            sups.extend(free_sups(m))
            subs.extend(free_subs(m))
        for name, seq in (("upper", sups), ("lower", subs)):
            if BOUND in seq:
                raise MalformedJudgement(f"blank {name} decoration outside a binder")
            if len(set(seq)) != len(seq):
                dup = sorted({i for i in seq if seq.count(i) > 1})
                raise IndexCollision(f"{name} decorations {dup} repeat in the sequent")
        if self.term.free_subs != set(sups) or self.term.free_sups != set(subs):
            raise MalformedJudgement(
                f"term carries {sorted(self.term.free_subs)}/{sorted(self.term.free_sups)} "
                f"free lower/upper indices, sequent expects {sorted(sups)}/{sorted(subs)}"
            )

    def is_regular(self) -> bool:
        return self.term.is_regular()

    def sequent_sups(self) -> tuple[str, ...]:
        out: list[str] = []
        for m in self.members:
            out.extend(free_sups(m))
        return tuple(out)

    def sequent_subs(self) -> tuple[str, ...]:
        out: list[str] = []
        for m in self.members:
            out.extend(free_subs(m))
        return tuple(out)

    def __repr__(self):
        from .syntax import format_judgement

        return f"<judgement {format_judgement(self)}>"


def make_judgement(term: TermExpr | TensorTerm, members: tuple[Type, ...] | list[Type]) -> Judgement:
    return Judgement(normalize(term), tuple(members))


def rename_judgement(j: Judgement, mapping: dict[str, str]) -> Judgement:
    return Judgement(
        rename_free(j.term, mapping),
        tuple(rename_type(m, mapping) for m in j.members),
    )


def _member_key(m: Type) -> str:
    return repr((symbol_key(m), free_sups(m), free_subs(m)))


@dataclass(frozen=True)
class Canon:
    """Canonical form of a judgement.

    ``key`` decides equality and indexes memo tables; ``order`` lists the
    original member positions in canonical order; ``mapping`` renames the
    original free indices to the canonical ``v0, v1, ...`` names;
    ``judgement`` is the fully renamed, reordered representative.
    """

    key: str
    order: tuple[int, ...]
    mapping: dict[str, str]
    judgement: Judgement


def canonicalize(j: Judgement) -> Canon:
    """Least representative over member order (within equal-structure groups)
    and index renaming."""
    positions = sorted(range(len(j.members)), key=lambda i: repr(symbol_key(j.members[i])))
    groups: list[list[int]] = []
    prev = None
    for pos in positions:
        sk = repr(symbol_key(j.members[pos]))
        if sk != prev:
            groups.append([])
            prev = sk
        groups[-1].append(pos)

    total = 1
    for g in groups:
        for k in range(2, len(g) + 1):
            total *= k
    if total > _PERM_CAP:
        orderings = [tuple(itertools.chain.from_iterable(groups))]
    else:
        orderings = [
            tuple(itertools.chain.from_iterable(choice))
            for choice in itertools.product(*(itertools.permutations(g) for g in groups))
        ]

    best: Canon | None = None
    for order in orderings:
        mapping: dict[str, str] = {}
        for pos in order:
            m = j.members[pos]
            for idx in (*free_sups(m), *free_subs(m)):
                if idx not in mapping:
                    mapping[idx] = f"v{len(mapping)}"
        members = tuple(rename_type(j.members[pos], mapping) for pos in order)
        term = rename_free(j.term, mapping)
        mk = tuple(_member_key(m) for m in members)
        ek = tuple((e.lower, e.upper, e.word) for e in term.sorted_edges())
        key = repr((mk, ek, term.loops))
        if best is None or key < best.key:
            best = Canon(key, order, mapping, Judgement(term, members))
    if best is None:  # empty sequent: term is all loops
        key = repr(((), (), j.term.loops))
        best = Canon(key, (), {}, j)
    return best


def alpha_equal(a: Judgement, b: Judgement) -> bool:
    return canonicalize(a).key == canonicalize(b).key


def relabel_mapping(src: Judgement, dst: Judgement) -> dict[str, str] | None:
    """Index renaming turning ``src`` into ``dst`` with member order kept.

    Returns None when the shapes differ or no consistent injective renaming
    exists.  This is the check behind relabelling steps in derivations.
    """
    if len(src.members) != len(dst.members):
        return None
    mapping: dict[str, str] = {}
    for a, b in zip(src.members, dst.members):
        if symbol_key(a) != symbol_key(b):
            return None
        for x, y in zip(
            (*free_sups(a), *free_subs(a)), (*free_sups(b), *free_subs(b))
        ):
            if mapping.setdefault(x, y) != y:
                return None
    if len(set(mapping.values())) != len(mapping):
        return None
    if rename_free(src.term, mapping) != dst.term:
        return None
    return mapping
