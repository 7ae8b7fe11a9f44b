"""Decorated types: literals with index decorations, connectives, binders.

An atomic type is a literal with fixed numbers of upper and lower index
slots, decorated with index names.  Compound types are built with the
multiplicative connectives ``tensor`` and ``par`` and with two index
binders (``nabla``, the universal one, and ``tri``, its dual).

Binders are stored positionally: a binder records which slot of its body's
free upper order and free lower order it captures, and captured slots are
blanked in the stored tree.  Structural equality of types is therefore
exactly equality up to bound-index renaming; bound names are invented only
when printing.

The free slots of a type are read in a fixed order: preorder over the tree,
upper slots before lower slots at each literal, skipping captured slots.
Duality reverses both sequences, swaps polarities and connectives, and is
an involution.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityMismatch, LengthMismatch, MissingIndexInOrder

BOUND = ""  # placeholder stored in slots captured by an enclosing binder

TENSOR = "tensor"
PAR = "par"
NABLA = "nabla"
TRI = "tri"

_DUAL_OP = {TENSOR: PAR, PAR: TENSOR, NABLA: TRI, TRI: NABLA}


@dataclass(frozen=True)
class Lit:
    """A literal occurrence: name, polarity, and its own slot counts."""

    name: str
    ups: int
    downs: int
    positive: bool = True

    def dual(self) -> "Lit":
        return Lit(self.name, self.downs, self.ups, not self.positive)


@dataclass(frozen=True)
class Atom:
    lit: Lit
    sup: tuple[str, ...] = ()
    sub: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.sup) != self.lit.ups or len(self.sub) != self.lit.downs:
            raise ArityMismatch(
                f"literal {self.lit.name} expects {self.lit.ups} upper / "
                f"{self.lit.downs} lower indices, got {len(self.sup)}/{len(self.sub)}"
            )

    def __repr__(self):
        from .syntax import format_type

        return f"<type {format_type(self)}>"


@dataclass(frozen=True)
class Bin:
    op: str  # TENSOR or PAR
    left: "Type"
    right: "Type"

    def __repr__(self):
        from .syntax import format_type

        return f"<type {format_type(self)}>"


@dataclass(frozen=True)
class Binder:
    """``op`` captures the ``up_pos``-th free upper slot and the ``lo_pos``-th
    free lower slot of ``body`` (positions in reading order)."""

    op: str  # NABLA or TRI
    lo_pos: int
    up_pos: int
    body: "Type"

    def __repr__(self):
        from .syntax import format_type

        return f"<type {format_type(self)}>"


Type = Atom | Bin | Binder


def free_sups(t: Type) -> tuple[str, ...]:
    """Free upper decorations in reading order."""
    if isinstance(t, Atom):
        return t.sup
    if isinstance(t, Bin):
        return free_sups(t.left) + free_sups(t.right)
    inner = free_sups(t.body)
    return inner[: t.up_pos] + inner[t.up_pos + 1 :]


def free_subs(t: Type) -> tuple[str, ...]:
    """Free lower decorations in reading order."""
    if isinstance(t, Atom):
        return t.sub
    if isinstance(t, Bin):
        return free_subs(t.left) + free_subs(t.right)
    inner = free_subs(t.body)
    return inner[: t.lo_pos] + inner[t.lo_pos + 1 :]


def redecorate(t: Type, sups: tuple[str, ...], subs: tuple[str, ...]) -> Type:
    """Rebuild ``t`` with new free decorations, given in reading order."""
    if len(sups) != len(free_sups(t)) or len(subs) != len(free_subs(t)):
        raise LengthMismatch(
            f"type has {len(free_sups(t))}/{len(free_subs(t))} free slots, "
            f"got {len(sups)}/{len(subs)} decorations"
        )
    return _redecorate(t, sups, subs)


def _redecorate(t: Type, sups: tuple[str, ...], subs: tuple[str, ...]) -> Type:
    if isinstance(t, Atom):
        return Atom(t.lit, sups, subs)
    if isinstance(t, Bin):
        nu, nl = len(free_sups(t.left)), len(free_subs(t.left))
        return Bin(
            t.op,
            _redecorate(t.left, sups[:nu], subs[:nl]),
            _redecorate(t.right, sups[nu:], subs[nl:]),
        )
    body_sups = sups[: t.up_pos] + (BOUND,) + sups[t.up_pos :]
    body_subs = subs[: t.lo_pos] + (BOUND,) + subs[t.lo_pos :]
    return Binder(t.op, t.lo_pos, t.up_pos, _redecorate(t.body, body_sups, body_subs))


def rename_type(t: Type, mapping: dict[str, str]) -> Type:
    sups = tuple(mapping.get(i, i) for i in free_sups(t))
    subs = tuple(mapping.get(i, i) for i in free_subs(t))
    return redecorate(t, sups, subs)


def bind(op: str, t: Type, alpha: str, beta: str) -> Binder:
    """Capture a lower index ``alpha`` and an upper index ``beta`` of ``t``.

    In the written form ``nab^alpha_beta(...)`` the binder's superscript
    names a captured lower slot of the body and its subscript a captured
    upper slot; this pairing is what lets the quantifier rules exchange the
    bound pair against a single ``d^alpha_beta`` factor of the term.
    """
    sups, subs = free_sups(t), free_subs(t)
    if alpha not in subs:
        raise MissingIndexInOrder(f"{alpha!r} is not a free lower index of the type")
    if beta not in sups:
        raise MissingIndexInOrder(f"{beta!r} is not a free upper index of the type")
    lo_pos = subs.index(alpha)
    up_pos = sups.index(beta)
    blanked = redecorate(
        t,
        tuple(BOUND if k == up_pos else v for k, v in enumerate(sups)),
        tuple(BOUND if k == lo_pos else v for k, v in enumerate(subs)),
    )
    return Binder(op, lo_pos, up_pos, blanked)


def instantiate(t: Binder, alpha: str, beta: str) -> Type:
    """Strip the binder, naming the captured lower slot ``alpha`` and the
    captured upper slot ``beta`` (inverse of :func:`bind`)."""
    sups, subs = list(free_sups(t.body)), list(free_subs(t.body))
    sups[t.up_pos] = beta
    subs[t.lo_pos] = alpha
    return _redecorate(t.body, tuple(sups), tuple(subs))


def dual(t: Type) -> Type:
    if isinstance(t, Atom):
        return Atom(t.lit.dual(), tuple(reversed(t.sub)), tuple(reversed(t.sup)))
    if isinstance(t, Bin):
        return Bin(_DUAL_OP[t.op], dual(t.right), dual(t.left))
    m = len(free_sups(t.body))
    n = len(free_subs(t.body))
    return Binder(_DUAL_OP[t.op], m - 1 - t.up_pos, n - 1 - t.lo_pos, dual(t.body))


def tensor(left: Type, right: Type) -> Bin:
    return Bin(TENSOR, left, right)


def par(left: Type, right: Type) -> Bin:
    return Bin(PAR, left, right)


def conn_count(t: Type) -> int:
    """Connectives plus binders; the induction measure for proof search."""
    if isinstance(t, Atom):
        return 0
    if isinstance(t, Bin):
        return 1 + conn_count(t.left) + conn_count(t.right)
    return 1 + conn_count(t.body)


def symbol_key(t: Type):
    """Structure of the type with decorations erased; hashable."""
    if isinstance(t, Atom):
        return ("a", t.lit.name, t.lit.positive, t.lit.ups, t.lit.downs)
    if isinstance(t, Bin):
        return ("b", t.op, symbol_key(t.left), symbol_key(t.right))
    return ("n", t.op, t.lo_pos, t.up_pos, symbol_key(t.body))


def atoms(t: Type):
    if isinstance(t, Atom):
        yield t
    elif isinstance(t, Bin):
        yield from atoms(t.left)
        yield from atoms(t.right)
    else:
        yield from atoms(t.body)
