"""Surface syntax: tokenizer, parsers and printers for terms, types, judgements.

Grammar sketch::

    term       ::= "1" | factor ("*" factor)*
    factor     ::= "1" | "[" word* "]" decor? | "d" decor
    decor      ::= "^" index "_" index | "_" index "^" index
    index      ::= NAME | NUMBER | "{" anything-but-space "}"

    type       ::= unit (("*" unit)* | ("%" unit)*)      -- no mixing w/o parens
    unit       ::= "~" unit | "(" type ")" | binder | atom
    binder     ::= ("nab"|"tri") "^" index "_" index "(" type ")"
    atom       ::= NAME ("^" index | "_" index)*

    judgement  ::= term "|-" type ("," type)*

A ``~`` directly on an atom is the negative occurrence with the written
decorations; on anything compound it is the duality operator, computed
eagerly (the printer pushes negation down to atoms, so it never emits the
compound form).  ``d_i^j`` and ``[]_i^j`` both denote the empty-word edge.
``*`` and ``%`` associate to the left and may not be mixed without
parentheses.  Bound binder indices are invented at print time (``b0``,
``b1``, ...) and never clash with free names.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .term import (
    EPSILON,
    Edge,
    Loop,
    TensorTerm,
    TermExpr,
    reserve_index,
)
from .types import (
    NABLA,
    PAR,
    TENSOR,
    TRI,
    Atom,
    Bin,
    Binder,
    Lit,
    Type,
    bind,
    dual,
    free_subs,
    free_sups,
    instantiate,
)

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<pipe>\|-)
      | (?P<hashidx>\#[0-9]+)
      | (?P<id>[A-Za-z][A-Za-z0-9']*)
      | (?P<num>[0-9]+)
      | (?P<sym>[][^_{}()*%~,])
    """,
    re.VERBOSE,
)

_BINDER_WORDS = {"nab": NABLA, "tri": TRI}
_OP_SYM = {TENSOR: "*", PAR: "%"}


def tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r} at offset {pos}")
        pos = m.end()
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group()))
    tokens.append(("eof", ""))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str]:
        return self.tokens[self.pos]

    def next(self) -> tuple[str, str]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str) -> None:
        kind, got = self.next()
        if got != value or kind == "eof":
            raise ParseError(f"expected {value!r}, got {got!r}")

    def at(self, value: str) -> bool:
        return self.peek()[1] == value and self.peek()[0] != "eof"

    def done(self) -> bool:
        return self.peek()[0] == "eof"

    # --- indices ---------------------------------------------------------

    def index(self) -> str:
        kind, value = self.next()
        if value == "{":
            kind, value = self.next()
            if kind not in ("id", "num", "hashidx"):
                raise ParseError(f"bad index {value!r} in braces")
            self.expect("}")
        elif kind not in ("id", "num", "hashidx"):
            raise ParseError(f"expected an index, got {value!r}")
        if kind == "hashidx":
            reserve_index(value)
        return value

    def decorations(self) -> tuple[list[str], list[str]]:
        sup: list[str] = []
        sub: list[str] = []
        while self.at("^") or self.at("_"):
            marker = self.next()[1]
            (sup if marker == "^" else sub).append(self.index())
        return sup, sub

    # --- terms -----------------------------------------------------------

    def term(self) -> TermExpr:
        factors: list = []
        while True:
            self.factor(factors)
            if self.at("*"):
                self.next()
                continue
            break
        return TermExpr(factors)

    def factor(self, out: list) -> None:
        kind, value = self.peek()
        if value == "1":
            self.next()
            return
        if value == "[":
            self.next()
            word: list[str] = []
            while not self.at("]"):
                k, v = self.next()
                if k not in ("id", "num"):
                    raise ParseError(f"bad word token {v!r} inside brackets")
                word.append(v)
            self.expect("]")
            sup, sub = self.decorations()
            self._emit(out, tuple(word), sup, sub)
            return
        if kind == "id" and value == "d":
            self.next()
            sup, sub = self.decorations()
            if not sup or not sub:
                raise ParseError("d needs both an upper and a lower index")
            self._emit(out, EPSILON, sup, sub)
            return
        raise ParseError(f"expected a term factor, got {value!r}")

    @staticmethod
    def _emit(out: list, word, sup: list[str], sub: list[str]) -> None:
        if len(sup) > 1 or len(sub) > 1:
            raise ParseError("a factor takes at most one upper and one lower index")
        if sup and sub:
            out.append(Edge(sub[0], sup[0], word))
        elif sup or sub:
            raise ParseError("an edge needs both endpoints; a loop takes none")
        else:
            out.append(Loop(word))

    # --- types -----------------------------------------------------------

    def type(self) -> Type:
        left = self.unit()
        if self.at("*") or self.at("%"):
            sym = self.peek()[1]
            op = TENSOR if sym == "*" else PAR
            while self.at(sym):
                self.next()
                left = Bin(op, left, self.unit())
            if self.at("*") or self.at("%"):
                raise ParseError("mixed * and % need parentheses")
        return left

    def unit(self) -> Type:
        kind, value = self.peek()
        if value == "~":
            self.next()
            kind, value = self.peek()
            if kind == "id" and value not in _BINDER_WORDS:
                return self.atom(positive=False)
            return dual(self.unit())
        if value == "(":
            self.next()
            t = self.type()
            self.expect(")")
            return t
        if kind == "id" and value in _BINDER_WORDS:
            op = _BINDER_WORDS[value]
            self.next()
            sup, sub = self.decorations()
            if len(sup) != 1 or len(sub) != 1:
                raise ParseError(f"{value} needs one upper and one lower index")
            self.expect("(")
            body = self.type()
            self.expect(")")
            return bind(op, body, sup[0], sub[0])
        return self.atom(positive=True)

    def atom(self, positive: bool) -> Atom:
        kind, name = self.next()
        if kind != "id":
            raise ParseError(f"expected a literal name, got {name!r}")
        if name in _BINDER_WORDS:
            raise ParseError(f"{name!r} is reserved")
        sup, sub = self.decorations()
        lit = Lit(name, len(sup), len(sub), positive)
        return Atom(lit, tuple(sup), tuple(sub))

    # --- judgements -------------------------------------------------------

    def judgement(self):
        from .judgement import make_judgement

        t = self.term()
        kind, value = self.next()
        if kind != "pipe":
            raise ParseError(f"expected |- after the term, got {value!r}")
        members: list[Type] = []
        if not self.done():
            members.append(self.type())
            while self.at(","):
                self.next()
                members.append(self.type())
        return make_judgement(t, tuple(members))


def parse_term(text: str) -> TermExpr:
    p = _Parser(text)
    t = p.term()
    if not p.done():
        raise ParseError(f"trailing input at {p.peek()[1]!r}")
    return t


def parse_type(text: str) -> Type:
    p = _Parser(text)
    t = p.type()
    if not p.done():
        raise ParseError(f"trailing input at {p.peek()[1]!r}")
    return t


def parse_judgement(text: str):
    p = _Parser(text)
    j = p.judgement()
    if not p.done():
        raise ParseError(f"trailing input at {p.peek()[1]!r}")
    return j


# --- printing --------------------------------------------------------------


def _idx(i: str) -> str:
    return i if len(i) == 1 else "{" + i + "}"


def _factor_str(lower: str, upper: str, word) -> str:
    if word == EPSILON:
        return f"d_{_idx(lower)}^{_idx(upper)}"
    return f"[{' '.join(word)}]_{_idx(lower)}^{_idx(upper)}"


def format_term(t: TensorTerm | TermExpr) -> str:
    parts: list[str] = []
    if isinstance(t, TensorTerm):
        for e in t.sorted_edges():
            parts.append(_factor_str(e.lower, e.upper, e.word))
        for w in t.loops:
            parts.append(f"[{' '.join(w)}]")
    else:
        for f in t.factors:
            if isinstance(f, Edge):
                parts.append(_factor_str(f.lower, f.upper, f.word))
            else:
                parts.append(f"[{' '.join(f.word)}]")
    return "*".join(parts) if parts else "1"


def _bound_namer(taken: set[str]):
    counter = [0]

    def fresh() -> str:
        while True:
            name = f"b{counter[0]}"
            counter[0] += 1
            if name not in taken:
                taken.add(name)
                return name

    return fresh


def _fmt_type(t: Type, bname) -> str:
    if isinstance(t, Atom):
        head = t.lit.name if t.lit.positive else "~" + t.lit.name
        return (
            head
            + "".join(f"^{_idx(i)}" for i in t.sup)
            + "".join(f"_{_idx(i)}" for i in t.sub)
        )
    if isinstance(t, Bin):
        sides = []
        for side in (t.left, t.right):
            s = _fmt_type(side, bname)
            sides.append(f"({s})" if isinstance(side, Bin) else s)
        return f"{sides[0]}{_OP_SYM[t.op]}{sides[1]}"
    a, b = bname(), bname()
    word = "nab" if t.op == NABLA else "tri"
    return f"{word}^{_idx(a)}_{_idx(b)}({_fmt_type(instantiate(t, a, b), bname)})"


def format_type(t: Type) -> str:
    taken = set(free_sups(t)) | set(free_subs(t))
    return _fmt_type(t, _bound_namer(taken))


def format_judgement(j) -> str:
    taken: set[str] = set()
    for m in j.members:
        taken.update(free_sups(m))
        taken.update(free_subs(m))
    bname = _bound_namer(taken)
    members = ", ".join(_fmt_type(m, bname) for m in j.members)
    left = format_term(j.term)
    return f"{left} |- {members}" if members else f"{left} |-"
