"""Lambek calculus: sequent prover, grammars, and the embedding into the
quantified tensor calculus.

The embedding sends each Lambek type to a valency-(1,1) quantified tensor
type and each sequent to its cyclically delta-linked judgement; derivability
is preserved and reflected in both the full and the restricted calculus,
which the test suite exercises differentially.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from . import prover
from .errors import ParseError
from .judgement import Judgement
from .term import Edge, TermExpr, fresh_index, normalize
from .types import (
    Atom,
    Bin,
    Binder,
    Lit,
    NABLA,
    PAR,
    TENSOR,
    TRI,
    Type,
    bind,
    dual,
    free_subs,
    free_sups,
    instantiate,
    par,
    tensor,
)

# --- types -------------------------------------------------------------------


@dataclass(frozen=True)
class LAtom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Over:
    """``b / a`` — wants an ``a`` on the right."""

    b: "LambekType"
    a: "LambekType"

    def __str__(self):
        return f"({self.b}/{self.a})"


@dataclass(frozen=True)
class Under:
    """``a \\ b`` — wants an ``a`` on the left."""

    a: "LambekType"
    b: "LambekType"

    def __str__(self):
        return f"({self.a}\\{self.b})"


@dataclass(frozen=True)
class Prod:
    a: "LambekType"
    b: "LambekType"

    def __str__(self):
        return f"({self.a}*{self.b})"


LambekType = LAtom | Over | Under | Prod


def lambek_atoms(t: LambekType) -> set[str]:
    if isinstance(t, LAtom):
        return {t.name}
    if isinstance(t, Over):
        return lambek_atoms(t.b) | lambek_atoms(t.a)
    return lambek_atoms(t.a) | lambek_atoms(t.b)


def connective_count(t: LambekType) -> int:
    if isinstance(t, LAtom):
        return 0
    if isinstance(t, Over):
        return 1 + connective_count(t.b) + connective_count(t.a)
    return 1 + connective_count(t.a) + connective_count(t.b)


# --- sequent prover ----------------------------------------------------------


@dataclass(frozen=True)
class LCNode:
    """One backward step; conclusion stored so the tree self-checks."""

    rule: str
    context: tuple[LambekType, ...]
    goal: LambekType
    premises: tuple["LCNode", ...] = ()


Sequent = tuple[tuple[LambekType, ...], LambekType]


def lc_prove(
    context: Iterable[LambekType],
    goal: LambekType,
    restricted: bool = False,
    memo: dict | None = None,
) -> LCNode | None:
    """Cut-free backward search; ``None`` when underivable.

    ``restricted`` switches to the variant where every sequent anywhere in
    the derivation must have a nonempty antecedent, enforced as an entry
    guard on each subgoal.
    """
    if memo is None:
        memo = {}
    return _lc(tuple(context), goal, restricted, memo)


def _lc(ctx: tuple, goal, restricted: bool, memo: dict) -> LCNode | None:
    if restricted and not ctx:
        return None
    key = (ctx, goal)
    if key in memo:
        return memo[key]
    memo[key] = None  # occurs-check placeholder; rules shrink, so no cycles
    out = _lc_search(ctx, goal, restricted, memo)
    memo[key] = out
    return out


def _lc_search(ctx, goal, restricted, memo) -> LCNode | None:
    if ctx == (goal,):
        return LCNode("id", ctx, goal)
    # right rules
    if isinstance(goal, Over):
        p = _lc((*ctx, goal.a), goal.b, restricted, memo)
        if p is not None:
            return LCNode("/R", ctx, goal, (p,))
    elif isinstance(goal, Under):
        p = _lc((goal.a, *ctx), goal.b, restricted, memo)
        if p is not None:
            return LCNode("\\R", ctx, goal, (p,))
    elif isinstance(goal, Prod):
        for cut in range(len(ctx) + 1):
            l = _lc(ctx[:cut], goal.a, restricted, memo)
            if l is None:
                continue
            r = _lc(ctx[cut:], goal.b, restricted, memo)
            if r is not None:
                return LCNode("*R", ctx, goal, (l, r))
    # left rules, leftmost occurrence first
    for k, t in enumerate(ctx):
        if isinstance(t, Prod):
            p = _lc((*ctx[:k], t.a, t.b, *ctx[k + 1 :]), goal, restricted, memo)
            if p is not None:
                return LCNode("*L", ctx, goal, (p,))
        elif isinstance(t, Over):
            # argument segment sits to the right of the slash type
            for stop in range(k + 1, len(ctx) + 1):
                arg = _lc(ctx[k + 1 : stop], t.a, restricted, memo)
                if arg is None:
                    continue
                rest = _lc((*ctx[:k], t.b, *ctx[stop:]), goal, restricted, memo)
                if rest is not None:
                    return LCNode("/L", ctx, goal, (arg, rest))
        elif isinstance(t, Under):
            for start in range(0, k + 1):
                arg = _lc(ctx[start:k], t.a, restricted, memo)
                if arg is None:
                    continue
                rest = _lc((*ctx[:start], t.b, *ctx[k + 1 :]), goal, restricted, memo)
                if rest is not None:
                    return LCNode("\\L", ctx, goal, (arg, rest))
    return None


def lc_check(d: LCNode, restricted: bool = False) -> bool:
    """Replay a stored derivation tree against the rules."""
    ctx, goal = d.context, d.goal
    if restricted and not ctx:
        return False
    ps = d.premises
    if d.rule == "id":
        return ctx == (goal,) and not ps
    if not all(lc_check(p, restricted) for p in ps):
        return False
    if d.rule == "/R":
        return (
            isinstance(goal, Over)
            and len(ps) == 1
            and ps[0].context == (*ctx, goal.a)
            and ps[0].goal == goal.b
        )
    if d.rule == "\\R":
        return (
            isinstance(goal, Under)
            and len(ps) == 1
            and ps[0].context == (goal.a, *ctx)
            and ps[0].goal == goal.b
        )
    if d.rule == "*R":
        return (
            isinstance(goal, Prod)
            and len(ps) == 2
            and ps[0].context + ps[1].context == ctx
            and ps[0].goal == goal.a
            and ps[1].goal == goal.b
        )
    if d.rule == "*L":
        if len(ps) != 1 or ps[0].goal != goal:
            return False
        for k, t in enumerate(ctx):
            if isinstance(t, Prod) and ps[0].context == (
                *ctx[:k],
                t.a,
                t.b,
                *ctx[k + 1 :],
            ):
                return True
        return False
    if d.rule in ("/L", "\\L"):
        if len(ps) != 2 or ps[1].goal != goal:
            return False
        arg, rest = ps
        for k, t in enumerate(ctx):
            if d.rule == "/L" and isinstance(t, Over):
                stop = k + 1 + len(arg.context)
                if (
                    arg.goal == t.a
                    and ctx[k + 1 : stop] == arg.context
                    and rest.context == (*ctx[:k], t.b, *ctx[stop:])
                ):
                    return True
            if d.rule == "\\L" and isinstance(t, Under):
                start = k - len(arg.context)
                if (
                    start >= 0
                    and arg.goal == t.a
                    and ctx[start:k] == arg.context
                    and rest.context == (*ctx[:start], t.b, *ctx[k + 1 :])
                ):
                    return True
        return False
    return False


# --- translation into the quantified tensor calculus --------------------------


def translate_lambek_type(
    t: LambekType, sup: str | None = None, sub: str | None = None
) -> Type:
    """Decorated tensor type for ``t`` with outer indices (sup, sub)."""
    if sup is None:
        sup = fresh_index()
    if sub is None:
        sub = fresh_index()
    if isinstance(t, LAtom):
        return Atom(Lit(t.name, 1, 1, positive=True), (sup,), (sub,))
    alpha, beta = fresh_index(), fresh_index()
    if isinstance(t, Prod):
        body = tensor(
            translate_lambek_type(t.a, sup, alpha),
            translate_lambek_type(t.b, beta, sub),
        )
        return bind(TRI, body, alpha, beta)
    if isinstance(t, Over):
        body = par(
            translate_lambek_type(t.b, sup, alpha),
            dual(translate_lambek_type(t.a, sub, beta)),
        )
        return bind(NABLA, body, alpha, beta)
    body = par(
        dual(translate_lambek_type(t.a, alpha, sup)),
        translate_lambek_type(t.b, beta, sub),
    )
    return bind(NABLA, body, alpha, beta)


def lambek_cycle(context: Iterable[LambekType], goal: LambekType) -> Judgement:
    """Cyclically delta-linked judgement of a sequent.

    Members run through the duals of the context right-to-left, then the
    goal; consecutive members (cyclically) share one epsilon edge.
    """
    ctx = tuple(context)
    members: list[Type] = []
    for t in reversed(ctx):
        i, j = fresh_index(), fresh_index()
        members.append(dual(translate_lambek_type(t, j, i)))
    i, j = fresh_index(), fresh_index()
    members.append(translate_lambek_type(goal, i, j))
    n = len(members)
    sups = [free_sups(m)[0] for m in members]
    subs = [free_subs(m)[0] for m in members]
    edges = [Edge(sups[(k + 1) % n], subs[k]) for k in range(n)]
    return Judgement(normalize(TermExpr(edges)), tuple(members))


@dataclass(frozen=True)
class EmbedReport:
    status: str  # agree-derivable | agree-underivable | mismatch
    lc_derivable: bool
    cycle_derivable: bool


def embed_check(
    context: Iterable[LambekType], goal: LambekType, restricted: bool = False
) -> EmbedReport:
    """Differential check: sequent prover vs. proof search on the cycle."""
    ctx = tuple(context)
    lc = lc_prove(ctx, goal, restricted) is not None
    cyc = prover.prove(lambek_cycle(ctx, goal), restricted=restricted) is not None
    if lc == cyc:
        return EmbedReport("agree-derivable" if lc else "agree-underivable", lc, cyc)
    return EmbedReport("mismatch", lc, cyc)


def is_locally_connected(t: Type) -> bool:
    """Every par subformula is directly bound by a quantifier whose pair
    straddles the two par components."""
    if isinstance(t, Atom):
        return True
    if isinstance(t, Bin):
        if t.op == PAR:
            return False
        return is_locally_connected(t.left) and is_locally_connected(t.right)
    assert isinstance(t, Binder)
    a, b = fresh_index(), fresh_index()
    body = instantiate(t, a, b)
    if t.op == NABLA and isinstance(body, Bin) and body.op == PAR:
        left = set(free_sups(body.left)) | set(free_subs(body.left))
        right = set(free_sups(body.right)) | set(free_subs(body.right))
        if (a in left and b in right) or (a in right and b in left):
            return is_locally_connected(body.left) and is_locally_connected(body.right)
        return False
    return is_locally_connected(body)


# --- grammars ------------------------------------------------------------------


@dataclass(frozen=True)
class LambekGrammar:
    lexicon: tuple[tuple[str, LambekType], ...]
    start: str
    restricted: bool = True

    @property
    def terminals(self) -> tuple[str, ...]:
        seen = []
        for w, _ in self.lexicon:
            if w not in seen:
                seen.append(w)
        return tuple(seen)

    @property
    def atoms(self) -> tuple[str, ...]:
        names = {self.start}
        for _, t in self.lexicon:
            names |= lambek_atoms(t)
        return tuple(sorted(names))


def lambek_generates(
    g: LambekGrammar, word: tuple[str, ...], memo: dict | None = None
) -> bool:
    """True when some lexicon type assignment derives the start symbol."""
    if memo is None:
        memo = {}
    goal = LAtom(g.start)
    choices: list[tuple[LambekType, ...]] = []
    for w in word:
        ts = tuple(t for lw, t in g.lexicon if lw == w)
        if not ts:
            return False
        choices.append(ts)
    return any(
        lc_prove(ctx, goal, g.restricted, memo) is not None
        for ctx in _assignments(choices)
    )


def _assignments(choices: list[tuple]) -> Iterator[tuple]:
    if not choices:
        yield ()
        return
    for head in choices[0]:
        for tail in _assignments(choices[1:]):
            yield (head, *tail)


def lambek_language(g: LambekGrammar, max_len: int) -> list[tuple[str, ...]]:
    memo: dict = {}
    out = []
    for n in range(max_len + 1):
        out.extend(
            w for w in _words(g.terminals, n) if lambek_generates(g, w, memo)
        )
    return out


def _words(alphabet: tuple[str, ...], n: int) -> Iterator[tuple[str, ...]]:
    if n == 0:
        yield ()
        return
    for w in _words(alphabet, n - 1):
        for a in alphabet:
            yield (*w, a)


def translate_lambek_grammar(g: LambekGrammar):
    """Extended tensor grammar with one lexical axiom per lexicon entry."""
    from .engine import Grammar

    axioms = {}
    for k, (w, t) in enumerate(g.lexicon):
        i, j = fresh_index(), fresh_index()
        member = translate_lambek_type(t, i, j)
        term = normalize(TermExpr([Edge(i, j, (w,))]))
        axioms[f"ax{k}"] = Judgement(term, (member,))
    literals = {p: (1, 1) for p in g.atoms}
    return Grammar(
        kind="extended",
        literals=literals,
        terminals=tuple(g.terminals),
        axioms=axioms,
        start=g.start,
        restricted=g.restricted,
    )


# --- lexicon file format -------------------------------------------------------

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_']*|[()/\\*])")


def parse_lambek_type(text: str) -> LambekType:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"bad character in type: {text[pos:].lstrip()[0]!r}")
            break
        toks.append(m.group(1))
        pos = m.end()
    t, rest = _parse_slashes(toks)
    if rest:
        raise ParseError(f"unexpected {rest[0]!r} after type")
    return t


def _parse_slashes(toks):
    left, toks = _parse_product(toks)
    while toks and toks[0] in ("/", "\\"):
        op, *toks = toks
        right, toks = _parse_product(toks)
        left = Over(left, right) if op == "/" else Under(left, right)
    return left, toks


def _parse_product(toks):
    left, toks = _parse_primary(toks)
    while toks and toks[0] == "*":
        right, toks = _parse_primary(toks[1:])
        left = Prod(left, right)
    return left, toks


def _parse_primary(toks):
    if not toks:
        raise ParseError("type ended unexpectedly")
    head, *rest = toks
    if head == "(":
        t, rest = _parse_slashes(rest)
        if not rest or rest[0] != ")":
            raise ParseError("missing closing parenthesis in type")
        return t, rest[1:]
    if head in (")", "/", "\\", "*"):
        raise ParseError(f"unexpected {head!r} in type")
    return LAtom(head), rest


def format_lambek_type(t: LambekType, outer: bool = True) -> str:
    if isinstance(t, LAtom):
        return t.name
    if isinstance(t, Over):
        body = f"{format_lambek_type(t.b, False)} / {format_lambek_type(t.a, False)}"
    elif isinstance(t, Under):
        body = f"{format_lambek_type(t.a, False)} \\ {format_lambek_type(t.b, False)}"
    else:
        body = f"{format_lambek_type(t.a, False)} * {format_lambek_type(t.b, False)}"
    return body if outer else f"({body})"


def parse_lexicon(text: str) -> LambekGrammar:
    """Lexicon file: ``word : TYPE`` lines plus ``start:`` and
    ``restriction: on|off`` directives; ``#`` starts a comment."""
    entries = []
    start = None
    restricted = True
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("start:"):
            start = line[len("start:") :].strip()
            continue
        if line.startswith("restriction:"):
            value = line[len("restriction:") :].strip().lower()
            if value not in ("on", "off"):
                raise ParseError(f"line {lineno}: restriction must be on|off")
            restricted = value == "on"
            continue
        if ":" not in line:
            raise ParseError(f"line {lineno}: expected 'word : TYPE'")
        word, typetext = line.split(":", 1)
        word = word.strip()
        if not word:
            raise ParseError(f"line {lineno}: empty terminal")
        try:
            entries.append((word, parse_lambek_type(typetext)))
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e}") from e
    if start is None:
        raise ParseError("lexicon has no start: directive")
    return LambekGrammar(tuple(entries), start, restricted)


def format_lexicon(g: LambekGrammar) -> str:
    lines = [f"start: {g.start}", f"restriction: {'on' if g.restricted else 'off'}"]
    lines += [f"{w} : {format_lambek_type(t)}" for w, t in g.lexicon]
    return "\n".join(lines) + "\n"
