"""Grammar objects, word parsing, and bounded language enumeration.

A grammar is a finite axiom set over declared literals and terminals plus
a start symbol of valency (1,1).  Parsing a word means deriving
``[w]_i^j |- S^i_j`` from the axioms; plain grammars go through the
quantifier-free axiom search, extended ones are lexicalized first and the
lexicalization steps are grafted back so the returned derivation replays
against the grammar as stored.
"""

from __future__ import annotations

import itertools
import re
import string
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from . import prover
from .derivation import (
    AxiomLeaf,
    CutNode,
    Derivation,
    EqNode,
    MoveNode,
    NablaNode,
    ParNode,
    TensorNode,
    TriangleNode,
    check,
)
from .errors import (
    BoundExceeded,
    MalformedJudgement,
    ParseError,
    UnknownAtom,
    UnknownTerminal,
)
from .judgement import Judgement, rename_judgement
from .syntax import format_judgement, parse_judgement
from .term import Edge, TermExpr, fresh_index, normalize
from .types import Atom, Lit, atoms as type_atoms, free_subs, free_sups

DEFAULT_ENUM_BOUND = 8


@dataclass(frozen=True)
class Grammar:
    kind: str  # "tensor" | "extended"
    literals: Mapping[str, tuple[int, int]]
    terminals: tuple[str, ...]
    axioms: Mapping[str, Judgement]
    start: str
    restricted: bool = False
    source: str | None = None

    def __post_init__(self):
        if self.kind not in ("tensor", "extended"):
            raise ValueError(f"grammar kind must be tensor or extended, not {self.kind!r}")
        if self.start not in self.literals:
            raise UnknownAtom(f"start symbol {self.start} is not a declared literal")
        if tuple(self.literals[self.start]) != (1, 1):
            raise MalformedJudgement(
                f"start symbol must have valency (1,1), "
                f"{self.start} has {tuple(self.literals[self.start])}"
            )
        known = set(self.terminals)
        for name, j in self.axioms.items():
            for m in j.members:
                if self.kind == "tensor" and not prover._no_binders(m):
                    raise MalformedJudgement(
                        f"axiom {name!r} is quantified; declare the grammar extended"
                    )
                for a in type_atoms(m):
                    lit = a.lit
                    want = (lit.ups, lit.downs) if lit.positive else (lit.downs, lit.ups)
                    have = self.literals.get(lit.name)
                    if have is None:
                        raise UnknownAtom(
                            f"axiom {name!r} uses undeclared literal {lit.name}"
                        )
                    if tuple(have) != want:
                        raise MalformedJudgement(
                            f"axiom {name!r} uses {lit.name} with valency {want}, "
                            f"declared {tuple(have)}"
                        )
            for e in j.term.edges:
                for w in e.word:
                    if w not in known:
                        raise UnknownTerminal(
                            f"axiom {name!r} uses undeclared terminal {w!r}"
                        )


@dataclass(frozen=True)
class ParseResult:
    word: tuple[str, ...]
    derivation: Derivation
    used: Counter


def goal_judgement(g: Grammar, word: Iterable[str]) -> Judgement:
    i, j = fresh_index(), fresh_index()
    member = Atom(Lit(g.start, 1, 1, positive=True), (i,), (j,))
    return Judgement(normalize(TermExpr([Edge(i, j, tuple(word))])), (member,))


def _lexicalized(g: Grammar) -> dict[str, tuple[Judgement, Derivation]]:
    out = {}
    for name in sorted(g.axioms):
        lj, ld = prover.lexicalize(g.axioms[name], AxiomLeaf(name))
        out[name] = (lj, ld)
    return out


def _graft(d: Derivation, repl: Mapping[str, Derivation]) -> Derivation:
    if isinstance(d, AxiomLeaf):
        return repl.get(d.name, d)
    if isinstance(d, (CutNode, TensorNode)):
        return replace(d, left=_graft(d.left, repl), right=_graft(d.right, repl))
    if isinstance(d, (ParNode, NablaNode, TriangleNode, MoveNode, EqNode)):
        return replace(d, child=_graft(d.child, repl))
    return d


def generates(
    g: Grammar,
    word: Iterable[str],
    max_axioms: int | None = None,
    memo: dict | None = None,
    _lex: dict | None = None,
) -> ParseResult | None:
    """Parse ``word``; None means not in the language.

    The axiom-multiset size is capped at ``max_axioms`` (default: the word
    length); a search truncated by the cap raises Inconclusive rather than
    answering None.
    """
    word = tuple(word)
    unknown = sorted(set(word) - set(g.terminals))
    if unknown:
        raise UnknownTerminal(f"not in the terminal alphabet: {', '.join(unknown)}")
    goal = goal_judgement(g, word)
    cap = len(word) if max_axioms is None else max_axioms
    if g.kind == "tensor":
        got = prover.from_axioms(
            goal, dict(g.axioms), max_axioms=cap, restricted=g.restricted, memo=memo
        )
        if got is None:
            return None
        d, used = got
    else:
        lex = _lex if _lex is not None else _lexicalized(g)
        got = prover.ext_from_axioms(
            goal,
            {name: lj for name, (lj, _) in lex.items()},
            max_axioms=cap,
            restricted=g.restricted,
            memo=memo,
        )
        if got is None:
            return None
        d, used = got
        d = _graft(d, {name: ld for name, (_, ld) in lex.items()})
    # soundness replay against the grammar as stored; unrestricted because
    # lexicalization steps legitimately pass through single-member stages
    check(d, goal, g.axioms, counts=used)
    return ParseResult(word, d, used)


def enumerate_words(
    g: Grammar, max_len: int, bound: int = DEFAULT_ENUM_BOUND
) -> list[str]:
    """All generated words of length <= max_len, shortest first.

    Inconclusive propagates: a truncated parse never silently drops a word.
    """
    if max_len > bound:
        raise BoundExceeded(f"max_len {max_len} exceeds the configured bound {bound}")
    memo: dict = {}
    lex = _lexicalized(g) if g.kind == "extended" else None
    alphabet = sorted(set(g.terminals))
    out = []
    for n in range(max_len + 1):
        for combo in itertools.product(alphabet, repeat=n):
            if generates(g, combo, memo=memo, _lex=lex) is not None:
                out.append(" ".join(combo))
    return out


def translate(source, source_name: str | None = None) -> Grammar:
    """Dispatch grammar translation; tags the result with its origin."""
    from .lambda_acg import ACG, acg_translate
    from .lambek import LambekGrammar, translate_lambek_grammar

    if isinstance(source, ACG):
        out = acg_translate(source)
    elif isinstance(source, LambekGrammar):
        out = translate_lambek_grammar(source)
    else:
        raise TypeError(f"cannot translate {type(source).__name__} to a grammar")
    if source_name:
        out = replace(out, source=source_name)
    return out


# --- grammar files ------------------------------------------------------------
#
# literals:
#   NP : (1,1)
# terminals: John Mary loves
# axioms:
#   [loves]_l^r*d_j^k*d_s^i |- S^j_i, ~NP_k^l, ~NP^s_r
# start: S
# restriction: off
#
# '#' starts a whole-line comment.  The grammar is extended exactly when
# some axiom is quantified or a restriction: line is present.


_INDEX_POOL = [c for c in string.ascii_lowercase if c != "d"]


def _relabelled(j: Judgement) -> Judgement:
    """Readable copy: free indices renamed a, b, c, ... in member order."""
    seen: list[str] = []
    for m in j.members:
        for i in (*free_sups(m), *free_subs(m)):
            if i not in seen:
                seen.append(i)
    names = {}
    for k, i in enumerate(seen):
        names[i] = _INDEX_POOL[k] if k < len(_INDEX_POOL) else f"i{k}"
    return rename_judgement(j, names)


def format_grammar(g: Grammar) -> str:
    lines = []
    if g.source:
        lines.append(f"# generated from {g.source}")
    lines.append("literals:")
    for name in sorted(g.literals):
        up, down = g.literals[name]
        lines.append(f"  {name} : ({up},{down})")
    lines.append("terminals: " + " ".join(sorted(set(g.terminals))))
    lines.append("axioms:")
    for name in sorted(g.axioms):
        lines.append(f"  {format_judgement(_relabelled(g.axioms[name]))}")
    lines.append(f"start: {g.start}")
    if g.kind == "extended":
        lines.append("restriction: " + ("on" if g.restricted else "off"))
    return "\n".join(lines) + "\n"


def parse_grammar(text: str, source: str | None = None) -> Grammar:
    literals: dict[str, tuple[int, int]] = {}
    terminals: list[str] = []
    axioms: dict[str, Judgement] = {}
    start = None
    restriction: bool | None = None
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        low = stripped.lower()
        if low.startswith("literals:"):
            section = "literals"
            continue
        if low.startswith("terminals:"):
            section = None
            terminals += stripped[len("terminals:") :].split()
            continue
        if low.startswith("axioms:"):
            section = "axioms"
            continue
        if low.startswith("start:"):
            section = None
            start = stripped[len("start:") :].strip()
            continue
        if low.startswith("restriction:"):
            section = None
            value = stripped[len("restriction:") :].strip().lower()
            if value not in ("on", "off"):
                raise ParseError(f"line {lineno}: restriction must be on or off")
            restriction = value == "on"
            continue
        if section == "literals":
            name, sep, val = stripped.partition(":")
            m = re.fullmatch(r"\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*", val) if sep else None
            if m is None:
                raise ParseError(f"line {lineno}: expected 'NAME : (ups,downs)'")
            literals[name.strip()] = (int(m.group(1)), int(m.group(2)))
        elif section == "axioms":
            try:
                axioms[f"ax{len(axioms)}"] = parse_judgement(stripped)
            except ParseError as err:
                raise ParseError(f"line {lineno}: {err}") from err
        else:
            raise ParseError(f"line {lineno}: text outside any section")
    if start is None:
        raise ParseError("grammar has no start: directive")
    quantified = any(
        not prover._no_binders(m) for j in axioms.values() for m in j.members
    )
    kind = "extended" if quantified or restriction is not None else "tensor"
    return Grammar(
        kind=kind,
        literals=literals,
        terminals=tuple(terminals),
        axioms=axioms,
        start=start,
        restricted=bool(restriction),
        source=source,
    )


def load_grammar(path: str) -> Grammar:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read(), source=path)


def save_grammar(g: Grammar, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_grammar(g))
