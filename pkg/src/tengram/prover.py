"""Cut-free proof search and derivability from axiom multisets.

``prove`` runs a backward search over the primitive rules.  Par and
quantifier intros are invertible, so they are stripped eagerly; tensor
splits branch over connected components of the term graph (members wired
together must land on the same premise); the dual-quantifier move unglues
one term edge at every word split, or reopens a loop.  Every move removes
exactly one connective, so the search terminates; results are memoized per
canonical judgement.

``from_axioms`` decides derivability from a multiset of axioms (each used
exactly once).  It rests on the product decomposition of such derivations:
the goal term must factor as a product of delta junctions with one renamed
copy of each axiom term, where the junction-only judgement against the
dualized packed axiom types is derivable purely.  The search enumerates
candidate multisets by exact word content, tiles the goal edges with axiom
edge pieces, and hands forced junction terms to ``prove``.  Junction
placement is pruned through a slot-connectivity graph: a junction delta can
only ever link two literal slots joined by a chain of mirror pairings and
binder captures, which cuts the placement space down drastically.

``lexicalize`` removes free delta factors from an axiom by capturing them
with quantifiers (joining members when a delta spans two), which is what
makes the extended pipeline applicable to grammars whose axioms carry bare
deltas.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .derivation import (
    AxiomLeaf,
    CutNode,
    Derivation,
    EqNode,
    IdLeaf,
    MoveNode,
    NablaNode,
    ParNode,
    TensorNode,
    TriangleNode,
    apply_move,
    apply_nabla,
    apply_par,
    is_id_instance,
    reorder,
)
from .errors import (
    AxiomNotSingleType,
    DeltaOnlyAxiom,
    Inconclusive,
    MalformedJudgement,
    NonLexicalAxiom,
)
from .judgement import Judgement, canonicalize
from .macros import pack_pars
from .term import (
    EPSILON,
    Edge,
    TensorTerm,
    TermExpr,
    fresh_index,
    multiply,
    normalize,
)
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
    rename_type,
)

Memo = dict


# --- backward search ---------------------------------------------------------


def prove(j: Judgement, restricted: bool = False, memo: Memo | None = None) -> Derivation | None:
    """Cut-free derivation of exactly ``j`` (its stored order and names), or None."""
    return _prove_exact(j, restricted, {} if memo is None else memo)


def _prove_exact(j: Judgement, restricted: bool, memo: Memo) -> Derivation | None:
    canon = canonicalize(j)
    key = (canon.key, restricted)
    if key in memo:
        d = memo[key]
    else:
        d = _search(canon.judgement, restricted, memo)
        memo[key] = d
    if d is None:
        return None
    if canon.judgement == j:
        return d
    perm = [canon.order.index(k) for k in range(len(canon.order))]
    return EqNode(reorder(d, perm), j)


def _search(cj: Judgement, restricted: bool, memo: Memo) -> Derivation | None:
    ms = cj.members

    if is_id_instance(cj):
        return _id_for(cj)

    for pos, m in enumerate(ms):
        if isinstance(m, Bin) and m.op == PAR:
            premise = Judgement(cj.term, ms[:pos] + (m.left, m.right) + ms[pos + 1 :])
            child = _prove_exact(premise, restricted, memo)
            return ParNode(child, pos) if child is not None else None

    if not restricted or len(ms) >= 2:
        for pos, m in enumerate(ms):
            if isinstance(m, Binder) and m.op == NABLA:
                alpha, beta = fresh_index(), fresh_index()
                inst = instantiate(m, alpha, beta)
                term = normalize(multiply(cj.term, TermExpr([Edge(beta, alpha)])))
                premise = Judgement(term, ms[:pos] + (inst,) + ms[pos + 1 :])
                child = _prove_exact(premise, restricted, memo)
                return NablaNode(child, pos, alpha, beta) if child is not None else None

    for pos, m in enumerate(ms):
        if isinstance(m, Bin) and m.op == TENSOR:
            d = _try_tensor(cj, pos, restricted, memo)
            if d is not None:
                return d
        elif isinstance(m, Binder) and m.op == TRI:
            d = _try_triangle(cj, pos, restricted, memo)
            if d is not None:
                return d
    return None


def _id_for(cj: Judgement) -> Derivation:
    a, b = cj.members
    if isinstance(a, Atom) and not a.lit.positive:
        return IdLeaf(a.lit.name, a.sup, a.sub, b.sup, b.sub)
    return MoveNode(IdLeaf(b.lit.name, b.sup, b.sub, a.sup, a.sub), 0, 1)


def _try_tensor(cj: Judgement, pos: int, restricted: bool, memo: Memo) -> Derivation | None:
    z = cj.members[pos]
    x_side, y_side = z.left, z.right

    owner: dict[str, object] = {}
    for k, m in enumerate(cj.members):
        tag: object = k
        if k == pos:
            continue
        for i in (*free_sups(m), *free_subs(m)):
            owner[i] = tag
    for i in (*free_sups(x_side), *free_subs(x_side)):
        owner[i] = "L"
    for i in (*free_sups(y_side), *free_subs(y_side)):
        owner[i] = "R"

    parent: dict[object, object] = {}

    def find(v):
        parent.setdefault(v, v)
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(a, b):
        parent[find(a)] = find(b)

    nodes = ["L", "R"] + [k for k in range(len(cj.members)) if k != pos]
    loop_nodes = [("loop", i) for i in range(len(cj.term.loops))]
    for v in nodes + loop_nodes:
        find(v)
    for e in cj.term.edges:
        union(owner[e.lower], owner[e.upper])
    if find("L") == find("R"):
        return None

    roots: dict[object, list] = {}
    for v in nodes + loop_nodes:
        roots.setdefault(find(v), []).append(v)
    lroot, rroot = find("L"), find("R")
    free_roots = sorted((r for r in roots if r not in (lroot, rroot)), key=repr)

    for mask in range(1 << len(free_roots)):
        side = {lroot: "L", rroot: "R"}
        for bit, r in enumerate(free_roots):
            side[r] = "L" if mask & (1 << bit) else "R"

        left_members, left_tokens = [], []
        right_members, right_tokens = [y_side], [pos]
        lpos = None
        for k, m in enumerate(cj.members):
            if k == pos:
                lpos = len(left_members)
                left_members.append(x_side)
                left_tokens.append(pos)
            elif side[find(k)] == "L":
                left_members.append(m)
                left_tokens.append(k)
            else:
                right_members.append(m)
                right_tokens.append(k)

        left_edges = {e for e in cj.term.edges if side[find(owner[e.lower])] == "L"}
        right_edges = cj.term.edges - left_edges
        left_loops = tuple(
            w for i, w in enumerate(cj.term.loops) if side[find(("loop", i))] == "L"
        )
        right_loops = tuple(
            w for i, w in enumerate(cj.term.loops) if side[find(("loop", i))] == "R"
        )

        left_j = Judgement(TensorTerm(frozenset(left_edges), left_loops), tuple(left_members))
        right_j = Judgement(TensorTerm(frozenset(right_edges), right_loops), tuple(right_members))

        dl = _prove_exact(left_j, restricted, memo)
        if dl is None:
            continue
        dr = _prove_exact(right_j, restricted, memo)
        if dr is None:
            continue
        node: Derivation = TensorNode(dl, dr, lpos)
        order_after = left_tokens + right_tokens[1:]
        perm = [order_after.index(k) for k in range(len(cj.members))]
        return reorder(node, perm)
    return None


def _try_triangle(cj: Judgement, pos: int, restricted: bool, memo: Memo) -> Derivation | None:
    w = cj.members[pos]
    ms = cj.members
    for e in sorted(cj.term.edges, key=lambda e: (e.lower, e.upper, e.word)):
        for k in range(len(e.word) + 1):
            alpha, beta = fresh_index(), fresh_index()
            e1 = Edge(e.lower, alpha, e.word[:k])
            e2 = Edge(beta, e.upper, e.word[k:])
            term = TensorTerm(cj.term.edges - {e} | {e1, e2}, cj.term.loops)
            inst = instantiate(w, alpha, beta)
            premise = Judgement(term, ms[:pos] + (inst,) + ms[pos + 1 :])
            child = _prove_exact(premise, restricted, memo)
            if child is not None:
                return TriangleNode(child, pos, alpha, beta)
    for loop_word in sorted(set(cj.term.loops)):
        loops = list(cj.term.loops)
        loops.remove(loop_word)
        rotations = {loop_word[r:] + loop_word[:r] for r in range(len(loop_word))} or {()}
        for rot in sorted(rotations):
            alpha, beta = fresh_index(), fresh_index()
            term = TensorTerm(cj.term.edges | {Edge(beta, alpha, rot)}, tuple(loops))
            inst = instantiate(w, alpha, beta)
            premise = Judgement(term, ms[:pos] + (inst,) + ms[pos + 1 :])
            child = _prove_exact(premise, restricted, memo)
            if child is not None:
                return TriangleNode(child, pos, alpha, beta)
    return None


# --- lexicalization ----------------------------------------------------------


def lexicalize(j: Judgement, base: Derivation) -> tuple[Judgement, Derivation]:
    """Capture every free delta factor of ``j`` with a quantifier.

    Returns the delta-free judgement and a derivation of it built on top of
    ``base`` (a derivation of ``j``).  Deltas spanning two members first get
    those members joined (earlier member becomes the left par component).
    Purely-delta terms cannot be lexicalized into anything useful.
    """
    if j.term.edges and all(e.word == EPSILON for e in j.term.edges):
        raise DeltaOnlyAxiom("term carries deltas but no words")
    d = base
    while True:
        eps = sorted(
            (e for e in j.term.edges if e.word == EPSILON),
            key=lambda e: (e.lower, e.upper),
        )
        if not eps:
            return j, d
        e = eps[0]
        p_sup = next(k for k, m in enumerate(j.members) if e.lower in free_sups(m))
        p_sub = next(k for k, m in enumerate(j.members) if e.upper in free_subs(m))
        if p_sup != p_sub:
            a, b = min(p_sup, p_sub), max(p_sup, p_sub)
            if b != a + 1:
                d = MoveNode(d, b, a + 1)
                j = apply_move(j, b, a + 1)
            d = ParNode(d, a)
            j = apply_par(j, a)
            p_sub = a
        d = NablaNode(d, p_sub, e.upper, e.lower)
        j = apply_nabla(j, p_sub, e.upper, e.lower)


# --- derivability from axioms -------------------------------------------------


@dataclass
class _Prepared:
    name: str
    judgement: Judgement
    packed: Judgement
    pack_deriv: Derivation
    letters: Counter


@dataclass
class _Flags:
    capped: bool = False
    skipped_singular: bool = False


@dataclass
class _Instance:
    name: str
    member: Type  # the freshly renamed packed axiom type
    pieces: list[Edge] = field(default_factory=list)


def _letters(term: TensorTerm) -> Counter:
    c: Counter = Counter()
    for e in term.edges:
        c.update(e.word)
    for w in term.loops:
        c.update(w)
    return c


def _prepare(name: str, j: Judgement) -> _Prepared:
    if not j.members:
        raise AxiomNotSingleType(f"axiom {name!r} has an empty sequent")
    deriv, packed = pack_pars(AxiomLeaf(name), j)
    return _Prepared(name, j, packed, deriv, _letters(j.term))


def _no_binders(t: Type) -> bool:
    if isinstance(t, Atom):
        return True
    if isinstance(t, Bin):
        return _no_binders(t.left) and _no_binders(t.right)
    return False


def from_axioms(
    goal: Judgement,
    axioms: Mapping[str, Judgement],
    multiset: Mapping[str, int] | None = None,
    max_axioms: int | None = None,
    restricted: bool = False,
    memo: Memo | None = None,
) -> tuple[Derivation, Counter] | None:
    """Derivation of ``goal`` using each axiom of some admissible multiset
    exactly once, in the quantifier-free calculus.

    With ``multiset`` given, only that multiset is tried; otherwise all
    multisets whose combined word content equals the goal's are enumerated
    (capped at ``max_axioms`` axioms when set).  Raises ``Inconclusive``
    when a cap genuinely truncated the search space and nothing was found.
    """
    for t in (*goal.members, *(m for j in axioms.values() for m in j.members)):
        if not _no_binders(t):
            raise MalformedJudgement(
                "quantified types need the extended pipeline (ext_from_axioms)"
            )
    return _axiom_search(goal, axioms, multiset, max_axioms, restricted, memo)


def ext_from_axioms(
    goal: Judgement,
    axioms: Mapping[str, Judgement],
    multiset: Mapping[str, int] | None = None,
    max_axioms: int | None = None,
    restricted: bool = False,
    memo: Memo | None = None,
) -> tuple[Derivation, Counter] | None:
    """Like :func:`from_axioms` for the quantified calculus.

    The product decomposition that drives the search holds only for lexical
    axioms (no bare delta factors); lexicalize first.
    """
    for name, j in axioms.items():
        if not j.term.is_lexical():
            raise NonLexicalAxiom(f"axiom {name!r} carries delta factors; lexicalize it")
    return _axiom_search(goal, axioms, multiset, max_axioms, restricted, memo)


def _axiom_search(
    goal: Judgement,
    axioms: Mapping[str, Judgement],
    multiset: Mapping[str, int] | None,
    max_axioms: int | None,
    restricted: bool,
    memo: Memo | None,
) -> tuple[Derivation, Counter] | None:
    memo = {} if memo is None else memo
    prepared = [_prepare(name, axioms[name]) for name in sorted(axioms)]
    goal_letters = _letters(goal.term)
    flags = _Flags()

    if multiset is not None:
        wanted = Counter({k: v for k, v in multiset.items() if v})
        total: Counter = Counter()
        for name, count in wanted.items():
            match = next((p for p in prepared if p.name == name), None)
            if match is None:
                return None
            for _ in range(count):
                total += match.letters
        candidates: Iterator[Counter] = iter([wanted] if total == goal_letters else [])
    else:
        candidates = _multisets(prepared, goal_letters, max_axioms, flags)

    by_name = {p.name: p for p in prepared}
    for ms in candidates:
        if not ms:
            d = _prove_exact(goal, restricted, memo)
            if d is not None:
                return d, Counter()
            continue
        if goal.term.loops:
            flags.skipped_singular = True
            continue
        result = _tile_and_prove(goal, ms, by_name, restricted, memo)
        if result is not None:
            return result
    if flags.capped or flags.skipped_singular:
        raise Inconclusive(
            "axiom search was truncated"
            + (" by the axiom cap" if flags.capped else "")
            + (" (looped goals only search the axiom-free case)" if flags.skipped_singular else "")
        )
    return None


def _multisets(
    prepared: list[_Prepared], budget: Counter, cap: int | None, flags: _Flags
) -> Iterator[Counter]:
    def rec(i: int, remaining: Counter, size: int, acc: dict) -> Iterator[Counter]:
        if i == len(prepared):
            if not +remaining:
                yield Counter({k: v for k, v in acc.items() if v})
            return
        p = prepared[i]
        if not p.letters:
            top = (cap - size) if cap is not None else 0
            # counts beyond ``top`` are never explored: word-free axioms do not
            # consume letter budget, so any cap genuinely truncates them
            flags.capped = True
            for c in range(top + 1):
                acc[p.name] = c
                yield from rec(i + 1, remaining, size + c, acc)
            acc.pop(p.name, None)
            return
        c_max = min(remaining[l] // n for l, n in p.letters.items())
        for c in range(c_max + 1):
            if cap is not None and size + c > cap:
                flags.capped = True
                break
            acc[p.name] = c
            leftover = remaining.copy()
            for l, n in p.letters.items():
                leftover[l] -= c * n
            yield from rec(i + 1, leftover, size + c, acc)
        acc.pop(p.name, None)

    yield from rec(0, budget.copy(), 0, {})


# --- slot connectivity graph ---------------------------------------------


class _SlotGraph:
    """Union-find closure of mirror pairings and binder captures over all
    literal slots of a sequent; junction deltas can only link closed slots."""

    def __init__(self, members: tuple[Type, ...]):
        self.parent: dict[int, int] = {}
        self.slot_of: dict[str, int] = {}
        self._next = 0
        occurrences: list[tuple] = []

        def new_slot() -> int:
            self._next += 1
            self.parent[self._next] = self._next
            return self._next

        def walk(t: Type) -> tuple[list[int], list[int]]:
            if isinstance(t, Atom):
                sup = [new_slot() for _ in t.sup]
                sub = [new_slot() for _ in t.sub]
                occurrences.append((t.lit, sup, sub))
                return sup, sub
            if isinstance(t, Bin):
                ls, ll = walk(t.left)
                rs, rl = walk(t.right)
                return ls + rs, ll + rl
            su, sl = walk(t.body)
            self._union(su[t.up_pos], sl[t.lo_pos])
            return (
                su[: t.up_pos] + su[t.up_pos + 1 :],
                sl[: t.lo_pos] + sl[t.lo_pos + 1 :],
            )

        for m in members:
            su, sl = walk(m)
            for name, sid in zip(free_sups(m), su):
                self.slot_of[name] = sid
            for name, sid in zip(free_subs(m), sl):
                self.slot_of[name] = sid

        for lit_a, sup_a, sub_a in occurrences:
            if lit_a.positive:
                continue
            for lit_b, sup_b, sub_b in occurrences:
                if lit_a.dual() != lit_b:
                    continue
                n, m = len(sup_a), len(sub_a)
                for t in range(n):
                    self._union(sup_a[n - 1 - t], sub_b[t])
                for t in range(m):
                    self._union(sub_a[m - 1 - t], sup_b[t])

    def _find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def _union(self, a: int, b: int) -> None:
        self.parent[self._find(a)] = self._find(b)

    def can_link(self, lower: str, upper: str) -> bool:
        return self._find(self.slot_of[lower]) == self._find(self.slot_of[upper])


# --- tiling -------------------------------------------------------------------


def _tile_and_prove(
    goal: Judgement,
    ms: Counter,
    by_name: dict[str, _Prepared],
    restricted: bool,
    memo: Memo,
) -> tuple[Derivation, Counter] | None:
    instances: list[_Instance] = []
    for name in sorted(ms):
        p = by_name[name]
        for _ in range(ms[name]):
            member = p.packed.members[0]
            mapping = {
                i: fresh_index() for i in (*free_sups(member), *free_subs(member))
            }
            inst = _Instance(name, rename_type(member, mapping))
            inst.pieces = [
                Edge(mapping[e.lower], mapping[e.upper], e.word)
                for e in p.packed.term.sorted_edges()
            ]
            instances.append(inst)

    pure_members = tuple(dual(i.member) for i in instances) + goal.members
    graph = _SlotGraph(pure_members)

    pieces: list[tuple[int, Edge]] = []  # (instance idx, edge)
    for idx, inst in enumerate(instances):
        for e in inst.pieces:
            pieces.append((idx, e))
    used = [False] * len(pieces)
    inst_touch = [0] * len(instances)
    goal_edges = sorted(goal.term.edges, key=lambda e: (e.lower, e.upper, e.word))
    junctions: list[Edge] = []
    seen_pure: set[str] = set()

    def placeable(p_idx: int) -> bool:
        inst_idx = pieces[p_idx][0]
        if inst_touch[inst_idx] > 0:
            return True
        name = instances[inst_idx].name
        for k in range(inst_idx):
            if instances[k].name == name and inst_touch[k] == 0:
                return False  # a symmetric earlier copy is still untouched
        return True

    def chains(edge_i: int, cursor: str, remaining: tuple[str, ...]) -> Iterator[None]:
        if edge_i == len(goal_edges):
            if all(used):
                yield None
            return
        e = goal_edges[edge_i]
        if not remaining and graph.can_link(cursor, e.upper):
            junctions.append(Edge(cursor, e.upper))
            nxt = goal_edges[edge_i + 1] if edge_i + 1 < len(goal_edges) else None
            if nxt is None:
                yield from chains(edge_i + 1, "", ())
            else:
                yield from chains(edge_i + 1, nxt.lower, nxt.word)
            junctions.pop()
        for p_idx, (inst_idx, piece) in enumerate(pieces):
            if used[p_idx] or not placeable(p_idx):
                continue
            w = piece.word
            if w and remaining[: len(w)] != w:
                continue
            if not graph.can_link(cursor, piece.lower):
                continue
            used[p_idx] = True
            inst_touch[inst_idx] += 1
            junctions.append(Edge(cursor, piece.lower))
            yield from chains(edge_i, piece.upper, remaining[len(w) :])
            junctions.pop()
            inst_touch[inst_idx] -= 1
            used[p_idx] = False

    if goal_edges:
        start = chains(0, goal_edges[0].lower, goal_edges[0].word)
    else:
        start = chains(0, "", ())
    for _ in start:
        pure_j = Judgement(TensorTerm(frozenset(junctions)), pure_members)
        ckey = canonicalize(pure_j).key
        if ckey in seen_pure:
            continue
        seen_pure.add(ckey)
        d_pure = _prove_exact(pure_j, restricted, memo)
        if d_pure is None:
            continue
        d: Derivation = d_pure
        for inst in instances:
            d = CutNode(d, by_name[inst.name].pack_deriv, 0, 0)
        return EqNode(d, goal), Counter(i.name for i in instances)
    return None
