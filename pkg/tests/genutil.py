"""Shared random generators for the test suite.

Everything takes an explicit ``random.Random`` so runs stay reproducible;
the acceptance suite freezes its seeds.
"""

from __future__ import annotations

import itertools
import random

from tengram.derivation import (
    CutNode,
    Derivation,
    IdLeaf,
    MoveNode,
    NablaNode,
    ParNode,
    TensorNode,
    TriangleNode,
    apply_cut,
    apply_move,
    apply_nabla,
    apply_par,
    apply_tensor,
    apply_triangle,
    id_judgement,
)
from tengram.errors import TengramError
from tengram.judgement import Judgement
from tengram.lambda_acg import (
    ACG,
    Abs,
    App,
    Arrow,
    Const,
    LambdaJudgement,
    TAtom,
    Var,
    beta_normalize,
)
from tengram.lambek import LAtom, Over, Prod, Under
from tengram.term import Edge, Loop, TermExpr, fresh_indices
from tengram.types import dual, free_subs, free_sups, symbol_key

WORDS = ("a", "b", "c")

O = TAtom("O")


# --- term expressions ---------------------------------------------------------


def rand_term_expr(rng: random.Random, max_factors: int = 8) -> TermExpr:
    """Random well-formed product of edges and loops.

    Lower and upper names are drawn from the same pool, so contraction
    chains and closed cycles show up at a useful rate.
    """
    n = rng.randint(0, max_factors)
    pool = [f"i{k}" for k in range(max_factors + 4)]
    lowers, uppers = pool[:], pool[:]
    rng.shuffle(lowers)
    rng.shuffle(uppers)
    factors: list = []
    for _ in range(n):
        if rng.random() < 0.08:
            factors.append(Loop(tuple(rng.choices(WORDS, k=rng.randint(0, 3)))))
            continue
        word = tuple(rng.choices(WORDS, k=rng.choice((0, 0, 0, 1, 1, 2))))
        factors.append(Edge(lowers.pop(), uppers.pop(), word))
    rng.shuffle(factors)
    return TermExpr(factors)


# --- random pure derivations ----------------------------------------------------

# Few distinct literal shapes so cut partners are easy to come by.
_LIT_SHAPES = (("p", 1, 1), ("p", 1, 1), ("q", 1, 0), ("r", 0, 1), ("s", 2, 1))


def rand_id_tree(rng: random.Random) -> tuple[Derivation, Judgement]:
    name, ups, downs = rng.choice(_LIT_SHAPES)
    neg_sup = fresh_indices(downs)
    neg_sub = fresh_indices(ups)
    pos_sup = fresh_indices(ups)
    pos_sub = fresh_indices(downs)
    leaf = IdLeaf(name, neg_sup, neg_sub, pos_sup, pos_sub)
    return leaf, id_judgement(name, neg_sup, neg_sub, pos_sup, pos_sub)


def rand_pure_derivation(
    rng: random.Random, steps: int = 6, extended: bool = False
) -> tuple[Derivation, Judgement]:
    """Random axiom-free derivation built by at most ``steps`` rule
    applications over identity leaves; biased toward cuts so cut
    elimination has actual work to do."""
    pool = [rand_id_tree(rng) for _ in range(rng.randint(2, 4))]
    rules = ["cut", "cut", "cut", "tensor", "par", "move"]
    if extended:
        rules = rules + ["nabla", "tri"]
    for _ in range(steps):
        order = rules[:]
        rng.shuffle(order)
        for rule in order:
            if _try_step(rng, pool, rule):
                break
    with_cut = [p for p in pool if has_cut(p[0])]
    return rng.choice(with_cut or pool)


def has_cut(d: Derivation) -> bool:
    if isinstance(d, CutNode):
        return True
    if isinstance(d, TensorNode):
        return has_cut(d.left) or has_cut(d.right)
    if isinstance(d, (ParNode, NablaNode, TriangleNode, MoveNode)):
        return has_cut(d.child)
    return False


def _merge(pool, ia, ib, d, j) -> None:
    for k in sorted((ia, ib), reverse=True):
        del pool[k]
    pool.append((d, j))


def _try_step(rng: random.Random, pool: list, rule: str) -> bool:
    if rule in ("cut", "tensor"):
        if len(pool) < 2:
            return False
        pairs = list(itertools.permutations(range(len(pool)), 2))
        rng.shuffle(pairs)
        for ia, ib in pairs:
            (da, ja), (db, jb) = pool[ia], pool[ib]
            if rule == "cut":
                cands = [
                    (i, k)
                    for i, ma in enumerate(ja.members)
                    for k, mb in enumerate(jb.members)
                    if symbol_key(mb) == symbol_key(dual(ma))
                ]
                rng.shuffle(cands)
                for i, k in cands:
                    try:
                        j = apply_cut(ja, jb, i, k)
                    except TengramError:
                        continue
                    _merge(pool, ia, ib, CutNode(da, db, i, k), j)
                    return True
                continue
            lpos = rng.randrange(len(ja.members))
            try:
                j = apply_tensor(ja, jb, lpos)
            except TengramError:
                continue
            _merge(pool, ia, ib, TensorNode(da, db, lpos), j)
            return True
        return False

    i = rng.randrange(len(pool))
    d, j = pool[i]
    n = len(j.members)
    if rule == "par":
        if n < 2:
            return False
        pos = rng.randrange(n - 1)
        pool[i] = (ParNode(d, pos), apply_par(j, pos))
        return True
    if rule == "move":
        if n < 2:
            return False
        src, dst = rng.sample(range(n), 2)
        pool[i] = (MoveNode(d, src, dst), apply_move(j, src, dst))
        return True
    if rule == "nabla":
        cands = []
        for p, m in enumerate(j.members):
            for alpha in free_subs(m):
                for beta in free_sups(m):
                    if Edge(beta, alpha) in j.term.edges:
                        cands.append((p, alpha, beta))
        if not cands:
            return False
        p, alpha, beta = rng.choice(cands)
        pool[i] = (NablaNode(d, p, alpha, beta), apply_nabla(j, p, alpha, beta))
        return True
    if rule == "tri":
        cands = [p for p, m in enumerate(j.members) if free_subs(m) and free_sups(m)]
        if not cands:
            return False
        p = rng.choice(cands)
        m = j.members[p]
        alpha = rng.choice(free_subs(m))
        beta = rng.choice(free_sups(m))
        try:
            j2 = apply_triangle(j, p, alpha, beta)
        except TengramError:
            return False
        pool[i] = (TriangleNode(d, p, alpha, beta), j2)
        return True
    return False


# --- Lambek sequents ------------------------------------------------------------

LAMBEK_ATOMS = ("n", "np", "s")


def rand_lambek_type(rng: random.Random, conn: int):
    if conn == 0:
        return LAtom(rng.choice(LAMBEK_ATOMS))
    k = rng.randrange(conn)
    left = rand_lambek_type(rng, k)
    right = rand_lambek_type(rng, conn - 1 - k)
    return rng.choice((Over, Under, Prod))(left, right)


def rand_lambek_sequent(rng: random.Random, max_conn: int = 6):
    """Random (context, goal) with at most ``max_conn`` connectives total."""
    budget = rng.randint(0, max_conn)
    k = rng.randint(0, 3)
    cuts = sorted(rng.randint(0, budget) for _ in range(k))
    sizes = [b - a for a, b in zip([0, *cuts], [*cuts, budget])]
    types = [rand_lambek_type(rng, s) for s in sizes]
    return tuple(types[:-1]), types[-1]


# --- linear lambda terms over the string signature -------------------------------


class Dead(Exception):
    """Internal: the current generation branch cannot be completed."""


def rand_impl_type(rng: random.Random, arrows: int):
    if arrows == 0:
        return O
    k = rng.randrange(arrows)
    return Arrow(rand_impl_type(rng, k), rand_impl_type(rng, arrows - 1 - k))


def _args_to(t, want):
    """Argument types consumed by a head of type ``t`` ending at ``want``."""
    args = []
    while t != want:
        if not isinstance(t, Arrow):
            return None
        args.append(t.dom)
        t = t.cod
    return tuple(args)


def _gen(rng, ty, oblig, depth, letters, ctr):
    # oblig: variables that must each be used exactly once below this point
    if not oblig and ty == O:
        raise Dead
    if isinstance(ty, Arrow) and (depth <= 0 or rng.random() < 0.5):
        x = f"x{next(ctr)}"
        return Abs(x, _gen(rng, ty.cod, oblig + [(x, ty.dom)], depth - 1, letters, ctr))
    heads = []
    for idx, (_, t) in enumerate(oblig):
        args = _args_to(t, ty)
        if args is not None:
            heads.append((idx, args))
    use_const = ty == O and depth > 0 and letters
    if use_const and (not heads or rng.random() < 0.4):
        return App(Const(rng.choice(letters)), _gen(rng, O, oblig, depth - 1, letters, ctr))
    if not heads:
        raise Dead
    idx, args = rng.choice(heads)
    name = oblig[idx][0]
    rest = oblig[:idx] + oblig[idx + 1 :]
    groups: list[list] = [[] for _ in args]
    if args:
        for item in rest:
            groups[rng.randrange(len(args))].append(item)
    elif rest:
        raise Dead
    t = Var(name)
    for a, grp in zip(args, groups):
        t = App(t, _gen(rng, a, grp, depth - 1, letters, ctr))
    return t


def rand_string_judgement(
    rng: random.Random, letters: tuple[str, ...] = ("a", "b"), tries: int = 80
) -> LambdaJudgement | None:
    """Random linear lambda judgement over the one-atom string signature."""
    ctr = itertools.count()
    for _ in range(tries):
        k = rng.randint(1, 3)
        ctx = tuple((f"v{n}", rand_impl_type(rng, rng.randint(0, 2))) for n in range(k))
        goal = rand_impl_type(rng, rng.randint(0, 2))
        try:
            t = _gen(rng, goal, list(ctx), 5, tuple(letters), ctr)
        except Dead:
            continue
        return LambdaJudgement(ctx, t, goal)
    return None


def beta_eta_variant(rng: random.Random, j: LambdaJudgement) -> LambdaJudgement:
    """The same judgement with identity redexes spliced in and (sometimes)
    an outer eta-expansion; typechecks to the same type by construction."""
    ctr = itertools.count()
    t = j.term
    for _ in range(rng.randint(1, 3)):
        t = _wrap_identity(rng, t, ctr)
    # eta-expanding a multi-binder abstraction would make a redex whose body
    # is again an abstraction, which spine-wise checking cannot infer
    if (
        isinstance(j.type, Arrow)
        and not (isinstance(t, Abs) and isinstance(t.body, Abs))
        and rng.random() < 0.5
    ):
        x = f"eta{next(ctr)}"
        t = Abs(x, App(t, Var(x)))
    return LambdaJudgement(j.context, t, j.type)


def _wrap_identity(rng, t, ctr):
    # never wrap an abstraction itself: an abstraction argument to the
    # identity redex has no inferable type under spine-wise checking
    if isinstance(t, Abs):
        return Abs(t.var, _wrap_identity(rng, t.body, ctr))
    if isinstance(t, App) and rng.random() < 0.7:
        if rng.random() < 0.5:
            return App(_wrap_identity(rng, t.fn, ctr), t.arg)
        return App(t.fn, _wrap_identity(rng, t.arg, ctr))
    z = f"id{next(ctr)}"
    return App(Abs(z, Var(z)), t)


# --- abstract-side language oracle -----------------------------------------------


def _flat_constant(ty):
    args = []
    while isinstance(ty, Arrow):
        if not isinstance(ty.dom, TAtom):
            raise ValueError("first-order signatures only")
        args.append(ty.dom.name)
        ty = ty.cod
    assert isinstance(ty, TAtom)
    return tuple(args), ty.name


def _closed_terms(sig, atom: str, size: int, memo) -> list:
    key = (atom, size)
    if key in memo:
        return memo[key]
    out = []
    for name in sorted(sig.constants):
        args, res = _flat_constant(sig.constants[name])
        if res != atom:
            continue
        if not args:
            if size == 1:
                out.append(Const(name))
            continue
        for sizes in _compositions(size - 1, len(args)):
            pools = [_closed_terms(sig, a, s, memo) for a, s in zip(args, sizes)]
            for combo in itertools.product(*pools):
                t = Const(name)
                for u in combo:
                    t = App(t, u)
                out.append(t)
    memo[key] = out
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(1, total - parts + 2):
        for tail in _compositions(total - head, parts - 1):
            yield (head, *tail)


def _phi_term(g: ACG, t):
    if isinstance(t, Const):
        return g.term_lexicon[t.name]
    if isinstance(t, App):
        return App(_phi_term(g, t.fn), _phi_term(g, t.arg))
    if isinstance(t, Abs):
        return Abs(t.var, _phi_term(g, t.body))
    return t


def acg_surface(g: ACG, t) -> tuple[str, ...]:
    """Surface word of a closed abstract sentence term: apply the lexicon,
    beta-normalize, read letters off the ``\\z. c1 (c2 (... z))`` spine."""
    obj = beta_normalize(_phi_term(g, t))
    assert isinstance(obj, Abs), obj
    body, z = obj.body, obj.var
    letters = []
    while isinstance(body, App):
        assert isinstance(body.fn, Const), body
        letters.append(body.fn.name)
        body = body.arg
    assert isinstance(body, Var) and body.name == z, obj
    return tuple(letters)


def acg_abstract_language(g: ACG, max_size: int) -> set[tuple[str, ...]]:
    """All surface words of closed sentence terms with at most ``max_size``
    constants; usable as an independent oracle for first-order lexicons."""
    memo: dict = {}
    words: set[tuple[str, ...]] = set()
    for size in range(1, max_size + 1):
        for t in _closed_terms(g.abstract, g.start, size, memo):
            words.add(acg_surface(g, t))
    return words
