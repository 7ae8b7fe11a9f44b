"""Linear lambda calculus and its two-way bridge to tensor judgements.

One direction maps typing derivations to tensor judgements (abstraction
becomes a par, application becomes a par split plus a cut).  The other
unwinds a derivable judgement with exactly one positive implicational
member back into a lambda judgement, either over no constants at all or
over a string signature whose constants are the letters of an alphabet.
On top of both sits the translation of string-style abstract categorial
grammars into plain tensor grammars.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    LambdaTypeError,
    LexiconIllTyped,
    MissingAxiomTranslation,
    NonLinear,
    NotDerivable,
    NotPolarized,
    ParseError,
    UnknownAtom,
    UnknownConstant,
    Untypeable,
)
from .derivation import apply_cut, apply_move, apply_par, is_id_instance
from .judgement import Judgement, rename_judgement
from .macros import eta_id
from .term import Edge, TermExpr, fresh_index, freshen, normalize
from .types import (
    Atom,
    Bin,
    Lit,
    PAR,
    TENSOR,
    Type,
    dual,
    free_subs,
    free_sups,
    par,
    redecorate,
)

# --- lambda terms --------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    fn: "LambdaTerm"
    arg: "LambdaTerm"

    def __post_init__(self):
        shared = free_vars(self.fn) & free_vars(self.arg)
        if shared:
            raise NonLinear(f"variables {sorted(shared)} used on both sides")

    def __str__(self):
        fn = str(self.fn)
        if isinstance(self.fn, Abs):
            fn = f"({fn})"
        arg = str(self.arg)
        if isinstance(self.arg, (App, Abs)):
            arg = f"({arg})"
        return f"{fn} {arg}"


@dataclass(frozen=True)
class Abs:
    var: str
    body: "LambdaTerm"

    def __post_init__(self):
        n = _occurrences(self.body, self.var)
        if n != 1:
            raise NonLinear(f"bound variable {self.var} occurs {n} times")

    def __str__(self):
        return f"\\{self.var}. {self.body}"


LambdaTerm = Var | Const | App | Abs


def free_vars(t: LambdaTerm) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Const):
        return frozenset()
    if isinstance(t, App):
        return free_vars(t.fn) | free_vars(t.arg)
    return free_vars(t.body) - {t.var}


def _occurrences(t: LambdaTerm, x: str) -> int:
    if isinstance(t, Var):
        return 1 if t.name == x else 0
    if isinstance(t, Const):
        return 0
    if isinstance(t, App):
        return _occurrences(t.fn, x) + _occurrences(t.arg, x)
    if t.var == x:
        return 0
    return _occurrences(t.body, x)


# --- implicational types ---------------------------------------------------------


@dataclass(frozen=True)
class TAtom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Arrow:
    dom: "ImplType"
    cod: "ImplType"

    def __str__(self):
        d = str(self.dom)
        if isinstance(self.dom, Arrow):
            d = f"({d})"
        return f"{d} -> {self.cod}"


ImplType = TAtom | Arrow


def impl_atoms(t: ImplType) -> set[str]:
    if isinstance(t, TAtom):
        return {t.name}
    return impl_atoms(t.dom) | impl_atoms(t.cod)


@dataclass(frozen=True)
class LambdaSignature:
    atoms: frozenset[str]
    constants: Mapping[str, ImplType] = field(default_factory=dict)


@dataclass(frozen=True)
class LambdaJudgement:
    context: tuple[tuple[str, ImplType], ...]
    term: LambdaTerm
    type: ImplType

    def __str__(self):
        ctx = ", ".join(f"{x}:{t}" for x, t in self.context)
        return f"{ctx} |- {self.term} : {self.type}"


def string_signature(alphabet: Iterable[str]) -> LambdaSignature:
    """Single atom O; every letter is a constant of type O -> O."""
    str_type = Arrow(TAtom("O"), TAtom("O"))
    return LambdaSignature(frozenset(("O",)), {c: str_type for c in alphabet})


# --- typechecking -----------------------------------------------------------------


@dataclass(frozen=True)
class NDNode:
    """Natural-deduction derivation node with its full judgement."""

    kind: str  # var | const | app | abs
    term: LambdaTerm
    type: ImplType
    context: tuple[tuple[str, ImplType], ...]
    children: tuple["NDNode", ...] = ()


def lambda_typecheck(j: LambdaJudgement, sig: LambdaSignature) -> NDNode:
    """Check the judgement and return its derivation tree.

    The context must list exactly the free variables of the term.  Terms
    are inferred spine-wise; abstractions are checked against arrows, so
    a redex applying an abstraction directly to another abstraction has
    no inferable function type and is rejected (normalize it first).
    """
    env = dict(j.context)
    if len(env) != len(j.context):
        raise LambdaTypeError("context repeats a variable")
    fv = free_vars(j.term)
    if fv != set(env):
        raise LambdaTypeError(
            f"context variables {sorted(env)} do not match free variables {sorted(fv)}"
        )
    node = _check(j.term, j.type, env, sig)
    return node


def _infer(t: LambdaTerm, env: dict, sig: LambdaSignature) -> NDNode:
    if isinstance(t, Var):
        if t.name not in env:
            raise LambdaTypeError(f"unbound variable {t.name}")
        ty = env[t.name]
        return NDNode("var", t, ty, ((t.name, ty),))
    if isinstance(t, Const):
        if t.name not in sig.constants:
            raise UnknownConstant(f"unknown constant {t.name}")
        return NDNode("const", t, sig.constants[t.name], ())
    if isinstance(t, App):
        if isinstance(t.fn, Abs):
            # beta redex: infer the argument, push it through the binder
            arg = _infer(t.arg, env, sig)
            inner = dict(env)
            inner[t.fn.var] = arg.type
            body = _infer(t.fn.body, inner, sig)
            fn = NDNode(
                "abs",
                t.fn,
                Arrow(arg.type, body.type),
                tuple(p for p in body.context if p[0] != t.fn.var),
                (body,),
            )
        else:
            fn = _infer(t.fn, env, sig)
            if not isinstance(fn.type, Arrow):
                raise LambdaTypeError(f"applying a non-function: {t.fn}")
            arg = _check(t.arg, fn.type.dom, env, sig)
        if not isinstance(fn.type, Arrow):
            raise LambdaTypeError(f"applying a non-function: {t.fn}")
        return NDNode(
            "app", t, fn.type.cod, fn.context + arg.context, (fn, arg)
        )
    raise Untypeable(f"cannot infer a type for the abstraction {t}; annotate or normalize")


def _check(t: LambdaTerm, ty: ImplType, env: dict, sig: LambdaSignature) -> NDNode:
    if isinstance(t, Abs):
        if not isinstance(ty, Arrow):
            raise LambdaTypeError(f"abstraction {t} against non-arrow {ty}")
        inner = dict(env)
        inner[t.var] = ty.dom
        body = _check(t.body, ty.cod, inner, sig)
        ctx = tuple(p for p in body.context if p[0] != t.var)
        return NDNode("abs", t, ty, ctx, (body,))
    node = _infer(t, env, sig)
    if node.type != ty:
        raise LambdaTypeError(f"{t} has type {node.type}, expected {ty}")
    return node


# --- normal forms ------------------------------------------------------------------

_VARIANT = 0


def _fresh_var(base: str = "x") -> str:
    global _VARIANT
    _VARIANT += 1
    return f"{base}%{_VARIANT}"


def _substitute(t: LambdaTerm, x: str, s: LambdaTerm) -> LambdaTerm:
    """Replace the (single, by linearity) free occurrence of x."""
    if isinstance(t, Var):
        return s if t.name == x else t
    if isinstance(t, Const):
        return t
    if isinstance(t, App):
        if x in free_vars(t.fn):
            return App(_substitute(t.fn, x, s), t.arg)
        return App(t.fn, _substitute(t.arg, x, s))
    if t.var == x or x not in free_vars(t.body):
        return t
    if t.var in free_vars(s):
        fresh = _fresh_var(t.var.split("%")[0])
        body = _substitute(t.body, t.var, Var(fresh))
        return Abs(fresh, _substitute(body, x, s))
    return Abs(t.var, _substitute(t.body, x, s))


def beta_normalize(t: LambdaTerm) -> LambdaTerm:
    """Normal form; linearity makes reduction size-decreasing."""
    if isinstance(t, (Var, Const)):
        return t
    if isinstance(t, Abs):
        return Abs(t.var, beta_normalize(t.body))
    fn = beta_normalize(t.fn)
    arg = beta_normalize(t.arg)
    if isinstance(fn, Abs):
        return beta_normalize(_substitute(fn.body, fn.var, arg))
    return App(fn, arg)


def _spine(t: LambdaTerm):
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    return t, list(reversed(args))


def eta_long(t: LambdaTerm, ty: ImplType, env: dict, sig: LambdaSignature) -> LambdaTerm:
    """Fully eta-expanded form of a beta-normal term."""
    if isinstance(ty, Arrow):
        if isinstance(t, Abs):
            inner = dict(env)
            inner[t.var] = ty.dom
            return Abs(t.var, eta_long(t.body, ty.cod, inner, sig))
        x = _fresh_var()
        inner = dict(env)
        inner[x] = ty.dom
        return Abs(x, eta_long(App(t, Var(x)), ty.cod, inner, sig))
    head, args = _spine(t)
    if isinstance(head, Var):
        hty = env[head.name]
    elif isinstance(head, Const):
        hty = sig.constants[head.name]
    else:
        raise Untypeable("beta-normal form expected")
    out: LambdaTerm = head
    for a in args:
        if not isinstance(hty, Arrow):
            raise Untypeable("over-applied head in eta expansion")
        out = App(out, eta_long(a, hty.dom, env, sig))
        hty = hty.cod
    if hty != ty:
        raise Untypeable(f"head yields {hty}, expected {ty}")
    return out


def beta_eta_normal(j: LambdaJudgement, sig: LambdaSignature) -> LambdaJudgement:
    """Canonical representative: beta-normal, then eta-long at the stated type."""
    t = beta_normalize(j.term)
    t = eta_long(t, j.type, dict(j.context), sig)
    return LambdaJudgement(j.context, t, j.type)


def alpha_equal_terms(a: LambdaTerm, b: LambdaTerm) -> bool:
    return _alpha(a, b, {}, {})


def _alpha(a, b, ma, mb) -> bool:
    if isinstance(a, Var) and isinstance(b, Var):
        return ma.get(a.name, a.name) == mb.get(b.name, b.name)
    if isinstance(a, Const) and isinstance(b, Const):
        return a.name == b.name
    if isinstance(a, App) and isinstance(b, App):
        return _alpha(a.fn, b.fn, ma, mb) and _alpha(a.arg, b.arg, ma, mb)
    if isinstance(a, Abs) and isinstance(b, Abs):
        tag = f"!{len(ma)}"
        return _alpha(a.body, b.body, {**ma, a.var: tag}, {**mb, b.var: tag})
    return False


def judgements_beta_eta_equal(
    a: LambdaJudgement, b: LambdaJudgement, sig: LambdaSignature
) -> bool:
    """Same type, same named context, beta-eta-alpha-equal terms."""
    if a.type != b.type or dict(a.context) != dict(b.context):
        return False
    na = beta_eta_normal(a, sig).term
    nb = beta_eta_normal(b, sig).term
    return alpha_equal_terms(na, nb)


# --- type translation ----------------------------------------------------------


def tr_type(a: ImplType, valencies: Mapping[str, tuple[int, int]]) -> Type:
    """Tensor image with fresh decorations: atoms stay atoms, an arrow
    becomes (image of codomain) par (dual of image of domain)."""
    if isinstance(a, TAtom):
        if a.name not in valencies:
            raise UnknownAtom(f"no valency declared for atom {a.name}")
        up, down = valencies[a.name]
        return Atom(
            Lit(a.name, up, down, positive=True),
            tuple(fresh_index() for _ in range(up)),
            tuple(fresh_index() for _ in range(down)),
        )
    return par(tr_type(a.cod, valencies), dual(tr_type(a.dom, valencies)))


def is_positive_impl(t: Type) -> bool:
    """Recognizer for images of implicational types."""
    if isinstance(t, Atom):
        return t.lit.positive
    if isinstance(t, Bin) and t.op == PAR:
        return is_positive_impl(t.left) and is_positive_impl(dual(t.right))
    return False


def untr_type(t: Type) -> ImplType:
    """Inverse of tr_type on positive images."""
    if isinstance(t, Atom) and t.lit.positive:
        return TAtom(t.lit.name)
    if isinstance(t, Bin) and t.op == PAR:
        return Arrow(untr_type(dual(t.right)), untr_type(t.left))
    raise NotPolarized(f"not an image of an implicational type: {t!r}")


# --- derivation translation ------------------------------------------------------


def translate_judgement(
    nd: NDNode,
    valencies: Mapping[str, tuple[int, int]],
    axiom_translations: Mapping[str, Judgement] | None = None,
) -> Judgement:
    """Tensor judgement of a lambda derivation: goal image first, then the
    duals of the context types in context order."""
    j, order = _translate(nd, valencies, axiom_translations or {})
    want = [x for x, _ in nd.context]
    if list(order) != want:
        perm = [0] + [1 + order.index(x) for x in want]
        j = Judgement(j.term, tuple(j.members[p] for p in perm))
    return j


def _translate(nd, valencies, axtr) -> tuple[Judgement, tuple[str, ...]]:
    if nd.kind == "var":
        c = tr_type(nd.type, valencies)
        e = eta_id(c)
        x = nd.context[0][0]
        m = e.judgement.members
        return Judgement(e.judgement.term, (m[1], m[0])), (x,)
    if nd.kind == "const":
        name = nd.term.name
        if name not in axtr:
            raise MissingAxiomTranslation(f"no tensor axiom for constant {name}")
        j = axtr[name]
        _, mapping = freshen(j.term)
        return rename_judgement(j, mapping), ()
    if nd.kind == "app":
        fn, arg = nd.children
        jf, of = _translate(fn, valencies, axtr)
        ja, oa = _translate(arg, valencies, axtr)
        goal = jf.members[0]
        if not (isinstance(goal, Bin) and goal.op == PAR):
            raise NotPolarized("function image is not a par")
        spread = Judgement(jf.term, (goal.left, goal.right) + jf.members[1:])
        out = apply_cut(spread, ja, 1, 0)
        return out, of + oa
    # abs
    (body,) = nd.children
    jb, ob = _translate(body, valencies, axtr)
    k = ob.index(nd.term.var)
    if 1 + k != 1:
        jb = apply_move(jb, 1 + k, 1)
    jb = apply_par(jb, 0)
    return jb, tuple(x for x in ob if x != nd.term.var)


def string_axiom(c: str) -> Judgement:
    """[c]_i^j |- O^i par ~O_j, the tensor image of the letter c."""
    i, j = fresh_index(), fresh_index()
    o = Atom(Lit("O", 1, 0, positive=True), (i,), ())
    obar = Atom(Lit("O", 0, 1, positive=False), (), (j,))
    return Judgement(
        normalize(TermExpr([Edge(i, j, (c,))])), (par(o, obar),)
    )


def string_axiom_translations(alphabet: Iterable[str]) -> dict[str, Judgement]:
    return {c: string_axiom(c) for c in alphabet}


# --- inverse translation ----------------------------------------------------------


def inverse_translate(
    j: Judgement, mode: str = "pure", alphabet: Iterable[str] = ()
) -> LambdaJudgement:
    """Lambda judgement whose translation is ``j`` (up to canonical form).

    ``mode="pure"`` works over no constants; ``mode="string"`` over the
    one-atom signature whose constants are ``alphabet`` letters, where the
    base case absorbs a whole word edge into a chain of letter applications.
    Underivable input surfaces as NotDerivable, non-polarized input (not
    exactly one positive implicational member) as NotPolarized.
    """
    if mode not in ("pure", "string"):
        raise ValueError(f"mode must be 'pure' or 'string', not {mode!r}")
    letters = set(alphabet)
    pos = [k for k, m in enumerate(j.members) if is_positive_impl(m)]
    neg = [k for k, m in enumerate(j.members) if is_positive_impl(dual(m))]
    if len(pos) != 1 or len(neg) != len(j.members) - 1:
        raise NotPolarized(
            "need exactly one positive implicational member, duals elsewhere"
        )
    if j.term.loops:
        raise NotDerivable("term has loops")
    lj, _ = _inverse(j, pos[0], mode, letters)
    return lj


def _inverse(
    j: Judgement, cpos: int, mode: str, letters: set[str]
) -> tuple[LambdaJudgement, dict[int, str]]:
    """Returns the lambda judgement plus a map from negative member
    positions of ``j`` to context variable names."""
    c = j.members[cpos]
    if isinstance(c, Bin) and c.op == PAR:
        inner = Judgement(
            j.term,
            j.members[:cpos] + (c.left, c.right) + j.members[cpos + 1 :],
        )
        lj, vm = _inverse(inner, cpos, mode, letters)
        y = vm[cpos + 1]
        ytype = next(t for x, t in lj.context if x == y)
        ctx = tuple(p for p in lj.context if p[0] != y)
        out = LambdaJudgement(ctx, Abs(y, lj.term), Arrow(ytype, lj.type))
        vmap = {}
        for q, x in vm.items():
            if q == cpos + 1:
                continue
            vmap[q if q < cpos + 1 else q - 1] = x
        return out, vmap
    # base cases: all members atomic
    if all(isinstance(m, Atom) for m in j.members):
        return _inverse_base(j, cpos, mode, letters)
    # otherwise find a splitting tensor member
    for k, m in enumerate(j.members):
        if k == cpos or not (isinstance(m, Bin) and m.op == TENSOR):
            continue
        split = _try_split(j, cpos, k)
        if split is None:
            continue
        (j1, back1), (j2, back2) = split
        lj1, vm1 = _inverse(j1, 0, mode, letters)
        lj2, vm2 = _inverse(j2, [q for q, b in enumerate(back2) if b == cpos][0],
                            mode, letters)
        y = vm2[0]
        h = next(t2 for x2, t2 in lj2.context if x2 == y)
        x = _fresh_var("f")
        body = _substitute(lj2.term, y, App(Var(x), lj1.term))
        ctx = (
            ((x, Arrow(lj1.type, h)),)
            + lj1.context
            + tuple(p for p in lj2.context if p[0] != y)
        )
        out = LambdaJudgement(ctx, body, lj2.type)
        vmap = {k: x}
        for q, v in vm1.items():
            vmap[back1[q]] = v
        for q, v in vm2.items():
            if q != 0:
                vmap[back2[q]] = v
        return out, vmap
    raise NotDerivable("no par to strip and no tensor member splits")


def _inverse_base(j, cpos, mode, letters):
    if len(j.members) != 2:
        raise NotDerivable("an all-atomic judgement must be an identity pair")
    npos = 1 - cpos
    c, n = j.members[cpos], j.members[npos]
    if mode == "string" and c.lit.name == "O" and len(j.term.edges) == 1:
        (e,) = tuple(j.term.edges)
        if (
            c.lit == Lit("O", 1, 0, True)
            and n.lit == Lit("O", 0, 1, False)
            and e.lower == c.sup[0]
            and e.upper == n.sub[0]
        ):
            if not set(e.word) <= letters:
                raise NotDerivable(f"word {e.word} uses letters outside the alphabet")
            x = _fresh_var()
            term: LambdaTerm = Var(x)
            for letter in reversed(e.word):
                term = App(Const(letter), term)
            lj = LambdaJudgement(((x, TAtom("O")),), term, TAtom("O"))
            return lj, {npos: x}
    if n.lit != c.lit.dual() or not is_id_instance(j):
        raise NotDerivable("atomic judgement is not an identity instance")
    x = _fresh_var()
    a = untr_type(c)
    return LambdaJudgement(((x, a),), Var(x), a), {npos: x}


def _try_split(j: Judgement, cpos: int, k: int):
    """Split members and term at the tensor member ``k`` if its left
    component's connected part excludes both the right component and the
    positive member.  Returns ((j1, back1), (j2, back2)) with back maps
    to original positions, or None."""
    m = j.members[k]
    a, b = m.left, m.right
    if not is_positive_impl(a) or not is_positive_impl(dual(b)):
        return None
    # a temporary member list with a and b standing apart
    members = list(j.members[:k]) + [a, b] + list(j.members[k + 1 :])
    sup_owner, sub_owner = {}, {}
    for q, t in enumerate(members):
        for i in free_sups(t):
            sup_owner[i] = q
        for i in free_subs(t):
            sub_owner[i] = q
    parent = list(range(len(members)))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    def union(u, v):
        parent[find(u)] = find(v)

    for e in j.term.edges:
        union(sup_owner[e.lower], sub_owner[e.upper])
    apos = k
    bpos = k + 1
    comp_a = {q for q in range(len(members)) if find(q) == find(apos)}
    cpos2 = cpos if cpos < k else cpos + 1
    if bpos in comp_a or cpos2 in comp_a:
        return None
    split_edges = {True: [], False: []}
    for e in j.term.edges:
        split_edges[sup_owner[e.lower] in comp_a].append(e)
    ordered_a = sorted(comp_a)
    ordered_b = [q for q in range(len(members)) if q not in comp_a]
    # component-a members, with the positive part a leading
    ordered_a.remove(apos)
    ordered_aic = [apos] + ordered_a
    ordered_b.remove(bpos)
    ordered_bic = [bpos] + ordered_b

    def backmap(order):
        out = []
        for q in order:
            if q == apos or q == bpos:
                out.append(k)
            else:
                out.append(q if q < k else q - 1)
        return out

    j1 = Judgement(
        normalize(TermExpr(split_edges[True])),
        tuple(members[q] for q in ordered_aic),
    )
    j2 = Judgement(
        normalize(TermExpr(split_edges[False])),
        tuple(members[q] for q in ordered_bic),
    )
    return (j1, backmap(ordered_aic)), (j2, backmap(ordered_bic))


# --- abstract categorial grammars ---------------------------------------------


@dataclass(frozen=True)
class ACG:
    abstract: LambdaSignature
    terminals: tuple[str, ...]
    type_lexicon: Mapping[str, ImplType]  # abstract atom -> object type over O
    term_lexicon: Mapping[str, LambdaTerm]  # abstract constant -> object term
    start: str


def phi_type(g: ACG, a: ImplType) -> ImplType:
    if isinstance(a, TAtom):
        if a.name not in g.type_lexicon:
            raise UnknownAtom(f"atom {a.name} has no lexicon image")
        return g.type_lexicon[a.name]
    return Arrow(phi_type(g, a.dom), phi_type(g, a.cod))


def acg_valencies(g: ACG) -> dict[str, tuple[int, int]]:
    """Abstract atom valencies inherited from their object images."""
    base = {"O": (1, 0)}
    out = {}
    for p in g.abstract.atoms:
        img = tr_type(phi_type(g, TAtom(p)), base)
        out[p] = (len(free_sups(img)), len(free_subs(img)))
    return out


def acg_translate(g: ACG):
    """Tensor grammar with one axiom per abstract constant.

    Each lexicon image is typechecked in the string signature, its
    derivation translated to a tensor judgement over O, and the single
    member re-decorated with the abstract type's image (same slot layout),
    then unfolded along its outer par spine into sequent members.
    """
    from .engine import Grammar

    strsig = string_signature(g.terminals)
    axtr = string_axiom_translations(g.terminals)
    valencies = acg_valencies(g)
    axioms = {}
    for cname, abstype in sorted(g.abstract.constants.items()):
        if cname not in g.term_lexicon:
            raise LexiconIllTyped(f"constant {cname} has no lexicon term")
        image = g.term_lexicon[cname]
        obj_type = phi_type(g, abstype)
        try:
            nd = lambda_typecheck(
                LambdaJudgement((), image, obj_type), strsig
            )
        except (LambdaTypeError, NonLinear, Untypeable) as err:
            raise LexiconIllTyped(f"constant {cname}: {err}") from err
        jt = translate_judgement(nd, {"O": (1, 0)}, axtr)
        assert len(jt.members) == 1
        m = jt.members[0]
        abstract_member = redecorate(
            tr_type(abstype, valencies), free_sups(m), free_subs(m)
        )
        members = _unfold_par_spine(abstract_member)
        axioms[cname] = Judgement(jt.term, members)
    literals = dict(sorted(valencies.items()))
    start_val = literals.get(g.start)
    if start_val != (1, 1):
        raise LexiconIllTyped(
            f"start symbol {g.start} must have valency (1,1), has {start_val}"
        )
    return Grammar(
        kind="tensor",
        literals=literals,
        terminals=tuple(g.terminals),
        axioms=axioms,
        start=g.start,
        restricted=False,
    )


def _unfold_par_spine(t: Type) -> tuple[Type, ...]:
    members = [t]
    while isinstance(members[0], Bin) and members[0].op == PAR:
        head = members[0]
        members[0:1] = [head.left, head.right]
    return tuple(members)


# --- surface syntax -----------------------------------------------------------


_LAM_TOKEN = re.compile(r"\s*(\\|\.|\(|\)|->|[A-Za-z_][A-Za-z0-9_']*)")


def _lam_tokens(text: str) -> list[str]:
    toks, pos = [], 0
    while pos < len(text):
        m = _LAM_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"bad character {text[pos:].lstrip()[0]!r}")
            break
        toks.append(m.group(1))
        pos = m.end()
    return toks


def parse_lambda_term(text: str, constants: Iterable[str] = ()) -> LambdaTerm:
    """``\\x y. body`` binds; juxtaposition applies; names in ``constants``
    become constants, everything else a variable."""
    consts = set(constants)
    toks = _lam_tokens(text)

    def parse_term(toks, bound):
        if toks and toks[0] == "\\":
            toks = toks[1:]
            names = []
            while toks and toks[0] not in (".",):
                if toks[0] in ("(", ")", "\\", "->"):
                    raise ParseError(f"unexpected {toks[0]!r} in binder")
                names.append(toks[0])
                toks = toks[1:]
            if not toks or not names:
                raise ParseError("malformed abstraction")
            body, toks = parse_term(toks[1:], bound | set(names))
            for nm in reversed(names):
                body = Abs(nm, body)
            return body, toks
        return parse_app(toks, bound)

    def parse_app(toks, bound):
        out, toks = parse_atom(toks, bound)
        while toks and toks[0] not in (")", "."):
            arg, toks = parse_atom(toks, bound)
            out = App(out, arg)
        return out, toks

    def parse_atom(toks, bound):
        if not toks:
            raise ParseError("term ended unexpectedly")
        head, *rest = toks
        if head == "(":
            t, rest = parse_term(rest, bound)
            if not rest or rest[0] != ")":
                raise ParseError("missing closing parenthesis")
            return t, rest[1:]
        if head in (")", ".", "\\", "->"):
            raise ParseError(f"unexpected {head!r}")
        if head in bound:
            return Var(head), rest
        if head in consts:
            return Const(head), rest
        return Var(head), rest

    t, rest = parse_term(toks, set())
    if rest:
        raise ParseError(f"unexpected {rest[0]!r} after term")
    return t


def parse_impl_type(text: str) -> ImplType:
    toks = _lam_tokens(text)

    def parse_arrow(toks):
        left, toks = parse_prim(toks)
        if toks and toks[0] == "->":
            right, toks = parse_arrow(toks[1:])
            return Arrow(left, right), toks
        return left, toks

    def parse_prim(toks):
        if not toks:
            raise ParseError("type ended unexpectedly")
        head, *rest = toks
        if head == "(":
            t, rest = parse_arrow(rest)
            if not rest or rest[0] != ")":
                raise ParseError("missing closing parenthesis in type")
            return t, rest[1:]
        if head in (")", "->", ".", "\\"):
            raise ParseError(f"unexpected {head!r} in type")
        if head == "str":
            return Arrow(TAtom("O"), TAtom("O")), rest
        return TAtom(head), rest

    t, rest = parse_arrow(toks)
    if rest:
        raise ParseError(f"unexpected {rest[0]!r} after type")
    return t


def parse_acg(text: str) -> ACG:
    """Sections: ``atoms:``, ``constants:``, ``lexicon types:``,
    ``lexicon terms:``, ``start:``; ``#`` comments."""
    atoms: list[str] = []
    constants: dict[str, ImplType] = {}
    type_lex: dict[str, ImplType] = {}
    term_lex_src: dict[str, str] = {}
    start = None
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        low = line.strip().lower()
        if low.startswith("atoms:"):
            section = None
            atoms += line.strip()[len("atoms:") :].split()
            continue
        if low.startswith("constants:"):
            section = "constants"
            continue
        if low.startswith("lexicon types:"):
            section = "types"
            continue
        if low.startswith("lexicon terms:"):
            section = "terms"
            continue
        if low.startswith("start:"):
            section = None
            start = line.strip()[len("start:") :].strip()
            continue
        if section == "constants":
            name, _, ty = line.partition(":")
            if not _:
                raise ParseError(f"line {lineno}: expected 'name : TYPE'")
            constants[name.strip()] = parse_impl_type(ty)
        elif section == "types":
            name, _, ty = line.partition("=>")
            if not _:
                raise ParseError(f"line {lineno}: expected 'atom => TYPE'")
            type_lex[name.strip()] = parse_impl_type(ty)
        elif section == "terms":
            name, _, tm = line.partition("=>")
            if not _:
                raise ParseError(f"line {lineno}: expected 'const => TERM'")
            term_lex_src[name.strip()] = tm.strip()
        else:
            raise ParseError(f"line {lineno}: text outside any section")
    if start is None:
        raise ParseError("grammar has no start: directive")
    terminals = sorted(_collect_constants(term_lex_src))
    term_lex = {
        name: parse_lambda_term(src, terminals)
        for name, src in term_lex_src.items()
    }
    sig = LambdaSignature(frozenset(atoms), constants)
    return ACG(sig, tuple(terminals), type_lex, term_lex, start)


def _collect_constants(term_lex_src: Mapping[str, str]) -> set[str]:
    """Free names across all lexicon terms are the terminal alphabet."""
    names: set[str] = set()
    for src in term_lex_src.values():
        t = parse_lambda_term(src, ())
        names |= free_vars(t)
    return names
