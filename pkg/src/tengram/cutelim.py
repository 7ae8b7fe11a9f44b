"""Cut elimination for derivations built from the identity leaves.

The procedure is the usual one: reduce topmost cuts first, absorb cuts
against identity leaves, permute a cut above the last rule of a premise
when that rule does not introduce the cut member, and break principal
cuts (par against tensor, quantifier against its dual) into cuts on
smaller formulas.  Every rewrite tracks the exact judgement of every node
it builds — rules that draw fresh indices (cut, tensor) are not replay-
stable, so conclusions are fixed once and glued with relabelling steps.

Axiom leaves have no premises to permute into, so derivations using them
are rejected; cut axioms away first (or eliminate in the axiom-free part).
"""

from __future__ import annotations

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
    apply_cut,
    apply_eq,
    apply_move,
    apply_nabla,
    apply_par,
    apply_tensor,
    apply_triangle,
    collect_axioms,
    id_judgement,
    replay,
)
from .errors import BadStep, HasAxioms
from .judgement import Judgement, relabel_mapping
from .types import Bin, Binder, NABLA, PAR, TENSOR, TRI, free_subs, free_sups


def eliminate_cuts(d: Derivation) -> Derivation:
    """Cut-free derivation of the same judgement (pinned to one replay)."""
    used = collect_axioms(d)
    if used:
        raise HasAxioms(f"cannot eliminate cuts across axioms {sorted(used)}")
    goal = replay(d)
    st = _State()
    out, j = st.elim(d)
    if j != goal:
        if relabel_mapping(j, goal) is None:
            raise BadStep("cut elimination drifted to a different judgement")
        out = st.mk(EqNode(out, goal), goal)
    return out


class _State:
    """Tracks the exact conclusion of every derivation node built here."""

    def __init__(self) -> None:
        self.conc: dict[int, Judgement] = {}

    def mk(self, d: Derivation, j: Judgement) -> Derivation:
        self.conc[id(d)] = j
        return d

    def of(self, d: Derivation) -> Judgement:
        if id(d) not in self.conc:
            if not isinstance(d, IdLeaf):
                raise BadStep("internal: conclusion of an unregistered node requested")
            self.conc[id(d)] = replay(d)
        return self.conc[id(d)]

    # -- recursive elimination ------------------------------------------------

    def elim(self, d: Derivation) -> tuple[Derivation, Judgement]:
        if isinstance(d, IdLeaf):
            j = replay(d)
            return self.mk(d, j), j
        if isinstance(d, CutNode):
            dl, jl = self.elim(d.left)
            dr, jr = self.elim(d.right)
            return self.reduce(dl, jl, dr, jr, d.left_pos, d.right_pos)
        if isinstance(d, TensorNode):
            dl, jl = self.elim(d.left)
            dr, jr = self.elim(d.right)
            j = apply_tensor(jl, jr, d.left_pos)
            return self.mk(TensorNode(dl, dr, d.left_pos), j), j
        if isinstance(d, ParNode):
            c, jc = self.elim(d.child)
            j = apply_par(jc, d.pos)
            return self.mk(ParNode(c, d.pos), j), j
        if isinstance(d, NablaNode):
            c, jc = self.elim(d.child)
            j = apply_nabla(jc, d.pos, d.alpha, d.beta)
            return self.mk(NablaNode(c, d.pos, d.alpha, d.beta), j), j
        if isinstance(d, TriangleNode):
            c, jc = self.elim(d.child)
            j = apply_triangle(jc, d.pos, d.alpha, d.beta)
            return self.mk(TriangleNode(c, d.pos, d.alpha, d.beta), j), j
        if isinstance(d, MoveNode):
            c, jc = self.elim(d.child)
            j = apply_move(jc, d.src, d.dst)
            return self.mk(MoveNode(c, d.src, d.dst), j), j
        if isinstance(d, EqNode):
            c, jc = self.elim(d.child)
            j = apply_eq(jc, d.target)
            return self.mk(EqNode(c, d.target), j), j
        raise BadStep(f"cannot eliminate cuts in {type(d).__name__}")

    # -- helpers ---------------------------------------------------------------

    def moved(self, d: Derivation, j: Judgement, src: int, dst: int) -> tuple[Derivation, Judgement]:
        if src == dst:
            return d, j
        j2 = apply_move(j, src, dst)
        return self.mk(MoveNode(d, src, dst), j2), j2

    def reorder_tokens(
        self,
        d: Derivation,
        j: Judgement,
        current: list,
        want: list,
    ) -> tuple[Derivation, Judgement]:
        cur = list(current)
        for k, tok in enumerate(want):
            s = cur.index(tok)
            if s != k:
                cur.insert(k, cur.pop(s))
                d, j = self.moved(d, j, s, k)
        return d, j

    # -- the cut reducer --------------------------------------------------------

    def reduce(
        self,
        dl: Derivation,
        jl: Judgement,
        dr: Derivation,
        jr: Judgement,
        lpos: int,
        rpos: int,
    ) -> tuple[Derivation, Judgement]:
        """Cut-free derivation concluding exactly ``apply_cut(jl, jr, lpos, rpos)``
        (one draw of it, fixed here)."""
        target = apply_cut(jl, jr, lpos, rpos)
        d, j = self._reduce(dl, jl, dr, jr, lpos, rpos)
        if j != target:
            if relabel_mapping(j, target) is None:
                raise BadStep("cut reduction drifted to a different judgement")
            d = self.mk(EqNode(d, target), target)
            j = target
        return d, j

    def _reduce(
        self,
        dl: Derivation,
        jl: Judgement,
        dr: Derivation,
        jr: Judgement,
        lpos: int,
        rpos: int,
    ) -> tuple[Derivation, Judgement]:
        nl, nr = len(jl.members), len(jr.members)

        # cuts against an identity leaf vanish
        if isinstance(dl, IdLeaf):
            return self.moved(dr, jr, rpos, 0)
        if isinstance(dr, IdLeaf):
            return self.moved(dl, jl, lpos, nl - 1)

        # bookkeeping steps are transparent to the cut
        if isinstance(dl, EqNode):
            c = dl.child
            return self.reduce(c, self.of(c), dr, jr, lpos, rpos)
        if isinstance(dl, MoveNode):
            c = dl.child
            jc = self.of(c)
            slots = list(range(nl))
            slots.insert(dl.dst, slots.pop(dl.src))
            lp = slots[lpos]
            d1, j1 = self.reduce(c, jc, dr, jr, lp, rpos)
            current = [("L", q) for q in range(nl) if q != lp]
            want = [("L", slots[p]) for p in range(nl) if p != lpos]
            current += [("R", i) for i in range(nr - 1)]
            want += [("R", i) for i in range(nr - 1)]
            return self.reorder_tokens(d1, j1, current, want)
        if isinstance(dr, EqNode):
            c = dr.child
            return self.reduce(dl, jl, c, self.of(c), lpos, rpos)
        if isinstance(dr, MoveNode):
            c = dr.child
            jc = self.of(c)
            slots = list(range(nr))
            slots.insert(dr.dst, slots.pop(dr.src))
            rp = slots[rpos]
            d1, j1 = self.reduce(dl, jl, c, jc, lpos, rp)
            current = [("L", i) for i in range(nl - 1)]
            want = list(current)
            current += [("R", q) for q in range(nr) if q != rp]
            want += [("R", slots[p]) for p in range(nr) if p != rpos]
            return self.reorder_tokens(d1, j1, current, want)

        if not self._introduces(dl, lpos):
            return self._commute_left(dl, jl, dr, jr, lpos, rpos)
        if not self._introduces(dr, rpos):
            return self._commute_right(dl, jl, dr, jr, lpos, rpos)
        return self._principal(dl, jl, dr, jr, lpos, rpos)

    @staticmethod
    def _introduces(d: Derivation, pos: int) -> bool:
        if isinstance(d, ParNode):
            return d.pos == pos
        if isinstance(d, (NablaNode, TriangleNode)):
            return d.pos == pos
        if isinstance(d, TensorNode):
            return d.left_pos == pos
        raise BadStep(f"unexpected node in cut reduction: {type(d).__name__}")

    # -- commuting the cut above the last rule of one premise -------------------

    def _commute_left(self, dl, jl, dr, jr, lpos, rpos):
        nl, nr = len(jl.members), len(jr.members)
        if isinstance(dl, ParNode):
            c, q = dl.child, dl.pos
            jc = self.of(c)
            lp = lpos if lpos < q else lpos + 1
            d1, j1 = self.reduce(c, jc, dr, jr, lp, rpos)
            q2 = q - (1 if lp < q else 0)
            j2 = apply_par(j1, q2)
            return self.mk(ParNode(d1, q2), j2), j2
        if isinstance(dl, NablaNode):
            c, q = dl.child, dl.pos
            jc = self.of(c)
            d1, j1 = self.reduce(c, jc, dr, jr, lpos, rpos)
            q2 = q - (1 if lpos < q else 0)
            j2 = apply_nabla(j1, q2, dl.alpha, dl.beta)
            return self.mk(NablaNode(d1, q2, dl.alpha, dl.beta), j2), j2
        if isinstance(dl, TriangleNode):
            c, q = dl.child, dl.pos
            jc = self.of(c)
            d1, j1 = self.reduce(c, jc, dr, jr, lpos, rpos)
            q2 = q - (1 if lpos < q else 0)
            j2 = apply_triangle(j1, q2, dl.alpha, dl.beta)
            return self.mk(TriangleNode(d1, q2, dl.alpha, dl.beta), j2), j2
        if isinstance(dl, TensorNode):
            a, b, lp2 = dl.left, dl.right, dl.left_pos
            ja, jb = self.of(a), self.of(b)
            na = len(ja.members)
            if lpos < na:  # cut member comes from the tensor's left premise
                d1, j1 = self.reduce(a, ja, dr, jr, lpos, rpos)
                lp3 = lp2 - (1 if lpos < lp2 else 0)
                j2 = apply_tensor(j1, jb, lp3)
                d2 = self.mk(TensorNode(d1, b, lp3), j2)
                # blocks: A-minus(with product member) | R-minus | B-rest
                # wanted: A-minus(with product member) | B-rest | R-minus
                current = [("A", q) for q in range(na) if q != lpos]
                current += [("R", i) for i in range(nr - 1)]
                current += [("B", i) for i in range(len(jb.members) - 1)]
                want = [t for t in current if t[0] == "A"]
                want += [t for t in current if t[0] == "B"]
                want += [t for t in current if t[0] == "R"]
                return self.reorder_tokens(d2, j2, current, want)
            bp = lpos - na + 1  # from the right premise (never its member 0)
            d1, j1 = self.reduce(b, jb, dr, jr, bp, rpos)
            j2 = apply_tensor(ja, j1, lp2)
            return self.mk(TensorNode(a, d1, lp2), j2), j2
        raise BadStep(f"unexpected node in cut reduction: {type(dl).__name__}")

    def _commute_right(self, dl, jl, dr, jr, lpos, rpos):
        nl, nr = len(jl.members), len(jr.members)
        off = nl - 1
        if isinstance(dr, ParNode):
            c, q = dr.child, dr.pos
            jc = self.of(c)
            rp = rpos if rpos < q else rpos + 1
            d1, j1 = self.reduce(dl, jl, c, jc, lpos, rp)
            q2 = off + q - (1 if rp < q else 0)
            j2 = apply_par(j1, q2)
            return self.mk(ParNode(d1, q2), j2), j2
        if isinstance(dr, (NablaNode, TriangleNode)):
            c, q = dr.child, dr.pos
            jc = self.of(c)
            d1, j1 = self.reduce(dl, jl, c, jc, lpos, rpos)
            q2 = off + q - (1 if rpos < q else 0)
            m_old = jc.members[q]
            m_new = j1.members[q2]
            alpha = free_subs(m_new)[free_subs(m_old).index(dr.alpha)]
            beta = free_sups(m_new)[free_sups(m_old).index(dr.beta)]
            if isinstance(dr, NablaNode):
                j2 = apply_nabla(j1, q2, alpha, beta)
                return self.mk(NablaNode(d1, q2, alpha, beta), j2), j2
            j2 = apply_triangle(j1, q2, alpha, beta)
            return self.mk(TriangleNode(d1, q2, alpha, beta), j2), j2
        if isinstance(dr, TensorNode):
            a, b, rp2 = dr.left, dr.right, dr.left_pos
            ja, jb = self.of(a), self.of(b)
            na = len(ja.members)
            if rpos < na:  # cut member from the tensor's left premise
                d1, j1 = self.reduce(dl, jl, a, ja, lpos, rpos)
                rp3 = off + rp2 - (1 if rpos < rp2 else 0)
                j2 = apply_tensor(j1, jb, rp3)
                return self.mk(TensorNode(d1, b, rp3), j2), j2
            bp = rpos - na + 1
            d1, j1 = self.reduce(dl, jl, b, jb, lpos, bp)
            # bring the product's right component to the front, then rebuild
            d1, j1 = self.moved(d1, j1, off, 0)
            j2 = apply_tensor(ja, j1, rp2)
            d2 = self.mk(TensorNode(a, d1, rp2), j2)
            # blocks: A(with product member) | L-minus | B-rest; want L | A | B
            current = [("A", q) for q in range(na)]
            current += [("L", i) for i in range(nl - 1)]
            current += [("B", i) for i in range(len(jb.members) - 1 - 1)]
            want = [t for t in current if t[0] == "L"]
            want += [t for t in current if t[0] == "A"]
            want += [t for t in current if t[0] == "B"]
            return self.reorder_tokens(d2, j2, current, want)
        raise BadStep(f"unexpected node in cut reduction: {type(dr).__name__}")

    # -- principal reductions ----------------------------------------------------

    def _principal(self, dl, jl, dr, jr, lpos, rpos):
        nl, nr = len(jl.members), len(jr.members)
        a = jl.members[lpos]
        if isinstance(dl, ParNode) and isinstance(dr, TensorNode):
            # left par member against its dual product: two smaller cuts
            cl = dl.child
            jcl = self.of(cl)
            crl, crr = dr.left, dr.right
            jcrl, jcrr = self.of(crl), self.of(crr)
            d1, j1 = self.reduce(cl, jcl, crr, jcrr, lpos, 0)
            d2, j2 = self.reduce(d1, j1, crl, jcrl, lpos, dr.left_pos)
            ncrr = len(jcrr.members) - 1
            ncrl = len(jcrl.members) - 1
            current = [("L", i) for i in range(nl - 1)]  # jcl minus both components
            current += [("RR", i) for i in range(ncrr)]
            current += [("RL", i) for i in range(ncrl)]
            want = [t for t in current if t[0] == "L"]
            want += [t for t in current if t[0] == "RL"]
            want += [t for t in current if t[0] == "RR"]
            return self.reorder_tokens(d2, j2, current, want)
        if isinstance(dl, TensorNode) and isinstance(dr, ParNode):
            cll, clr = dl.left, dl.right
            jcll, jclr = self.of(cll), self.of(clr)
            cr = dr.child
            jcr = self.of(cr)
            d1, j1 = self.reduce(clr, jclr, cr, jcr, 0, rpos)
            pos_dual = len(jclr.members) - 1 + rpos
            return self.reduce(cll, jcll, d1, j1, dl.left_pos, pos_dual)
        if isinstance(dl, (NablaNode, TriangleNode)) and isinstance(
            dr, (TriangleNode, NablaNode)
        ):
            cl, cr = dl.child, dr.child
            return self.reduce(cl, self.of(cl), cr, self.of(cr), lpos, rpos)
        raise BadStep(
            f"principal cut between {type(dl).__name__} and {type(dr).__name__}"
        )
