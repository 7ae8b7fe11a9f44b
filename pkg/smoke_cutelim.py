import time

from tengram.types import Lit, Atom, Bin, PAR, TENSOR, NABLA, TRI, bind, dual
from tengram.macros import eta_id
from tengram.derivation import (
    CutNode,
    EqNode,
    IdLeaf,
    MoveNode,
    ParNode,
    TensorNode,
    NablaNode,
    TriangleNode,
    replay,
)
from tengram.cutelim import eliminate_cuts
from tengram.judgement import alpha_equal


def atom(name, sup, sub, pos=True):
    return Atom(Lit(name, len(sup), len(sub), pos), tuple(sup), tuple(sub))


def cut_count(d):
    n = 0
    stack = [d]
    while stack:
        x = stack.pop()
        if isinstance(x, CutNode):
            n += 1
            stack += [x.left, x.right]
        elif isinstance(x, TensorNode):
            stack += [x.left, x.right]
        elif isinstance(x, (ParNode, NablaNode, TriangleNode)):
            stack.append(x.child)
        elif isinstance(x, MoveNode):
            stack.append(x.child)
        elif isinstance(x, EqNode):
            stack.append(x.child)
    return n


def check(label, d):
    j = replay(d)
    t0 = time.perf_counter()
    out = eliminate_cuts(d)
    dt = time.perf_counter() - t0
    j2 = replay(out)
    assert cut_count(out) == 0, label
    assert alpha_equal(j, j2), (label, str(j), str(j2))
    print(f"OK {label}: {dt * 1000:6.1f}ms  concl={j2}")


def mk_types():
    a1 = atom("p", ["i"], ["j"])
    a2 = dual(atom("p", ["i"], ["j"]))
    a3 = atom("q", ["i", "k"], ["j"])
    a4 = Bin(PAR, atom("p", ["i"], ["j"]), atom("r", ["k"], ["l"]))
    a5 = Bin(TENSOR, atom("p", ["i"], ["j"]), atom("r", ["k"], ["l"]))
    a6 = Bin(
        PAR,
        Bin(TENSOR, atom("p", ["i"], ["j"]), atom("q", ["k"], ["l"], False)),
        atom("r", ["m"], ["n"]),
    )
    body7 = Bin(PAR, atom("p", ["i"], ["a"], False), atom("p", ["b"], ["j"]))
    a7 = bind(NABLA, body7, "a", "b")
    body8 = Bin(PAR, atom("q", ["i"], ["a"], False), atom("q", ["b"], ["j"]))
    a8 = bind(TRI, body8, "a", "b")
    # binder nested under a tensor, then bound again
    inner = Bin(
        TENSOR,
        bind(NABLA, Bin(PAR, atom("p", ["x"], ["a"], False), atom("p", ["b"], ["y"])), "a", "b"),
        atom("s", ["c"], ["u"]),
    )
    a9 = bind(TRI, Bin(PAR, inner, atom("t", ["v"], ["c2"])), "u", "v")
    return [a1, a2, a3, a4, a5, a6, a7, a8, a9]


def main():
    for k, a in enumerate(mk_types()):
        e1, e2 = eta_id(a), eta_id(a)
        d = CutNode(e1.deriv, e2.deriv, 1, 0)
        check(f"eta-cut-{k} ({a})", d)

    # cut against a bare identity leaf
    e = eta_id(atom("p", ["i"], ["j"]))
    leaf = IdLeaf("p", ("x",), ("y",), ("z",), ("w",))
    check("id-left", CutNode(leaf, e.deriv, 1, 0))
    check("id-right", CutNode(e.deriv, leaf, 1, 0))

    # chains of cuts
    a = Bin(PAR, atom("p", ["i"], ["j"]), atom("r", ["k"], ["l"]))
    c1 = CutNode(eta_id(a).deriv, eta_id(a).deriv, 1, 0)
    c2 = CutNode(c1, eta_id(a).deriv, 1, 0)
    c3 = CutNode(c2, eta_id(a).deriv, 1, 0)
    check("chain-3", c3)

    # cut below other rules
    check("under-par", ParNode(c1, 0))
    c1b = CutNode(eta_id(a).deriv, eta_id(a).deriv, 1, 0)
    check("under-tensor", TensorNode(c1, c1b, 1))

    # premise ending in a tensor that does not introduce the cut member
    ep, eq = eta_id(atom("p", ["i"], ["j"])), eta_id(atom("q", ["k"], ["l"]))
    dt = TensorNode(ep.deriv, eq.deriv, 1)  # |- ~p, p' x ~q, q'
    check("commute-left-tensor-A", CutNode(dt, eta_id(atom("p", ["i"], ["j"])).deriv, 0, 1))
    check("commute-left-tensor-B", CutNode(dt, eta_id(atom("q", ["k"], ["l"])).deriv, 2, 0))
    dt2 = TensorNode(eta_id(atom("p", ["i"], ["j"])).deriv, eta_id(atom("q", ["k"], ["l"])).deriv, 1)
    check("commute-right-tensor-A", CutNode(eta_id(atom("p", ["i"], ["j"])).deriv, dt2, 1, 0))
    check("commute-right-tensor-B", CutNode(eta_id(atom("q", ["k"], ["l"])).deriv, dt2, 0, 2))

    # moved / relabelled premises
    m = MoveNode(c1, 0, 1)  # |- A'', ~A
    check("moved-premise", CutNode(m, eta_id(a).deriv, 0, 0))
    t = replay(EqNode(c1, replay(c1)))
    check("eq-premise", CutNode(EqNode(c1, t), eta_id(a).deriv, 1, 0))

    # quantifier commutes: cut a member that is not the freshly bound one
    b7 = bind(NABLA, Bin(PAR, atom("p", ["i"], ["a"], False), atom("p", ["b"], ["j"])), "a", "b")
    e7 = eta_id(b7)
    check("quantifier-other-member", CutNode(e7.deriv, eta_id(b7).deriv, 1, 0))

    print("all cut elimination smoke checks passed")


if __name__ == "__main__":
    main()
