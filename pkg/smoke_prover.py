import time

from tengram.derivation import check, replay, is_id_instance
from tengram.judgement import alpha_equal
from tengram.macros import eta_id
from tengram.prover import from_axioms, lexicalize, prove, ext_from_axioms
from tengram.syntax import format_judgement, parse_judgement, parse_type
from tengram.derivation import AxiomLeaf

def show(label, j, restricted=False, expect=True):
    d = prove(j, restricted=restricted)
    ok = d is not None
    if ok:
        concl = check(d, goal=j, restricted=restricted)
        exact = concl == j
    else:
        exact = None
    status = "OK" if ok == expect else "FAIL"
    print(f"{status} {label}: derivable={ok} exact={exact}")

# identity shapes
j = parse_judgement("d_J^j*d_i^I |- ~p^i_j, p^J_I")
show("id 1,1", j)
show("id reordered", parse_judgement("d_J^j*d_i^I |- p^J_I, ~p^i_j"))

# eta judgements are always derivable
for s in [
    "p^i_j",
    "p^i_j * q^a",
    "p^i_j % ~q_a",
    "nab^a_b(p^b_a % ~q^x_y)",
    "tri^a_b(p^b_a * q^x)",
    "nab^a_b((p^b_c * r^x_a) % ~q_y)",
    "(p^i % q_j) * ~r^k",
]:
    a = parse_type(s)
    ej = eta_id(a).judgement
    show(f"eta {s}", ej)
    show(f"eta {s} (restricted)", ej, restricted=True)

# underivable goals
show("tensor of duals", parse_judgement("d_J^j*d_i^I |- ~p^i_j * p^J_I"), expect=False)
show("lone atom", parse_judgement("[w]_i^j |- p^i_j"), expect=False)
show("par of same polarity", parse_judgement("d_b^c*d_d^a |- p^b_c % p^d_a"), expect=False)

# par of duals IS derivable (single member)
show("par of duals", parse_judgement("d_J^j*d_i^I |- ~p^i_j % p^J_I"))
# ... but not in restricted mode via a lone quantifier member
jq = parse_judgement("d_i^I |- nab^a_b(~p^i_a % p^b_I)")
show("lone quantified member", jq)
show("lone quantified member (restricted)", jq, restricted=True, expect=False)

# singular goal: loop created by the dual quantifier
js = parse_judgement("[u] |- tri^a_b(p^b_a)")
# need an axiom-ish base... actually: |- tri(p^b_a) needs |- p with a loop — underivable purely
# simplest derivable singular: eta on a triangle type has no loop; construct directly:
# d_b^a |- "p^a_b"?? skip: test that prove at least terminates on a looped goal
d = prove(js)
print("loop goal terminates:", d is None or check(d, goal=js) is not None)

# 4.1-style grammar parse through from_axioms
axioms = {
    "loves": parse_judgement("[loves]_l^r*d^k_j*d^i_s |- S_i^j, ~NP^l_k, ~NP_r^s"),
    "mary": parse_judgement("[Mary]^i_j |- NP^j_i"),
    "john": parse_judgement("[John]^i_j |- NP^j_i"),
}
goal = parse_judgement("[John loves Mary]_j^i |- S_i^j")
t0 = time.time()
res = from_axioms(goal, axioms)
dt = time.time() - t0
assert res is not None
deriv, used = res
concl = check(deriv, goal=goal, axioms=axioms, counts=used)
print(f"OK 4.1 parse in {dt:.3f}s used={dict(used)} concl={format_judgement(concl)}")
print("   exact:", concl == goal)

# a word not in the language
bad = parse_judgement("[Mary loves]_j^i |- S_i^j")
print("OK reject:", from_axioms(bad, axioms) is None)
bad2 = parse_judgement("[John Mary]_j^i |- S_i^j")
print("OK reject2:", from_axioms(bad2, axioms) is None)

# single-axiom identity parse
goal1 = parse_judgement("[Mary]^a_b |- NP^b_a")
res1 = from_axioms(goal1, axioms)
assert res1 is not None
print("OK single-axiom:", dict(res1[1]), format_judgement(check(res1[0], goal=goal1, axioms=axioms)))

# lexicalize the loves axiom
lexj, lexd = lexicalize(axioms["loves"], AxiomLeaf("loves"))
print("lexicalized loves:", format_judgement(lexj))
print("   replay ok:", check(lexd, goal=lexj, axioms=axioms) == lexj)
print("   lexical:", lexj.term.is_lexical())

# extended parse against the lexicalized grammar
lex_axioms = {}
wrappers = {}
for name, j in axioms.items():
    lj, ld = lexicalize(j, AxiomLeaf(name))
    lex_axioms[name] = lj
    wrappers[name] = ld
t0 = time.time()
res2 = ext_from_axioms(goal, lex_axioms)
dt = time.time() - t0
assert res2 is not None
deriv2, used2 = res2
concl2 = check(deriv2, goal=goal, axioms=lex_axioms, counts=used2)
print(f"OK ext 4.1 parse in {dt:.3f}s used={dict(used2)} exact={concl2 == goal}")
