"""Two groups that no lower central quotient can tell apart: T acting on Z[sqrt 10] and on an ideal J."""
from paraclass.ideals import ideal_from_generators, ideal_pow, is_principal
from paraclass.metabelian.para import para_inclusion_check, para_witness
from paraclass.para_class import classify_para, realize_para_group
from paraclass.quad_order import RingElement, is_laurent_domain

cert = is_laurent_domain(10)
R = cert.ring
print(f"fundamental unit 3 + sqrt 10, minimal polynomial {R.f}: A = {R.describe()}")

J = ideal_from_generators(R, [RingElement(3, 0), RingElement(-2, 1)])
print(f"J = (3, t - 2), HNF {J.hnf_tuple()}, principal? {is_principal(J).principal}")
g = is_principal(ideal_pow(J, 2)).generator
print(f"J^2 = ({g.x} {'-' if g.y < 0 else '+'} {abs(g.y)} t)")

r = realize_para_group(J, basis=[RingElement(3, 0), RingElement(-2, 1)])
print("t on J:", r.action_on_J, " t on A:", r.action_on_A, " J -> A:", r.inclusion)

inc = para_inclusion_check(J, "quad:10", depth=8)
for lvl in inc.levels:
    print(f"  level {lvl.k}: J/JI^k = {lvl.source}, A/AI^k = {lvl.target}, bijective {lvl.bijective}")

w = para_witness(J, "quad:10")
print(f"s = {w.s} lies in J and is 1 modulo t - 1; s A -> J passes: {w.backward.passed}")

rep = classify_para("quad:10")
print(f"para-classes: {rep.para_class_count} (Cl = {rep.class_group}, Cl_S = {rep.s_class_group})")
