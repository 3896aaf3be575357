"""Z wr Z: a para-equivalent subgroup from a non-principal ideal of Z[t, 1/t]."""
from paraclass.laurent import finite_quotient, lp
from paraclass.metabelian.laurent_ideals import laurent_ideal_principal
from paraclass.metabelian.lcs import hilbert_coeffs, is_finitely_presentable, lcs_quotient
from paraclass.metabelian.para import para_inclusion_check, para_witness

gens = [lp(-1, 2), lp(2, -1)]  # 2t - 1, 2 - t
res = laurent_ideal_principal(gens)
print("J = (2t - 1, 2 - t) principal?", res.principal, "|", res.obstruction)
print("normal form (m, a) with J = (m, t - a):", res.normal_form)
print("Z[t,1/t] / J =", finite_quotient(*gens))

print("inclusion levels 1..6 bijective:", para_inclusion_check(gens, "wreath_zz").passed)
w = para_witness(gens, "wreath_zz")
print(f"reverse inclusion through s = {w.s}: {w.backward.passed}")

for n in range(1, 6):
    print(f"  gamma_{n}/gamma_{n + 1} = {lcs_quotient('wreath_zz', n)}")
h = hilbert_coeffs("wreath_zz", 10)
print("ranks", list(h.ranks), "series", h.render())
print("finitely presentable:", is_finitely_presentable("wreath_zz").reason)
