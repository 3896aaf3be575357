"""T acting on Z[zeta_n]: residually nilpotent exactly for prime powers; n = 23 in the quadratic subfield."""
from paraclass.cyclotomic import cyclo23_witness, cyclo_res_nilpotent

rows = [cyclo_res_nilpotent(n) for n in range(2, 41)]
print("prime powers (residually nilpotent):", [r.n for r in rows if r.residually_nilpotent])
print("others (Phi_n(1) = 1):", [r.n for r in rows if not r.residually_nilpotent])

w = cyclo23_witness()
print(f"Q(sqrt -23): class number {w.class_number}; (2, w) with HNF {w.ideal_hnf} principal? {w.principal}")
print(f"meets 1 + (zeta - 1): {w.s_fractional}, via s = {w.s_element.x} + {w.s_element.y} w")
print(w.note)
