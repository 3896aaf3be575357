"""Inverting S-elements one at a time, and the ring Z[t, 1/t, 1/(1 + t)]."""
from paraclass.laurent import lp
from paraclass.metabelian.embedding import embedding_demo
from paraclass.metabelian.telescope import telescope_chain

rep = telescope_chain("quad:10", [lp(5, 2)], 4)
print("A = Z[sqrt 10], s = 2t + 5")
for link in rep.links:
    print(f"  A_{link.k} in A_{link.k + 1}: proper {link.proper}, index {link.index}, square commutes {link.square_ok}")
print("unit denominator gives a constant chain:", telescope_chain("quad:10", [lp(1)], 3).constant)

demo = embedding_demo()
for k, v in sorted(demo.checks.items()):
    print(f"  {k}: {v}")
for step in demo.derivation:
    print(f"  [{step.rule:9}] {step.expr}")
print("conclusion:", demo.to_dict()["conclusion"])
