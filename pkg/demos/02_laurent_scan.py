"""Which real quadratic rings of integers are Z[u, 1/u] for a unit u, for d < 100."""
from paraclass.report import run_scan

rep = run_scan(100, jobs=2)
print(f"{'d':>3} {'unit (x + y w)':>22} {'index':>6} {'Cl':>6} {'count':>6}")
for row in rep["rows"]:
    cg = row.get("class_group") or {}
    unit = row["fundamental_unit"]
    print(f"{row['d']:>3} {str(unit):>22} {row['laurent_certificate']['index']:>6} "
          f"{cg.get('order', '-'):>6} {row['para_class_count'] if row['para_class_count'] is not None else '-':>6}")

lau = rep["diff"]["laurent"]
print("\ncomputed Laurent d:", lau["computed"])
print("published Laurent d:", lau["published"])
for e in lau["disagreements"]:
    c = e["certificate"]
    side = "computed only" if e["computed"] else "published only"
    print(f"  d = {e['d']} ({side}): eps = {c['fundamental_unit']}, [D : Z[eps]] = {c['index']}, "
          f"confirmed by direct search: {c['checked']}")
