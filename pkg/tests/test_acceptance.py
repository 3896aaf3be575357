"""Acceptance criteria 1-8.  Run directly for one PASS/FAIL line per criterion."""
from __future__ import annotations

import subprocess
import sys
import time
from pathlib import Path

import pytest

from oracles import hilbert_ranks_oracle, prime_power
from paraclass.class_group import compute_class_group
from paraclass.cyclotomic import cyclo_res_nilpotent
from paraclass.intmat import AbelianGroupStructure
from paraclass.laurent import finite_quotient, lp
from paraclass.metabelian.lcs import hilbert_coeffs, is_finitely_presentable
from paraclass.metabelian.para import para_inclusion_check
from paraclass.para_class import classify_para, realize_para_group
from paraclass.quad_order import RingElement, laurent_model, maximal_order
from paraclass.report import run_scan, submodule_presentability, verify_example
from paraclass.ideals import ideal_from_generators

HERE = Path(__file__).parent


def criterion_1():
    t0 = time.perf_counter()
    got = {}
    for d in (2, 3, 13, 23, 29, 53, 77, 10, 15, 26, 35, 85, 82):
        got[d] = compute_class_group(maximal_order(d)).structure
    dt = time.perf_counter() - t0
    ok = all(got[d].is_trivial for d in (2, 3, 13, 23, 29, 53, 77))
    ok &= all(got[d] == AbelianGroupStructure(0, (2,)) for d in (10, 15, 26, 35, 85))
    ok &= got[82] == AbelianGroupStructure(0, (4,))
    return ok and dt < 5, f"class groups match, {dt:.2f} s"


def criterion_2():
    t0 = time.perf_counter()
    rep = run_scan(100, 2)
    dt = time.perf_counter() - t0
    lau = rep["diff"]["laurent"]
    certified = all(
        e["certificate"]["checked"] and e["certificate"]["fundamental_unit"] and e["certificate"]["index"] >= 1
        for e in lau["disagreements"]
    )
    ok = lau["agreeing_published_entries"] >= 12 and certified and not rep["failures"] and dt < 10
    return ok, f"{lau['agreeing_published_entries']}/13 agree, disagreements {[e['d'] for e in lau['disagreements']]}, {dt:.2f} s"


def criterion_3():
    t0 = time.perf_counter()
    res = verify_example("d10")
    R = laurent_model(10)
    J = ideal_from_generators(R, [RingElement(3, 0), RingElement(-2, 1)])
    r = realize_para_group(J, basis=[RingElement(3, 0), RingElement(-2, 1)])
    exact = (r.action_on_J, r.action_on_A, r.inclusion) == ([[2, 3], [3, 4]], [[0, 1], [1, 6]], [[3, -2], [0, 1]])
    deep = para_inclusion_check(J, "quad:10", depth=10).passed
    dt = time.perf_counter() - t0
    return res.passed and exact and deep and dt < 2, f"matrices exact, depth 10 inclusion, {dt:.2f} s"


def criterion_4():
    bad = [n for n in range(2, 101) if cyclo_res_nilpotent(n).residually_nilpotent != prime_power(n)]
    return not bad, f"n in 2..100, mismatches {bad}"


def criterion_5():
    bs = is_finitely_presentable("bs12").value
    wr = is_finitely_presentable("wreath_zz").value
    R = laurent_model(10)
    J = ideal_from_generators(R, [RingElement(3, 0), RingElement(-2, 1)])
    act = realize_para_group(J).action_on_J
    pair10 = is_finitely_presentable({"module": {"kind": "lattice", "action": act}}).value == is_finitely_presentable("quad:10").value
    q = finite_quotient(lp(-1, 2), lp(2, -1))
    pairw = submodule_presentability("wreath_zz", q).value == wr
    ok = bs is True and wr is False and pair10 and pairw
    return ok, f"bs12 {bs}, wreath_zz {wr}, d=10 pair agrees {pair10}, wreath pair agrees {pairw}"


def criterion_6():
    want = {"z_inv_n:3": 1, "lamplighter": 1, "zc2": 1, "unipotent2": 1, "quad:10": 2, "quad:82": 4}
    got = {p: classify_para(p).para_class_count for p in want}
    return got == want, str(got)


def criterion_7():
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", str(HERE / "test_properties.py")],
        capture_output=True, text=True,
    )
    dt = time.perf_counter() - t0
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    return proc.returncode == 0 and dt < 60, f"{tail} ({dt:.1f} s wall)"


def criterion_8():
    h = hilbert_coeffs("wreath_zz", 10)
    oracle = hilbert_ranks_oracle([], 0, 10)
    ok = list(h.ranks) == [2] + [1] * 9 == oracle and h.render() == "2t + t²/(1−t)"
    return ok, f"ranks {list(h.ranks)}, series {h.render()}, SNF oracle {oracle}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("k", range(1, 9), ids=[f"criterion_{k}" for k in range(1, 9)])
def test_acceptance(k, record_property):
    ok, detail = CRITERIA[k - 1]()
    record_property("detail", detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)
    sys.exit(1 if failed else 0)
