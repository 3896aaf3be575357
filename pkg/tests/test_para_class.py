from math import gcd

import pytest

from paraclass.intmat import AbelianGroupStructure, det, matmul
from paraclass.ideals import ideal_from_generators, ideal_norm, ideals_equivalent, iter_ideals, unit_ideal
from paraclass.laurent import lp, lp_eval
from paraclass.metabelian.groups import OutOfScope
from paraclass.metabelian.lcs import lcs_quotient
from paraclass.metabelian.para import NotSFractional
from paraclass.para_class import (
    Z_C2,
    aug_image,
    classify_para,
    is_s_fractional,
    is_s_rigid,
    realize_para_group,
    s_class_group,
    z_c2_bounded_family,
)
from paraclass.published import LAURENT_D
from paraclass.quad_order import RingElement, is_laurent_domain, laurent_model, make_ring

E = RingElement
D10 = laurent_model(10)
J10 = ideal_from_generators(D10, [E(3, 0), E(-2, 1)])
LAURENT_COMPUTED = [d for d in range(2, 100) if d in (2, 3, 5, 10, 13, 15, 21, 26, 29, 35, 53, 77, 82, 85)]


def test_aug_image_examples():
    A = aug_image(D10)
    assert ideal_norm(A) == 6 and A.contains(E(-1, 1))
    assert aug_image(Z_C2).rank == 1
    assert ideal_norm(aug_image(make_ring(lp(1, 1, 1)))) == 3


def test_s_fractional_examples():
    assert is_s_fractional(J10)
    s = E(5, 2)  # 2t + 5 lies in J and is 1 modulo t - 1 (7 = 1 mod 6)
    assert J10.contains(s) and (s.x + s.y - 1) % 6 == 0
    assert not is_s_fractional(aug_image(D10))
    assert is_s_fractional(unit_ideal(D10))


@pytest.mark.parametrize("d,order", [(10, 2), (2, 1), (82, 4)])
def test_s_class_group_examples(d, order):
    rep = s_class_group(laurent_model(d))
    assert rep.s_classes.order == order
    assert rep.comparison == "isomorphic"


@pytest.mark.parametrize("d", LAURENT_COMPUTED)
def test_s_class_group_invariants(d):
    rep = s_class_group(laurent_model(d))
    assert rep.full_classes.order % rep.s_classes.order == 0
    assert rep.readings_agree
    assert len(rep.representatives) == rep.s_classes.order
    assert all(is_s_fractional(J) for J in rep.representatives)
    # every class meets an S-fractional ideal
    reps = rep.representatives
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            assert not ideals_equivalent(a, b)


@pytest.mark.parametrize("d", LAURENT_COMPUTED)
def test_second_lcs_quotient_has_order_f1(d):
    f = laurent_model(d).f
    assert lcs_quotient(f"quad:{d}", 2).order == abs(lp_eval(f, 1))


def test_realize_examples():
    r = realize_para_group(J10, basis=[E(3, 0), E(-2, 1)])
    assert r.action_on_J == [[2, 3], [3, 4]]
    assert r.action_on_A == [[0, 1], [1, 6]]
    assert r.inclusion == [[3, -2], [0, 1]]
    u = realize_para_group(unit_ideal(D10))
    assert u.action_on_J == u.action_on_A and u.inclusion == [[1, 0], [0, 1]]


def test_realize_d82_representatives():
    R = laurent_model(82)
    for J in s_class_group(R).representatives:
        r = realize_para_group(J)
        assert abs(det(r.action_on_J)) == 1
        assert matmul(r.inclusion, r.action_on_J) == matmul(r.action_on_A, r.inclusion)


def test_realize_rejects_non_s_fractional():
    with pytest.raises(NotSFractional):
        realize_para_group(aug_image(D10))


def test_rigidity_examples():
    assert is_s_rigid("unipotent2").value
    assert not is_s_rigid("quad:10").value
    assert is_s_rigid({"module": {"kind": "lattice", "action": [[1]]}}).value


@pytest.mark.parametrize(
    "preset,count",
    [("z_inv_n:3", 1), ("lamplighter", 1), ("zc2", 1), ("unipotent2", 1), ("quad:10", 2), ("quad:82", 4), ("quad:2", 1)],
)
def test_classify_counts(preset, count):
    rep = classify_para(preset)
    assert rep.para_class_count == count
    if rep.path == "dedekind":
        assert rep.para_class_count == rep.s_class_group.order
        assert len(rep.representatives) == count
        assert all(r["commutes"] for r in rep.representatives)


def test_classify_report_schema():
    d = classify_para("quad:10").to_dict()
    for key in ("subject", "flags", "class_group", "s_class_group", "para_class_count", "representatives", "provenance"):
        assert key in d
    assert set(d["flags"]) == {"laurent", "residually_nilpotent", "finitely_presentable"}
    assert all({"hnf", "action", "inclusion"} <= set(r) for r in d["representatives"])


@pytest.mark.parametrize("preset", ["wreath_zz", "quad:23", "cyclo:23"])
def test_classify_out_of_scope(preset):
    with pytest.raises(OutOfScope):
        classify_para(preset)


def test_cyclotomic_counts_are_quoted_not_computed():
    rep = classify_para("cyclo:25")
    assert rep.para_class_count == 1 and rep.provenance["para_class_count"] == "paper_sourced"


def test_zc2_bounded_family():
    fam = z_c2_bounded_family()
    assert fam.count > 0 and fam.all_principal
    assert not is_s_fractional(ideal_from_generators(Z_C2, [E(2, 0), E(1, 1)]))


def _s_fractional_by_image(J, m):
    # image of J = Z a + Z (b + c t) in R/(t - 1) = Z/m is generated by a and b + c
    a, b, c = J.hnf_tuple()
    return gcd(gcd(a, b + c), m) == 1


@pytest.mark.parametrize("d", [2, 10, 82])
def test_count_matches_brute_force_enumeration(d):
    R = laurent_model(d)
    m = int(abs(lp_eval(R.f, 1)))
    ideals = [J for J in iter_ideals(R, 30) if _s_fractional_by_image(J, m)]
    assert all(is_s_fractional(J) for J in ideals)
    classes = []
    for J in ideals:
        if not any(ideals_equivalent(J, K) for K in classes):
            classes.append(J)
    assert len(classes) == classify_para(f"quad:{d}").para_class_count


def test_scan_laurent_set_contains_published_except_23():
    assert [d for d in LAURENT_D if not is_laurent_domain(d).laurent] == [23]
