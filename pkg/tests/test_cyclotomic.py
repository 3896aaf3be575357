import pytest

from oracles import norm_search, prime_power
from paraclass.class_group import imag_form_class_number
from paraclass.cyclotomic import cyclo23_witness, cyclo_res_nilpotent
from paraclass.published import CYCLOTOMIC_RIGID_EXTRA


def test_examples():
    r = cyclo_res_nilpotent(9)
    assert r.phi_at_one == 3 and r.residually_nilpotent
    r = cyclo_res_nilpotent(6)
    assert r.phi_at_one == 1 and not r.residually_nilpotent
    r = cyclo_res_nilpotent(23)
    assert r.phi_at_one == 23 and r.residually_nilpotent and r.witness["passed"]


@pytest.mark.parametrize("n", range(2, 101))
def test_verdict_is_prime_power(n):
    assert cyclo_res_nilpotent(n).residually_nilpotent == prime_power(n)


def test_rigid_set_is_sourced_not_computed():
    for n in range(2, 101):
        r = cyclo_res_nilpotent(n)
        expected = prime_power(n) and (n < 23 or n in CYCLOTOMIC_RIGID_EXTRA)
        assert (r.para_class_count == 1) == expected
        assert (r.count_source == "paper_sourced") == expected


def test_cyclo23_witness():
    w = cyclo23_witness()
    assert w.passed
    assert imag_form_class_number(-23) == 3
    # x^2 + xy + 6y^2 = 2 has no solution: the form is >= 6 y^2 - y^2/4 > 2 unless y = 0
    assert not norm_search(-1, 6, 2, 30)
    assert not w.principal and w.unit_ideal_principal


def test_n_below_two_rejected():
    with pytest.raises(ValueError):
        cyclo_res_nilpotent(1)
