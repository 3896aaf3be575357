import pytest

from oracles import real_class_number, squarefree
from paraclass.class_group import class_number_by_cycles, compute_class_group, imag_form_class_number, minkowski_bound
from paraclass.ideals import ideal_pow, is_principal
from paraclass.intmat import AbelianGroupStructure
from paraclass.quad_order import laurent_model, maximal_order


def test_minkowski_examples():
    assert minkowski_bound(laurent_model(10)) == 3
    assert minkowski_bound(maximal_order(-23)) == 3
    assert minkowski_bound(maximal_order(2)) == 1


def test_class_group_examples():
    assert compute_class_group(laurent_model(10)).structure == AbelianGroupStructure(0, (2,))
    assert compute_class_group(maximal_order(2)).structure.is_trivial
    assert compute_class_group(laurent_model(82)).structure == AbelianGroupStructure(0, (4,))


def test_imaginary_form_counts():
    assert imag_form_class_number(-23) == 3
    assert imag_form_class_number(-4) == 1
    assert imag_form_class_number(-3) == 1


@pytest.mark.parametrize("d", [d for d in range(2, 100) if squarefree(d)])
def test_real_class_number_against_form_cycles(d):
    R = maximal_order(d)
    cl = compute_class_group(R)
    assert cl.order == real_class_number(d)
    assert cl.order == class_number_by_cycles(R)
    for cert in cl.certificates:
        res = is_principal(ideal_pow(cert.generator, cert.order))
        assert res.principal and ideal_pow(cert.generator, cert.order).contains(cert.principal_generator)


@pytest.mark.parametrize("d", [-1, -2, -3, -5, -6, -7, -14, -17, -21, -23, -26, -29, -30, -47, -71, -79, -89])
def test_imaginary_order_matches_form_count(d):
    R = maximal_order(d)
    assert compute_class_group(R).order == imag_form_class_number(R.disc)


def test_exponent_bound_is_a_hard_error():
    # Q(sqrt -101) has class number 14, beyond the relation exponent bound of 12
    with pytest.raises(RuntimeError):
        compute_class_group(maximal_order(-101))
