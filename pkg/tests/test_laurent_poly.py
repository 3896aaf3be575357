from fractions import Fraction

import pytest

from oracles import cyclotomic_sympy, frac_eval, schoolbook_mul, sympy_structure
from paraclass.intmat import AbelianGroupStructure, cokernel_structure
from paraclass.laurent import (
    LaurentPoly,
    NotFinitelyGenerated,
    cyclotomic_poly,
    end_coeffs,
    finite_quotient,
    lp,
    lp_eval,
    lp_mul,
)


def as_dict(p):
    return dict(p.items())


def test_canonical_form_strips_zeros():
    p = LaurentPoly([0, 0, 3, 0, 5, 0], -2)
    assert p.coeffs == (3, 0, 5) and p.min_deg == 0
    z = LaurentPoly([0, 0], 7)
    assert z.coeffs == () and z.min_deg == 0 and z.is_zero()


def test_mul_examples():
    assert lp_mul(lp(-2, 1), lp(2, 1)) == lp(-4, 0, 1)
    p = LaurentPoly([3, -1, 4], -1)
    assert lp_mul(p, LaurentPoly.const(1)) == p
    assert lp_mul(lp(-1, 2), lp(2, -1)) == lp(-2, 5, -2)


def test_mul_matches_schoolbook():
    p = LaurentPoly([1, -2, 0, 7], -3)
    q = LaurentPoly([5, 0, -1], 2)
    assert as_dict(p * q) == schoolbook_mul(as_dict(p), as_dict(q))


def test_eval_examples():
    assert lp_eval(lp(-1, -6, 1), 1) == -6
    assert lp_eval(cyclotomic_poly(6), 1) == 1
    assert lp_eval(lp(-1, 1), 1) == 0
    assert lp_eval(LaurentPoly([1], -2), Fraction(1, 3)) == 9


def test_cyclotomic_examples():
    assert cyclotomic_poly(1) == lp(-1, 1)
    assert cyclotomic_poly(4) == lp(1, 0, 1)
    assert cyclotomic_poly(23) == LaurentPoly([1] * 23)


@pytest.mark.parametrize("n", range(1, 41))
def test_cyclotomic_against_sympy(n):
    assert list(cyclotomic_poly(n).coeffs) == cyclotomic_sympy(n)


def test_finite_quotient_examples():
    assert finite_quotient(lp(-1, -6, 1), lp(-1, 1)) == AbelianGroupStructure(0, (6,))
    assert finite_quotient(lp(-2, 1), lp(-1, 1)).is_trivial
    assert finite_quotient(LaurentPoly(), lp(-1, 1)) == AbelianGroupStructure(1, ())


def test_finite_quotient_wreath_ideal():
    # Z[t,1/t]/(2t - 1, 2 - t): t = 2 and 4 = 1, so Z/3
    assert finite_quotient(lp(-1, 2), lp(2, -1)) == AbelianGroupStructure(0, (3,))


def test_finite_quotient_rejects_infinite():
    with pytest.raises(NotFinitelyGenerated):
        finite_quotient(lp(2, 1), lp(4, 2))


def test_end_coeffs():
    assert end_coeffs(lp(-2, 1)) == (-2, 1)
    assert end_coeffs(lp(-1, -6, 1)) == (-1, 1)
    assert end_coeffs(LaurentPoly([3, 0, 0, 5], -1)) == (3, 5)


def test_exact_div():
    p = lp(-1, 2) * lp(2, -1)
    assert p.exact_div(lp(-1, 2)) == lp(2, -1)
    with pytest.raises(ValueError):
        LaurentPoly.const(1).exact_div(lp(1, 1))


def test_cokernel_against_sympy():
    rows = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    s = cokernel_structure(rows, 3)
    assert (s.free_rank, s.invariant_factors) == sympy_structure(rows, 3)


def test_structure_invariants():
    s = AbelianGroupStructure.from_diagonal([6, 4, 0, 1])
    assert s.invariant_factors == (2, 12) and s.free_rank == 1
    with pytest.raises(ValueError):
        AbelianGroupStructure(0, (4, 6))
    assert AbelianGroupStructure(0, (2, 6)).order == 12


def test_finite_quotient_unit_resultant():
    # resultant of 3t - 2 and 4t - 3 is ±1, so the ideal is everything
    assert finite_quotient(lp(-2, 3), lp(-3, 4)).is_trivial
