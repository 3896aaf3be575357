import pytest

from oracles import pell_unit, squarefree
from paraclass.laurent import lp
from paraclass.quad_order import (
    MonogenicRing,
    RingElement,
    RingKind,
    elem_mul,
    express_generator,
    fundamental_unit,
    is_laurent_domain,
    is_unit,
    laurent_model,
    make_ring,
    maximal_order,
    ring_norm,
)

D10 = make_ring(lp(-1, -6, 1))
TB = RingElement(0, 1)


def test_make_ring_examples():
    assert D10.kind == RingKind.REAL_DOMAIN and D10.disc == 40 and D10.is_maximal
    assert make_ring(lp(-1, 0, 1)).kind == RingKind.NON_DOMAIN
    R = make_ring(lp(1, 1, 1))
    assert R.kind == RingKind.IMAGINARY_DOMAIN and R.disc == -3


def test_make_ring_requires_invertible_t():
    with pytest.raises(ValueError):
        make_ring(lp(2, 0, 1))


def test_elem_mul_examples():
    assert elem_mul(D10, TB, TB) == RingElement(1, 6)
    one_plus, one_minus = RingElement(1, 1), RingElement(1, -1)
    assert elem_mul(D10, one_plus, one_minus) == RingElement(0, -6)
    u = RingElement(4, -7)
    assert elem_mul(D10, u, RingElement(1, 0)) == u


def test_norm_examples():
    assert ring_norm(D10, TB) == -1
    assert ring_norm(D10, RingElement(1, 0)) == 1
    assert ring_norm(D10, RingElement(1, 1)) == 6


def test_is_unit_examples():
    assert is_unit(D10, TB)
    assert not is_unit(D10, RingElement(1, 1))
    assert is_unit(D10, RingElement(-1, 0))


def test_fundamental_unit_examples():
    assert fundamental_unit(2) == RingElement(1, 1)
    assert fundamental_unit(10) == RingElement(3, 1)
    assert fundamental_unit(13) == RingElement(1, 1)  # (3 + sqrt 13)/2 = 1 + w


def _w_basis(d):
    u, v, den = pell_unit(d)
    if den == 1:
        return RingElement(u, v)
    return RingElement((u - v) // 2, v)  # sqrt d = 2w - 1


@pytest.mark.parametrize("d", [d for d in range(2, 100) if squarefree(d)])
def test_fundamental_unit_matches_pell_search(d):
    eps = fundamental_unit(d)
    assert eps == _w_basis(d)
    assert abs(maximal_order(d).norm(eps)) == 1


def test_laurent_examples():
    c = is_laurent_domain(10)
    assert c.laurent and c.unit == RingElement(3, 1)
    c = is_laurent_domain(6)
    assert not c.laurent and c.index == 2 and c.unit == RingElement(5, 2)
    c = is_laurent_domain(82)
    assert c.laurent and c.unit == RingElement(9, 1)


@pytest.mark.parametrize("d", [d for d in range(2, 100) if squarefree(d)])
def test_laurent_certificate_generates_w(d):
    c = is_laurent_domain(d)
    if not c.laurent:
        assert c.index > 1
        return
    a, b = express_generator(maximal_order(d), d, c.unit)
    D = maximal_order(d)
    # a + b eps must equal w
    assert RingElement(a, 0) + RingElement(b * c.unit.x, b * c.unit.y) == RingElement(0, 1)
    assert laurent_model(d).is_maximal


def test_laurent_model_d10_and_d82():
    assert laurent_model(10) == MonogenicRing(-6, -1)
    assert laurent_model(82).f == lp(-1, -18, 1)


def test_conjugation_is_involution():
    R = maximal_order(13)
    u = RingElement(5, -3)
    assert R.conj(R.conj(u)) == u
    assert R.norm(R.conj(u)) == R.norm(u)
