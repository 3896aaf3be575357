import pytest

from oracles import norm_search
from paraclass.ideals import (
    conj_ideal,
    ideal_from_generators,
    ideal_mul,
    ideal_norm,
    ideal_pow,
    ideals_equal,
    ideals_equivalent,
    is_closed,
    is_principal,
    iter_ideals,
    primes_above,
    principal_ideal,
    unit_ideal,
)
from paraclass.laurent import lp
from paraclass.quad_order import RingElement, fundamental_unit, make_ring, maximal_order

E = RingElement
D10 = make_ring(lp(-1, -6, 1))  # w = 3 + sqrt 10
J = ideal_from_generators(D10, [E(3, 0), E(-2, 1)])


def test_generators_to_hnf():
    # 1 + sqrt 10 = w - 2 in this model; HNF basis {3, 1 + w} spans the same lattice
    assert J.hnf_tuple() == (3, 1, 1)
    assert J.contains(E(-2, 1)) and J.contains(E(1, 1))
    one = ideal_from_generators(D10, [E(1, 0)])
    assert one.is_unit_ideal and one.hnf_tuple() == (1, 0, 1)


def test_zc2_index_two_ideal():
    R = make_ring(lp(-1, 0, 1))
    K = ideal_from_generators(R, [E(2, 0), E(1, 1)])
    assert K.hnf_tuple() == (2, 1, 1) and is_closed(K)


def test_norm_examples():
    assert ideal_norm(J) == 3
    assert ideal_norm(unit_ideal(D10)) == 1
    assert ideal_norm(principal_ideal(D10, E(-1, 1))) == 6


def test_mul_examples():
    assert ideals_equal(ideal_mul(J, unit_ideal(D10)), J)
    assert ideal_norm(ideal_pow(J, 2)) == 9
    prod = ideal_mul(J, conj_ideal(J))
    assert ideals_equal(prod, principal_ideal(D10, E(3, 0)))


def test_primes_above_d10():
    R = maximal_order(10)
    assert len(primes_above(R, 3)) == 2
    inert = primes_above(R, 7)
    assert len(inert) == 1 and ideal_norm(inert[0]) == 49
    (P,) = primes_above(R, 2)
    assert ideals_equal(ideal_pow(P, 2), principal_ideal(R, E(2, 0)))


def test_principality_examples():
    assert not is_principal(J).principal
    res = is_principal(unit_ideal(D10))
    assert res.principal and abs(D10.norm(res.generator)) == 1
    res = is_principal(ideal_pow(J, 2))
    assert res.principal and abs(D10.norm(res.generator)) == 9


def test_no_norm_three_elements_in_z_sqrt10():
    # x^2 - 10 y^2 = ±3 has no solutions: squares mod 10 avoid 3 and 7
    assert not norm_search(0, -10, 3, 60)


def test_equivalence_examples():
    R = maximal_order(10)
    P3 = primes_above(R, 3)[0]
    (P2,) = primes_above(R, 2)
    assert ideals_equivalent(P3, P3)
    assert not ideals_equivalent(P3, unit_ideal(R))
    assert ideals_equivalent(P3, P2)


def _search_bound(d):
    eps = fundamental_unit(d)
    return 4 * (abs(eps.x) + abs(eps.y)) + 6


@pytest.mark.parametrize("d", [2, 3, 5, 6, 10, 14, 15, 26, 29, 35, 82, 85])
def test_principality_against_norm_search(d):
    R = maximal_order(d)
    bound = _search_bound(d)
    for K in iter_ideals(R, 50):
        n = ideal_norm(K)
        found = any(K.contains(E(x, y)) for x, y in norm_search(R.B, R.C, n, bound))
        res = is_principal(K)
        if res.principal:
            assert K.contains(res.generator) and abs(R.norm(res.generator)) == n
            assert found
        else:
            assert not found, (d, K)


def test_hnf_rebuild_is_idempotent():
    R = maximal_order(82)
    for K in iter_ideals(R, 40):
        assert ideal_from_generators(R, K.basis()) == K
