"""Ideal class groups of maximal quadratic orders.

Generators are the primes of norm up to the Minkowski bound.  A breadth-first
walk multiplies class representatives by generators, identifies classes by
their canonical reduced state, and records every coincidence as a relation.
Smith normal form of the relation matrix gives the invariant factors together
with generators of each cyclic factor.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, isqrt

from .intmat import AbelianGroupStructure, inverse_unimodular, smith
from .ideals import (
    IdealLattice,
    _require_maximal,
    class_key,
    ideal_mul,
    ideal_pow,
    is_principal,
    primes_above,
    reduced_representative,
    state_ideal,
    unit_ideal,
)
from .quad_order import MonogenicRing, RingElement, RingKind

EXPONENT_BOUND = 12
# rational enclosure of pi, good to 1e-30
_PI_LO = Fraction(3141592653589793238462643383279, 10**30)
_PI_HI = _PI_LO + Fraction(1, 10**30)


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(n + 1) if sieve[p]]


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = next(q for q in range(2, n + 1) if n % q == 0)
    while n % p == 0:
        n //= p
    return n == 1


def minkowski_bound(R: MonogenicRing) -> int:
    """floor(sqrt(disc)/2) for real orders, floor(2 sqrt|disc| / pi) for imaginary ones."""
    _require_maximal(R)
    D = abs(R.disc)
    if R.kind == RingKind.REAL_DOMAIN:
        return isqrt(D) // 2
    # largest m with m * pi <= 2 sqrt(D), i.e. m^2 pi^2 <= 4 D
    m = isqrt(4 * D)  # pi > 1, so this overshoots
    while m > 0:
        if m * m * _PI_HI * _PI_HI <= 4 * D:
            return m
        if m * m * _PI_LO * _PI_LO > 4 * D:
            m -= 1
            continue
        raise ArithmeticError("pi enclosure too coarse to decide the Minkowski bound")
    return 0


@dataclass(frozen=True)
class OrderCertificate:
    generator: IdealLattice
    order: int
    principal_generator: RingElement  # generates generator^order


@dataclass
class ClassGroup:
    ring: MonogenicRing
    structure: AbelianGroupStructure
    generators: list[IdealLattice]
    certificates: list[OrderCertificate]
    class_index: dict = field(default_factory=dict)
    prime_generators: list[IdealLattice] = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.structure.order

    def representative(self, exponents) -> IdealLattice:
        return self.class_index[tuple(e % d for e, d in zip(exponents, self.structure.invariant_factors))]

    def to_dict(self) -> dict:
        return {
            "structure": self.structure.to_dict(),
            "generators": [list(g.hnf_tuple()) for g in self.generators],
            "order": self.order,
        }


def _ideal_from_exponents(R, gens, exps) -> IdealLattice:
    J = unit_ideal(R)
    for P, e in zip(gens, exps):
        if e:
            J = reduced_representative(ideal_mul(J, ideal_pow(P, e)))
    return J


def class_walk(R: MonogenicRing, gens: list[IdealLattice], limit: int = 500):
    """Breadth-first walk over classes reachable from the unit ideal.

    Returns (nodes, relations): nodes maps class key -> (exponent vector,
    representative ideal); relations are integer vectors in the kernel of
    Z^len(gens) -> Cl.
    """
    r = len(gens)
    one = unit_ideal(R)
    nodes = {class_key(one): ((0,) * r, one)}
    relations = []
    queue = deque([class_key(one)])
    while queue:
        key = queue.popleft()
        vec, rep = nodes[key]
        for i, P in enumerate(gens):
            K = reduced_representative(ideal_mul(rep, P))
            k2 = class_key(K)
            v2 = tuple(x + (j == i) for j, x in enumerate(vec))
            if k2 in nodes:
                rel = [x - y for x, y in zip(v2, nodes[k2][0])]
                if any(rel):
                    relations.append(rel)
            else:
                if len(nodes) >= limit:
                    raise RuntimeError(f"class walk exceeded {limit} classes")
                nodes[k2] = (v2, K)
                queue.append(k2)
    return nodes, relations


def structure_from_relations(r: int, relations):
    """Invariant factors of Z^r / relations and, for each factor > 1, a generator vector."""
    if r == 0:
        return AbelianGroupStructure(), []
    rel = relations or [[0] * r]
    diag, _, V = smith(rel)
    diag = diag + [0] * (r - len(diag))
    structure = AbelianGroupStructure.from_diagonal(diag)
    Vinv = inverse_unimodular(V)
    gens = [(d, Vinv[i]) for i, d in enumerate(diag) if abs(d) != 1]
    return structure, gens


def compute_class_group(R: MonogenicRing) -> ClassGroup:
    _require_maximal(R)
    bound = minkowski_bound(R)
    primes = [P for p in primes_up_to(bound) for P in primes_above(R, p)]
    nodes, relations = class_walk(R, primes)
    structure, gvecs = structure_from_relations(len(primes), relations)
    if not structure.is_finite or structure.order != len(nodes):
        raise ArithmeticError(f"class walk inconsistent: {structure} vs {len(nodes)} classes")
    generators, certs = [], []
    for d, vec in gvecs:
        if d > EXPONENT_BOUND:
            raise RuntimeError(f"class of order {d} exceeds the exponent bound {EXPONENT_BOUND}")
        g = _ideal_from_exponents(R, primes, vec)
        res = is_principal(ideal_pow(g, d))
        if not res.principal:
            raise ArithmeticError("invariant-factor generator fails its order certificate")
        for k in range(1, d):
            if d % k == 0 and is_principal(ideal_pow(g, k)).principal:
                raise ArithmeticError("generator order smaller than its invariant factor")
        generators.append(g)
        certs.append(OrderCertificate(g, d, res.generator))
    index = {}
    for exps in product(*[range(d) for d in structure.invariant_factors]):
        J = unit_ideal(R)
        for g, e in zip(generators, exps):
            J = reduced_representative(ideal_mul(J, ideal_pow(g, e)))
        index[exps] = J
    if len({class_key(J) for J in index.values()}) != structure.order:
        raise ArithmeticError("class index does not separate classes")
    return ClassGroup(R, structure, generators, certs, index, primes)


def class_number_by_cycles(R: MonogenicRing) -> int:
    """Independent count of classes: distinct reduced states over all primitive reduced numbers.

    Real case: every reduced (P, Q) with Q | D - P^2, 0 < P < sqrt D,
    sqrt D - P < Q < sqrt D + P, and P = B mod 2, grouped into cycles.
    Imaginary case: reduced positive definite states.
    """
    _require_maximal(R)
    D = R.disc
    keys = set()
    if R.kind == RingKind.REAL_DOMAIN:
        s = isqrt(D)
        for P in range(1, s + 1):
            if (P - R.B) % 2:
                continue
            for Q in range(2, 2 * s + 2, 2):
                if (D - P * P) % Q or ((D - P * P) // Q) % 2:
                    continue
                # reduced: x > 1 and -1 < x' < 0
                if not s - P < Q <= s + P:
                    continue
                keys.add(class_key(state_ideal(R, (P, Q))))
        return len(keys)
    return imag_form_class_number(D)


def imag_form_class_number(disc: int) -> int:
    """Number of primitive reduced positive definite forms of discriminant disc < 0."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError("discriminant must be negative and = 0, 1 mod 4")
    count = 0
    a = 1
    while 3 * a * a <= -disc:
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            count += 1
        a += 1
    return count
