"""Ideals of quadratic rings Z[w] as integer lattices in Hermite normal form.

An ideal J is stored by its HNF basis {a, b + c w} with c | a, c | b and
0 <= b < a.  Rank-one ideals occur in non-domains (for instance (w - 1) in
Z[C2]); they are stored with a = 0.

Principality in real quadratic orders walks the continued-fraction cycle of
the number attached to J and compares with the cycle of w; the imaginary case
reduces the same number into the standard fundamental domain.  Both routes
track the unimodular matrix relating J to the unit ideal, which yields an
explicit generator.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .intmat import hnf, matmul, solve_in_hnf
from .quad_order import (
    MonogenicRing,
    RingElement,
    RingKind,
    W,
    ONE,
    cf_step,
)


@dataclass(frozen=True)
class IdealLattice:
    ring: MonogenicRing
    a: int
    b: int
    c: int

    @property
    def rank(self) -> int:
        return (self.a != 0) + (self.c != 0)

    def basis(self) -> list[RingElement]:
        out = []
        if self.a:
            out.append(RingElement(self.a, 0))
        if self.c:
            out.append(RingElement(self.b, self.c))
        return out

    def _hnf_rows(self) -> list[list[int]]:
        # rows in (y, x) coordinates, matching the HNF used at construction
        rows = []
        if self.c:
            rows.append([self.c, self.b])
        if self.a:
            rows.append([0, self.a])
        return rows

    def contains(self, u: RingElement) -> bool:
        return solve_in_hnf(self._hnf_rows(), [u.y, u.x]) is not None

    def coordinates(self, u: RingElement):
        """Coefficients of u on basis(), or None when u is not in J."""
        sol = solve_in_hnf(self._hnf_rows(), [u.y, u.x])
        if sol is None:
            return None
        # solve_in_hnf follows the row order: (c-row, a-row); basis() lists a first
        if self.a and self.c:
            return [sol[1], sol[0]]
        return sol

    @property
    def is_unit_ideal(self) -> bool:
        return self.a == 1 and self.c == 1

    @property
    def content(self) -> int:
        """Largest integer k with J contained in k R."""
        return gcd(gcd(self.a, self.b), self.c)

    def hnf_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __str__(self):
        gens = ", ".join(str(g) for g in self.basis())
        return f"[{gens}]"


def _from_elements(R: MonogenicRing, elems) -> IdealLattice:
    rows = hnf([[e.y, e.x] for e in elems], 2)
    if not rows:
        raise ValueError("zero ideal")
    a = b = c = 0
    for r in rows:
        if r[0] != 0:
            c, b = r
        else:
            a = r[1]
    if c < 0:
        c, b = -c, -b
    if a and c:
        b %= a
    return IdealLattice(R, a, b, c)


def ideal_from_generators(R: MonogenicRing, gens) -> IdealLattice:
    """Smallest ideal containing gens: the Z-span of g and w g over all generators."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("zero ideal rejected")
    elems = []
    for g in gens:
        elems.append(g)
        elems.append(R.mul(W, g))
    J = _from_elements(R, elems)
    if not is_closed(J):
        raise ArithmeticError("ideal closure failed")
    return J


def principal_ideal(R: MonogenicRing, g: RingElement) -> IdealLattice:
    return ideal_from_generators(R, [g])


def unit_ideal(R: MonogenicRing) -> IdealLattice:
    return IdealLattice(R, 1, 0, 1)


def is_closed(J: IdealLattice) -> bool:
    """Every basis vector times w stays in J."""
    return all(J.contains(J.ring.mul(W, e)) for e in J.basis())


def lattice_index(J: IdealLattice):
    """[R : J] as a lattice index, None when J has rank one (infinite index)."""
    if J.rank < 2:
        return None
    return J.a * J.c


def ideal_norm(J: IdealLattice) -> int:
    idx = lattice_index(J)
    if idx is None:
        raise ValueError("rank-one ideal: infinite index in the ring")
    return idx


def _same_ring(J: IdealLattice, K: IdealLattice):
    if J.ring != K.ring:
        raise ValueError("ideals live in different rings")


def ideal_mul(J: IdealLattice, K: IdealLattice) -> IdealLattice:
    _same_ring(J, K)
    R = J.ring
    return ideal_from_generators(R, [R.mul(u, v) for u in J.basis() for v in K.basis()])


def ideal_pow(J: IdealLattice, k: int) -> IdealLattice:
    """J^k; negative k uses conj(J), which represents the inverse class in a domain."""
    if k < 0:
        return ideal_pow(conj_ideal(J), -k)
    result = unit_ideal(J.ring)
    for _ in range(k):
        result = ideal_mul(result, J)
    return result


def conj_ideal(J: IdealLattice) -> IdealLattice:
    R = J.ring
    return ideal_from_generators(R, [R.conj(e) for e in J.basis()])


def ideal_sum(J: IdealLattice, K: IdealLattice) -> IdealLattice:
    _same_ring(J, K)
    return ideal_from_generators(J.ring, J.basis() + K.basis())


def ideals_equal(J: IdealLattice, K: IdealLattice) -> bool:
    return J == K


# -- primes --------------------------------------------------------------------

def _require_maximal(R: MonogenicRing):
    if not R.is_domain:
        raise ValueError(f"{R.describe()} is not a domain")
    if not R.is_maximal:
        raise ValueError(f"{R.describe()} is not a maximal order")


def primes_above(R: MonogenicRing, p: int) -> list[IdealLattice]:
    """Prime ideals over p, from the roots of f mod p.

    Two roots: split; a double root: ramified; none: inert (the ideal (p)).
    The residue degree is 2 for the inert prime and 1 otherwise, so it can be
    read off as log_p of the norm.
    """
    _require_maximal(R)
    roots = [r for r in range(p) if (r * r + R.B * r + R.C) % p == 0]
    if not roots:
        return [principal_ideal(R, RingElement(p, 0))]
    return [ideal_from_generators(R, [RingElement(p, 0), RingElement(-r, 1)]) for r in roots]


def residue_degree(P: IdealLattice, p: int) -> int:
    n, k = ideal_norm(P), 0
    while n % p == 0:
        n //= p
        k += 1
    return k


# -- reduction machinery ---------------------------------------------------------

def _theta(J: IdealLattice):
    """(content, a', P, Q) with J = content * a' (Z + theta Z), theta = (P + sqrt D)/Q."""
    R = J.ring
    k = J.content
    a0, b0 = J.a // k, J.b // k
    return k, a0, 2 * b0 - R.B, 2 * a0


def _real_orbit(P: int, Q: int, D: int):
    """Expand until the state repeats. Returns (cycle states, {state: M}) with theta = M x_state."""
    s = isqrt(D)
    seen: dict[tuple[int, int], int] = {}
    mats: dict[tuple[int, int], list[list[int]]] = {}
    order: list[tuple[int, int]] = []
    M = [[1, 0], [0, 1]]
    while (P, Q) not in seen:
        seen[(P, Q)] = len(order)
        order.append((P, Q))
        mats[(P, Q)] = M
        a, P, Q = cf_step(P, Q, D, s)
        M = matmul(M, [[a, 1], [1, 0]])
    return order[seen[(P, Q)]:], mats


def _imag_reduce(P: int, Q: int, D: int):
    """Reduce theta = (P + sqrt D)/Q (D < 0, Q > 0) under SL2(Z). Returns ((P, Q), M)."""
    M = [[1, 0], [0, 1]]
    while True:
        # translate so that -Q/2 < P <= Q/2
        k = -((2 * P + Q - 1) // (2 * Q))
        if k:
            P += k * Q
            M = matmul(M, [[1, -k], [0, 1]])
        Qn = (P * P - D) // Q
        if Qn > Q or (Qn == Q and P >= 0):
            return (P, Q), M
        # invert: x -> -1/x
        P, Q = -P, Qn
        M = matmul(M, [[0, -1], [1, 0]])


@dataclass(frozen=True)
class _Orbit:
    key: tuple[int, int]
    states: frozenset
    mats: dict


def _orbit(R: MonogenicRing, P: int, Q: int) -> _Orbit:
    D = R.disc
    if R.kind == RingKind.REAL_DOMAIN:
        cycle, mats = _real_orbit(P, Q, D)
        return _Orbit(min(cycle), frozenset(cycle), mats)
    state, M = _imag_reduce(P, Q, D)
    return _Orbit(state, frozenset([state]), {state: M})


def _orbit_of_ideal(J: IdealLattice) -> _Orbit:
    _, _, P, Q = _theta(J)
    return _orbit(J.ring, P, Q)


def _orbit_of_one(R: MonogenicRing) -> _Orbit:
    return _orbit(R, -R.B, 2)


def class_key(J: IdealLattice) -> tuple[int, int]:
    """Complete invariant of the ideal class of J (a canonical reduced state)."""
    _require_maximal(J.ring)
    if J.rank < 2:
        raise ValueError("zero or rank-one ideal")
    return _orbit_of_ideal(J).key


def state_ideal(R: MonogenicRing, state: tuple[int, int]) -> IdealLattice:
    """The primitive ideal a (Z + x Z) attached to a state x = (P + sqrt D)/Q."""
    P, Q = state
    return ideal_from_generators(R, [RingElement(Q // 2, 0), RingElement((P + R.B) // 2, 1)])


def reduced_representative(J: IdealLattice) -> IdealLattice:
    """A small ideal in the class of J (the ideal of its canonical reduced state)."""
    return state_ideal(J.ring, class_key(J))


def _generator_from(J: IdealLattice, orbit: _Orbit, one: _Orbit):
    R = J.ring
    shared = sorted(orbit.states & one.states)
    if not shared:
        return None
    st = shared[0]
    M, Mp = orbit.mats[st], one.mats[st]
    adj = [[Mp[1][1], -Mp[0][1]], [-Mp[1][0], Mp[0][0]]]
    K = matmul(M, adj)
    r, s = K[1]
    # theta = (p w + q)/(r w + s)  =>  J0 = a' (r w + s)^{-1} R
    k, a0, _, _ = _theta(J)
    den = R.norm(RingElement(s, r))
    cj = R.conj(RingElement(s, r))
    x, y = a0 * cj.x, a0 * cj.y
    if x % den or y % den:
        raise ArithmeticError("generator is not integral")
    gamma = RingElement(k * x // den, k * y // den)
    if not J.contains(gamma) or abs(R.norm(gamma)) != ideal_norm(J):
        raise ArithmeticError("generator certificate failed")
    return gamma


def _bounded_generator(J: IdealLattice, bound: int | None = None):
    R = J.ring
    if bound is None:
        bound = 4 * max(abs(v) for v in (J.a, J.b, J.c))
    idx = lattice_index(J)
    for m in range(0, bound + 1):
        # enumerate by sup-norm shell so small generators come first
        for x in range(-m, m + 1):
            for y in range(-m, m + 1):
                if max(abs(x), abs(y)) != m:
                    continue
                g = RingElement(x, y)
                if g.is_zero() or not J.contains(g):
                    continue
                if idx is not None and abs(R.norm(g)) != idx:
                    continue
                if principal_ideal(R, g) == J:
                    return g
    return None


@dataclass(frozen=True)
class PrincipalityResult:
    principal: bool
    generator: RingElement | None
    method: str
    search_bound: int | None = None

    def __iter__(self):
        yield self.principal
        yield self.generator


def is_principal(J: IdealLattice) -> PrincipalityResult:
    R = J.ring
    if R.kind == RingKind.NON_DOMAIN:
        bound = 4 * max(abs(v) for v in (J.a, J.b, J.c))
        g = _bounded_generator(J, bound)
        return PrincipalityResult(g is not None, g, "bounded_search", bound)
    _require_maximal(R)
    if J.is_unit_ideal:
        return PrincipalityResult(True, ONE, "unit")
    orbit, one = _orbit_of_ideal(J), _orbit_of_one(R)
    method = "cycle" if R.kind == RingKind.REAL_DOMAIN else "reduction"
    if orbit.key != one.key:
        return PrincipalityResult(False, None, method)
    g = _generator_from(J, orbit, one)
    if g is None:
        raise ArithmeticError("equal keys without a shared state")
    return PrincipalityResult(True, g, method)


def ideals_equivalent(J: IdealLattice, K: IdealLattice) -> bool:
    _same_ring(J, K)
    return is_principal(ideal_mul(J, conj_ideal(K))).principal


def enumerate_ideals(R: MonogenicRing, max_norm: int):
    """All ideals of norm <= max_norm (rank two), by HNF enumeration."""
    return list(iter_ideals(R, max_norm))


def iter_ideals(R: MonogenicRing, max_norm: int):
    """Ideals in order of increasing norm, lazily."""
    for n in range(1, max_norm + 1):
        for c in range(1, n + 1):
            if n % c:
                continue
            a = n // c
            if a % c:
                continue
            for b in range(0, a, c):
                J = IdealLattice(R, a, b, c)
                if is_closed(J):
                    yield J
