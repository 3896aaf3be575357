"""Monogenic quadratic rings Z[t, 1/t]/(f) and real quadratic units.

A ring is Z[w] with w a root of f = t^2 + B t + C; elements are x + y w.
Rings built by :func:`make_ring` have C = ±1 so that w is a unit (the image
of t).  :func:`maximal_order` builds the ring of integers of Q(sqrt d) with
its standard generator, which need not be a unit.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .intmat import matmul
from .laurent import LaurentPoly


class RingKind(str, enum.Enum):
    REAL_DOMAIN = "real_domain"
    IMAGINARY_DOMAIN = "imaginary_domain"
    NON_DOMAIN = "non_domain"


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def is_fundamental_discriminant(disc: int) -> bool:
    if disc in (0, 1):
        return False
    if disc % 4 == 1:
        return is_squarefree(disc)
    if disc % 4 == 0:
        m = disc // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True)
class RingElement:
    x: int
    y: int

    def __iter__(self):
        yield self.x
        yield self.y

    def __neg__(self):
        return RingElement(-self.x, -self.y)

    def __add__(self, other):
        return RingElement(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return RingElement(self.x - other.x, self.y - other.y)

    def scale(self, k: int) -> "RingElement":
        return RingElement(k * self.x, k * self.y)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def __str__(self):
        if self.y == 0:
            return str(self.x)
        w = "w" if abs(self.y) == 1 else f"{abs(self.y)}w"
        if self.x == 0:
            return ("-" if self.y < 0 else "") + w
        return f"{self.x} {'-' if self.y < 0 else '+'} {w}"


ONE = RingElement(1, 0)
ZERO = RingElement(0, 0)
W = RingElement(0, 1)


@dataclass(frozen=True)
class MonogenicRing:
    """Z[t]/(t^2 + B t + C)."""

    B: int
    C: int

    @property
    def f(self) -> LaurentPoly:
        return LaurentPoly([self.C, self.B, 1])

    @property
    def disc(self) -> int:
        return self.B * self.B - 4 * self.C

    @property
    def kind(self) -> RingKind:
        d = self.disc
        if _is_square(d):
            return RingKind.NON_DOMAIN
        return RingKind.REAL_DOMAIN if d > 0 else RingKind.IMAGINARY_DOMAIN

    @property
    def is_domain(self) -> bool:
        return self.kind != RingKind.NON_DOMAIN

    @property
    def is_maximal(self) -> bool:
        return self.is_domain and is_fundamental_discriminant(self.disc)

    @property
    def t_invertible(self) -> bool:
        return abs(self.C) == 1

    @property
    def squarefree_kernel(self) -> int:
        """Squarefree d with Q(sqrt disc) = Q(sqrt d)."""
        d = self.disc
        sign = -1 if d < 0 else 1
        d = abs(d)
        p = 2
        while p * p <= d:
            while d % (p * p) == 0:
                d //= p * p
            p += 1
        return sign * d

    @property
    def trace_w(self) -> int:
        return -self.B

    # element arithmetic -----------------------------------------------------
    def mul(self, u: RingElement, v: RingElement) -> RingElement:
        # w^2 = -B w - C
        xx = u.x * v.x
        xy = u.x * v.y + u.y * v.x
        yy = u.y * v.y
        return RingElement(xx - self.C * yy, xy - self.B * yy)

    def pow(self, u: RingElement, k: int) -> RingElement:
        if k < 0:
            inv = self.inverse(u)
            if inv is None:
                raise ValueError(f"{u} is not a unit")
            return self.pow(inv, -k)
        result, base = ONE, u
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def conj(self, u: RingElement) -> RingElement:
        # w' = trace - w = -B - w
        return RingElement(u.x - self.B * u.y, -u.y)

    def norm(self, u: RingElement) -> int:
        return u.x * u.x - self.B * u.x * u.y + self.C * u.y * u.y

    def trace(self, u: RingElement) -> int:
        return 2 * u.x - self.B * u.y

    def inverse(self, u: RingElement):
        """Inverse of a unit, or None when u is not a unit (domains only)."""
        n = self.norm(u)
        if abs(n) != 1:
            return None
        c = self.conj(u)
        return RingElement(c.x * n, c.y * n)

    def from_poly(self, p: LaurentPoly) -> RingElement:
        """Image of a Laurent polynomial under t -> w (needs w invertible for negative powers)."""
        acc = ZERO
        for k, c in p.items():
            acc = acc + self.pow(W, k).scale(c)
        return acc

    def to_sqrt_form(self, u: RingElement) -> tuple[Fraction, Fraction, int]:
        """(p, q, disc) with u = p + q sqrt(disc)."""
        # w = (-B + sqrt(disc)) / 2
        return Fraction(2 * u.x - self.B * u.y, 2), Fraction(u.y, 2), self.disc

    def describe(self) -> str:
        return f"Z[t]/({self.f})"


def make_ring(f: LaurentPoly) -> MonogenicRing:
    """Classified ring Z[t,1/t]/(f) for quadratic f; t must stay invertible (constant ±1)."""
    f = LaurentPoly.coerce(f).normalized()
    if f.width != 2:
        raise ValueError(f"{f} is not quadratic")
    c0, b, lead = f.coeffs
    if abs(lead) != 1:
        raise ValueError(f"{f} is not monic up to sign")
    if lead == -1:
        c0, b = -c0, -b
    if abs(c0) != 1:
        raise ValueError(
            f"constant coefficient of {f} is not ±1: t is not invertible in the quotient"
        )
    return MonogenicRing(b, c0)


def maximal_order(d: int) -> MonogenicRing:
    """Ring of integers of Q(sqrt d), d squarefree, as Z[w] with its standard generator."""
    if d in (0, 1) or not is_squarefree(d):
        raise ValueError(f"d = {d} must be squarefree and different from 0, 1")
    if d % 4 == 1:
        return MonogenicRing(-1, -(d - 1) // 4)
    return MonogenicRing(0, -d)


def elem_mul(R: MonogenicRing, u: RingElement, v: RingElement) -> RingElement:
    return R.mul(u, v)


def ring_norm(R: MonogenicRing, u: RingElement) -> int:
    if not R.is_domain:
        raise ValueError(f"{R.describe()} is not a domain: norm form is degenerate")
    return R.norm(u)


def is_unit(R: MonogenicRing, u: RingElement) -> bool:
    return abs(ring_norm(R, u)) == 1


def qsign(p: Fraction, q: Fraction, D: int) -> int:
    """Sign of p + q sqrt(D) for D > 0 not a square."""
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sp == 0 or sq == 0 or sp == sq:
        return sp or sq
    # opposite signs: compare p^2 with q^2 D
    lhs, rhs = p * p, q * q * D
    if lhs == rhs:
        return 0
    return sp if lhs > rhs else sq


# -- continued fractions of quadratic irrationals ------------------------------

def cf_step(P: int, Q: int, D: int, s: int):
    """One continued-fraction step on x = (P + sqrt D)/Q with s = isqrt(D).

    Returns (a, P', Q') with x = a + 1/x', x' = (P' + sqrt D)/Q'.
    """
    a = (P + s) // Q if Q > 0 else (P + s + 1) // Q
    P2 = a * Q - P
    Q2 = (D - P2 * P2) // Q
    return a, P2, Q2


def cf_expand(P: int, Q: int, D: int, max_steps: int = 1_000_000):
    """Expand (P + sqrt D)/Q until the state repeats.

    Requires D > 0 non-square and Q | D - P^2.  Returns (states, quotients, start)
    where states[i] is the i-th complete quotient, quotients[i] its partial quotient,
    and states[start:] is the purely periodic cycle (states[-1] is the first repeat
    and is not included).
    """
    if (D - P * P) % Q:
        raise ValueError("Q must divide D - P^2")
    s = isqrt(D)
    seen: dict[tuple[int, int], int] = {}
    states: list[tuple[int, int]] = []
    quotients: list[int] = []
    for _ in range(max_steps):
        if (P, Q) in seen:
            return states, quotients, seen[(P, Q)]
        seen[(P, Q)] = len(states)
        states.append((P, Q))
        a, P, Q = cf_step(P, Q, D, s)
        quotients.append(a)
    raise RuntimeError("continued fraction period not found within step limit")


def _quotient_matrix(quotients) -> list[list[int]]:
    m = [[1, 0], [0, 1]]
    for a in quotients:
        m = matmul(m, [[a, 1], [1, 0]])
    return m


def unit_of_order(R: MonogenicRing) -> RingElement:
    """Fundamental unit (> 1) of a real quadratic order Z[w], from the period of w's expansion."""
    if R.kind != RingKind.REAL_DOMAIN:
        raise ValueError("fundamental units are defined for real quadratic orders")
    D = R.disc
    states, quotients, start = cf_expand(-R.B, 2, D)
    P, Q = states[start]
    a_, b_ = _quotient_matrix(quotients[start:])[1]
    # x = (P + sqrt D)/Q is fixed by the cycle matrix; eta = c x + d is a unit of Z[w]
    eta_p = Fraction(a_ * P, Q) + b_
    eta_q = Fraction(a_, Q)
    # back to the basis {1, w}: sqrt D = 2w + B
    y = 2 * eta_q
    x = eta_p + eta_q * R.B
    if x.denominator != 1 or y.denominator != 1:
        raise ArithmeticError("period unit is not integral")
    eta = RingElement(int(x), int(y))
    candidates = [eta, -eta, R.conj(eta), -R.conj(eta)]
    for u in candidates:
        p, q, _ = R.to_sqrt_form(u)
        if qsign(p - 1, q, D) > 0:
            if abs(R.norm(u)) != 1:
                raise ArithmeticError("period element is not a unit")
            return u
    raise ArithmeticError("no unit > 1 among ±eta^(±1)")


def fundamental_unit(d: int) -> RingElement:
    """Fundamental unit > 1 of the ring of integers of Q(sqrt d), in the basis {1, w}.

    w = sqrt d for d = 2, 3 mod 4 and w = (1 + sqrt d)/2 for d = 1 mod 4.
    """
    if d < 2 or not is_squarefree(d):
        raise ValueError("d must be a squarefree integer >= 2")
    return unit_of_order(maximal_order(d))


@dataclass(frozen=True)
class LaurentCertificate:
    d: int
    laurent: bool
    unit: RingElement  # fundamental unit in the basis {1, w}
    index: int  # [D : Z[eps]] = |w-coefficient of eps|
    norm: int
    ring: MonogenicRing | None  # Z[t,1/t]/(min poly of eps) when laurent

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "laurent": self.laurent,
            "fundamental_unit": [self.unit.x, self.unit.y],
            "unit_norm": self.norm,
            "index": self.index,
            "min_poly": str(self.ring.f) if self.ring else None,
        }


def is_laurent_domain(d: int) -> LaurentCertificate:
    """Decide whether the ring of integers D of Q(sqrt d) equals Z[u, 1/u] for a unit u.

    Every unit is ±eps^k; Z[eps^k] sits inside Z[eps] and the inverse of a unit
    is ± its conjugate, so it suffices to test whether Z[eps] = D, i.e. whether
    the w-coefficient of eps is ±1.
    """
    D = maximal_order(d)
    eps = fundamental_unit(d)
    index = abs(eps.y)
    n = D.norm(eps)
    ring = laurent_model(d, eps) if index == 1 else None
    return LaurentCertificate(d, index == 1, eps, index, n, ring)


def laurent_model(d: int, eps: RingElement | None = None) -> MonogenicRing:
    """Z[t,1/t]/(t^2 - tr(eps) t + N(eps)) for the fundamental unit of Q(sqrt d)."""
    D = maximal_order(d)
    eps = eps or fundamental_unit(d)
    return MonogenicRing(-D.trace(eps), D.norm(eps))


def express_generator(R: MonogenicRing, d: int, eps: RingElement):
    """Write the standard generator w of D = maximal_order(d) as a + b*eps (needs index 1).

    Returns (a, b) with w = a + b eps; raises if eps does not generate D.
    """
    if abs(eps.y) != 1:
        raise ValueError("eps does not generate the maximal order")
    # eps = x + y w  =>  w = (eps - x) / y
    return -eps.x * eps.y, eps.y


def brute_force_fundamental_unit(d: int, limit: int = 10**6):
    """Smallest unit > 1 of Z[w] by direct search on the w-coefficient (test oracle)."""
    R = maximal_order(d)
    for y in range(1, limit + 1):
        found = []
        for target in (1, -1):
            # norm x^2 - B y x + C y^2 = target, as a quadratic in x
            disc = (R.B * y) ** 2 - 4 * (R.C * y * y - target)
            if disc < 0 or not _is_square(disc):
                continue
            r = isqrt(disc)
            for num in (R.B * y + r, R.B * y - r):
                if num % 2 == 0:
                    u = RingElement(num // 2, y)
                    p, q, _ = R.to_sqrt_form(u)
                    if qsign(p - 1, q, R.disc) > 0:
                        found.append(u)
        if found:
            best = found[0]
            for u in found[1:]:
                p1, q1, _ = R.to_sqrt_form(u)
                p2, q2, _ = R.to_sqrt_form(best)
                if qsign(p1 - p2, q1 - q2, R.disc) < 0:
                    best = u
            return best
    return None


def gcd_elements(*vals: int) -> int:
    g = 0
    for v in vals:
        g = gcd(g, v)
    return g
