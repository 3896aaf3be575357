"""Principality of ideals in Z[t, 1/t] and (Z/p)[t, 1/t]."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ..laurent import LaurentPoly, finite_quotient, resultant


class UnsupportedIdeal(ValueError):
    pass


def _prime_factors(n: int) -> list[int]:
    n = abs(n)
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


# -- arithmetic over F_p ------------------------------------------------------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a, b, p):
    a = _trim([x % p for x in a])
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        q = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - q * c) % p
        a = _trim(a)
    return a


def _poly_divexact_mod(a, b, p):
    a = [x % p for x in a]
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for shift in range(len(a) - len(b), -1, -1):
        c = a[shift + len(b) - 1] * inv % p
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
    if any(a):
        raise ArithmeticError("inexact division mod p")
    return q


def gcd_mod_p(polys, p: int) -> LaurentPoly:
    """Monic gcd in (Z/p)[t, 1/t], normalized to nonzero constant term (units t^k stripped)."""
    g: list[int] = []
    for f in polys:
        f = LaurentPoly.coerce(f).mod_p(p).normalized()
        a = _trim([c % p for c in f.coeffs])
        if not a:
            continue
        if not g:
            g = a
            continue
        x, y = g, a
        while y:
            x, y = y, _poly_mod(x, y, p)
        g = x
    if not g:
        return LaurentPoly()
    inv = pow(g[-1], -1, p)
    g = [c * inv % p for c in g]
    return LaurentPoly(g).normalized()


def divide_mod_p(a: LaurentPoly, b: LaurentPoly, p: int) -> LaurentPoly:
    """Exact quotient a / b in (Z/p)[t, 1/t]."""
    a, b = LaurentPoly.coerce(a), LaurentPoly.coerce(b)
    am, bm = a.mod_p(p), b.mod_p(p)
    q = _poly_divexact_mod(list(am.coeffs), _trim([c % p for c in bm.coeffs]), p)
    return LaurentPoly(q, am.min_deg - bm.min_deg).mod_p(p)


# -- arithmetic over Z -----------------------------------------------------------------

def gcd_over_z(polys) -> LaurentPoly:
    """gcd in Z[t, 1/t] (content included), normalized with positive leading coefficient."""
    import sympy

    t = sympy.Symbol("t")
    g = None
    for f in polys:
        f = LaurentPoly.coerce(f)
        if f.is_zero():
            continue
        expr = sympy.Poly(list(reversed(f.normalized().coeffs)), t, domain="ZZ")
        g = expr if g is None else sympy.gcd(g, expr)
    if g is None:
        return LaurentPoly()
    coeffs = [int(c) for c in reversed(g.all_coeffs())]
    out = LaurentPoly(coeffs).normalized()
    if out.coeffs[-1] < 0:
        out = -out
    return out


def _eval_mod(f: LaurentPoly, a: int, m: int) -> int:
    total = 0
    for k, c in f.items():
        total += c * (pow(a, k, m) if k >= 0 else pow(pow(a, -1, m), -k, m))
    return total % m


@dataclass(frozen=True)
class LaurentIdealResult:
    principal: bool
    generator: LaurentPoly | None
    base_ring: str  # "Z" or "F_p"
    normal_form: tuple[int, int] | None = None  # (m, a): the cofactor ideal equals (m, t - a)
    obstruction: str | None = None

    def to_dict(self) -> dict:
        return {
            "principal": self.principal,
            "generator": str(self.generator) if self.generator is not None else None,
            "base_ring": self.base_ring,
            "normal_form": list(self.normal_form) if self.normal_form else None,
            "obstruction": self.obstruction,
        }


def laurent_ideal_principal(gens, p: int | None = None) -> LaurentIdealResult:
    """Decide whether the ideal generated by gens is principal.

    Over F_p the ring is Euclidean and the gcd generates.  Over Z write J = g J'
    with g the gcd; J is principal iff J' is the unit ideal, iff for every prime
    dividing an integer N in J' the gcd of the cofactors mod p is a unit.
    """
    gens = [LaurentPoly.coerce(g) for g in gens if not LaurentPoly.coerce(g).is_zero()]
    if not gens:
        raise UnsupportedIdeal("zero ideal")
    if p is not None:
        g = gcd_mod_p(gens, p)
        return LaurentIdealResult(True, g, f"F_{p}")
    if len(gens) == 1:
        return LaurentIdealResult(True, gens[0], "Z")
    g = gcd_over_z(gens)
    cof = [f.exact_div(g) for f in gens]
    N = 0
    for i in range(len(cof)):
        for j in range(i + 1, len(cof)):
            a, b = cof[i].normalized(), cof[j].normalized()
            if a.width == 0 or b.width == 0:
                r = a.coeffs[0] if a.width == 0 else b.coeffs[0]
            else:
                r = resultant(a, b)
            N = gcd(N, r)
    if N == 0:
        raise UnsupportedIdeal("cofactor ideal contains no nonzero integer")
    for q in _prime_factors(N):
        h = gcd_mod_p(cof, q)
        if h.width > 0:
            nf = _normal_form(cof)
            return LaurentIdealResult(
                False, None, "Z", nf,
                f"cofactors share the factor {h} modulo {q}; the ideal lies in the proper ideal ({q}, {h})",
            )
    return LaurentIdealResult(True, g, "Z")


def _normal_form(cof):
    """(m, a) with (cof) = (m, t - a), when Z[t,1/t]/(cof) is cyclic of order m."""
    if len(cof) != 2:
        return None
    Q = finite_quotient(cof[0], cof[1])
    if not Q.is_finite or len(Q.invariant_factors) > 1:
        return None
    m = Q.order
    if m == 1:
        return None
    for a in range(m):
        if gcd(a, m) != 1:
            continue
        # (cof) is contained in (m, t - a) iff every cofactor vanishes at a mod m; equal orders give equality
        if all(_eval_mod(f, a, m) == 0 for f in cof):
            return (m, a)
    return None
