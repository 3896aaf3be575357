"""Integer Laurent polynomials Z[t, 1/t] and quotient-group structure."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from .intmat import AbelianGroupStructure, cokernel_structure, det, gcd_all


class NotFinitelyGenerated(ValueError):
    """The requested quotient is not finitely generated as an abelian group."""


class LaurentPoly:
    """sum(coeffs[i] * t**(min_deg + i)), kept in canonical form.

    Canonical form: no leading/trailing zero coefficients; the zero
    polynomial is ``coeffs == ()`` with ``min_deg == 0``.
    """

    __slots__ = ("min_deg", "coeffs")

    def __init__(self, coeffs=(), min_deg: int = 0):
        c = [int(x) for x in coeffs]
        lo = 0
        while lo < len(c) and c[lo] == 0:
            lo += 1
        hi = len(c)
        while hi > lo and c[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.min_deg, self.coeffs = 0, ()
        else:
            self.min_deg, self.coeffs = min_deg + lo, tuple(c[lo:hi])

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "LaurentPoly":
        d = {k: v for k, v in d.items() if v}
        if not d:
            return cls()
        lo, hi = min(d), max(d)
        return cls([d.get(k, 0) for k in range(lo, hi + 1)], lo)

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentPoly":
        return cls([c], k)

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot coerce {x!r} to LaurentPoly")

    # -- basic structure -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def max_deg(self) -> int:
        return self.min_deg + len(self.coeffs) - 1

    @property
    def width(self) -> int:
        """Degree span max_deg - min_deg (0 for monomials and zero)."""
        return max(len(self.coeffs) - 1, 0)

    def items(self):
        return ((self.min_deg + i, c) for i, c in enumerate(self.coeffs) if c)

    def coeff(self, k: int) -> int:
        i = k - self.min_deg
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def content(self) -> int:
        return gcd_all(self.coeffs)

    def shift(self, k: int) -> "LaurentPoly":
        if self.is_zero():
            return self
        return LaurentPoly(self.coeffs, self.min_deg + k)

    def normalized(self) -> "LaurentPoly":
        """Shift so the lowest term is t^0 (an ordinary polynomial with nonzero constant)."""
        return self.shift(-self.min_deg)

    # -- arithmetic --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.min_deg == other.min_deg and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.min_deg, self.coeffs))

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.min_deg, other.min_deg)
        hi = max(self.max_deg, other.max_deg)
        return LaurentPoly([self.coeff(k) + other.coeff(k) for k in range(lo, hi + 1)], lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly([-c for c in self.coeffs], self.min_deg)

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly([c * other for c in self.coeffs], self.min_deg)
        other = LaurentPoly.coerce(other)
        if self.is_zero() or other.is_zero():
            return LaurentPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPoly(out, self.min_deg + other.min_deg)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.coeffs) == 1 and abs(self.coeffs[0]) == 1:
                return LaurentPoly([self.coeffs[0] ** k], self.min_deg * k)
            raise ValueError("only units ±t^k may be raised to negative powers")
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        return lp_eval(self, x)

    def divmod_monic(self, g: "LaurentPoly"):
        """Polynomial division of the normalized parts by g whose leading coefficient is ±1.

        Returns (q, r) with self = q*g + r and r spanning fewer than g.width+1 terms,
        all as Laurent polynomials placed relative to self.min_deg.
        """
        if g.is_zero() or abs(g.coeffs[-1]) != 1:
            raise ValueError("divisor must have leading coefficient ±1")
        if self.is_zero():
            return LaurentPoly(), LaurentPoly()
        lead = g.coeffs[-1]
        n = g.width
        rem = list(self.coeffs)
        q = [0] * max(len(rem) - n, 0)
        for i in range(len(rem) - 1, n - 1, -1):
            c = rem[i] * lead  # lead = ±1 is its own inverse
            if c:
                q[i - n] = c
                for j, gc in enumerate(g.coeffs):
                    rem[i - n + j] -= c * gc
        quot = LaurentPoly(q, self.min_deg - g.min_deg)
        return quot, LaurentPoly(rem[:n], self.min_deg)

    def exact_div(self, g: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient self / g; raises if g does not divide self."""
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        rem = list(self.coeffs)
        n = g.width
        lead = g.coeffs[-1]
        q = [0] * max(len(rem) - n, 0)
        for i in range(len(rem) - 1, n - 1, -1):
            if rem[i]:
                if rem[i] % lead:
                    raise ValueError("inexact division")
                c = rem[i] // lead
                q[i - n] = c
                for j, gc in enumerate(g.coeffs):
                    rem[i - n + j] -= c * gc
        if any(rem):
            raise ValueError("inexact division")
        return LaurentPoly(q, self.min_deg - g.min_deg)

    def mod_p(self, p: int) -> "LaurentPoly":
        return LaurentPoly([c % p for c in self.coeffs], self.min_deg)

    # -- display -------------------------------------------------------------
    def __repr__(self):
        return f"LaurentPoly({list(self.coeffs)}, {self.min_deg})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k, c in sorted(self.items(), reverse=True):
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        s = "".join(f" {sgn} {b}" for sgn, b in terms).strip()
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


T = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)


def lp(*coeffs, min_deg: int = 0) -> LaurentPoly:
    """Shorthand: lp(c0, c1, c2) = c0 + c1 t + c2 t^2."""
    return LaurentPoly(coeffs, min_deg)


def lp_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def lp_eval(p: LaurentPoly, x) -> Fraction:
    x = Fraction(x)
    if x == 0:
        raise ZeroDivisionError("t is invertible; cannot evaluate at 0")
    return sum((c * x**k for k, c in p.items()), Fraction(0))


def end_coeffs(p: LaurentPoly) -> tuple[int, int]:
    """(lowest-degree coefficient, highest-degree coefficient)."""
    if p.is_zero():
        raise ValueError("zero polynomial has no end coefficients")
    return p.coeffs[0], p.coeffs[-1]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> LaurentPoly:
    """n-th cyclotomic polynomial, by exact division of t^n - 1 by Phi_d, d | n, d < n."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = LaurentPoly.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            poly = poly.exact_div(cyclotomic_poly(d))
    return poly


def binom_general(i: int, j: int) -> int:
    """Generalized binomial coefficient C(i, j) for any integer i and j >= 0."""
    if j < 0:
        return 0
    if i >= 0:
        return comb(i, j)
    # C(-m, j) = (-1)^j C(m + j - 1, j)
    return (-1) ** j * comb(-i + j - 1, j)


def expand_at_one(p: LaurentPoly, k: int) -> list[int]:
    """Coefficients of p in the basis 1, u, ..., u^(k-1) of Z[t,1/t]/(u^k), u = t - 1.

    These are the Taylor coefficients of p at t = 1; t^i = (1+u)^i for every integer i.
    """
    out = [0] * k
    for i, c in p.items():
        for j in range(k):
            out[j] += c * binom_general(i, j)
    return out


def companion(g: LaurentPoly) -> list[list[int]]:
    """Matrix of multiplication by t on Z[t]/(g) in the basis 1, t, ..., t^(n-1).

    g is normalized first and must have leading coefficient ±1.  Columns are images.
    """
    g = g.normalized()
    if abs(g.coeffs[-1]) != 1:
        raise ValueError("companion matrix needs leading coefficient ±1")
    n = g.width
    lead = g.coeffs[-1]
    m = [[0] * n for _ in range(n)]
    for j in range(n - 1):
        m[j + 1][j] = 1
    for i in range(n):
        m[i][n - 1] = -g.coeffs[i] * lead
    return m


def _mult_matrix(h: LaurentPoly, g: LaurentPoly, modulus: int = 0) -> list[list[int]]:
    """Matrix (columns = images of 1..t^(n-1)) of multiplication by h on Z[t,1/t]/(g[, modulus]).

    g normalized must have end coefficients that are units modulo ``modulus``
    (±1 when modulus is 0).
    """
    g = g.normalized()
    lead = g.coeffs[-1]
    if modulus:
        inv = pow(lead, -1, modulus)
        g = LaurentPoly([(c * inv) % modulus for c in g.coeffs])
    else:
        g = g * lead
    n = g.width
    cols = [_reduce(h.shift(j), g, modulus) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _reduce(x: LaurentPoly, g: LaurentPoly, modulus: int) -> list[int]:
    """Coordinates of x mod g (g monic, normalized) in basis 1..t^(n-1)."""
    if x.min_deg < 0:
        return _reduce_negative(x, g, modulus)
    n = g.width
    coeffs = [0] * x.min_deg + list(x.coeffs) if not x.is_zero() else []
    for i in range(len(coeffs) - 1, n - 1, -1):
        c = coeffs[i]
        if modulus:
            c %= modulus
        if c:
            for j, gc in enumerate(g.coeffs):
                coeffs[i - n + j] -= c * gc
    out = (coeffs + [0] * n)[:n]
    return [c % modulus for c in out] if modulus else out


def _reduce_negative(x: LaurentPoly, g: LaurentPoly, modulus: int) -> list[int]:
    """Reduce a Laurent polynomial with negative exponents mod g using t^-1 = -(g - g0)/(g0 t)."""
    n = g.width
    g0 = g.coeffs[0]
    if modulus:
        g0inv = pow(g0, -1, modulus)
    elif abs(g0) == 1:
        g0inv = g0
    else:
        raise ValueError("t is not invertible modulo g")
    # t^-1 as an element of Z[t]/(g):  g0 + t*(rest) = 0  =>  t^-1 = -g0inv * rest
    rest = LaurentPoly(g.coeffs[1:])
    tinv = rest * (-g0inv)
    k = -x.min_deg
    shifted = x.shift(k)  # polynomial
    acc = _reduce(shifted, g, modulus)
    tinv_vec = _reduce(tinv, g, modulus)
    tinv_poly = LaurentPoly(tinv_vec)
    for _ in range(k):
        acc = _reduce(LaurentPoly(acc) * tinv_poly, g, modulus)
    return acc


def _unit_ends_mod(g: LaurentPoly, modulus: int) -> bool:
    lo, hi = end_coeffs(g)
    if modulus == 0:
        return abs(lo) == 1 and abs(hi) == 1
    return gcd(lo, modulus) == 1 and gcd(hi, modulus) == 1


def resultant(f: LaurentPoly, g: LaurentPoly) -> int:
    """Resultant of the normalized polynomials (Sylvester determinant)."""
    f, g = f.normalized(), g.normalized()
    m, n = f.width, g.width
    if m == 0 and n == 0:
        return 1
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return det(rows)


def _quotient_via(base: LaurentPoly, others, modulus: int) -> AbelianGroupStructure:
    """Z[t,1/t]/(base, *others, modulus) using base as the companion modulus."""
    n = base.width
    if n == 0:
        return AbelianGroupStructure()  # base is a unit
    rels = []
    for h in others:
        if h.is_zero():
            continue
        m = _mult_matrix(h, base, modulus)
        rels.extend([[m[i][j] for i in range(n)] for j in range(n)])
    if modulus:
        rels.extend([[modulus * int(i == j) for j in range(n)] for i in range(n)])
    return cokernel_structure(rels, n)


def finite_quotient(g1: LaurentPoly, g2: LaurentPoly) -> AbelianGroupStructure:
    """Abelian group structure of Z[t, 1/t] / (g1, g2).

    Exact: one generator (or an integer known to lie in the ideal) is used as
    modulus so that the quotient is a free Z- or Z/N-module of finite rank with
    t acting by a companion matrix; the other generator's multiplication matrix
    supplies the remaining relations.  Raises NotFinitelyGenerated when the
    quotient is not finitely generated as an abelian group.
    """
    g1, g2 = LaurentPoly.coerce(g1), LaurentPoly.coerce(g2)
    gens = [g for g in (g1, g2) if not g.is_zero()]
    if not gens:
        raise ValueError("g1 and g2 are both zero")
    for g in gens:
        if g.width == 0 and abs(g.coeffs[0]) == 1:
            return AbelianGroupStructure()
    for i, g in enumerate(gens):
        if _unit_ends_mod(g, 0):
            return _quotient_via(g, gens[:i] + gens[i + 1:], 0)
    if len(gens) == 1:
        raise NotFinitelyGenerated(
            f"Z[t,1/t]/({gens[0]}) is not finitely generated: end coefficients are not units"
        )
    n_int = abs(resultant(gens[0], gens[1]))
    if n_int == 0:
        raise NotFinitelyGenerated(
            f"({g1}, {g2}) share a factor over Q and neither has unit end coefficients"
        )
    if n_int == 1:
        return AbelianGroupStructure()  # the ideal contains 1
    for i, g in enumerate(gens):
        if g.width > 0 and _unit_ends_mod(g, n_int):
            return _quotient_via(g, gens[:i] + gens[i + 1:], n_int)
        if g.width == 0:
            # constant generator c: quotient is (Z/c)[t,1/t]/(other)
            other = gens[1 - i]
            if _unit_ends_mod(other, g.coeffs[0]):
                return _quotient_via(other, [], abs(g.coeffs[0]))
    raise NotFinitelyGenerated(f"quotient by ({g1}, {g2}) not handled: no generator has unit ends modulo {n_int}")
