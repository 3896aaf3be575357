"""Lower central series quotients, Hilbert coefficients, residual nilpotence and
finite presentability for split metabelian groups Q ⋉ A.

For n >= 2, gamma_n / gamma_(n+1) = A I^(n-1) / A I^n; gamma_1 / gamma_2 is
Q_ab x A / A I.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from ..intmat import AbelianGroupStructure, cokernel_structure, det, identity, mat_sub, matmul, matpow
from ..laurent import LaurentPoly, end_coeffs, finite_quotient, lp_eval
from .groups import (
    OutOfScope,
    SplitMetabelianGroup,
    _solve_combination,
    make_group,
    minimal_polynomial,
    module_as_lattice,
)
from .presented import present_module

U = LaurentPoly([-1, 1])  # t - 1


def _q_ab(G: SplitMetabelianGroup) -> AbelianGroupStructure:
    if G.q.kind == "infinite_cyclic":
        return AbelianGroupStructure(1, ())
    if G.q.kind == "finite_cyclic":
        return AbelianGroupStructure.from_diagonal([G.q.m])
    raise OutOfScope("Q = Z x torsion: lower central series not implemented")


def lcs_quotient(G, n: int) -> AbelianGroupStructure:
    """gamma_n(G) / gamma_(n+1)(G) by the lattice-chain route on a presentation of A."""
    G = make_group(G)
    if n < 1:
        raise ValueError("n must be >= 1")
    layer = present_module(G).layer(n)
    if n == 1:
        return _q_ab(G).direct_sum(layer)
    return layer


def quotient_by_power(G, k: int) -> AbelianGroupStructure:
    """A / A I^k through the quotient-ring route (finite_quotient or matrix powers)."""
    G = make_group(G)
    if k == 0:
        return AbelianGroupStructure()
    mod = G.module
    if mod.kind == "lattice":
        n, M = module_as_lattice(G)
        N = matpow(mat_sub(M, identity(n)), k)
        cols = [[N[i][j] for i in range(n)] for j in range(n)]
        return cokernel_structure(cols, n)
    modulus = {
        "cyclic": lambda: mod.f,
        "free_rank_one": lambda: LaurentPoly(),
        "cyclic_mod_p": lambda: LaurentPoly.const(mod.p),
    }[mod.kind]()
    return finite_quotient(modulus, U**k)


def lcs_quotient_by_sizes(G, n: int) -> dict:
    """Order data of gamma_n/gamma_(n+1) (n >= 2) from |A/AI^n| and |A/AI^(n-1)|.

    Returns {"free_rank": r, "torsion_order": m}: the free rank difference and,
    when the free ranks agree, the ratio of torsion orders.
    """
    big, small = quotient_by_power(G, n), quotient_by_power(G, n - 1)
    dr = big.free_rank - small.free_rank
    ratio = Fraction(big.torsion_order, small.torsion_order)
    return {"free_rank": dr, "torsion_order": ratio}


def lcs_routes_agree(G, n: int) -> bool:
    """Compare the lattice-chain structure with the quotient-ring size data."""
    G = make_group(G)
    direct = lcs_quotient(G, n)
    if n == 1:
        return direct == _q_ab(G).direct_sum(quotient_by_power(G, 1))
    sizes = lcs_quotient_by_sizes(G, n)
    if direct.free_rank != sizes["free_rank"]:
        return False
    if sizes["free_rank"] == 0:
        return Fraction(direct.torsion_order) == sizes["torsion_order"]
    # free part appears: torsion of the layer is invisible to sizes; check consistency only
    return True


# -- Hilbert coefficients -------------------------------------------------------------

@dataclass(frozen=True)
class HilbertSeries:
    ranks: tuple[int, ...]
    recurrence: tuple[int, ...] | None  # r_n = sum c_i r_(n-i)
    start: int | None  # recurrence holds for n >= start + order
    head: tuple[int, ...] = ()  # coefficients of t^0 .. t^(start-1)
    numerator: tuple[int, ...] = ()  # polynomial coefficients
    denominator: tuple[int, ...] = ()

    @property
    def found(self) -> bool:
        return self.recurrence is not None

    def render(self, unicode: bool = True) -> str:
        if not self.found:
            return "no recurrence found"
        terms = []
        head = _poly_str(self.head, unicode)
        if head != "0":
            terms.append(head)
        num = _poly_str(self.numerator, unicode)
        den = _poly_str(self.denominator, unicode)
        if num != "0":
            if den == "1":
                terms.append(num)
            else:
                if sum(1 for c in self.numerator if c) > 1:
                    num = f"({num})"
                terms.append(f"{num}/({den})")
        if not terms:
            return "0"
        return " + ".join(terms)

    def to_dict(self) -> dict:
        return {
            "ranks": list(self.ranks),
            "recurrence": list(self.recurrence) if self.recurrence is not None else None,
            "series": self.render(),
        }


_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _poly_str(coeffs, unicode: bool) -> str:
    minus = "−" if unicode else "-"
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        if k == 0:
            mon = ""
        elif k == 1:
            mon = "t"
        else:
            mon = "t" + (str(k).translate(_SUP) if unicode else f"^{k}")
        mag = abs(c)
        body = (str(mag) if mag != 1 or not mon else "") + mon
        if not parts:
            parts.append(("-" if c < 0 else "") + body if not unicode else (minus if c < 0 else "") + body)
        else:
            parts.append((minus if c < 0 else "+") + body)
    if not parts:
        return "0"
    if unicode:
        return "".join(parts)
    return " ".join(parts).replace(" +", " + ").replace(" -", " - ")


def _fit_recurrence(seq, order: int):
    """Integer coefficients c with seq[i] = sum c_j seq[i-1-j] for all i >= order, or None."""
    if order == 0:
        return () if all(x == 0 for x in seq) else None
    eqs = [(seq[i - order:i][::-1], seq[i]) for i in range(order, len(seq))]
    if len(eqs) < order:
        return None
    # exact solve, then verify every equation
    vecs = [[Fraction(e[0][j]) for e in eqs] for j in range(order)]
    target = [Fraction(-e[1]) for e in eqs]
    sol = _solve_combination(vecs, target)
    if sol is None:
        return None
    for lhs, rhs in eqs:
        if sum(c * x for c, x in zip(sol, lhs)) != rhs:
            return None
    if any(c.denominator != 1 for c in sol):
        return None
    return tuple(int(c) for c in sol)


def detect_series(ranks) -> HilbertSeries:
    """Smallest-order linear recurrence (order <= 4) on the trailing half, plus its rational series.

    ranks[i] is r_(i+1).  The series is sum r_n t^n.
    """
    ranks = tuple(ranks)
    L = len(ranks)
    tail = ranks[L // 2:]
    for order in range(0, 5):
        c = _fit_recurrence(tail, order)
        if c is None:
            continue
        seq = (0,) + ranks  # seq[n] = r_n, r_0 = 0
        # earliest start s >= 1 such that the recurrence holds for all n >= s + order
        s = len(seq) - order
        while s - 1 >= 1 and all(
            seq[n] == sum(c[j] * seq[n - 1 - j] for j in range(order))
            for n in range(s - 1 + order, len(seq))
        ):
            s -= 1
        head = seq[:s]
        den = (1,) + tuple(-x for x in c)
        # numerator = den * sum_{n>=s} r_n t^n, truncated below degree s + order
        num = [0] * (s + order)
        for n in range(s, s + order + 1):
            if n >= len(seq):
                break
            for j, dj in enumerate(den):
                if n + j < s + order:
                    num[n + j] += dj * seq[n]
        if order == 0:
            num = []
        return HilbertSeries(ranks, c, s, _trim(head), _trim(num), den)
    return HilbertSeries(ranks, None, None)


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def hilbert_coeffs(G, depth: int) -> HilbertSeries:
    G = make_group(G)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    ranks = [lcs_quotient(G, n).free_rank for n in range(1, depth + 1)]
    return detect_series(ranks)


# -- residual nilpotence ------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    value: bool
    reason: str
    certificate: dict = field(default_factory=dict)

    def __bool__(self):
        return self.value

    def to_dict(self) -> dict:
        return {"value": self.value, "reason": self.reason, "certificate": self.certificate}


def _irreducible_factors(f: LaurentPoly):
    """Irreducible factors over Z of a polynomial, as LaurentPolys (sympy factor_list)."""
    import sympy

    t = sympy.Symbol("t")
    g = f.normalized()
    expr = sum(c * t**i for i, c in enumerate(g.coeffs))
    _, facs = sympy.factor_list(expr, t)
    out = []
    for fac, _mult in facs:
        coeffs = sympy.Poly(fac, t).all_coeffs()[::-1]
        out.append(LaurentPoly([int(c) for c in coeffs]))
    return out


def _unit_at_one_factors(f: LaurentPoly):
    """Irreducible factors g of f with g(1) = ±1 (their primes are coprime to t - 1)."""
    g = f.normalized()
    if g.width == 1 or _is_irreducible_shortcut(g):
        facs = [g]
    else:
        facs = _irreducible_factors(g)
    return [h for h in facs if h.width >= 1 and abs(lp_eval(h, 1)) == 1]


def _is_irreducible_shortcut(g: LaurentPoly) -> bool:
    # quadratics with non-square discriminant and unit-content linear factors need no factoring
    if g.width == 2:
        c, b, a = g.coeffs
        D = b * b - 4 * a * c
        return (D < 0 or isqrt(D) ** 2 != D) and gcd(gcd(a, b), c) == 1
    return False


def is_residually_nilpotent(G) -> Verdict:
    """Is the intersection of the A I^n zero?

    By the Krull intersection theorem the intersection is the set of elements
    killed by some 1 + x with x in I; it is nonzero exactly when some
    associated prime of A is coprime to t - 1.  For A = R/(f) the associated
    primes are (g) for the irreducible factors g of f, and (g) + (t - 1) = R
    iff g(1) = ±1.  Constant factors p give (p), which never is.
    """
    G = make_group(G)
    mod = G.module
    if mod.kind == "free_rank_one":
        return Verdict(True, "A = Z[t,1/t] is a domain and t - 1 is not a unit", {})
    if mod.kind == "cyclic_mod_p":
        return Verdict(True, f"A = (Z/{mod.p})[t,1/t] is a domain and t - 1 is not a unit", {})
    if mod.kind == "lattice":
        n, M = module_as_lattice(G)
        N = mat_sub(M, identity(n))
        if not any(any(r) for r in matpow(N, n)):
            return Verdict(True, "t - 1 acts nilpotently", {"nilpotency_bound": n})
        mp = minimal_polynomial(M)
        bad = _unit_at_one_factors(mp)
        chain = _lattice_chain(M, 2 * n + 2)
        cert = {"minimal_polynomial": str(mp), "chain_dets": chain}
        if bad:
            return Verdict(False, f"factor {bad[0]} of the minimal polynomial is ±1 at t = 1", cert)
        return Verdict(True, "no factor of the minimal polynomial is ±1 at t = 1", cert)
    f = mod.f
    val = lp_eval(f, 1)
    cert = {"f(1)": int(val)}
    bad = _unit_at_one_factors(f)
    if bad:
        return Verdict(False, f"factor {bad[0]} is ±1 at t = 1, so t - 1 is a unit on that component", cert)
    return Verdict(True, f"no irreducible factor of {f} takes the value ±1 at t = 1 (|f(1)| = {abs(int(val))})", cert)


def _lattice_chain(M, bound: int):
    """|det| of (M - 1)^k for k = 1..bound (0 means rank drop)."""
    n = len(M)
    N = mat_sub(M, identity(n))
    P = identity(n)
    out = []
    for _ in range(bound):
        P = matmul(P, N)
        out.append(abs(det(P)))
    return out


# -- finite presentability ---------------------------------------------------------------------

def is_finitely_presentable(G) -> Verdict:
    """Tameness of A for Q of torsion-free rank at most one.

    With Q = <t>, the valuations are v and -v; A is tame iff it is finitely
    generated over Z[t] or over Z[1/t].  For A = R/(f) that happens iff an end
    coefficient of f is ±1.
    """
    G = make_group(G)
    if G.q.kind == "finite_cyclic":
        return Verdict(True, "Q finite and A finitely generated abelian: G is polycyclic-by-finite", {})
    if G.q.torsion_free_rank != 1:
        raise OutOfScope("Q of torsion-free rank >= 2: the general Sigma invariant is not implemented")
    mod = G.module
    if mod.kind == "lattice":
        return Verdict(True, "A is finitely generated abelian", {"over": ["Z[t]", "Z[1/t]"]})
    if mod.kind in ("free_rank_one", "cyclic_mod_p"):
        return Verdict(False, "A is finitely generated over neither Z[t] nor Z[1/t]", {"over": []})
    lo, hi = end_coeffs(mod.f)
    over = []
    if abs(hi) == 1:
        over.append("Z[1/t]")  # leading coefficient unit: higher powers of t reduce downward
    if abs(lo) == 1:
        over.append("Z[t]")
    if over:
        return Verdict(True, f"A is finitely generated over {' and '.join(over)}", {"over": over, "ends": [lo, hi]})
    return Verdict(False, f"end coefficients {lo}, {hi} of {mod.f} are not units", {"over": [], "ends": [lo, hi]})
