"""Independent brute-force oracles.  Nothing here calls the algorithm it checks."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import sympy
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors


def schoolbook_mul(p: dict, q: dict) -> dict:
    out = {}
    for i, a in p.items():
        for j, b in q.items():
            out[i + j] = out.get(i + j, 0) + a * b
    return {k: v for k, v in out.items() if v}


def sympy_structure(rows, n):
    """(free_rank, invariant factors > 1) of Z^n / span(rows), via sympy."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return n, ()
    M = Matrix(rows)
    rank = M.rank()
    facs = [abs(int(d)) for d in invariant_factors(M, domain=ZZ)]
    return n - rank, tuple(d for d in facs if d > 1)


def pell_unit(d: int, limit: int = 10**6):
    """Smallest unit > 1 of the maximal order of Q(sqrt d), as (u, v, denom): (u + v sqrt d)/denom."""
    den = 2 if d % 4 == 1 else 1
    best = None
    for v in range(1, limit):
        for target in (-4, 4) if den == 2 else (-1, 1):
            u2 = target + d * v * v
            if u2 > 0 and isqrt(u2) ** 2 == u2:
                u = isqrt(u2)
                if den == 2 and (u - v) % 2:
                    continue
                cand = (u, v)
                if best is None:
                    best = cand
        if best:
            return best[0], best[1], den
    return None


def squarefree(n: int) -> bool:
    return all(n % (p * p) for p in range(2, isqrt(n) + 1))


def _rho(form, D):
    a, b, c = form
    s = isqrt(D)
    m = 2 * abs(c)
    # b' = -b mod 2|c| with sqrt D - 2|c| < b' < sqrt D
    bp = (-b) % m
    while bp <= s - m:
        bp += m
    while bp > s:
        bp -= m
    return (c, bp, (bp * bp - D) // (4 * c))


def real_class_number(d: int) -> int:
    """Wide class number of Q(sqrt d), d > 1, by cycles of reduced indefinite forms.

    Cycles of reduced primitive forms count the narrow classes; halve when the
    fundamental unit has norm +1.
    """
    D = d if d % 4 == 1 else 4 * d
    s = isqrt(D)
    forms = set()
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        N = (b * b - D) // 4  # a c, negative
        for a in range(1, -N + 1):
            if N % a:
                continue
            for sa in (a, -a):
                f = (sa, b, N // sa)
                if gcd(gcd(a, b), abs(f[2])) == 1 and _strictly_reduced(f, D):
                    forms.add(f)
    seen, cycles = set(), 0
    for f in forms:
        if f in seen:
            continue
        cycles += 1
        g = f
        while g not in seen:
            seen.add(g)
            g = _rho(g, D)
    u, v, den = pell_unit(d)
    norm = (u * u - d * v * v) // (den * den)
    return cycles if norm == -1 else cycles // 2


def _strictly_reduced(f, D):
    a, b, _ = f
    # sqrt D - b < 2|a| < sqrt D + b with b > 0, b < sqrt D, compared exactly
    A = 2 * abs(a)
    if not (0 < b and b * b < D):
        return False
    lo = A + b  # need A > sqrt D - b  <=>  A + b > sqrt D
    hi = A - b  # need A < sqrt D + b  <=>  A - b < sqrt D
    return lo * lo > D and (hi < 0 or hi * hi < D)


def norm_search(B, C, target_abs: int, bound: int):
    """Elements x + y w (w^2 + B w + C = 0) with |x^2 - Bxy + Cy^2| = target_abs."""
    out = []
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if abs(x * x - B * x * y + C * y * y) == target_abs:
                out.append((x, y))
    return out


def cyclotomic_sympy(n: int):
    t = sympy.Symbol("t")
    return [int(c) for c in sympy.Poly(sympy.cyclotomic_poly(n, t), t).all_coeffs()[::-1]]


def prime_power(n: int) -> bool:
    return n > 1 and len(sympy.factorint(n)) == 1


def frac_eval(p: dict, x: Fraction) -> Fraction:
    return sum((c * x**k for k, c in p.items()), Fraction(0))


def truncated_quotient_ranks(f_coeffs, min_deg: int, depth: int, p: int | None = None):
    """(free rank, torsion) of Z[u]/(u^k, f(1 + u)) [and p] for k = 1..depth, by sympy SNF.

    f is given by its coefficient list starting at t^min_deg; an empty list is the zero module relation.
    """
    u = sympy.Symbol("u")
    out = []
    for k in range(1, depth + 1):
        rows = []
        if f_coeffs:
            g = sympy.expand(sum(c * (1 + u) ** (min_deg + i) for i, c in enumerate(f_coeffs)) * (1 + u) ** max(0, -min_deg))
            for j in range(k):
                h = sympy.Poly(sympy.expand(g * u**j), u)
                row = [0] * k
                for (e,), c in h.terms():
                    if e < k:
                        row[e] = int(c)
                rows.append(row)
        if p:
            rows += [[p * int(i == j) for j in range(k)] for i in range(k)]
        out.append(sympy_structure(rows, k))
    return out


def hilbert_ranks_oracle(f_coeffs, min_deg: int, depth: int):
    """r_1 = 1 + rank(A/AI), r_n = rank(A/AI^n) - rank(A/AI^(n-1)) for infinite cyclic Q."""
    levels = truncated_quotient_ranks(f_coeffs, min_deg, depth)
    ranks = [1 + levels[0][0]]
    for n in range(2, depth + 1):
        ranks.append(levels[n - 1][0] - levels[n - 2][0])
    return ranks
