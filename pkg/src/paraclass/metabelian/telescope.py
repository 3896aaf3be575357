"""The telescope A ⊆ A s_0^-1 ⊆ A (s_0 s_1)^-1 ⊆ ... of a module under S-elements.

Elements of the stages are formal fractions a / (s_i1 ... s_ik).  All modules
accepted here are torsion-free over the relevant elements (every s acts
injectively), so a/s = b/s' exactly when a s' = b s.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from ..intmat import hnf, in_lattice
from ..laurent import LaurentPoly
from .groups import OutOfScope, make_group, module_as_lattice, poly_at_matrix


class TorsionModule(OutOfScope):
    """Some S-element kills a nonzero element; fraction equality would need an extra factor."""


class NotInS(ValueError):
    pass


@dataclass(frozen=True)
class SFraction:
    num: object  # module element: integer vector or LaurentPoly
    den: tuple[int, ...] = ()  # indices into the declared S-generators


def _den_poly(den, s_gens) -> LaurentPoly:
    out = LaurentPoly.const(1)
    for i in den:
        out = out * s_gens[i]
    return out


def fraction_equal(x: SFraction, y: SFraction, s_gens) -> bool:
    """x = y in the localization of a torsion-free Z[t, 1/t]-module: cross-multiply."""
    return x.num * _den_poly(y.den, s_gens) == y.num * _den_poly(x.den, s_gens)


@dataclass(frozen=True)
class TelescopeLink:
    k: int  # link A_k -> A_{k+1}
    proper: bool
    index: int | None  # [A_{k+1} : A_k] when finite
    inclusion_ok: bool
    square_ok: bool
    expected_proper: bool

    @property
    def ok(self) -> bool:
        return self.inclusion_ok and self.square_ok and self.proper == self.expected_proper

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "proper": self.proper,
            "expected_proper": self.expected_proper,
            "index": self.index,
            "inclusion_ok": self.inclusion_ok,
            "square_ok": self.square_ok,
        }


@dataclass
class TelescopeReport:
    route: str
    s_gens: list[LaurentPoly]
    stages: int
    links: list[TelescopeLink] = field(default_factory=list)
    isomorphisms_ok: bool = True

    @property
    def strictly_ascending(self) -> bool:
        return all(l.proper for l in self.links)

    @property
    def constant(self) -> bool:
        return not any(l.proper for l in self.links)

    @property
    def passed(self) -> bool:
        return self.isomorphisms_ok and all(l.ok for l in self.links)

    def to_dict(self) -> dict:
        return {
            "route": self.route,
            "s_gens": [str(s) for s in self.s_gens],
            "stages": self.stages,
            "links": [l.to_dict() for l in self.links],
            "isomorphisms_ok": self.isomorphisms_ok,
            "strictly_ascending": self.strictly_ascending,
            "passed": self.passed,
        }


def _fmat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _finverse(a):
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def _is_integral(m) -> bool:
    return all(Fraction(x).denominator == 1 for row in m for x in row)


def _lattice_chain(G, s_gens, n_links) -> TelescopeReport:
    n, M = module_as_lattice(G)
    aug = hnf([[M[i][j] - (i == j) for i in range(n)] for j in range(n)], ncols=n)
    smats = []
    for s in s_gens:
        S = poly_at_matrix(s, M)
        for j in range(n):
            col = [S[i][j] - (i == j) for i in range(n)]
            if any(col) and not in_lattice(aug, col):
                raise NotInS(f"{s} is not 1 modulo the augmentation on A")
        if _finverse(S) is None:
            raise TorsionModule(f"{s} acts with a kernel on A")
        smats.append(S)
    report = TelescopeReport("lattice", list(s_gens), n_links + 1)
    # P_k^{-1}: columns span A_k = A (s_0 ... s_{k-1})^{-1}
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    Pinv = P
    for k in range(n_links):
        S = smats[k % len(smats)]
        P_next = _fmat_mul(S, P)
        Pinv_next = _finverse(P_next)
        # coordinates of A_k's basis in A_{k+1}'s basis: P_{k+1} P_k^{-1}
        trans = _fmat_mul(P_next, Pinv)
        inclusion_ok = _is_integral(trans)
        back = _finverse(trans)
        proper = not _is_integral(back)
        det_s = abs(_det_fraction(S))
        # phi_k(a) = P_k^{-1} a; the square incl o phi_k = phi_{k+1} o s_k
        square_ok = _fmat_mul(Pinv_next, [[Fraction(x) for x in r] for r in S]) == Pinv
        report.links.append(TelescopeLink(k, proper, int(det_s), inclusion_ok, square_ok, det_s != 1))
        # phi_{k+1} is a module map: it commutes with t
        Mf = [[Fraction(x) for x in r] for r in M]
        if _fmat_mul(Mf, Pinv_next) != _fmat_mul(Pinv_next, Mf):
            report.isomorphisms_ok = False
        P, Pinv = P_next, Pinv_next
    return report


def _det_fraction(a) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return d


def _is_laurent_unit(s: LaurentPoly) -> bool:
    return len([1 for _ in s.items()]) == 1 and abs(next(iter(s.items()))[1]) == 1


def _free_chain(s_gens, n_links, window: int = 3) -> TelescopeReport:
    for s in s_gens:
        if s(1) != 1:
            raise NotInS(f"{s} is not 1 at t = 1")
    report = TelescopeReport("free", list(s_gens), n_links + 1)
    idx = [k % len(s_gens) for k in range(n_links)]
    for k in range(n_links):
        s = s_gens[idx[k]]
        square_ok = True
        for j in range(-window, window + 1):
            a = LaurentPoly.monomial(j)
            # incl(phi_k(a)) = a / P_k must equal phi_{k+1}(a s_k) = a s_k / P_{k+1}
            if not fraction_equal(SFraction(a, tuple(idx[:k])), SFraction(a * s, tuple(idx[: k + 1])), s_gens):
                square_ok = False
        # 1 / P_{k+1} lies in A_k iff P_k / P_{k+1} = 1 / s_k is a Laurent polynomial
        try:
            LaurentPoly.const(1).exact_div(s)
            proper = False
        except ValueError:
            proper = True
        report.links.append(TelescopeLink(k, proper, None, True, square_ok, not _is_laurent_unit(s)))
    return report


def _z_inv_chain(G, s_gens, n_links) -> TelescopeReport:
    n = -G.module.f.normalized().coeffs[0]
    m = abs(n - 1)
    report = TelescopeReport("principal (Z[1/n])", list(s_gens), n_links + 1)
    vals = []
    for s in s_gens:
        v = sum((c * Fraction(n) ** k for k, c in s.items()), Fraction(0))
        if v == 0:
            raise TorsionModule(f"{s} acts as zero")
        if m > 1 and (v.numerator - v.denominator) % m:
            raise NotInS(f"{s} is not 1 modulo {m}")
        vals.append(v)

    def unit(v: Fraction) -> bool:
        num = abs(v.numerator)
        while num > 1 and (g := gcd(num, n)) > 1:
            num //= g
        return num == 1

    for k in range(n_links):
        v = vals[k % len(vals)]
        proper = not unit(v)
        report.links.append(TelescopeLink(k, proper, None, True, True, proper))
    return report


def telescope_chain(G, s_gens, n: int) -> TelescopeReport:
    """Build n links A_0 ⊆ A_1 ⊆ ... ⊆ A_n with s_k = s_gens[k mod len(s_gens)]."""
    G = make_group(G)
    s_gens = [LaurentPoly.coerce(s) for s in s_gens]
    if not s_gens:
        raise ValueError("need at least one S-element")
    mod = G.module
    if module_as_lattice(G) is not None:
        return _lattice_chain(G, s_gens, n)
    if mod.kind == "free_rank_one":
        return _free_chain(s_gens, n)
    if mod.kind == "cyclic_mod_p":
        raise TorsionModule("A is p-torsion; fraction equality needs an annihilating factor")
    f = mod.f.normalized()
    if f.width == 1 and f.coeffs[-1] == 1 and f.content() == 1:
        return _z_inv_chain(G, s_gens, n)
    raise OutOfScope(f"no telescope route for {mod.describe()}")
