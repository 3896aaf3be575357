"""Para-inclusions J -> A of submodules and the reverse inclusion s A -> J.

An inclusion of modules induces T ⋉ J -> T ⋉ A, and that map is a
para-inclusion when every level J / J I^k -> A / A I^k is bijective.  Each
level is checked on explicit finite presentations of both sides.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from ..intmat import AbelianGroupStructure, gcd_combination, hnf, inverse_unimodular, lattice_equal, matvec, solve_in_hnf, solve_integer
from ..laurent import LaurentPoly
from ..ideals import IdealLattice
from ..quad_order import RingElement
from .groups import OutOfScope, lattice_element, make_group, module_as_lattice, poly_at_matrix
from .laurent_ideals import gcd_mod_p, gcd_over_z
from .presented import PresentedModule, check_level, lattice_presentation, present_module

DEFAULT_DEPTH = 6


class NotASubmodule(ValueError):
    pass


class NotSFractional(ValueError):
    pass


@dataclass(frozen=True)
class LevelCertificate:
    k: int
    source: AbelianGroupStructure
    target: AbelianGroupStructure
    kernel: AbelianGroupStructure
    cokernel: AbelianGroupStructure

    @property
    def bijective(self) -> bool:
        return self.kernel.is_trivial and self.cokernel.is_trivial

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "source": str(self.source),
            "target": str(self.target),
            "kernel": str(self.kernel),
            "cokernel": str(self.cokernel),
            "bijective": self.bijective,
        }


@dataclass
class InclusionReport:
    route: str
    levels: list[LevelCertificate]
    source: PresentedModule
    target: PresentedModule
    phi: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.levels) and self.levels[0].bijective and all(c.bijective for c in self.levels)

    @property
    def first_failure(self) -> int | None:
        return next((c.k for c in self.levels if not c.bijective), None)

    def to_dict(self) -> dict:
        return {
            "route": self.route,
            "passed": self.passed,
            "first_failure": self.first_failure,
            "levels": [c.to_dict() for c in self.levels],
        }


def check_inclusion(src: PresentedModule, tgt: PresentedModule, phi, depth: int, route: str) -> InclusionReport:
    levels = []
    for k in range(1, depth + 1):
        h = check_level(src, tgt, phi, k)
        levels.append(LevelCertificate(k, h.source, h.target, h.kernel, h.cokernel))
    return InclusionReport(route, levels, src, tgt, list(phi))


# -- input normalization -----------------------------------------------------------------

def _as_poly(x) -> LaurentPoly:
    if isinstance(x, RingElement):
        return LaurentPoly([x.x, x.y])
    if isinstance(x, (list, tuple)):
        return LaurentPoly(list(x))
    return LaurentPoly.coerce(x)


def _generators(J) -> list:
    if isinstance(J, IdealLattice):
        return J.basis()
    return list(J)


def _lattice_vectors(G, gens, n) -> list[list[int]]:
    out = []
    for g in gens:
        if isinstance(g, RingElement):
            v = [g.x, g.y] + [0] * (n - 2)
        elif isinstance(g, (LaurentPoly, int)):
            g = LaurentPoly.coerce(g)
            if G.module.kind != "cyclic":
                raise NotASubmodule("polynomial generators need a cyclic module")
            v = lattice_element(G, g)
        else:
            v = [int(c) for c in g]
        if len(v) != n:
            raise NotASubmodule(f"generator {g} has {len(v)} coordinates, A has rank {n}")
        out.append(v)
    return out


# -- the lattice route -------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeSubmodule:
    n: int
    M: list  # t-action on A, columns = images
    basis: list  # HNF rows spanning J
    action: list  # t-action on J in that basis, columns = images

    def coordinates(self, v):
        return solve_in_hnf(self.basis, v)


def lattice_submodule(G, gens) -> LatticeSubmodule:
    """Z[t, 1/t]-closure of gens inside A = Z^n."""
    n, M = module_as_lattice(G)
    Minv = inverse_unimodular(M)
    H = hnf(_lattice_vectors(G, gens, n), ncols=n)
    if not H:
        raise NotASubmodule("zero submodule")
    while True:
        more = H + [matvec(M, r) for r in H] + [matvec(Minv, r) for r in H]
        H2 = hnf(more, ncols=n)
        if lattice_equal(H2, H, n):
            break
        H = H2
    r = len(H)
    action = [[0] * r for _ in range(r)]
    for j, b in enumerate(H):
        c = solve_in_hnf(H, matvec(M, b))
        for i in range(r):
            action[i][j] = c[i]
    return LatticeSubmodule(n, M, H, action)


def _lattice_inclusion(G, gens, depth):
    sub = lattice_submodule(G, gens)
    src = lattice_presentation(sub.action, "J")
    tgt = lattice_presentation(sub.M, "A")
    phi = [tuple(LaurentPoly.const(b[i]) for i in range(sub.n)) for b in sub.basis]
    return sub, check_inclusion(src, tgt, phi, depth, "lattice")


# -- the free route (A = Z[t, 1/t]) ------------------------------------------------------

def _free_presentation(polys):
    polys = [p for p in polys if not p.is_zero()]
    if len(polys) == 1:
        return polys, PresentedModule(1, (), "J")
    if len(polys) != 2:
        raise OutOfScope("submodules of the free module are presented for at most two generators")
    g1, g2 = polys
    d = gcd_over_z([g1, g2])
    # the syzygies of (g1, g2) in a UFD form the free module on (g2/d, -g1/d)
    syz = (g2.exact_div(d), -g1.exact_div(d))
    return polys, PresentedModule(2, (syz,), "J")


# -- the principal routes ------------------------------------------------------------------

def _strip(num: int, n: int) -> int:
    num = abs(num)
    g = gcd(num, n)
    while g > 1:
        num //= g
        g = gcd(num, n)
    return num


def _z_inv_generator(G, polys) -> int:
    n = -G.module.f.normalized().coeffs[0]
    g = 0
    for p in polys:
        v = Fraction(0)
        for k, c in p.items():
            v += c * Fraction(n) ** k
        if v:
            g = gcd(g, _strip(v.numerator, n))
    if g == 0:
        raise NotASubmodule("zero submodule")
    return g


def _route(G) -> str:
    mod = G.module
    if module_as_lattice(G) is not None:
        return "lattice"
    if mod.kind == "free_rank_one":
        return "free"
    if mod.kind == "cyclic_mod_p":
        return "mod_p"
    f = mod.f.normalized()
    if mod.kind == "cyclic" and f.width == 1 and f.coeffs[-1] == 1 and f.content() == 1:
        return "z_inv_n"
    raise OutOfScope(f"no finite presentation route for submodules of {mod.describe()}")


def para_inclusion_check(J, G, depth: int = DEFAULT_DEPTH) -> InclusionReport:
    """Level-by-level check that J -> A induces isomorphisms J/J I^k -> A/A I^k, k = 1..depth."""
    G = make_group(G)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    gens = _generators(J)
    route = _route(G)
    if route == "lattice":
        return _lattice_inclusion(G, gens, depth)[1]
    polys = [_as_poly(g) for g in gens]
    A = present_module(G)
    if route == "free":
        polys, src = _free_presentation(polys)
        phi = [(p,) for p in polys]
        return check_inclusion(src, A, phi, depth, "free")
    if route == "mod_p":
        h = gcd_mod_p(polys, G.module.p)
        if h.is_zero():
            raise NotASubmodule("zero submodule")
        return check_inclusion(A, A, [(h,)], depth, "principal (mod p)")
    g = _z_inv_generator(G, polys)
    return check_inclusion(A, A, [(LaurentPoly.const(g),)], depth, "principal (Z[1/n])")


# -- witnesses for the reverse inclusion --------------------------------------------------

@dataclass
class WitnessReport:
    s: LaurentPoly
    modulus: int  # order of A / A I when cyclic, 0 when infinite
    forward: InclusionReport
    backward: InclusionReport

    @property
    def passed(self) -> bool:
        return self.forward.passed and self.backward.passed

    def to_dict(self) -> dict:
        return {
            "s": str(self.s),
            "modulus": self.modulus,
            "forward": self.forward.to_dict(),
            "backward": self.backward.to_dict(),
            "passed": self.passed,
        }


def para_witness(J, G, depth: int = DEFAULT_DEPTH) -> WitnessReport:
    """An s in J with s = 1 modulo the augmentation, and both inclusions s A -> J -> A checked."""
    G = make_group(G)
    gens = _generators(J)
    route = _route(G)
    if route == "lattice":
        if G.module.kind != "cyclic":
            raise OutOfScope("witnesses are elements of the coordinate ring; A must be cyclic")
        sub, fwd = _lattice_inclusion(G, gens, depth)
        n, M = sub.n, sub.M
        # s - 1 must lie in (t - 1) A, the column span of M - I
        aug_cols = [[M[i][j] - (i == j) for i in range(n)] for j in range(n)]
        e0 = [1] + [0] * (n - 1)
        x = solve_integer(sub.basis + aug_cols, e0)
        if x is None:
            raise NotSFractional("J + A I != A, so no element of J is 1 modulo the augmentation")
        sv = [sum(x[i] * sub.basis[i][c] for i in range(len(sub.basis))) for c in range(n)]
        s = LaurentPoly(sv)
        S = poly_at_matrix(s, M)
        phi = []
        for i in range(n):
            col = [S[r][i] for r in range(n)]
            c = sub.coordinates(col)
            if c is None:
                raise ArithmeticError("s A is not inside J")
            phi.append(tuple(LaurentPoly.const(v) for v in c))
        back = check_inclusion(lattice_presentation(M, "A"), lattice_presentation(sub.action, "J"), phi, depth, "lattice")
        f1 = G.module.f.normalized()
        return WitnessReport(s, abs(sum(f1.coeffs)), fwd, back)
    polys = [_as_poly(g) for g in gens]
    A = present_module(G)
    if route == "free":
        polys, src = _free_presentation(polys)
        g, coeffs = gcd_combination([p(1) for p in polys])
        if g != 1:
            raise NotSFractional(f"values at t = 1 have gcd {g}")
        s = LaurentPoly()
        for c, p in zip(coeffs, polys):
            s = s + p * c
        fwd = check_inclusion(src, A, [(p,) for p in polys], depth, "free")
        back = check_inclusion(A, src, [tuple(LaurentPoly.const(c) for c in coeffs)], depth, "free")
        return WitnessReport(s, 0, fwd, back)
    if route == "mod_p":
        p = G.module.p
        h = gcd_mod_p(polys, p)
        h1 = h(1) % p
        if h1 == 0:
            raise NotSFractional("generator vanishes at t = 1 modulo p")
        c = pow(int(h1), -1, p)
        s = (h * c).mod_p(p)
        fwd = check_inclusion(A, A, [(h,)], depth, "principal (mod p)")
        back = check_inclusion(A, A, [(LaurentPoly.const(c),)], depth, "principal (mod p)")
        return WitnessReport(s, p, fwd, back)
    n = -G.module.f.normalized().coeffs[0]
    g = _z_inv_generator(G, polys)
    m = abs(n - 1)
    if m > 1 and gcd(g, m) != 1:
        raise NotSFractional(f"generator {g} is not invertible modulo {m}")
    c = pow(g, -1, m) if m > 1 else 1
    s = LaurentPoly.const(c * g)
    fwd = check_inclusion(A, A, [(LaurentPoly.const(g),)], depth, "principal (Z[1/n])")
    back = check_inclusion(A, A, [(LaurentPoly.const(c),)], depth, "principal (Z[1/n])")
    return WitnessReport(s, m, fwd, back)
