"""Split metabelian groups Q ⋉ A with Q cyclic and A a module over Z[Q]."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from ..intmat import det, identity, inverse_unimodular, matmul
from ..laurent import LaurentPoly, companion, cyclotomic_poly, lp


class UnknownPreset(ValueError):
    pass


class OutOfScope(ValueError):
    """The requested computation needs machinery this library does not implement."""


@dataclass(frozen=True)
class QSpec:
    kind: str  # infinite_cyclic | finite_cyclic | cyclic_times_torsion
    m: int | None = None  # order for finite_cyclic
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("infinite_cyclic", "finite_cyclic", "cyclic_times_torsion"):
            raise ValueError(f"unknown Q kind {self.kind}")
        if self.kind == "finite_cyclic" and (self.m is None or self.m < 1):
            raise ValueError("finite_cyclic needs m >= 1")

    @property
    def torsion_free_rank(self) -> int:
        return 0 if self.kind == "finite_cyclic" else 1

    def describe(self) -> str:
        if self.kind == "infinite_cyclic":
            return "Z"
        if self.kind == "finite_cyclic":
            return f"Z/{self.m}"
        return "Z x " + " x ".join(f"Z/{d}" for d in self.torsion)


@dataclass(frozen=True)
class ModuleSpec:
    kind: str  # cyclic | free_rank_one | cyclic_mod_p | lattice
    f: LaurentPoly | None = None
    p: int | None = None
    action: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if self.kind == "cyclic":
            if self.f is None or self.f.is_zero():
                raise ValueError("cyclic module needs f != 0")
            object.__setattr__(self, "f", self.f.normalized())
        elif self.kind == "cyclic_mod_p":
            if not self.p or self.p < 2:
                raise ValueError("cyclic_mod_p needs a prime p")
        elif self.kind == "lattice":
            if not self.action:
                raise ValueError("lattice module needs an action matrix")
            M = [list(r) for r in self.action]
            if abs(det(M)) != 1:
                raise ValueError("t must act by an automorphism (det ±1)")
        elif self.kind != "free_rank_one":
            raise ValueError(f"unknown module kind {self.kind}")

    def describe(self) -> str:
        if self.kind == "cyclic":
            return f"Z[t,1/t]/({self.f})"
        if self.kind == "free_rank_one":
            return "Z[t,1/t]"
        if self.kind == "cyclic_mod_p":
            return f"(Z/{self.p})[t,1/t]"
        return f"Z^{len(self.action)} with t acting by {[list(r) for r in self.action]}"


@dataclass(frozen=True)
class SplitMetabelianGroup:
    q: QSpec
    module: ModuleSpec
    name: str | None = None

    def describe(self) -> str:
        return f"{self.q.describe()} ⋉ {self.module.describe()}"


# -- presets ----------------------------------------------------------------------

def _quad_poly(d: int) -> LaurentPoly:
    from ..quad_order import laurent_model

    R = laurent_model(d)
    return R.f


def _preset(name: str) -> SplitMetabelianGroup:
    inf = QSpec("infinite_cyclic")
    if name == "lamplighter":
        return SplitMetabelianGroup(inf, ModuleSpec("cyclic_mod_p", p=2), name)
    if name == "wreath_zz":
        return SplitMetabelianGroup(inf, ModuleSpec("free_rank_one"), name)
    if name == "bs12":
        return SplitMetabelianGroup(inf, ModuleSpec("cyclic", f=lp(-2, 1)), name)
    if name in ("unipotent2", "heisenberg_like"):
        return SplitMetabelianGroup(inf, ModuleSpec("lattice", action=((1, 1), (0, 1))), "unipotent2")
    if name == "zc2":
        return SplitMetabelianGroup(QSpec("finite_cyclic", 2), ModuleSpec("cyclic", f=lp(-1, 0, 1)), name)
    if ":" in name:
        head, _, arg = name.partition(":")
        try:
            k = int(arg)
        except ValueError:
            raise UnknownPreset(f"bad parameter in preset {name!r}") from None
        if head == "z_inv_n":
            if k < 2:
                raise UnknownPreset("z_inv_n needs n >= 2")
            return SplitMetabelianGroup(inf, ModuleSpec("cyclic", f=lp(-k, 1)), name)
        if head == "quad":
            return SplitMetabelianGroup(inf, ModuleSpec("cyclic", f=_quad_poly(k)), name)
        if head == "cyclo":
            if k < 2:
                raise UnknownPreset("cyclo needs n >= 2")
            return SplitMetabelianGroup(inf, ModuleSpec("cyclic", f=cyclotomic_poly(k)), name)
    raise UnknownPreset(f"unknown preset {name!r}")


PRESET_NAMES = (
    "lamplighter",
    "wreath_zz",
    "bs12",
    "z_inv_n:<n>",
    "quad:<d>",
    "cyclo:<n>",
    "unipotent2",
    "heisenberg_like",
    "zc2",
)


def make_group(preset) -> SplitMetabelianGroup:
    """Group from a preset name, an explicit SplitMetabelianGroup, or a dict spec.

    Dict specs: {"q": "infinite_cyclic" | ("finite_cyclic", m), "module":
    {"kind": ..., "f": [coeffs], "min_deg": k, "p": p, "action": [[...]]}}.
    """
    if isinstance(preset, SplitMetabelianGroup):
        return preset
    if isinstance(preset, str):
        return _preset(preset.strip())
    if isinstance(preset, dict):
        q = preset.get("q", "infinite_cyclic")
        qspec = QSpec(q) if isinstance(q, str) else QSpec(q[0], q[1])
        m = preset["module"]
        f = LaurentPoly(m["f"], m.get("min_deg", 0)) if "f" in m else None
        action = tuple(tuple(r) for r in m["action"]) if "action" in m else None
        return SplitMetabelianGroup(qspec, ModuleSpec(m["kind"], f=f, p=m.get("p"), action=action), preset.get("name"))
    raise UnknownPreset(f"cannot build a group from {preset!r}")


# -- module views ---------------------------------------------------------------------

def has_unit_ends(f: LaurentPoly) -> bool:
    return abs(f.coeffs[0]) == 1 and abs(f.coeffs[-1]) == 1


def module_as_lattice(G: SplitMetabelianGroup):
    """(n, M) when A is free abelian of finite rank n with t acting by M; else None."""
    mod = G.module
    if mod.kind == "lattice":
        return len(mod.action), [list(r) for r in mod.action]
    if mod.kind == "cyclic" and has_unit_ends(mod.f):
        M = companion(mod.f)
        return len(M), M
    return None


def lattice_element(G: SplitMetabelianGroup, x: LaurentPoly) -> list[int]:
    """Coordinates of x * 1 in the lattice basis of A (cyclic modules with unit ends)."""
    n, M = module_as_lattice(G)
    Minv = inverse_unimodular(M)
    v = [0] * n
    for k, c in LaurentPoly.coerce(x).items():
        P = _matpow_signed(M, Minv, k)
        for i in range(n):
            v[i] += c * P[i][0]
    return v


def _matpow_signed(M, Minv, k):
    base = M if k >= 0 else Minv
    P = identity(len(M))
    for _ in range(abs(k)):
        P = matmul(P, base)
    return P


def poly_at_matrix(p: LaurentPoly, M) -> list[list[int]]:
    """p(M) for a unimodular M (negative powers via the exact inverse)."""
    n = len(M)
    Minv = inverse_unimodular(M)
    out = [[0] * n for _ in range(n)]
    for k, c in LaurentPoly.coerce(p).items():
        P = _matpow_signed(M, Minv, k)
        for i in range(n):
            for j in range(n):
                out[i][j] += c * P[i][j]
    return out


def minimal_polynomial(M) -> LaurentPoly:
    """Primitive integer minimal polynomial of an integer matrix (positive leading coefficient)."""
    n = len(M)
    powers = [identity(n)]
    for _ in range(n):
        powers.append(matmul(powers[-1], M))
    flat = [[Fraction(x) for row in P for x in row] for P in powers]
    for deg in range(1, n + 1):
        # solve sum_{i<deg} c_i M^i = -M^deg
        sol = _solve_combination(flat[:deg], flat[deg])
        if sol is not None:
            coeffs = [-c for c in sol] + [Fraction(1)]
            den = 1
            for c in coeffs:
                den = lcm(den, c.denominator)
            ints = [int(c * den) for c in coeffs]
            g = 0
            for c in ints:
                g = gcd(g, c)
            return LaurentPoly([c // g for c in ints])
    raise ArithmeticError("no minimal polynomial found")


def _solve_combination(vectors, target):
    """Fractions c with sum c_i vectors[i] = -target, or None."""
    m = len(vectors)
    n = len(target)
    rows = [[vectors[i][r] for i in range(m)] + [-target[r]] for r in range(n)]
    piv_cols = []
    r = 0
    for col in range(m):
        pr = next((i for i in range(r, n) if rows[i][col] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, n):
        if rows[i][m] != 0:
            return None
    sol = [Fraction(0)] * m
    for i, col in enumerate(piv_cols):
        sol[col] = rows[i][m]
    return sol


def coordinate_ring(G: SplitMetabelianGroup) -> dict:
    """Z[Q] modulo the annihilator of A, as data plus a printable description."""
    mod = G.module
    if G.q.kind == "finite_cyclic":
        base = f"Z[t]/(t^{G.q.m} - 1)"
    else:
        base = "Z[t,1/t]"
    if mod.kind == "cyclic":
        return {"ring": f"{base}/({mod.f})" if G.q.kind != "finite_cyclic" else f"Z[t]/({mod.f})",
                "annihilator": str(mod.f)}
    if mod.kind == "free_rank_one":
        return {"ring": base, "annihilator": "0"}
    if mod.kind == "cyclic_mod_p":
        return {"ring": f"(Z/{mod.p})[t,1/t]", "annihilator": str(mod.p)}
    mp = minimal_polynomial([list(r) for r in mod.action])
    return {"ring": f"{base}/({mp})", "annihilator": str(mp)}
