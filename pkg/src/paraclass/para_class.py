"""S-fractional ideals, the S-class group, and classification of para-equivalent groups.

For G = T ⋉ A with A cyclic over its coordinate ring D, S is the image of 1 + I
where I is generated by t - 1.  An ideal J of D is S-fractional when it meets
S, i.e. when J + (t - 1) D = D.  Groups para-equivalent to G correspond to
S-fractional ideals up to module isomorphism.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .class_group import ClassGroup, compute_class_group, minkowski_bound, primes_up_to, structure_from_relations
from .ideals import (
    IdealLattice,
    _require_maximal,
    class_key,
    iter_ideals,
    ideal_from_generators,
    ideal_mul,
    ideal_sum,
    is_closed,
    is_principal,
    lattice_index,
    primes_above,
    principal_ideal,
    unit_ideal,
)
from .intmat import AbelianGroupStructure, hnf, lattice_equal, lattice_quotient, matmul, solve_integer
from .laurent import LaurentPoly
from .metabelian.groups import OutOfScope, make_group, module_as_lattice
from .metabelian.lcs import Verdict, is_finitely_presentable, is_residually_nilpotent
from .metabelian.para import NotSFractional
from .published import CYCLOTOMIC_PID_BOUND, CYCLOTOMIC_RIGID_EXTRA, cyclotomic_count
from .quad_order import ONE, W, MonogenicRing, RingElement, make_ring

Z_C2 = MonogenicRing(0, -1)
BOUNDED_FAMILY_LIMIT = 10


class DegenerateAugmentation(ValueError):
    pass


# -- the augmentation ideal and S-fractionality ------------------------------------------

def aug_generator(R: MonogenicRing, t_bar: RingElement | None = None) -> RingElement:
    t_bar = W if t_bar is None else t_bar
    return t_bar - ONE


def aug_image(R: MonogenicRing, t_bar: RingElement | None = None) -> IdealLattice:
    """The ideal generated by the image of t - 1."""
    g = aug_generator(R, t_bar)
    if g.is_zero():
        raise DegenerateAugmentation("t acts trivially: the augmentation ideal is zero")
    return principal_ideal(R, g)


def aug_quotient_order(R: MonogenicRing, t_bar: RingElement | None = None):
    """|D / (t - 1) D|, or None when the quotient is infinite (Z)."""
    return lattice_index(aug_image(R, t_bar))


def is_s_fractional(J: IdealLattice, t_bar: RingElement | None = None, aug: IdealLattice | None = None) -> bool:
    """J contains an element = 1 modulo (t - 1), i.e. J + (t - 1) = D.

    aug overrides the augmentation ideal (used when only a subring is modelled).
    """
    aug = aug if aug is not None else aug_image(J.ring, t_bar)
    return ideal_sum(J, aug).is_unit_ideal


def s_fractional_witness(J: IdealLattice, t_bar: RingElement | None = None, aug: IdealLattice | None = None):
    """An element of J congruent to 1 modulo (t - 1), or None."""
    aug = aug if aug is not None else aug_image(J.ring, t_bar)
    jb = J.basis()
    rows = [[e.x, e.y] for e in jb + aug.basis()]
    x = solve_integer(rows, [1, 0])
    if x is None:
        return None
    out = RingElement(0, 0)
    for c, e in zip(x, jb):
        out = out + e.scale(c)
    return out


# -- the S-class group --------------------------------------------------------------------

@dataclass
class SClassReport:
    ring: MonogenicRing
    aug_gen: RingElement
    s_classes: AbelianGroupStructure
    full_classes: AbelianGroupStructure
    comparison: str  # isomorphic | proper_subgroup
    representatives: list[IdealLattice]
    unrestricted: AbelianGroupStructure | None = None
    scope: str = "in scope"
    walk_primes: list[IdealLattice] = field(default_factory=list)
    class_group: ClassGroup | None = None

    @property
    def readings_agree(self) -> bool:
        return self.unrestricted == self.s_classes

    def to_dict(self) -> dict:
        return {
            "ring": self.ring.describe(),
            "aug_gen": str(self.aug_gen),
            "s_classes": self.s_classes.to_dict(),
            "full_classes": self.full_classes.to_dict(),
            "comparison": self.comparison,
            "readings": {
                "s_fractional_principal": self.s_classes.to_dict(),
                "all_principal": self.unrestricted.to_dict() if self.unrestricted else None,
                "agree": self.readings_agree,
            },
            "representatives": [list(J.hnf_tuple()) for J in self.representatives],
            "scope": self.scope,
        }


def _s_walk(R, gens, t_bar, limit=500):
    """BFS over classes using S-fractional generators; products stay unreduced, hence S-fractional.

    A coincidence of classes J1 ~ J2 between S-fractional ideals is a relation for
    the restricted reading: the quotient J2 / J1 has valuation zero at every
    prime over t - 1, so its generator is a unit there.
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
            K = ideal_mul(rep, P)
            if not is_s_fractional(K, t_bar):
                raise ArithmeticError("product of S-fractional ideals is not S-fractional")
            k2 = class_key(K)
            v2 = tuple(x + (j == i) for j, x in enumerate(vec))
            if k2 in nodes:
                rel = [x - y for x, y in zip(v2, nodes[k2][0])]
                if any(rel):
                    relations.append(rel)
            else:
                if len(nodes) >= limit:
                    raise RuntimeError("S-class walk exceeded its limit")
                nodes[k2] = (v2, K)
                queue.append(k2)
    return nodes, relations


def _subgroup_in_cl(cl: ClassGroup, ideals) -> AbelianGroupStructure:
    """Structure of the subgroup of Cl generated by the classes of the given ideals."""
    facs = cl.structure.invariant_factors
    r = len(facs)
    if r == 0:
        return AbelianGroupStructure()
    logs = {class_key(J): exps for exps, J in cl.class_index.items()}
    vecs = [list(logs[class_key(J)]) for J in ideals]
    rels = [[d if i == j else 0 for j in range(r)] for i, d in enumerate(facs)]
    return lattice_quotient(vecs + rels, rels, r)


def s_class_group(R: MonogenicRing, t_bar: RingElement | None = None, max_prime: int = 2000) -> SClassReport:
    """Cl_S(D): S-fractional ideals modulo S-fractional principal ideals.

    The unrestricted reading (modulo all principal ideals, i.e. the image in
    Cl(D)) is computed independently from discrete logarithms in Cl(D).
    """
    _require_maximal(R)
    scope = "in scope"
    if t_bar is None:
        if not R.t_invertible:
            raise ValueError("w is not a unit; pass t_bar explicitly")
    else:
        if R.norm(t_bar) not in (1, -1):
            raise ValueError("t_bar must be a unit")
        if t_bar != W:
            scope = "outside scope: t_bar does not generate D as a Laurent ring"
    cl = compute_class_group(R)
    bound = max(minkowski_bound(R), 2)
    gens = [P for p in primes_up_to(bound) for P in primes_above(R, p) if is_s_fractional(P, t_bar)]
    nodes, relations = _s_walk(R, gens, t_bar)
    p = bound
    while len(nodes) < cl.order and p < max_prime:
        p += 1
        if any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            continue
        fresh = [P for P in primes_above(R, p) if is_s_fractional(P, t_bar) and class_key(P) not in nodes]
        if fresh:
            gens.append(fresh[0])
            nodes, relations = _s_walk(R, gens, t_bar)
    structure, _ = structure_from_relations(len(gens), relations)
    if structure.order != len(nodes):
        raise ArithmeticError("S-class walk inconsistent with its relations")
    unrestricted = _subgroup_in_cl(cl, gens)
    reps = _small_representatives(R, nodes, t_bar)
    comparison = "isomorphic" if structure.order == cl.order else "proper_subgroup"
    return SClassReport(
        R, aug_generator(R, t_bar), structure, cl.structure, comparison, reps, unrestricted, scope, gens, cl
    )


def _small_representatives(R, nodes, t_bar, max_norm: int = 120):
    """Per S-class, the S-fractional ideal of least norm found up to max_norm (else the walk product)."""
    best = {}
    for J in iter_ideals(R, max_norm):
        k = class_key(J)
        if k in nodes and k not in best and is_s_fractional(J, t_bar):
            best[k] = J
        if len(best) == len(nodes):
            break
    order = sorted(nodes, key=lambda k: (sum(nodes[k][0]), nodes[k][0]))
    return [best.get(k, nodes[k][1]) for k in order]


# -- realizations ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParaRealization:
    ideal: IdealLattice
    basis: tuple[RingElement, ...]
    action_on_J: list
    action_on_A: list
    inclusion: list
    commutes: bool

    def to_dict(self) -> dict:
        return {
            "hnf": list(self.ideal.hnf_tuple()),
            "basis": [[e.x, e.y] for e in self.basis],
            "action": self.action_on_J,
            "ambient_action": self.action_on_A,
            "inclusion": self.inclusion,
            "commutes": self.commutes,
        }


def realize_para_group(J: IdealLattice, basis=None, t_bar: RingElement | None = None) -> ParaRealization:
    """Matrices (columns = images) of t on J, t on A = D, and the inclusion J -> A."""
    R = J.ring
    if not is_s_fractional(J, t_bar):
        raise NotSFractional(f"{J} is not S-fractional: T ⋉ J is not para-equivalent to T ⋉ A")
    t_bar = W if t_bar is None else t_bar
    basis = list(basis) if basis is not None else J.basis()
    span = hnf([[e.y, e.x] for e in basis], 2)
    if len(basis) != J.rank or not lattice_equal(span, J._hnf_rows(), 2):
        raise ValueError("the given elements are not a Z-basis of J")
    r = len(basis)
    inclusion = [[basis[j].x if i == 0 else basis[j].y for j in range(r)] for i in range(2)]
    act_A_cols = [R.mul(t_bar, ONE), R.mul(t_bar, W)]
    action_A = [[act_A_cols[j].x if i == 0 else act_A_cols[j].y for j in range(2)] for i in range(2)]
    action_J = [[0] * r for _ in range(r)]
    for j, e in enumerate(basis):
        c = solve_integer([[b.x, b.y] for b in basis], [R.mul(t_bar, e).x, R.mul(t_bar, e).y])
        if c is None:
            raise ArithmeticError("J is not closed under t")
        for i in range(r):
            action_J[i][j] = c[i]
    commutes = matmul(inclusion, action_J) == matmul(action_A, inclusion)
    return ParaRealization(J, tuple(basis), action_J, action_A, inclusion, commutes)


# -- rigidity --------------------------------------------------------------------------------

def is_s_rigid(G) -> Verdict:
    """Every element of S acts invertibly on A.

    The coordinate ring is a finitely generated Z-algebra, so its Jacobson
    radical is its nilradical: 1 + I consists of units iff the image of t - 1
    is nilpotent.
    """
    G = make_group(G)
    mod = G.module
    if mod.kind == "lattice":
        n, M = module_as_lattice(G)
        N = [[M[i][j] - (i == j) for j in range(n)] for i in range(n)]
        P = N
        for k in range(1, n + 1):
            if not any(any(r) for r in P):
                return Verdict(True, f"(t - 1)^{k} acts as zero", {"nilpotency": k})
            P = matmul(P, N)
        return Verdict(False, "t - 1 is not nilpotent on A", {})
    if mod.kind in ("free_rank_one", "cyclic_mod_p"):
        return Verdict(False, "the coordinate ring is a domain in which t - 1 is a nonzero non-unit", {})
    f = mod.f.normalized()
    if f.width == 0:
        return Verdict(True, "A is finite cyclic with t acting trivially", {})
    k = 0
    g = f
    u = LaurentPoly([-1, 1])
    while g.width > 0:
        try:
            g = g.exact_div(u)
        except ValueError:
            break
        k += 1
    if g.width == 0 and abs(g.coeffs[0]) == 1:
        return Verdict(True, f"f = ±(t - 1)^{k}, so t - 1 is nilpotent", {"nilpotency": k})
    return Verdict(False, f"{mod.f} does not divide a power of t - 1", {})


# -- classification ------------------------------------------------------------------------------

@dataclass
class ClassificationReport:
    subject: str
    flags: dict
    class_group: AbelianGroupStructure | None
    s_class_group: AbelianGroupStructure | None
    para_class_count: int
    representatives: list
    provenance: dict
    path: str
    reason: str

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "flags": self.flags,
            "class_group": self.class_group.to_dict() if self.class_group else None,
            "s_class_group": self.s_class_group.to_dict() if self.s_class_group else None,
            "para_class_count": self.para_class_count,
            "representatives": self.representatives,
            "provenance": self.provenance,
            "path": self.path,
            "reason": self.reason,
        }


def _verdict_flag(fn, G) -> dict:
    try:
        v = fn(G)
        return {"value": v.value, "reason": v.reason, "certificate": v.certificate}
    except OutOfScope as e:
        return {"value": None, "reason": f"out of scope: {e}", "certificate": {}}


def _quad_ring(G) -> MonogenicRing | None:
    mod = G.module
    if mod.kind != "cyclic":
        return None
    f = mod.f.normalized()
    if f.width != 2 or f.content() != 1:
        return None
    try:
        return make_ring(f)
    except ValueError:
        return None


def _cyclotomic_index(G) -> int | None:
    name = G.name or ""
    if name.startswith("cyclo:"):
        return int(name.split(":")[1])
    return None


def classify_para(G) -> ClassificationReport:
    G = make_group(G)
    subject = G.name or G.describe()
    R = _quad_ring(G)
    laurent = {"value": bool(R and R.is_maximal), "reason": "", "certificate": {}}
    if R is not None:
        laurent["reason"] = "Z[t,1/t]/(f) is the maximal order" if R.is_maximal else "Z[t,1/t]/(f) is not a maximal order"
        laurent["certificate"] = {"disc": R.disc, "ring": R.describe()}
    else:
        laurent["reason"] = "coordinate ring is not a quadratic Laurent ring"
    flags = {
        "laurent": laurent,
        "residually_nilpotent": _verdict_flag(is_residually_nilpotent, G),
        "finitely_presentable": _verdict_flag(is_finitely_presentable, G),
    }
    prov = {"flags": "computed"}

    def report(count, path, reason, cl=None, scl=None, reps=(), count_source="computed"):
        prov["para_class_count"] = count_source
        return ClassificationReport(subject, flags, cl, scl, count, list(reps), prov, path, reason)

    rigid = is_s_rigid(G)
    if rigid.value:
        n_M = module_as_lattice(G)
        reps = []
        if n_M is not None:
            n, M = n_M
            ident = [[int(i == j) for j in range(n)] for i in range(n)]
            reps.append({"hnf": [row[:] for row in ident], "action": M, "inclusion": ident})
        return report(1, "rigid", f"S acts invertibly: {rigid.reason}", reps=reps)
    mod = G.module
    if mod.kind == "cyclic_mod_p":
        return report(1, "pid", f"principal ideal domain: (Z/{mod.p})[t,1/t] is Euclidean")
    if mod.kind == "cyclic":
        f = mod.f.normalized()
        if f.width == 1 and f.content() == 1:
            a, b = f.coeffs[1], f.coeffs[0]
            return report(1, "pid", f"principal ideal domain: Z[t,1/t]/({mod.f}) is a localization of Z (t = {-b}/{a})")
    if R is not None and R.is_maximal:
        sr = s_class_group(R)
        reps = [realize_para_group(J).to_dict() for J in sr.representatives]
        for rep in reps:
            if not rep["commutes"]:
                raise ArithmeticError("realization matrices do not commute with the inclusion")
        count = sr.s_classes.order
        prov["class_group"] = "computed"
        prov["s_class_group"] = "computed"
        reason = "principal ideal domain" if sr.full_classes.order == 1 else f"Dedekind: one class per element of Cl_S ({sr.s_classes})"
        return report(count, "dedekind", reason, sr.full_classes, sr.s_classes, reps)
    if R == Z_C2:
        fam = z_c2_bounded_family()
        if not fam.all_principal:
            raise ArithmeticError("bounded family contains a non-principal S-fractional ideal")
        reps = [realize_para_group(unit_ideal(Z_C2)).to_dict()]
        return report(
            1, "bounded_family",
            f"every S-fractional ideal in the certified family ({fam.count} ideals, coordinates <= {BOUNDED_FAMILY_LIMIT}) is principal",
            reps=reps, count_source="computed (bounded family)",
        )
    n = _cyclotomic_index(G)
    if n is not None and cyclotomic_count(n) is not None:
        return report(
            cyclotomic_count(n), "paper_sourced",
            f"published count for n = {n}: Z[zeta_n] is a principal ideal domain for n < {CYCLOTOMIC_PID_BOUND}, "
            f"and {', '.join(map(str, CYCLOTOMIC_RIGID_EXTRA))} are listed as determined by their lower central quotients",
            count_source="paper_sourced",
        )
    if R is not None and R.is_domain:
        raise OutOfScope(f"coordinate ring {R.describe()} is a non-maximal order (not Dedekind)")
    if mod.kind == "free_rank_one":
        raise OutOfScope("coordinate ring Z[t,1/t] has Krull dimension 2")
    raise OutOfScope(f"no classification route for {G.describe()}")


# -- the Z[C2] family ------------------------------------------------------------------------------

@dataclass
class BoundedFamilyReport:
    count: int
    principal: int
    non_s_fractional: int
    examples: list

    @property
    def all_principal(self) -> bool:
        return self.count == self.principal

    def to_dict(self) -> dict:
        return {
            "s_fractional": self.count,
            "principal": self.principal,
            "non_s_fractional": self.non_s_fractional,
            "all_principal": self.all_principal,
            "limit": BOUNDED_FAMILY_LIMIT,
            "examples": self.examples,
        }


def z_c2_family(limit: int = BOUNDED_FAMILY_LIMIT):
    """Every ideal of Z[C2] = Z[t]/(t^2 - 1) with HNF entries bounded by limit, plus rank-one ideals."""
    R = Z_C2
    seen = set()
    for a in range(1, limit + 1):
        for c in range(1, limit + 1):
            for b in range(0, a):
                J = IdealLattice(R, a, b, c)
                if is_closed(J) and J not in seen:
                    seen.add(J)
                    yield J
    for x in range(-limit, limit + 1):
        for y in range(-limit, limit + 1):
            if (x or y) and abs(x) == abs(y):
                J = ideal_from_generators(R, [RingElement(x, y)])
                if J not in seen:
                    seen.add(J)
                    yield J


def z_c2_bounded_family(limit: int = BOUNDED_FAMILY_LIMIT) -> BoundedFamilyReport:
    count = principal = non_s = 0
    examples = []
    for J in z_c2_family(limit):
        if not is_s_fractional(J):
            non_s += 1
            continue
        count += 1
        res = is_principal(J)
        if res.principal:
            principal += 1
            if len(examples) < 5:
                examples.append({"hnf": list(J.hnf_tuple()), "generator": [res.generator.x, res.generator.y]})
    return BoundedFamilyReport(count, principal, non_s, examples)
