"""Localizing the wreath module Z[t, 1/t] at the powers of 1 + t.

A_K = {a / (1+t)^k} carries an action of the free abelian group on t and
s = 1 + t, and the semidirect product is generated by b = 1, s, t subject to
[s, t] = 1, b^s = b b^t, [b, b^t] = 1.  The demo checks the module-level facts
numerically and replays the commutator argument that forces every
[b, b^(t^k)] to vanish, step by step in the free group on b, s, t.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..intmat import hnf, in_lattice
from ..laurent import LaurentPoly

ONE_PLUS_T = LaurentPoly([1, 1])


# -- the module A_K ------------------------------------------------------------------

@dataclass(frozen=True)
class KFraction:
    """num / (1 + t)^k."""

    num: LaurentPoly
    k: int = 0

    def __eq__(self, other):
        if not isinstance(other, KFraction):
            return NotImplemented
        a, b = self.num, other.num
        if self.k < other.k:
            a = a * ONE_PLUS_T ** (other.k - self.k)
        elif other.k < self.k:
            b = b * ONE_PLUS_T ** (self.k - other.k)
        return a == b

    def __hash__(self):
        return 0  # equal fractions may have different k

    def __mul__(self, other):
        return KFraction(self.num * other.num, self.k + other.k)

    def __add__(self, other):
        k = max(self.k, other.k)
        return KFraction(self.num * ONE_PLUS_T ** (k - self.k) + other.num * ONE_PLUS_T ** (k - other.k), k)

    def times_t(self, e: int = 1) -> "KFraction":
        return KFraction(self.num * LaurentPoly.monomial(e), self.k)

    def times_s(self, e: int = 1) -> "KFraction":
        if e >= 0:
            return KFraction(self.num * ONE_PLUS_T ** e, self.k)
        return KFraction(self.num, self.k - e)

    def over(self, k: int) -> LaurentPoly:
        """Numerator over the common denominator (1 + t)^k, k >= self.k."""
        return self.num * ONE_PLUS_T ** (k - self.k)


B = KFraction(LaurentPoly.const(1))


# -- free group words ------------------------------------------------------------------

@dataclass(frozen=True)
class Expr:
    op: str  # gen | one | inv | mul | conj | comm
    args: tuple = ()
    name: str = ""

    def __str__(self):
        if self.op == "gen":
            return self.name
        if self.op == "one":
            return "1"
        if self.op == "inv":
            return f"({self.args[0]})^-1"
        if self.op == "mul":
            return "".join(_paren(a) for a in self.args)
        if self.op == "conj":
            return f"{_paren(self.args[0])}^{{{self.args[1]}}}"
        return f"[{self.args[0]}, {self.args[1]}]"


def _paren(e: Expr) -> str:
    return f"({e})" if e.op == "mul" else str(e)


def gen(name):
    return Expr("gen", name=name)


IDENTITY = Expr("one")


def mul(*xs):
    return Expr("mul", tuple(xs))


def inv(x):
    return Expr("inv", (x,))


def conj(x, y):
    """x^y = y^-1 x y."""
    return Expr("conj", (x, y))


def comm(x, y):
    """[x, y] = x^-1 y^-1 x y."""
    return Expr("comm", (x, y))


def word(e: Expr) -> list[tuple[str, int]]:
    if e.op == "gen":
        return [(e.name, 1)]
    if e.op == "one":
        return []
    if e.op == "inv":
        return [(g, -k) for g, k in reversed(word(e.args[0]))]
    if e.op == "mul":
        out = []
        for a in e.args:
            out += word(a)
        return out
    if e.op == "conj":
        x, y = word(e.args[0]), word(e.args[1])
        return [(g, -k) for g, k in reversed(y)] + x + y
    x, y = word(e.args[0]), word(e.args[1])
    return [(g, -k) for g, k in reversed(x)] + [(g, -k) for g, k in reversed(y)] + x + y


def reduce_word(w):
    out = []
    for g, k in w:
        if out and out[-1][0] == g and out[-1][1] == -k:
            out.pop()
        else:
            out.append((g, k))
    return out


def substitute(e: Expr, pattern: Expr, replacement: Expr) -> Expr:
    if e == pattern:
        return replacement
    if not e.args:
        return e
    return Expr(e.op, tuple(substitute(a, pattern, replacement) for a in e.args), e.name)


@dataclass(frozen=True)
class Step:
    expr: Expr
    rule: str  # "relation", "free", "conjugate"
    detail: str
    ok: bool


def _replay():
    b, s, t = gen("b"), gen("s"), gen("t")
    bt = conj(b, t)
    btt = conj(bt, t)
    bs = conj(b, s)
    rel_bbt = comm(b, bt)  # [b, b^t] = 1
    steps: list[Step] = []
    prev = rel_bbt
    steps.append(Step(prev, "relation", "[b, b^t] = 1", True))

    def free(nxt, detail):
        nonlocal prev
        steps.append(Step(nxt, "free", detail, reduce_word(word(prev)) == reduce_word(word(nxt))))
        prev = nxt

    def relation(pattern, replacement, detail):
        nonlocal prev
        nxt = substitute(prev, pattern, replacement)
        steps.append(Step(nxt, "relation", detail, nxt != prev))
        prev = nxt

    def conjugate(by, detail):
        nonlocal prev
        nxt = conj(prev, by)
        steps.append(Step(nxt, "conjugate", detail, True))
        prev = nxt

    conjugate(s, "conjugate the trivial element by s")
    free(comm(bs, conj(bt, s)), "[x, y]^z = [x^z, y^z]")
    relation(conj(bt, s), conj(bs, t), "[s, t] = 1 turns b^(ts) into b^(st)")
    relation(bs, mul(b, bt), "b^s = b b^t")
    free(comm(mul(b, bt), mul(bt, btt)), "(x y)^t = x^t y^t")
    free(
        mul(
            conj(mul(comm(b, btt), conj(rel_bbt, btt)), bt),
            mul(comm(bt, btt), conj(comm(bt, bt), btt)),
        ),
        "[xy, z] = [x, z]^y [y, z] and [x, yz] = [x, z] [x, y]^z",
    )
    relation(rel_bbt, IDENTITY, "[b, b^t] = 1")
    free(mul(conj(comm(b, btt), bt), comm(bt, btt)), "drop trivial factors")
    free(mul(conj(comm(b, btt), bt), conj(rel_bbt, t)), "[b^t, b^(t^2)] = [b, b^t]^t")
    relation(rel_bbt, IDENTITY, "[b, b^t] = 1")
    free(conj(comm(b, btt), bt), "drop trivial factors")
    conjugate(inv(bt), "conjugate by (b^t)^-1")
    free(comm(b, btt), "cancel the conjugations")
    return steps


# -- the report ------------------------------------------------------------------------

@dataclass
class EmbeddingReport:
    checks: dict = field(default_factory=dict)
    derivation: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values()) and all(s.ok for s in self.derivation)

    def to_dict(self) -> dict:
        return {
            "checks": dict(sorted(self.checks.items())),
            "derivation": [{"expr": str(s.expr), "rule": s.rule, "detail": s.detail, "ok": s.ok} for s in self.derivation],
            "conclusion": str(self.derivation[-1].expr) + " = 1" if self.derivation else None,
            "notes": self.notes,
            "passed": self.passed,
        }


def _window_span(window: int):
    """Vectors of s^i t^j b, |i|, |j| <= window, over the common denominator (1+t)^window."""
    elems = []
    for i in range(-window, window + 1):
        for j in range(-window, window + 1):
            elems.append(B.times_s(i).times_t(j))
    lo = -window
    hi = 2 * window + window
    width = hi - lo + 1

    def vec(x: KFraction):
        p = x.over(window)
        if p.is_zero():
            return [0] * width
        if p.min_deg < lo or p.max_deg > hi:
            raise ValueError("window too small")
        return [p.coeff(d) for d in range(lo, hi + 1)]

    return [vec(x) for x in elems], vec, width


def embedding_demo(window: int = 6, embed_range: int = 10) -> EmbeddingReport:
    rep = EmbeddingReport()
    rep.checks["one_plus_t_invertible"] = KFraction(ONE_PLUS_T) * KFraction(LaurentPoly.const(1), 1) == B
    # b^s = b b^t: s acts as multiplication by 1 + t
    rep.checks["relation_bs"] = B.times_s(1) == B + B.times_t(1)
    rep.checks["relation_st"] = B.times_s(1).times_t(1) == B.times_t(1).times_s(1)
    # cyclicity: every t^a / (1+t)^c in the window lies in the Z-span of the s^i t^j b
    span, vec, width = _window_span(window)
    H = hnf(span, ncols=width)
    targets = [KFraction(LaurentPoly.monomial(a), c) for a in range(-window, window + 1) for c in range(0, window + 1)]
    rep.checks["cyclic_window"] = all(in_lattice(H, vec(x)) for x in targets)
    # the wreath module embeds: t^k b are distinct and Z-independent in A_K
    images = [B.times_t(k).over(0) for k in range(-embed_range, embed_range + 1)]
    rows = [[p.coeff(d) for d in range(-embed_range, embed_range + 1)] for p in images]
    rep.checks["wreath_embeds"] = len(hnf(rows, ncols=2 * embed_range + 1)) == len(rows)
    rep.derivation = _replay()
    rep.notes.append(
        "Finite presentability of the ambient group is quoted, not computed: it needs the rank-two tameness test."
    )
    return rep
