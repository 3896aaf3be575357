"""Exact integer linear algebra: Hermite and Smith normal forms, kernels,
lattice quotients and finitely generated abelian group structures.

Matrices are plain lists of lists of Python ints.  Lattices are given by
lists of generating vectors (rows).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod

Matrix = list[list[int]]


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k, d_i >= 2."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        facs = tuple(int(d) for d in self.invariant_factors)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in facs:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(facs, facs[1:]):
            if b % a:
                raise ValueError(f"invariant factors {facs} not divisibility-sorted")
        object.__setattr__(self, "invariant_factors", facs)

    @classmethod
    def from_diagonal(cls, diag, extra_free: int = 0) -> "AbelianGroupStructure":
        """Structure of Z^n / diag(d_1..d_n); arbitrary nonnegative entries allowed."""
        free = extra_free
        torsion = []
        for d in diag:
            d = abs(int(d))
            if d == 0:
                free += 1
            elif d > 1:
                torsion.append(d)
        return cls(free, tuple(_normalize_factors(torsion)))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self):
        """Group order, or None when the group is infinite."""
        if self.free_rank:
            return None
        return prod(self.invariant_factors)

    @property
    def torsion_order(self) -> int:
        return prod(self.invariant_factors)

    def direct_sum(self, other: "AbelianGroupStructure") -> "AbelianGroupStructure":
        return AbelianGroupStructure.from_diagonal(
            self.invariant_factors + other.invariant_factors,
            extra_free=self.free_rank + other.free_rank,
        )

    def to_dict(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "invariant_factors": list(self.invariant_factors),
            "order": self.order,
        }

    def __str__(self):
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "0"


def _normalize_factors(values):
    """Turn a list of cyclic orders into invariant factors (pairwise gcd/lcm)."""
    vals = sorted(v for v in values if v > 1)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            a, b = vals[i], vals[j]
            g = gcd(a, b)
            vals[i], vals[j] = g, a * b // g
    return [v for v in vals if v > 1]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, v) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def matpow(a: Matrix, k: int) -> Matrix:
    result = identity(len(a))
    base = [row[:] for row in a]
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def det(a: Matrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def hnf(vectors, ncols: int | None = None) -> Matrix:
    """Row Hermite normal form of the lattice spanned by ``vectors``.

    Returns a basis in echelon form: pivots positive, entries above each
    pivot reduced into [0, pivot).  Zero rows are dropped.
    """
    rows = [list(map(int, v)) for v in vectors]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    basis: Matrix = []
    r = 0
    for col in range(ncols):
        # gather rows (from r on) with nonzero entry in col, and gcd them down to one
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(rows[i][col]))
            rows[r], rows[piv] = rows[piv], rows[r]
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][col]:
                    q = rows[i][col] // rows[r][col]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][col]:
                        done = False
            if done:
                break
        if r < len(rows) and rows[r][col] != 0:
            if rows[r][col] < 0:
                rows[r] = [-x for x in rows[r]]
            p = rows[r][col]
            for i in range(r):
                q = rows[i][col] // p
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
            r += 1
            if r == len(rows):
                break
    basis = [row for row in rows[:r]]
    return basis


def pivots(h: Matrix) -> list[int]:
    return [next(j for j, x in enumerate(row) if x) for row in h]


def solve_in_hnf(h: Matrix, v) -> list[int] | None:
    """Integer coordinates of ``v`` in the HNF basis ``h``, or None if v is not in the lattice."""
    v = list(v)
    coeffs = []
    for row, p in zip(h, pivots(h)):
        if v[p] % row[p]:
            return None
        q = v[p] // row[p]
        coeffs.append(q)
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    if any(v):
        return None
    return coeffs


def in_lattice(h: Matrix, v) -> bool:
    return solve_in_hnf(h, v) is not None


def smith(a: Matrix):
    """Smith normal form with transforms.

    Returns ``(diag, U, V)`` with ``U * a * V`` diagonal (entries ``diag``,
    nonnegative, each dividing the next among the nonzero ones) and U, V
    unimodular.  ``diag`` has length min(rows, cols).
    """
    m = [row[:] for row in a]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    U = identity(nr)
    V = identity(nc)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        m[dst] = [x - q * y for x, y in zip(m[dst], m[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for row in m:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    t = 0
    while t < min(nr, nc):
        entries = [(abs(m[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if m[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, nr):
                if m[i][t]:
                    add_row(i, t, m[i][t] // m[t][t])
                    if m[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, nc):
                if m[t][j]:
                    add_col(j, t, m[t][j] // m[t][t])
                    if m[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # divisibility: pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if m[i][j] % m[t][t]),
                None,
            )
            if bad is None:
                break
            i, _ = bad
            m[t] = [x + y for x, y in zip(m[t], m[i])]
            U[t] = [x + y for x, y in zip(U[t], U[i])]
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = [m[i][i] for i in range(min(nr, nc))]
    return diag, U, V


def cokernel_structure(rel_rows, n: int) -> AbelianGroupStructure:
    """Structure of Z^n modulo the span of the rows ``rel_rows``."""
    rows = [list(r) for r in rel_rows if any(r)]
    if not rows:
        return AbelianGroupStructure(n, ())
    rank = len(hnf(rows, ncols=n))
    return AbelianGroupStructure.from_diagonal(_diagonalize(rows, n), extra_free=n - rank)


def _diagonalize(rows, n: int) -> list[int]:
    """Nonzero diagonal of a matrix equivalent to ``rows``, by alternating row and column HNF.

    Each HNF pass reduces off-pivot entries, so coefficients stay bounded where a
    pivot-chasing Smith elimination can blow up.
    """
    m = hnf(rows, ncols=n)
    while True:
        if all(x == 0 for i, r in enumerate(m) for j, x in enumerate(r) if i != j):
            return [m[i][i] for i in range(len(m))]
        width = len(m)
        m = hnf(transpose(m), ncols=width)


def kernel_basis(a: Matrix, ncols: int | None = None) -> Matrix:
    """Z-basis (as rows) of {x : a x = 0}."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    if not a:
        return identity(ncols)
    # column-reduce a while tracking the transform: a * W = [H | 0]
    at = transpose(a)  # rows = columns of a
    aug = [list(at[j]) + [int(j == k) for k in range(ncols)] for j in range(ncols)]
    nrow = len(a)
    h = hnf(aug, ncols=nrow + ncols)
    return [row[nrow:] for row in h if not any(row[:nrow])]


def lattice_quotient(outer, inner, n: int | None = None) -> AbelianGroupStructure:
    """Structure of span(outer) / span(inner); inner must lie in span(outer)."""
    outer = [list(v) for v in outer]
    if n is None:
        n = len(outer[0]) if outer else (len(inner[0]) if inner else 0)
    h = hnf(outer, ncols=n)
    coords = []
    for v in inner:
        c = solve_in_hnf(h, v)
        if c is None:
            raise ValueError("inner lattice is not contained in outer lattice")
        coords.append(c)
    return cokernel_structure(coords, len(h))


def lattice_sum(a, b, n: int) -> Matrix:
    return hnf(list(a) + list(b), ncols=n)


def lattice_contains(big, small, n: int) -> bool:
    h = hnf(big, ncols=n)
    return all(in_lattice(h, v) for v in small)


def lattice_equal(a, b, n: int) -> bool:
    return hnf(a, ncols=n) == hnf(b, ncols=n)


def preimage(phi: Matrix, target_rel, nsrc: int) -> Matrix:
    """Basis of {x in Z^nsrc : phi x in span(target_rel)}.

    ``phi`` is (ntgt x nsrc); ``target_rel`` are vectors in Z^ntgt.
    """
    ntgt = len(phi)
    rel = [list(r) for r in target_rel]
    # columns: phi columns then -rel vectors
    cols = [[phi[i][j] for i in range(ntgt)] for j in range(nsrc)] + [[-x for x in r] for r in rel]
    a = transpose(cols) if cols else zeros(ntgt, 0)
    if ntgt == 0:
        return identity(nsrc)
    ker = kernel_basis(a, ncols=len(cols))
    return hnf([row[:nsrc] for row in ker], ncols=nsrc)


@dataclass(frozen=True)
class HomCheck:
    kernel: AbelianGroupStructure
    cokernel: AbelianGroupStructure
    source: AbelianGroupStructure
    target: AbelianGroupStructure

    @property
    def is_iso(self) -> bool:
        return self.kernel.is_trivial and self.cokernel.is_trivial


def check_hom(phi: Matrix, src_rel, nsrc: int, tgt_rel, ntgt: int) -> HomCheck:
    """Kernel/cokernel of the map Z^nsrc/src_rel -> Z^ntgt/tgt_rel induced by phi.

    Raises ValueError when phi does not carry src_rel into tgt_rel.
    """
    tgt_h = hnf(tgt_rel, ncols=ntgt) if tgt_rel else []
    for r in src_rel:
        if any(r) and not in_lattice(tgt_h, matvec(phi, r)):
            raise ValueError("map is not well defined on the quotient")
    pre = preimage(phi, tgt_rel, nsrc)
    kernel = lattice_quotient(pre, [r for r in src_rel if any(r)], n=nsrc) if pre else AbelianGroupStructure()
    images = [[phi[i][j] for i in range(ntgt)] for j in range(nsrc)]
    coker = cokernel_structure(images + [list(r) for r in tgt_rel], ntgt)
    return HomCheck(
        kernel=kernel,
        cokernel=coker,
        source=cokernel_structure(src_rel, nsrc),
        target=cokernel_structure(tgt_rel, ntgt),
    )


def xgcd(a: int, b: int):
    """(g, x, y) with a x + b y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def gcd_combination(values):
    """(g, coeffs) with sum(c * v) = g = gcd(values)."""
    g, coeffs = 0, []
    for v in values:
        g2, x, y = xgcd(g, v)
        coeffs = [c * x for c in coeffs] + [y]
        g = g2
    return g, coeffs


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def inverse_unimodular(V):
    """Exact inverse of a square integer matrix with determinant ±1."""
    n = len(V)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(V)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    inv = [[x for x in row[n:]] for row in m]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ArithmeticError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def solve_integer(rows, target) -> list[int] | None:
    """Integer x with sum_i x[i] * rows[i] = target, or None when no solution exists."""
    k = len(rows)
    n = len(target)
    if k == 0:
        return None if any(target) else []
    diag, U, V = smith([list(r) for r in rows])
    bV = [sum(target[i] * V[i][j] for i in range(n)) for j in range(n)]
    y = [0] * k
    for j in range(n):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            if bV[j]:
                return None
        elif bV[j] % d:
            return None
        else:
            y[j] = bV[j] // d
    return [sum(y[i] * U[i][j] for i in range(k)) for j in range(k)]
