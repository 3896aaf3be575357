"""Finitely presented modules over R = Z[t, 1/t] and their truncations X / X I^k.

A module is R^m modulo the R-span of relation vectors.  Since t = 1 + u is a
unit modulo u^k, R / I^k = Z[u]/(u^k) and X / X I^k is the abelian group on
e_i u^j (i < m, j < k) modulo the truncated products r * u^j of every relation
r.  Homomorphisms are R-matrices; their truncations are integer matrices.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..intmat import AbelianGroupStructure, HomCheck, check_hom, cokernel_structure, lattice_quotient
from ..laurent import LaurentPoly, expand_at_one
from .groups import SplitMetabelianGroup, module_as_lattice


@dataclass(frozen=True)
class PresentedModule:
    ngens: int
    relations: tuple[tuple[LaurentPoly, ...], ...] = ()
    label: str = ""

    def truncated_relations(self, k: int) -> list[list[int]]:
        rows = []
        for rel in self.relations:
            for j in range(k):
                rows.append(truncate_vector(rel, j, k))
        return rows

    def level(self, k: int) -> AbelianGroupStructure:
        """Structure of X / X I^k."""
        return cokernel_structure(self.truncated_relations(k), self.ngens * k)

    def layer(self, n: int) -> AbelianGroupStructure:
        """Structure of X I^(n-1) / X I^n, n >= 1."""
        N = self.ngens * n
        rels = self.truncated_relations(n)
        gens = []
        for i in range(self.ngens):
            v = [0] * N
            v[i * n + (n - 1)] = 1
            gens.append(v)
        if n == 1:
            return cokernel_structure(rels, N)
        return lattice_quotient(rels + gens, rels, N)


def truncate_vector(vec, shift: int, k: int) -> list[int]:
    """Coordinates of vec * u^shift in the basis e_i u^j of (R/I^k)^m."""
    out = []
    for p in vec:
        coeffs = expand_at_one(LaurentPoly.coerce(p), k)
        row = [0] * k
        for j in range(k - shift):
            row[j + shift] = coeffs[j]
        out.extend(row)
    return out


def hom_matrix(phi, nsrc: int, ntgt: int, k: int) -> list[list[int]]:
    """Integer matrix (columns = images) of the truncation of an R-linear map.

    phi[i] is the image of source generator i, an R-vector of length ntgt.
    """
    cols = []
    for i in range(nsrc):
        for j in range(k):
            cols.append(truncate_vector(phi[i], j, k))
    rows = ntgt * k
    return [[cols[c][r] for c in range(len(cols))] for r in range(rows)]


def check_level(src: PresentedModule, tgt: PresentedModule, phi, k: int) -> HomCheck:
    """Kernel and cokernel of src/src I^k -> tgt/tgt I^k."""
    mat = hom_matrix(phi, src.ngens, tgt.ngens, k)
    return check_hom(mat, src.truncated_relations(k), src.ngens * k, tgt.truncated_relations(k), tgt.ngens * k)


def lattice_presentation(M, label: str = "") -> PresentedModule:
    """Z^n with t acting by M (columns = images) as R^n / (t e_i - M e_i)."""
    n = len(M)
    rels = []
    for i in range(n):
        vec = []
        for j in range(n):
            c = [-M[j][i]]
            if i == j:
                vec.append(LaurentPoly([-M[j][i], 1]))
            else:
                vec.append(LaurentPoly(c))
        rels.append(tuple(vec))
    return PresentedModule(n, tuple(rels), label)


def present_module(G: SplitMetabelianGroup) -> PresentedModule:
    """Presentation of A over Z[t, 1/t] (for finite Q the relation t^m - 1 is implied by f)."""
    mod = G.module
    if mod.kind == "cyclic":
        return PresentedModule(1, ((mod.f,),), "cyclic")
    if mod.kind == "free_rank_one":
        return PresentedModule(1, (), "free")
    if mod.kind == "cyclic_mod_p":
        return PresentedModule(1, ((LaurentPoly.const(mod.p),),), "mod_p")
    n, M = module_as_lattice(G)
    return lattice_presentation(M, "lattice")
