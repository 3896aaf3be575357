"""Exact computation of para-equivalence classes of split metabelian groups T ⋉ A."""
from .class_group import ClassGroup, compute_class_group, minkowski_bound
from .cyclotomic import cyclo23_witness, cyclo_res_nilpotent
from .ideals import (
    IdealLattice,
    enumerate_ideals,
    ideal_from_generators,
    ideal_mul,
    ideal_norm,
    ideals_equivalent,
    is_principal,
    principal_ideal,
)
from .intmat import AbelianGroupStructure, hnf, smith
from .laurent import LaurentPoly, cyclotomic_poly, finite_quotient
from .metabelian import (
    OutOfScope,
    embedding_demo,
    hilbert_coeffs,
    is_finitely_presentable,
    is_residually_nilpotent,
    lcs_quotient,
    make_group,
    para_inclusion_check,
    para_witness,
    telescope_chain,
)
from .para_class import classify_para, is_s_fractional, is_s_rigid, realize_para_group, s_class_group
from .quad_order import MonogenicRing, RingElement, fundamental_unit, is_laurent_domain, laurent_model, make_ring, maximal_order
from .report import run_scan, verify_example

__version__ = "0.1.0"
