"""Split metabelian groups: presets, lower central series, finite presentability,
para-inclusions, telescopes and the localization embedding."""
from .groups import (
    ModuleSpec,
    OutOfScope,
    QSpec,
    SplitMetabelianGroup,
    UnknownPreset,
    coordinate_ring,
    make_group,
    module_as_lattice,
)
from .lcs import (
    HilbertSeries,
    Verdict,
    hilbert_coeffs,
    is_finitely_presentable,
    is_residually_nilpotent,
    lcs_quotient,
    lcs_quotient_by_sizes,
    lcs_routes_agree,
    quotient_by_power,
)
from .embedding import EmbeddingReport, embedding_demo
from .laurent_ideals import LaurentIdealResult, laurent_ideal_principal
from .para import InclusionReport, NotASubmodule, NotSFractional, WitnessReport, para_inclusion_check, para_witness
from .telescope import NotInS, TelescopeReport, TorsionModule, telescope_chain
