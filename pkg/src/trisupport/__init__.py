"""Exact combinatorics of 3-tensor supports: class deciders with certificates,
symmetry Lie algebras, compressibility, support functionals and the induced
line arrangements."""

from .core import (
    AxisPermutations,
    Shape,
    ShapeError,
    Support,
    Tensor,
    apply_permutations,
    direct_sum,
    is_concise_support,
    kronecker,
)
from .deciders import (
    CensusReport,
    ObliqueResult,
    TightWitness,
    census_m3,
    decide_oblique,
    decide_tight,
    is_antichain,
    is_free,
    max_oblique_size,
)
from .symmetry import (
    LieElement,
    LieSolveReport,
    PropagationReport,
    TightEvidence,
    annihilator,
    check_propagation,
    class_dimension,
    has_regular_semisimple,
    is_concise_tensor,
    span_stabilizer_dim,
)
from .compress import (
    SliceCover,
    ZeroBox,
    find_zero_box,
    multicompressibility,
    slice_cover,
    total_compressibility,
)
from .spectral import (
    IncomprSet,
    SpectralWeights,
    SupportDistribution,
    entropy,
    incompr_set,
    zeta,
    zeta_full,
    zeta_min_over_axis_orders,
)
from .arrangement import (
    Arrangement,
    Joint,
    build_arrangement,
    joint_free_subarrangement,
    joints,
    render_svg,
)
from . import constructions

__version__ = "0.1.0"

__all__ = [
    "AxisPermutations",
    "Arrangement",
    "CensusReport",
    "IncomprSet",
    "Joint",
    "LieElement",
    "LieSolveReport",
    "ObliqueResult",
    "PropagationReport",
    "Shape",
    "ShapeError",
    "SliceCover",
    "SpectralWeights",
    "Support",
    "SupportDistribution",
    "Tensor",
    "TightEvidence",
    "TightWitness",
    "ZeroBox",
    "annihilator",
    "apply_permutations",
    "build_arrangement",
    "census_m3",
    "check_propagation",
    "class_dimension",
    "constructions",
    "decide_oblique",
    "decide_tight",
    "direct_sum",
    "entropy",
    "find_zero_box",
    "has_regular_semisimple",
    "incompr_set",
    "is_antichain",
    "is_concise_support",
    "is_concise_tensor",
    "is_free",
    "joint_free_subarrangement",
    "joints",
    "kronecker",
    "max_oblique_size",
    "multicompressibility",
    "render_svg",
    "slice_cover",
    "span_stabilizer_dim",
    "total_compressibility",
    "zeta",
    "zeta_full",
    "zeta_min_over_axis_orders",
]
