from .bspline import KnotVector, SplineBasis, basis_matrix, build_knots, eval_basis
from .design import ColumnInfo, DesignMatrix, build_design, design_for_times, reflection_frequencies
from .penalty import PenaltySpec, difference_matrix, penalty_block, penalty_value

__all__ = [
    "KnotVector",
    "SplineBasis",
    "basis_matrix",
    "build_knots",
    "eval_basis",
    "ColumnInfo",
    "DesignMatrix",
    "build_design",
    "design_for_times",
    "reflection_frequencies",
    "PenaltySpec",
    "difference_matrix",
    "penalty_block",
    "penalty_value",
]
