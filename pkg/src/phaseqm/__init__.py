"""Exact phase-space quantum mechanics with a Fock-basis numerical oracle.

Symbols live on phase space as polynomials in q and p with exact Gaussian
rational, hbar-graded coefficients.  Operators are normal-ordered
noncommutative polynomials in Q and P.  The two pictures are linked by
symmetric-ordering quantization and its inverse, with composition mirrored
by the star product.  A truncated harmonic-oscillator basis supplies an
independent numerical check on every symbolic claim.
"""

from phaseqm.algebra import (
    GaussianRational,
    HbarCoeff,
    PhasePoint,
    PhasePoly,
    poly_add,
    poly_derive,
    poly_eval,
    poly_mul,
)
from phaseqm.ensembles import (
    HvDispersionReport,
    check_linearity,
    dispersion_free_witness,
    hv_average_check,
    hv_dispersion,
    hv_value,
    is_homogeneous,
    witness_family,
)
from phaseqm.errors import (
    DimensionError,
    ExprError,
    GridError,
    NumericalContractError,
    PhaseQMError,
    StateError,
    TruncationError,
)
from phaseqm.fock import (
    DensityMatrix,
    FockMatrix,
    build_matrices,
    dispersion,
    fock_state,
    mixture,
    op_to_matrix,
    pure_state,
    trace_expectation,
)
from phaseqm.moyal import (
    GapReport,
    UnivariatePoly,
    assumption_I_gap,
    assumption_II_check,
    dequantize,
    moyal_bracket,
    star,
)
from phaseqm.operators import (
    OpPoly,
    commutator,
    op_add,
    op_mul,
    op_scale,
    weyl_quantize,
    weyl_quantize_p_split,
)
from phaseqm.parsing import (
    format_operator,
    format_symbol,
    format_univariate,
    parse_operator,
    parse_symbol,
    parse_univariate,
)
from phaseqm.wigner import (
    GridSpec,
    WignerGrid,
    fock_wigner_closed_form,
    overlap_expectation,
    wigner_grid,
)

__all__ = [
    "DensityMatrix",
    "DimensionError",
    "ExprError",
    "FockMatrix",
    "GapReport",
    "GaussianRational",
    "GridError",
    "GridSpec",
    "HbarCoeff",
    "HvDispersionReport",
    "NumericalContractError",
    "OpPoly",
    "PhasePoint",
    "PhasePoly",
    "PhaseQMError",
    "StateError",
    "TruncationError",
    "UnivariatePoly",
    "WignerGrid",
    "assumption_I_gap",
    "assumption_II_check",
    "build_matrices",
    "check_linearity",
    "commutator",
    "dequantize",
    "dispersion",
    "dispersion_free_witness",
    "fock_state",
    "fock_wigner_closed_form",
    "format_operator",
    "format_symbol",
    "format_univariate",
    "hv_average_check",
    "hv_dispersion",
    "hv_value",
    "is_homogeneous",
    "mixture",
    "moyal_bracket",
    "op_add",
    "op_mul",
    "op_scale",
    "op_to_matrix",
    "overlap_expectation",
    "parse_operator",
    "parse_symbol",
    "parse_univariate",
    "poly_add",
    "poly_derive",
    "poly_eval",
    "poly_mul",
    "pure_state",
    "star",
    "trace_expectation",
    "weyl_quantize",
    "weyl_quantize_p_split",
    "wigner_grid",
    "witness_family",
]

__version__ = "0.1.0"
