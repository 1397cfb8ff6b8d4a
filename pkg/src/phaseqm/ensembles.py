"""Ensemble-level checks and the pointwise hidden-variable assignment.

Two complementary computations live here.  In the Hilbert-space picture,
every valid state has an observable with strictly positive dispersion:
dispersion_free_witness searches a fixed family and exhibits one.  In the
phase-space picture, evaluating symbols at a single point (q0, p0) is a
dispersion-free assignment, and hv_dispersion shows the price: the value
assigned to A squared differs from the square of the value assigned to A
by an exactly computable polynomial, the star-product correction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from phaseqm.algebra import HbarCoeff, PhasePoint, PhasePoly
from phaseqm.errors import NumericalContractError, TruncationError
from phaseqm.fock import DensityMatrix, dispersion, trace_expectation
from phaseqm.moyal import dequantize
from phaseqm.operators import OpPoly, op_mul, op_scale
from phaseqm.wigner import GridSpec, overlap_expectation

RationalLike = Union[int, Fraction]

LINEARITY_TOL = 1e-10
WITNESS_THRESHOLD = 1e-6
PROJECTOR_TOL = 1e-10


def _op_hamiltonian() -> OpPoly:
    return OpPoly(
        {
            (2, 0): HbarCoeff.scalar(Fraction(1, 2)),
            (0, 2): HbarCoeff.scalar(Fraction(1, 2)),
        }
    )


def witness_family(hbar: RationalLike) -> list[OpPoly]:
    """The fixed observables tried, in order, when hunting dispersion.

    The number operator divides by the numeric hbar, so the family is
    parametrized by it.
    """
    h = Fraction(hbar)
    q = OpPoly.q()
    p = OpPoly.p()
    q2 = OpPoly.word(2, 0)
    p2 = OpPoly.word(0, 2)
    number = op_scale(q2 + p2, Fraction(1, 2) / h) - OpPoly.constant(Fraction(1, 2))
    return [q, p, q + p, q - p, _op_hamiltonian(), q2, p2, number]


def check_linearity(
    U: DensityMatrix, ops: Sequence[OpPoly], coeffs: Sequence[RationalLike | float]
) -> float:
    """|Exp(sum a_i R_i) - sum a_i Exp(R_i)|.

    Trace linearity holds even for quantities that cannot be measured
    together, so this must come back below 1e-10.
    """
    if not ops or len(ops) != len(coeffs):
        raise ValueError("need matching nonempty ops and coeffs")
    exact = [Fraction(c) for c in coeffs]
    combined = OpPoly.zero()
    for c, A in zip(exact, ops):
        combined = combined + op_scale(A, c)
    lhs = trace_expectation(U, combined)
    rhs = sum(float(c) * trace_expectation(U, A) for c, A in zip(exact, ops))
    return abs(lhs - rhs)


def dispersion_free_witness(U: DensityMatrix) -> tuple[OpPoly, float]:
    """First family member with dispersion above 1e-6 in the given state.

    Every valid state must yield one; exhausting the family means the
    truncated representation is corrupt, which is an error rather than a
    counterexample.
    """
    for A in witness_family(U.hbar):
        dis = dispersion(U, A)
        if dis > WITNESS_THRESHOLD:
            return A, dis
    raise TruncationError(
        "no witness found in the fixed family; truncated state is suspect"
    )


def is_homogeneous(U: DensityMatrix) -> bool:
    """Whether the state is a rank-1 projector (U^2 = U, unit trace)."""
    m = U.entries
    idempotent = float(np.max(np.abs(m @ m - m))) <= PROJECTOR_TOL
    unit_trace = abs(complex(np.trace(m)) - 1.0) <= 1e-12
    return idempotent and unit_trace


def hv_value(point: PhasePoint, A: OpPoly, hbar: RationalLike = 1) -> float:
    """The pointwise value assignment: the symbol of A evaluated at the
    point.  Exact until the final float conversion."""
    h = Fraction(hbar)
    if h <= 0:
        raise ValueError("hbar must be positive")
    value = dequantize(A).eval_exact(Fraction(point.q0), Fraction(point.p0), h)
    if not value.is_real:
        raise NumericalContractError(
            f"symbol value {value} is not real; quantity not Hermitian?"
        )
    return float(value.re)


@dataclass(frozen=True)
class HvDispersionReport:
    """Dispersion of the pointwise assignment, read two ways.

    aprime_reading treats the value of A^2 as the square of the value of
    A (measure A, then square the outcome), which vanishes identically.
    assumption_I_reading instead assigns A^2 the symbol of the squared
    operator; the difference from the squared symbol is gap_polynomial,
    and the reading is its value at the point.
    """

    point: PhasePoint
    quantity: OpPoly
    aprime_reading: float
    assumption_I_reading: float
    gap_polynomial: PhasePoly

    @property
    def reading_is_negative(self) -> bool:
        return self.assumption_I_reading < 0


def hv_dispersion(
    point: PhasePoint, A: OpPoly, hbar: RationalLike = 1
) -> HvDispersionReport:
    """Both dispersion readings at a phase point, symbolically first.

    The gap polynomial is computed in exact arithmetic and only then
    evaluated, so aprime_reading is the exact constant 0.0 and the other
    reading carries no accumulated float error.
    """
    h = Fraction(hbar)
    if h <= 0:
        raise ValueError("hbar must be positive")
    symbol = dequantize(A)
    symbol_of_square = dequantize(op_mul(A, A))
    gap_polynomial = symbol_of_square - symbol * symbol
    value = gap_polynomial.eval_exact(Fraction(point.q0), Fraction(point.p0), h)
    if not value.is_real:
        raise NumericalContractError(
            f"gap value {value} is not real; quantity not Hermitian?"
        )
    return HvDispersionReport(
        point=point,
        quantity=A,
        aprime_reading=0.0,
        assumption_I_reading=float(value.re),
        gap_polynomial=gap_polynomial,
    )


def hv_average_check(
    U: DensityMatrix,
    A: OpPoly,
    spec: GridSpec | None = None,
    hbar: RationalLike | None = None,
) -> tuple[float, float]:
    """Trace average vs the grid average of the pointwise values.

    The right-hand side weighs hv_value over phase space with the
    quasi-probability grid; the two must agree within 1e-6 on an adequate
    grid.
    """
    h = Fraction(hbar) if hbar is not None else U.hbar
    lhs = trace_expectation(U, A)
    rhs = overlap_expectation(U, dequantize(A), spec, h)
    return lhs, rhs
