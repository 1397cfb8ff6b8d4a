"""Truncated oscillator-basis numerical backend.

The exact layers are cross-checked against plain matrix arithmetic: the
canonical pair becomes N x N ladder matrices, operator polynomials become
matrices by substitution, and ensemble averages become traces against a
density matrix.

Truncation is handled defensively.  The top corner of a truncated ladder
algebra is always corrupted, so constructions demand

    N >= (highest occupied level) + (operator degree) + BUFFER

and every reported trace is recomputed at dimension 2N; a shift above
1e-8 raises rather than returning a silently wrong number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from phaseqm.errors import DimensionError, NumericalContractError, StateError, TruncationError
from phaseqm.operators import OpPoly, op_mul

RationalLike = Union[int, Fraction]

BUFFER = 8

HERMITIAN_TOL = 1e-12
EIGENVALUE_TOL = 1e-10
TRACE_TOL = 1e-12
STABILITY_TOL = 1e-8
IMAG_TOL = 1e-10
SUPPORT_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class FockMatrix:
    """An N x N complex matrix in the oscillator number basis.

    Remembers the hbar used at construction so downstream consumers agree
    on the representation.
    """

    dim: int
    entries: np.ndarray
    hbar: Fraction

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError("matrix dimension must be positive")
        if self.entries.shape != (self.dim, self.dim):
            raise DimensionError(
                f"entries shape {self.entries.shape} does not match dim {self.dim}"
            )
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")
        self.entries.setflags(write=False)

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        return bool(np.max(np.abs(self.entries - self.entries.conj().T)) <= tol)


def _lowering(N: int) -> np.ndarray:
    a = np.zeros((N, N), dtype=complex)
    for i in range(N - 1):
        a[i, i + 1] = math.sqrt(i + 1)
    return a


def build_matrices(N: int, hbar: RationalLike = 1) -> tuple[FockMatrix, FockMatrix]:
    """Position and momentum matrices from the ladder pair.

        q = sqrt(hbar/2) (a + a+),  p = i sqrt(hbar/2) (a+ - a)

    Both are Hermitian; their commutator equals i hbar times the identity
    on the interior block (the last diagonal entry is a truncation
    artifact).
    """
    if N < 2:
        raise DimensionError("need N >= 2 to represent the canonical pair")
    h = Fraction(hbar)
    if h <= 0:
        raise ValueError("hbar must be positive")
    a = _lowering(N)
    ad = a.conj().T
    scale = math.sqrt(float(h) / 2.0)
    q = scale * (a + ad)
    p = 1j * scale * (ad - a)
    return FockMatrix(N, q, h), FockMatrix(N, p, h)


def op_to_matrix(A: OpPoly, N: int, hbar: RationalLike = 1) -> FockMatrix:
    """Substitute the ladder matrices into a normal-form operator polynomial.

    Symbolic hbar in coefficients is evaluated at the numeric hbar.  The
    dimension must leave room above the polynomial degree.
    """
    degree = A.total_degree()
    if N < degree + BUFFER:
        raise DimensionError(
            f"dimension {N} too small for degree {degree} (need >= {degree + BUFFER})"
        )
    h = Fraction(hbar)
    qm, pm = build_matrices(N, h)
    max_q = max((a for (a, _b) in A._words), default=0)  # noqa: SLF001
    max_p = max((b for (_a, b) in A._words), default=0)  # noqa: SLF001
    q_powers = [np.eye(N, dtype=complex)]
    for _ in range(max_q):
        q_powers.append(q_powers[-1] @ qm.entries)
    p_powers = [np.eye(N, dtype=complex)]
    for _ in range(max_p):
        p_powers.append(p_powers[-1] @ pm.entries)
    total = np.zeros((N, N), dtype=complex)
    for (a, b), coeff in A.words():
        total += coeff.at(h).to_complex() * (q_powers[a] @ p_powers[b])
    return FockMatrix(N, total, h)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A state: Hermitian, positive semidefinite, unit trace."""

    matrix: FockMatrix

    def __post_init__(self):
        m = self.matrix.entries
        if not self.matrix.is_hermitian(HERMITIAN_TOL):
            raise StateError("density matrix is not Hermitian within tolerance")
        trace = m.trace()
        if abs(trace - 1.0) > TRACE_TOL:
            raise StateError(f"density matrix trace {trace} is not 1")
        eigenvalues = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
        if eigenvalues.min() < -EIGENVALUE_TOL:
            raise StateError(
                f"density matrix has negative eigenvalue {eigenvalues.min()}"
            )

    @property
    def dim(self) -> int:
        return self.matrix.dim

    @property
    def hbar(self) -> Fraction:
        return self.matrix.hbar

    @property
    def entries(self) -> np.ndarray:
        return self.matrix.entries

    def support_level(self) -> int:
        """Highest basis index carrying any weight."""
        rows, cols = np.nonzero(np.abs(self.entries) > SUPPORT_TOL)
        if rows.size == 0:
            return 0
        return int(max(rows.max(), cols.max()))

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))

    def embedded(self, new_dim: int) -> "DensityMatrix":
        """Zero-padded copy in a larger space; exact for number-basis data."""
        if new_dim < self.dim:
            raise DimensionError("cannot embed into a smaller space")
        out = np.zeros((new_dim, new_dim), dtype=complex)
        out[: self.dim, : self.dim] = self.entries
        return DensityMatrix(FockMatrix(new_dim, out, self.hbar))


def fock_state(n: int, N: int, hbar: RationalLike = 1) -> DensityMatrix:
    """Projector onto number state n in an N-dimensional truncation."""
    if not 0 <= n < N:
        raise DimensionError(f"level {n} out of range for dimension {N}")
    m = np.zeros((N, N), dtype=complex)
    m[n, n] = 1.0
    return DensityMatrix(FockMatrix(N, m, Fraction(hbar)))


def pure_state(amplitudes: Sequence[complex], N: int, hbar: RationalLike = 1) -> DensityMatrix:
    """Projector onto the normalized superposition with given amplitudes."""
    vec = np.zeros(N, dtype=complex)
    if len(amplitudes) > N:
        raise DimensionError("more amplitudes than basis states")
    vec[: len(amplitudes)] = np.asarray(amplitudes, dtype=complex)
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise StateError("zero vector cannot be normalized")
    vec /= norm
    return DensityMatrix(FockMatrix(N, np.outer(vec, vec.conj()), Fraction(hbar)))


def mixture(
    weights: Sequence[RationalLike | float], states: Sequence[DensityMatrix]
) -> DensityMatrix:
    """Convex combination of states sharing one space and one hbar."""
    if len(weights) != len(states) or not states:
        raise StateError("weights and states must be nonempty and aligned")
    w = [float(x) for x in weights]
    if any(x < 0 for x in w):
        raise StateError("weights must be non-negative")
    if abs(sum(w) - 1.0) > TRACE_TOL:
        raise StateError(f"weights sum to {sum(w)}, not 1")
    dim = states[0].dim
    h = states[0].hbar
    for s in states[1:]:
        if s.dim != dim:
            raise DimensionError("mixture components live in different spaces")
        if s.hbar != h:
            raise StateError("mixture components use different hbar")
    total = np.zeros((dim, dim), dtype=complex)
    for x, s in zip(w, states):
        total += x * s.entries
    return DensityMatrix(FockMatrix(dim, total, h))


def _raw_trace(U: DensityMatrix, A: OpPoly, N: int) -> complex:
    m = op_to_matrix(A, N, U.hbar)
    u = U.embedded(N) if N > U.dim else U
    return complex(np.trace(u.entries @ m.entries))


def trace_expectation(U: DensityMatrix, A: OpPoly) -> float:
    """Ensemble average tr(U A) with truncation and reality guards.

    The trace is recomputed at doubled dimension; disagreement beyond
    1e-8 aborts.  A non-negligible imaginary part means the quantity was
    not Hermitian (or the truncation failed) and also aborts.
    """
    N = U.dim
    need = U.support_level() + A.total_degree() + BUFFER
    if N < need:
        raise DimensionError(
            f"dimension {N} too small: state level plus operator degree needs {need}"
        )
    value = _raw_trace(U, A, N)
    doubled = _raw_trace(U, A, 2 * N)
    if abs(value - doubled) >= STABILITY_TOL:
        raise TruncationError(
            f"trace moved by {abs(value - doubled):.3e} when doubling the dimension"
        )
    if abs(value.imag) > IMAG_TOL:
        raise NumericalContractError(
            f"trace has imaginary residue {value.imag:.3e}; quantity not Hermitian?"
        )
    return value.real


def dispersion(U: DensityMatrix, A: OpPoly) -> float:
    """Exp(A^2) - Exp(A)^2, with the square taken exactly before any
    matrix substitution."""
    square = op_mul(A, A)
    return trace_expectation(U, square) - trace_expectation(U, A) ** 2
