"""Grid-sampled quasi-probability distributions.

The production path expands the state in oscillator eigenfunctions and
evaluates

    W(q, p) = (1 / pi hbar) integral <q+y| U |q-y> exp(-2 i p y / hbar) dy

by Gauss-Hermite quadrature.  Pure number states also have a closed form
in Laguerre polynomials, kept here as an independent oracle so the two
routes can check each other.

Stability note: the factor exp(t^2) that cancels the quadrature weight is
folded half-and-half into the two eigenfunction evaluations, so no
intermediate ever holds a bare exp(t^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import numpy as np
from numpy.polynomial.laguerre import lagval

from phaseqm.algebra import PhasePoly
from phaseqm.errors import GridError, NumericalContractError
from phaseqm.fock import DensityMatrix

RationalLike = Union[int, Fraction]

WIGNER_IMAG_TOL = 1e-8
# boundary decay is judged relative to the integrand's peak so the check
# is invariant under rescaling the symbol
BOUNDARY_RTOL = 1e-9
MIN_NODES = 160


@dataclass(frozen=True)
class GridSpec:
    """A rectangular phase-space sampling window."""

    q_min: float = -8.0
    q_max: float = 8.0
    n_q: int = 257
    p_min: float = -8.0
    p_max: float = 8.0
    n_p: int = 257

    def __post_init__(self):
        if not (self.q_min < self.q_max and self.p_min < self.p_max):
            raise GridError("grid ranges must be nonempty")
        if self.n_q < 2 or self.n_p < 2:
            raise GridError("need at least two samples per axis")

    def q_axis(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.n_q)

    def p_axis(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.n_p)


@dataclass(frozen=True, eq=False)
class WignerGrid:
    """Sampled W values, row-major over q then p."""

    spec: GridSpec
    values: np.ndarray
    hbar: Fraction

    def __post_init__(self):
        if self.values.shape != (self.spec.n_q, self.spec.n_p):
            raise GridError("value array does not match the grid spec")
        self.values.setflags(write=False)

    def integral(self) -> float:
        inner = np.trapezoid(self.values, self.spec.p_axis(), axis=1)
        return float(np.trapezoid(inner, self.spec.q_axis()))

    def to_csv(self, path: str) -> None:
        """Write `q,p,w` rows, q varying slowest, 17 significant digits."""
        q_axis = self.spec.q_axis()
        p_axis = self.spec.p_axis()
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("q,p,w\n")
            for i, qv in enumerate(q_axis):
                row = self.values[i]
                for j, pv in enumerate(p_axis):
                    fh.write(f"{qv:.17g},{pv:.17g},{row[j]:.17g}\n")


@lru_cache(maxsize=8)
def _gauss_hermite(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for the weight exp(-t^2), via the eigenvalues of
    the Jacobi matrix.  Unlike the series-based routine in numpy this stays
    finite for the several-hundred-node rules that small hbar needs; tail
    weights underflow to zero harmlessly."""
    k = np.arange(1, n)
    off = np.sqrt(k / 2.0)
    jacobi = np.diag(off, 1) + np.diag(off, -1)
    nodes, vectors = np.linalg.eigh(jacobi)
    weights = math.sqrt(math.pi) * vectors[0] ** 2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _node_count(spec: GridSpec, hbar: float, dim: int) -> int:
    # The integrand oscillates like exp(-2 i p y / hbar) with y of order
    # sqrt(hbar); resolving frequency w = 2 max|p| / sqrt(hbar) needs node
    # counts growing like w^2, plus room for the polynomial content of the
    # state expansion.
    p_abs = max(abs(spec.p_min), abs(spec.p_max))
    omega = 2.0 * p_abs / math.sqrt(hbar)
    return max(MIN_NODES, int(math.ceil(0.75 * omega * omega)) + dim + 32)


def _hermite_rows(x: np.ndarray, offsets: np.ndarray, dim: int, hbar: float) -> np.ndarray:
    """Oscillator eigenfunctions psi_0..psi_(dim-1) at points x, each row
    multiplied by exp(offsets).  Returns shape (len(x), dim)."""
    u = x / math.sqrt(hbar)
    out = np.empty((x.size, dim))
    out[:, 0] = (math.pi * hbar) ** -0.25 * np.exp(-0.5 * u * u + offsets)
    if dim > 1:
        out[:, 1] = math.sqrt(2.0) * u * out[:, 0]
    for n in range(1, dim - 1):
        out[:, n + 1] = (
            math.sqrt(2.0 / (n + 1)) * u * out[:, n]
            - math.sqrt(n / (n + 1.0)) * out[:, n - 1]
        )
    return out


def wigner_grid(
    U: DensityMatrix, spec: GridSpec | None = None, hbar: RationalLike | None = None
) -> WignerGrid:
    """Quadrature-sampled W over the grid.

    Imaginary residues above 1e-8 abort: for a valid Hermitian state the
    samples are real up to quadrature noise, so a large residue means the
    input or the quadrature is broken.
    """
    if spec is None:
        spec = GridSpec()
    h = Fraction(hbar) if hbar is not None else U.hbar
    hf = float(h)
    if hf <= 0:
        raise ValueError("hbar must be positive")
    dim = U.dim
    nodes, weights = _gauss_hermite(_node_count(spec, hf, dim))
    sqrt_h = math.sqrt(hf)
    y = sqrt_h * nodes
    q_axis = spec.q_axis()
    p_axis = spec.p_axis()
    # exp(-2 i p y / hbar) on (node, p); weights folded in on the left.
    phase = np.exp(-2j * np.outer(nodes, p_axis) / sqrt_h)
    weighted_phase = phase * weights[:, None]
    half_offsets = 0.5 * nodes * nodes
    values = np.empty((spec.n_q, spec.n_p))
    worst_imag = 0.0
    for i, qv in enumerate(q_axis):
        plus = _hermite_rows(qv + y, half_offsets, dim, hf)
        minus = _hermite_rows(qv - y, half_offsets, dim, hf)
        if not (np.isfinite(plus).all() and np.isfinite(minus).all()):
            raise GridError(
                "eigenfunction evaluation overflowed; shrink the grid range"
            )
        # kernel_i = row_i(plus) . U . row_i(minus)
        kernel = np.einsum("im,mn,in->i", plus, U.entries, minus, optimize=True)
        row = (kernel @ weighted_phase) / (math.pi * sqrt_h)
        worst_imag = max(worst_imag, float(np.max(np.abs(row.imag))))
        values[i] = row.real
    if worst_imag > WIGNER_IMAG_TOL:
        raise NumericalContractError(
            f"grid samples carry imaginary residue {worst_imag:.3e}"
        )
    return WignerGrid(spec, values, h)


def fock_wigner_closed_form(
    n: int, q: np.ndarray, p: np.ndarray, hbar: RationalLike = 1
) -> np.ndarray:
    """Closed form for the number state n on a meshgrid of q (rows) and p
    (columns):

        W_n = ((-1)^n / pi hbar) exp(-(q^2+p^2)/hbar) L_n(2 (q^2+p^2)/hbar)

    Independent of the quadrature path; used as its oracle.
    """
    hf = float(Fraction(hbar))
    qq, pp = np.meshgrid(q, p, indexing="ij")
    r2 = (qq * qq + pp * pp) / hf
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    sign = -1.0 if n % 2 else 1.0
    return sign / (math.pi * hf) * np.exp(-r2) * lagval(2.0 * r2, coeffs)


def _symbol_on_grid(
    f: PhasePoly, q_axis: np.ndarray, p_axis: np.ndarray, hbar: Fraction
) -> np.ndarray:
    qq, pp = np.meshgrid(q_axis, p_axis, indexing="ij")
    total = np.zeros_like(qq, dtype=complex)
    for (a, b), coeff in f.monomials():
        total += coeff.at(hbar).to_complex() * qq**a * pp**b
    return total


def overlap_expectation(
    U: DensityMatrix,
    f: PhasePoly,
    spec: GridSpec | None = None,
    hbar: RationalLike | None = None,
) -> float:
    """Phase-space ensemble average: trapezoid sum of W(q,p) f(q,p).

    Demands that the damped integrand has decayed to below 1e-9 of its
    peak on the grid boundary, otherwise the window is too small for the
    requested moment.
    """
    if spec is None:
        spec = GridSpec()
    h = Fraction(hbar) if hbar is not None else U.hbar
    grid = wigner_grid(U, spec, h)
    fvals = _symbol_on_grid(f, spec.q_axis(), spec.p_axis(), h)
    integrand = grid.values * fvals
    boundary = max(
        float(np.max(np.abs(integrand[0, :]))),
        float(np.max(np.abs(integrand[-1, :]))),
        float(np.max(np.abs(integrand[:, 0]))),
        float(np.max(np.abs(integrand[:, -1]))),
    )
    peak = float(np.max(np.abs(integrand)))
    if peak > 0.0 and boundary > BOUNDARY_RTOL * peak:
        raise GridError(
            f"integrand is {boundary:.3e} at the grid boundary "
            f"(peak {peak:.3e}); widen the window"
        )
    inner = np.trapezoid(integrand, spec.p_axis(), axis=1)
    total = complex(np.trapezoid(inner, spec.q_axis()))
    if abs(total.imag) > WIGNER_IMAG_TOL:
        raise NumericalContractError(
            f"overlap average has imaginary residue {total.imag:.3e}"
        )
    return total.real
