"""Star product, dequantization, and the quantity-correspondence gap.

The star product is the noncommutative product on phase-space polynomials
that mirrors operator composition: dequantize(A·B) equals
dequantize(A) ⋆ dequantize(B).  For polynomials the bidifferential series
is finite, so everything here is exact.

The headline computation is assumption_I_gap: applying a function f to an
operator and then reading off its phase-space symbol does not agree with
applying f directly to the symbol.  The difference is a concrete
polynomial (for the oscillator energy squared it is the constant
-hbar^2/4), and it is exactly what a pointwise hidden-variable value
assignment gives up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Mapping, Optional, Union

from phaseqm.algebra import (
    GaussianRational,
    HbarCoeff,
    PhasePoint,
    PhasePoly,
    poly_eval,
)
from phaseqm.operators import OpPoly


def _derivative_table(F: PhasePoly, bound: int) -> dict[tuple[int, int], PhasePoly]:
    """All partials d_q^i d_p^j F with i + j <= bound, each derived once."""
    table = {(0, 0): F}
    for i in range(bound + 1):
        for j in range(bound + 1 - i):
            if (i, j) == (0, 0):
                continue
            if j == 0:
                table[(i, 0)] = table[(i - 1, 0)].derive("q")
            else:
                table[(i, j)] = table[(i, j - 1)].derive("p")
    return table


def star(f: PhasePoly, g: PhasePoly) -> PhasePoly:
    """Groenewold-Moyal product of two phase-space polynomials.

        f ⋆ g = sum_n (1/n!) (i hbar / 2)^n
                sum_k C(n,k) (-1)^k (d_q^(n-k) d_p^k f) (d_p^(n-k) d_q^k g)

    The sum stops at n = min(deg f, deg g); beyond that every term holds a
    derivative of higher order than its operand.  The order-1 part is the
    Poisson bracket times i hbar / 2, which fixes the sign convention:
    q ⋆ p = qp + (i hbar / 2).
    """
    if f.is_zero or g.is_zero:
        return PhasePoly.zero()
    bound = min(f.total_degree(), g.total_degree())
    df = _derivative_table(f, bound)
    dg = _derivative_table(g, bound)
    out: dict[tuple[int, int], HbarCoeff] = {}
    for n in range(bound + 1):
        base = Fraction(1, factorial(n) * 2**n)
        i_n = GaussianRational.i_power(n)
        for k in range(n + 1):
            left = df[(n - k, k)]
            right = dg[(k, n - k)]
            if left.is_zero or right.is_zero:
                continue
            sign = -1 if k % 2 else 1
            prefactor = HbarCoeff.hbar(n, i_n * (base * comb(n, k) * sign))
            for (a1, b1), c1 in left._monomials.items():  # noqa: SLF001
                c1p = c1 * prefactor
                for (a2, b2), c2 in right._monomials.items():  # noqa: SLF001
                    key = (a1 + a2, b1 + b2)
                    prev = out.get(key)
                    s = c1p * c2 if prev is None else prev + c1p * c2
                    if s.is_zero:
                        out.pop(key, None)
                    else:
                        out[key] = s
    return PhasePoly(out)


def moyal_bracket(f: PhasePoly, g: PhasePoly) -> PhasePoly:
    """Star antisymmetrization f⋆g − g⋆f, the symbol-level commutator."""
    return star(f, g) - star(g, f)


@lru_cache(maxsize=None)
def _star_word(a: int, b: int) -> PhasePoly:
    """Closed form of q^a ⋆ p^b.

        q^a ⋆ p^b = sum_n (i hbar / 2)^n n! C(a,n) C(b,n) q^(a-n) p^(b-n)

    Only the k=0 layer of the series survives because q^a has no
    p-derivative.
    """
    out: dict[tuple[int, int], HbarCoeff] = {}
    for n in range(min(a, b) + 1):
        count = factorial(n) * comb(a, n) * comb(b, n)
        scalar = GaussianRational.i_power(n) * Fraction(count, 2**n)
        out[(a - n, b - n)] = HbarCoeff.hbar(n, scalar)
    return PhasePoly(out)


def dequantize(A: OpPoly) -> PhasePoly:
    """Phase-space symbol of a normal-form operator polynomial.

    Linear over words: Q^a P^b maps to q^a ⋆ p^b, because the symbol of a
    product is the star product of the factor symbols and pure powers map
    through unchanged.  Exact inverse of weyl_quantize.
    """
    total = PhasePoly.zero()
    for (a, b), coeff in A.words():
        total = total + _star_word(a, b).scale(coeff)
    return total


ScalarLike = Union[int, Fraction, GaussianRational]


class UnivariatePoly:
    """Exact univariate polynomial with Gaussian-rational coefficients.

    Used for the function f in quantity correspondence: it can be applied
    to an operator (operator powers) or to a symbol (commutative powers),
    and the two results generally differ after dequantization.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, ScalarLike] | None = None):
        clean: dict[int, GaussianRational] = {}
        if coeffs:
            for k, v in coeffs.items():
                if k < 0:
                    raise ValueError("exponents must be non-negative")
                if not isinstance(v, GaussianRational):
                    v = GaussianRational(v)
                if not v.is_zero:
                    clean[k] = v
        object.__setattr__(self, "_coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("UnivariatePoly is immutable")

    @classmethod
    def x(cls) -> "UnivariatePoly":
        return cls({1: GaussianRational(1)})

    @classmethod
    def constant(cls, value: ScalarLike) -> "UnivariatePoly":
        return cls({0: value})

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def degree(self) -> int:
        return max(self._coeffs) if self._coeffs else 0

    def coefficient(self, power: int) -> GaussianRational:
        return self._coeffs.get(power, GaussianRational(0))

    def terms(self) -> list[tuple[int, GaussianRational]]:
        return sorted(self._coeffs.items(), reverse=True)

    def __add__(self, other):
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            s = out.get(k, GaussianRational(0)) + v
            if s.is_zero:
                out.pop(k, None)
            else:
                out[k] = s
        return UnivariatePoly(out)

    def __neg__(self):
        return UnivariatePoly({k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            o = other if isinstance(other, GaussianRational) else GaussianRational(other)
            return UnivariatePoly({k: v * o for k, v in self._coeffs.items()})
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        out: dict[int, GaussianRational] = {}
        for k1, v1 in self._coeffs.items():
            for k2, v2 in other._coeffs.items():
                k = k1 + k2
                s = out.get(k, GaussianRational(0)) + v1 * v2
                if s.is_zero:
                    out.pop(k, None)
                else:
                    out[k] = s
        return UnivariatePoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = UnivariatePoly({0: GaussianRational(1)})
        for _ in range(exponent):
            result = result * self
        return result

    def apply_op(self, A: OpPoly) -> OpPoly:
        """f(A) by operator arithmetic: powers use the noncommutative product."""
        total = OpPoly.zero()
        power = OpPoly.identity()
        for k in range(self.degree() + 1):
            c = self._coeffs.get(k)
            if c is not None:
                total = total + power.scale(c)
            if k < self.degree():
                power = power * A
        return total

    def apply_poly(self, F: PhasePoly) -> PhasePoly:
        """f(F) pointwise: powers use the ordinary commutative product."""
        total = PhasePoly.zero()
        power = PhasePoly.one()
        for k in range(self.degree() + 1):
            c = self._coeffs.get(k)
            if c is not None:
                total = total + power.scale(c)
            if k < self.degree():
                power = power * F
        return total

    def eval_exact(self, x: Fraction) -> GaussianRational:
        total = GaussianRational(0)
        for k, v in self._coeffs.items():
            total = total + v * (x**k)
        return total

    def __eq__(self, other):
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self):
        return f"UnivariatePoly({self._coeffs!r})"


@dataclass(frozen=True)
class GapReport:
    """Both readings of "apply f to the quantity" and their exact difference.

    symbol_of_fA is the symbol of f applied to the operator; f_of_symbol is
    f applied pointwise to the operator's symbol.  gap is the exact
    polynomial difference; gap_at_point its value at a chosen phase point
    when one is supplied.
    """

    quantity: OpPoly
    function: UnivariatePoly
    symbol_of_fA: PhasePoly
    f_of_symbol: PhasePoly
    gap: PhasePoly
    gap_at_point: Optional[complex] = None


def assumption_I_gap(
    A: OpPoly,
    f: UnivariatePoly,
    pt: Optional[PhasePoint] = None,
    hbar: Union[int, Fraction] = 1,
) -> GapReport:
    """Measure how far f-then-dequantize is from dequantize-then-f.

    For f of degree <= 1 the two routes agree identically.  For higher
    degrees the gap is the accumulated star-product correction; with the
    oscillator energy and f(x) = x^2 it is the constant -hbar^2/4.
    """
    f_of_A = f.apply_op(A)
    symbol_of_fA = dequantize(f_of_A)
    f_of_symbol = f.apply_poly(dequantize(A))
    gap = symbol_of_fA - f_of_symbol
    gap_at_point = None
    if pt is not None:
        gap_at_point = poly_eval(gap, pt, hbar)
    return GapReport(
        quantity=A,
        function=f,
        symbol_of_fA=symbol_of_fA,
        f_of_symbol=f_of_symbol,
        gap=gap,
        gap_at_point=gap_at_point,
    )


def assumption_II_check(A: OpPoly, B: OpPoly) -> bool:
    """Sum correspondence: the symbol of a sum is the sum of symbols.

    True for every pair, since dequantization is linear; exposed as an
    executable check rather than a proof.
    """
    return dequantize(A + B) == dequantize(A) + dequantize(B)
