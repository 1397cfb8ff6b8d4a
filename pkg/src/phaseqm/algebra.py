"""Exact commutative phase-space algebra.

Three layers, all exact (no floating point until an explicit evaluation
boundary):

  GaussianRational  complex numbers with arbitrary-precision rational real
                    and imaginary parts,
  HbarCoeff         polynomials in a symbolic hbar with GaussianRational
                    coefficients, keyed by the hbar exponent,
  PhasePoly         sparse commutative polynomials in the phase-space
                    variables q and p with HbarCoeff coefficients.

Zero terms are never stored, so structural equality of two values is exact
semantic equality.  All values are immutable after construction and every
operation is a pure function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

RationalLike = Union[int, Fraction]

_I_CYCLE_RE = (1, 0, -1, 0)
_I_CYCLE_IM = (0, 1, 0, -1)


class GaussianRational:
    """A complex number a + b*i with exact rational a, b.

    Fraction keeps both parts in lowest terms with positive denominator,
    so the canonical-form invariant holds by construction.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def i_power(cls, k: int) -> "GaussianRational":
        """Return i**k for k >= 0."""
        return cls(_I_CYCLE_RE[k % 4], _I_CYCLE_IM[k % 4])

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    @property
    def is_imaginary(self) -> bool:
        return self.re == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def _coerce(self, other) -> "GaussianRational | None":
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        # Division by exact rationals only; general complex division is not
        # part of the algebra.
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re / other, self.im / other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = GR_ONE
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


def _as_gaussian(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    raise TypeError(f"cannot use {value!r} as an exact scalar")


class HbarCoeff:
    """An exact polynomial in symbolic hbar: {exponent: GaussianRational}.

    Exponents are non-negative; zero-valued terms are pruned on
    construction.  Substituting a rational hbar collapses the value to a
    single GaussianRational.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, GaussianRational] | None = None):
        clean: dict[int, GaussianRational] = {}
        if terms:
            for k, v in terms.items():
                if k < 0:
                    raise ValueError("hbar exponents must be non-negative")
                g = _as_gaussian(v)
                if not g.is_zero:
                    clean[k] = g
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("HbarCoeff is immutable")

    @classmethod
    def zero(cls) -> "HbarCoeff":
        return cls()

    @classmethod
    def one(cls) -> "HbarCoeff":
        return cls({0: GR_ONE})

    @classmethod
    def scalar(cls, value) -> "HbarCoeff":
        return cls({0: _as_gaussian(value)})

    @classmethod
    def hbar(cls, power: int = 1, value=1) -> "HbarCoeff":
        return cls({power: _as_gaussian(value)})

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> Iterator[tuple[int, GaussianRational]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, power: int) -> GaussianRational:
        return self._terms.get(power, GR_ZERO)

    def max_grade(self) -> int:
        return max(self._terms) if self._terms else 0

    def __add__(self, other):
        if not isinstance(other, HbarCoeff):
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, GR_ZERO) + v
            if s.is_zero:
                out.pop(k, None)
            else:
                out[k] = s
        return HbarCoeff(out)

    def __neg__(self):
        return HbarCoeff({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, HbarCoeff):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if not isinstance(other, HbarCoeff):
            return NotImplemented
        out: dict[int, GaussianRational] = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                k = k1 + k2
                s = out.get(k, GR_ZERO) + v1 * v2
                if s.is_zero:
                    out.pop(k, None)
                else:
                    out[k] = s
        return HbarCoeff(out)

    __rmul__ = __mul__

    def scale(self, value) -> "HbarCoeff":
        g = _as_gaussian(value)
        return HbarCoeff({k: v * g for k, v in self._terms.items()})

    def conjugate(self) -> "HbarCoeff":
        """Complex-conjugate every coefficient; hbar stays real."""
        return HbarCoeff({k: v.conjugate() for k, v in self._terms.items()})

    def drop_higher_grades(self, keep_below: int = 1) -> "HbarCoeff":
        """Keep only terms with hbar exponent < keep_below."""
        return HbarCoeff({k: v for k, v in self._terms.items() if k < keep_below})

    def at(self, hbar: RationalLike) -> GaussianRational:
        """Substitute a rational value for hbar; exact."""
        h = Fraction(hbar)
        total = GR_ZERO
        for k, v in self._terms.items():
            total = total + v * (h**k)
        return total

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = HbarCoeff.scalar(other)
        if not isinstance(other, HbarCoeff):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"HbarCoeff({self._terms!r})"


@dataclass(frozen=True)
class PhasePoint:
    """A point (q0, p0) of phase space: the parameter of a pointwise,
    dispersion-free value assignment."""

    q0: float
    p0: float

    def __post_init__(self):
        if not (math.isfinite(self.q0) and math.isfinite(self.p0)):
            raise ValueError("phase point coordinates must be finite")


class PhasePoly:
    """Sparse commutative polynomial in q and p over HbarCoeff.

    Monomials are keyed by (q-degree, p-degree); all-zero coefficients are
    pruned, so two polynomials are equal iff their stored maps coincide.
    """

    __slots__ = ("_monomials",)

    def __init__(self, monomials: Mapping[tuple[int, int], HbarCoeff] | None = None):
        clean: dict[tuple[int, int], HbarCoeff] = {}
        if monomials:
            for (a, b), c in monomials.items():
                if a < 0 or b < 0:
                    raise ValueError("monomial degrees must be non-negative")
                if not isinstance(c, HbarCoeff):
                    c = HbarCoeff.scalar(c)
                if not c.is_zero:
                    clean[(a, b)] = c
        object.__setattr__(self, "_monomials", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PhasePoly is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "PhasePoly":
        return cls()

    @classmethod
    def one(cls) -> "PhasePoly":
        return cls({(0, 0): HbarCoeff.one()})

    @classmethod
    def constant(cls, value) -> "PhasePoly":
        if not isinstance(value, HbarCoeff):
            value = HbarCoeff.scalar(value)
        return cls({(0, 0): value})

    @classmethod
    def q(cls) -> "PhasePoly":
        return cls({(1, 0): HbarCoeff.one()})

    @classmethod
    def p(cls) -> "PhasePoly":
        return cls({(0, 1): HbarCoeff.one()})

    @classmethod
    def monomial(cls, q_degree: int, p_degree: int, coeff=1) -> "PhasePoly":
        if not isinstance(coeff, HbarCoeff):
            coeff = HbarCoeff.scalar(coeff)
        return cls({(q_degree, p_degree): coeff})

    # -- inspection ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._monomials

    def monomials(self) -> list[tuple[tuple[int, int], HbarCoeff]]:
        """Monomials in canonical order: total degree then q-degree, both
        descending."""
        return sorted(
            self._monomials.items(),
            key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]),
        )

    def coefficient(self, q_degree: int, p_degree: int) -> HbarCoeff:
        return self._monomials.get((q_degree, p_degree), HbarCoeff.zero())

    def total_degree(self) -> int:
        if not self._monomials:
            return 0
        return max(a + b for a, b in self._monomials)

    def hbar_grades(self) -> dict[int, "PhasePoly"]:
        """Split by hbar exponent; each part carries pure scalar coefficients."""
        parts: dict[int, dict[tuple[int, int], HbarCoeff]] = {}
        for key, coeff in self._monomials.items():
            for k, v in coeff.items():
                parts.setdefault(k, {})[key] = HbarCoeff.scalar(v)
        return {k: PhasePoly(m) for k, m in sorted(parts.items())}

    def classical_part(self) -> "PhasePoly":
        """Drop every term of hbar grade >= 1."""
        return PhasePoly(
            {key: c.drop_higher_grades(1) for key, c in self._monomials.items()}
        )

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PhasePoly):
            return NotImplemented
        out = dict(self._monomials)
        for key, c in other._monomials.items():
            s = out.get(key, HbarCoeff.zero()) + c
            if s.is_zero:
                out.pop(key, None)
            else:
                out[key] = s
        return PhasePoly(out)

    def __neg__(self):
        return PhasePoly({k: -c for k, c in self._monomials.items()})

    def __sub__(self, other):
        if not isinstance(other, PhasePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, HbarCoeff)):
            return self.scale(other)
        if not isinstance(other, PhasePoly):
            return NotImplemented
        out: dict[tuple[int, int], HbarCoeff] = {}
        for (a1, b1), c1 in self._monomials.items():
            for (a2, b2), c2 in other._monomials.items():
                key = (a1 + a2, b1 + b2)
                s = out.get(key, HbarCoeff.zero()) + c1 * c2
                if s.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = s
        return PhasePoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = PhasePoly.one()
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, value) -> "PhasePoly":
        if not isinstance(value, HbarCoeff):
            value = HbarCoeff.scalar(value)
        return PhasePoly({k: c * value for k, c in self._monomials.items()})

    def derive(self, var: str, order: int = 1) -> "PhasePoly":
        """Exact partial derivative of the given order with respect to q or p."""
        if var not in ("q", "p"):
            raise ValueError("var must be 'q' or 'p'")
        if order < 0:
            raise ValueError("order must be non-negative")
        result = self
        for _ in range(order):
            out: dict[tuple[int, int], HbarCoeff] = {}
            for (a, b), c in result._monomials.items():
                if var == "q":
                    if a == 0:
                        continue
                    out[(a - 1, b)] = c.scale(a)
                else:
                    if b == 0:
                        continue
                    out[(a, b - 1)] = c.scale(b)
            result = PhasePoly(out)
        return result

    def eval_exact(
        self, q0: RationalLike, p0: RationalLike, hbar: RationalLike
    ) -> GaussianRational:
        """Exact substitution of rational q0, p0, hbar."""
        qf, pf, hf = Fraction(q0), Fraction(p0), Fraction(hbar)
        total = GR_ZERO
        for (a, b), c in self._monomials.items():
            total = total + c.at(hf) * (qf**a * pf**b)
        return total

    def __eq__(self, other):
        if not isinstance(other, PhasePoly):
            return NotImplemented
        return self._monomials == other._monomials

    def __hash__(self):
        return hash(frozenset(self._monomials.items()))

    def __repr__(self):
        return f"PhasePoly({self._monomials!r})"


# -- named operations ----------------------------------------------------


def poly_add(f: PhasePoly, g: PhasePoly) -> PhasePoly:
    """Exact coefficient-wise sum; zero monomials pruned."""
    return f + g


def poly_mul(f: PhasePoly, g: PhasePoly) -> PhasePoly:
    """Exact distributed commutative product (ordinary multiplication)."""
    return f * g


def poly_derive(f: PhasePoly, var: str, order: int = 1) -> PhasePoly:
    """Exact partial derivative of the requested order."""
    return f.derive(var, order)


def poly_eval(f: PhasePoly, pt: PhasePoint, hbar: RationalLike = 1) -> complex:
    """Evaluate f at a phase point for a fixed hbar > 0.

    Substitution is exact (float coordinates convert to rationals without
    rounding); the result converts to complex at this boundary only.
    """
    h = Fraction(hbar)
    if h <= 0:
        raise ValueError("hbar must be positive")
    return f.eval_exact(Fraction(pt.q0), Fraction(pt.p0), h).to_complex()
