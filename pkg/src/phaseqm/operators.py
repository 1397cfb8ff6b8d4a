"""Noncommutative polynomials in the canonical pair (Q, P).

Operators are stored in normal form: every word is written with all Q
factors to the left of all P factors, so a term is keyed by (Q-degree,
P-degree) exactly like the commutative layer.  The single rewrite rule

    P Q = Q P - i hbar

generalizes to the closed form used by _reorder, which moves a whole block
P^b past Q^a in one step.  Products, commutators, and adjoints all reduce
to that rewrite, so associativity and the canonical commutation relation
hold by construction.

Quantization maps a commutative polynomial to the operator whose normal
form averages over all orderings of each monomial (the symmetric-ordering
rule); dequantization in the companion module inverts it exactly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Mapping

from phaseqm.algebra import (
    GaussianRational,
    HbarCoeff,
    PhasePoly,
)


@lru_cache(maxsize=None)
def _reorder(a: int, b: int) -> dict[tuple[int, int], HbarCoeff]:
    """Normal form of the reversed word P^b Q^a.

        P^b Q^a = sum_k (-i hbar)^k k! C(a,k) C(b,k) Q^(a-k) P^(b-k)

    Verified independently in the tests against a one-swap-at-a-time
    rewrite.
    """
    out: dict[tuple[int, int], HbarCoeff] = {}
    for k in range(min(a, b) + 1):
        n = factorial(k) * comb(a, k) * comb(b, k)
        scalar = GaussianRational(0, -1) ** k * n if k else GaussianRational(n)
        out[(a - k, b - k)] = HbarCoeff.hbar(k, scalar)
    return out


class OpPoly:
    """Normal-ordered operator polynomial: {(Q-degree, P-degree): HbarCoeff}.

    Construction accepts already-normal-form data; arbitrary words enter
    through from_word or the arithmetic operations.
    """

    __slots__ = ("_words",)

    def __init__(self, words: Mapping[tuple[int, int], HbarCoeff] | None = None):
        clean: dict[tuple[int, int], HbarCoeff] = {}
        if words:
            for (a, b), c in words.items():
                if a < 0 or b < 0:
                    raise ValueError("word degrees must be non-negative")
                if not isinstance(c, HbarCoeff):
                    c = HbarCoeff.scalar(c)
                if not c.is_zero:
                    clean[(a, b)] = c
        object.__setattr__(self, "_words", clean)

    def __setattr__(self, name, value):
        raise AttributeError("OpPoly is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "OpPoly":
        return cls()

    @classmethod
    def identity(cls) -> "OpPoly":
        return cls({(0, 0): HbarCoeff.one()})

    @classmethod
    def constant(cls, value) -> "OpPoly":
        if not isinstance(value, HbarCoeff):
            value = HbarCoeff.scalar(value)
        return cls({(0, 0): value})

    @classmethod
    def q(cls) -> "OpPoly":
        return cls({(1, 0): HbarCoeff.one()})

    @classmethod
    def p(cls) -> "OpPoly":
        return cls({(0, 1): HbarCoeff.one()})

    @classmethod
    def word(cls, q_degree: int, p_degree: int, coeff=1) -> "OpPoly":
        """The normal-form word Q^a P^b times a scalar."""
        if not isinstance(coeff, HbarCoeff):
            coeff = HbarCoeff.scalar(coeff)
        return cls({(q_degree, p_degree): coeff})

    @classmethod
    def from_letters(cls, letters: str, coeff=1) -> "OpPoly":
        """Normal-order an arbitrary word given as a string over {'q','p'}.

        Example: from_letters("pq") == Q P - i hbar.
        """
        result = cls.constant(coeff)
        for ch in letters:
            if ch == "q":
                result = op_mul(result, cls.q())
            elif ch == "p":
                result = op_mul(result, cls.p())
            else:
                raise ValueError(f"unknown operator letter {ch!r}")
        return result

    # -- inspection ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._words

    def words(self) -> list[tuple[tuple[int, int], HbarCoeff]]:
        """Words in canonical order: total degree then Q-degree, descending."""
        return sorted(
            self._words.items(),
            key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]),
        )

    def coefficient(self, q_degree: int, p_degree: int) -> HbarCoeff:
        return self._words.get((q_degree, p_degree), HbarCoeff.zero())

    def total_degree(self) -> int:
        if not self._words:
            return 0
        return max(a + b for a, b in self._words)

    # -- algebra ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, OpPoly):
            return NotImplemented
        out = dict(self._words)
        for key, c in other._words.items():
            s = out.get(key, HbarCoeff.zero()) + c
            if s.is_zero:
                out.pop(key, None)
            else:
                out[key] = s
        return OpPoly(out)

    def __neg__(self):
        return OpPoly({k: -c for k, c in self._words.items()})

    def __sub__(self, other):
        if not isinstance(other, OpPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, HbarCoeff)):
            return self.scale(other)
        if not isinstance(other, OpPoly):
            return NotImplemented
        out: dict[tuple[int, int], HbarCoeff] = {}
        for (a1, b1), c1 in self._words.items():
            for (a2, b2), c2 in other._words.items():
                c = c1 * c2
                # Q^a1 P^b1 Q^a2 P^b2: push P^b1 through Q^a2.
                for (am, bm), cm in _reorder(a2, b1).items():
                    key = (a1 + am, bm + b2)
                    s = out.get(key, HbarCoeff.zero()) + c * cm
                    if s.is_zero:
                        out.pop(key, None)
                    else:
                        out[key] = s
        return OpPoly(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, HbarCoeff)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = OpPoly.identity()
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, value) -> "OpPoly":
        if not isinstance(value, HbarCoeff):
            value = HbarCoeff.scalar(value)
        return OpPoly({k: c * value for k, c in self._words.items()})

    def adjoint(self) -> "OpPoly":
        """Hermitian adjoint: conjugate coefficients, reverse each word.

        (Q^a P^b)+ = P^b Q^a, which is then renormalized.
        """
        total = OpPoly.zero()
        for (a, b), c in self._words.items():
            reversed_word = OpPoly(_reorder(a, b))
            total = total + reversed_word.scale(c.conjugate())
        return total

    def is_hermitian(self) -> bool:
        return self.adjoint() == self

    def __eq__(self, other):
        if not isinstance(other, OpPoly):
            return NotImplemented
        return self._words == other._words

    def __hash__(self):
        return hash(frozenset(self._words.items()))

    def __repr__(self):
        return f"OpPoly({self._words!r})"


# -- named operations ----------------------------------------------------


def op_add(x: OpPoly, y: OpPoly) -> OpPoly:
    """Sum in normal form."""
    return x + y


def op_mul(x: OpPoly, y: OpPoly) -> OpPoly:
    """Noncommutative product, renormalized via P Q = Q P - i hbar."""
    return x * y


def op_scale(x: OpPoly, value) -> OpPoly:
    """Scalar multiple; accepts exact rationals, Gaussian rationals, or
    hbar-graded scalars."""
    return x.scale(value)


def commutator(x: OpPoly, y: OpPoly) -> OpPoly:
    """[x, y] = x y - y x in normal form."""
    return x * y - y * x


def weyl_quantize(f: PhasePoly) -> OpPoly:
    """Symmetric-ordering quantization of a commutative polynomial.

    Each monomial q^m p^n maps to the average of Q-split orderings

        (1/2^m) sum_k C(m,k) Q^k P^n Q^(m-k)

    extended linearly; symbolic hbar in coefficients passes through.  The
    same operator results from splitting P instead (checked in the tests),
    which is the symmetry that makes the rule well defined.
    """
    total = OpPoly.zero()
    for (m, n), coeff in f._monomials.items():  # noqa: SLF001 - same package
        acc = OpPoly.zero()
        for k in range(m + 1):
            # Q^k P^n Q^(m-k) -> Q^k (P^n Q^(m-k)) P^0
            for (am, bm), cm in _reorder(m - k, n).items():
                acc = acc + OpPoly.word(k + am, bm, cm * comb(m, k))
        total = total + acc.scale(coeff * HbarCoeff.scalar(Fraction(1, 2**m)))
    return total


def weyl_quantize_p_split(f: PhasePoly) -> OpPoly:
    """Quantization with the dual split (1/2^n) sum_k C(n,k) P^k Q^m P^(n-k).

    Kept as an internal cross-check of weyl_quantize; both must agree on
    every input.
    """
    total = OpPoly.zero()
    for (m, n), coeff in f._monomials.items():  # noqa: SLF001 - same package
        acc = OpPoly.zero()
        for k in range(n + 1):
            # P^k Q^m P^(n-k): reorder P^k past Q^m.
            for (am, bm), cm in _reorder(m, k).items():
                acc = acc + OpPoly.word(am, bm + (n - k), cm * comb(n, k))
        total = total + acc.scale(coeff * HbarCoeff.scalar(Fraction(1, 2**n)))
    return total
