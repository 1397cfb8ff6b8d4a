"""Expression grammar, lowering, and canonical printing."""

import random
from fractions import Fraction

import pytest

from phaseqm.algebra import GaussianRational, HbarCoeff, PhasePoly
from phaseqm.errors import ExprError
from phaseqm.moyal import UnivariatePoly
from phaseqm.operators import OpPoly
from phaseqm.parsing import (
    format_operator,
    format_symbol,
    format_univariate,
    lower,
    parse,
    parse_operator,
    parse_symbol,
    parse_univariate,
)

from helpers import random_op_poly, random_phase_poly

I = GaussianRational(0, 1)


class TestParsing:
    def test_hamiltonian_operator(self):
        got = parse_operator("(Q^2+P^2)/2")
        expected = OpPoly(
            {(2, 0): HbarCoeff.scalar(Fraction(1, 2)), (0, 2): HbarCoeff.scalar(Fraction(1, 2))}
        )
        assert got == expected

    def test_symbol_variable(self):
        assert parse_symbol("q") == PhasePoly.q()

    def test_order_sensitivity(self):
        assert parse_operator("P*Q") == OpPoly(
            {(1, 1): HbarCoeff.one(), (0, 0): HbarCoeff.hbar(1, -I)}
        )
        assert parse_operator("Q*P") == OpPoly.word(1, 1)

    def test_rational_atom(self):
        assert parse_symbol("3/4") == PhasePoly.constant(Fraction(3, 4))
        # With spaces the division happens at the factor level; same value.
        assert parse_symbol("3 / 4") == PhasePoly.constant(Fraction(3, 4))

    def test_rational_vs_power(self):
        assert parse_symbol("3/4^2") == PhasePoly.constant(Fraction(9, 16))
        assert parse_symbol("2^3/4") == PhasePoly.constant(2)
        assert parse_symbol("q^2/2") == PhasePoly.monomial(2, 0, Fraction(1, 2))

    def test_unary_minus_binds_tightest(self):
        # '-' is an atom form, so the exponent applies to the negation.
        assert parse_symbol("-q^2") == PhasePoly.monomial(2, 0)
        assert parse_symbol("-(q^2)") == PhasePoly.monomial(2, 0, -1)
        assert parse_symbol("-q") == PhasePoly.monomial(1, 0, -1)

    def test_hbar_and_i(self):
        assert parse_symbol("i*hbar") == PhasePoly.constant(HbarCoeff.hbar(1, I))
        assert parse_symbol("hbar^2/4") == PhasePoly.constant(
            HbarCoeff.hbar(2, Fraction(1, 4))
        )

    def test_power_zero(self):
        assert parse_symbol("q^0") == PhasePoly.one()

    def test_univariate(self):
        got = parse_univariate("x^2 - x/2 + 3/4")
        assert got == UnivariatePoly({2: 1, 1: Fraction(-1, 2), 0: Fraction(3, 4)})


class TestParseErrors:
    def assert_offset(self, text, mode, offset):
        with pytest.raises(ExprError) as excinfo:
            parse(text, mode)
        assert excinfo.value.offset == offset

    def test_mode_violation(self):
        self.assert_offset("q*P", "symbol", 2)
        self.assert_offset("Q*p", "operator", 2)
        self.assert_offset("q", "univariate", 0)
        self.assert_offset("x", "symbol", 0)

    def test_lexical_error(self):
        self.assert_offset("q $ p", "symbol", 2)

    def test_unknown_name(self):
        self.assert_offset("foo", "symbol", 0)

    def test_hbar_rejected_in_univariate(self):
        self.assert_offset("x + hbar", "univariate", 4)

    def test_empty(self):
        self.assert_offset("", "symbol", 0)
        self.assert_offset("   ", "symbol", 0)

    def test_juxtaposition_rejected(self):
        self.assert_offset("2 q", "symbol", 2)

    def test_unclosed_paren(self):
        self.assert_offset("(q + p", "symbol", 6)

    def test_missing_exponent(self):
        self.assert_offset("q^", "symbol", 2)
        self.assert_offset("q^p", "symbol", 2)

    def test_division_by_zero(self):
        self.assert_offset("q/0", "symbol", 1)
        self.assert_offset("3/0", "symbol", 1)

    def test_dangling_operator(self):
        self.assert_offset("q +", "symbol", 3)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            parse("q", "nonsense")


class TestPrinting:
    def test_star_output_shape(self):
        f = PhasePoly(
            {
                (1, 1): HbarCoeff.one(),
                (0, 0): HbarCoeff.hbar(1, GaussianRational(0, Fraction(1, 2))),
            }
        )
        assert format_symbol(f) == "q*p + (1/2)*i*hbar"

    def test_monomial_order(self):
        f = (
            PhasePoly.monomial(4, 0, Fraction(1, 4))
            + PhasePoly.monomial(0, 4, Fraction(1, 4))
            + PhasePoly.monomial(2, 2, Fraction(1, 2))
            - PhasePoly.constant(HbarCoeff.hbar(2, Fraction(1, 4)))
        )
        assert (
            format_symbol(f)
            == "(1/4)*q^4 + (1/2)*q^2*p^2 + (1/4)*p^4 - (1/4)*hbar^2"
        )

    def test_zero(self):
        assert format_symbol(PhasePoly.zero()) == "0"
        assert format_operator(OpPoly.zero()) == "0"
        assert format_univariate(UnivariatePoly()) == "0"

    def test_leading_negative_power_is_parenthesized(self):
        f = PhasePoly.monomial(2, 0, -1)
        assert format_symbol(f) == "-(q^2)"

    def test_operator_form(self):
        A = OpPoly({(1, 1): HbarCoeff.one(), (0, 0): HbarCoeff.hbar(1, -I)})
        assert format_operator(A) == "Q*P - i*hbar"

    def test_univariate_form(self):
        f = UnivariatePoly({2: 1, 1: Fraction(-1, 2), 0: Fraction(3, 4)})
        assert format_univariate(f) == "x^2 - (1/2)*x + (3/4)"


class TestFixpoint:
    def test_symbol_round_trip_random(self):
        rng = random.Random(91)
        for _ in range(200):
            f = random_phase_poly(rng, max_degree=6)
            assert parse_symbol(format_symbol(f)) == f

    def test_operator_round_trip_random(self):
        rng = random.Random(92)
        for _ in range(200):
            A = random_op_poly(rng, max_degree=6)
            assert parse_operator(format_operator(A)) == A

    def test_univariate_round_trip_random(self):
        rng = random.Random(93)
        for _ in range(100):
            f = UnivariatePoly(
                {
                    rng.randint(0, 6): GaussianRational(
                        Fraction(rng.randint(-6, 6), rng.randint(1, 6)),
                        Fraction(rng.randint(-6, 6), rng.randint(1, 6)),
                    )
                    for _ in range(4)
                }
            )
            assert parse_univariate(format_univariate(f)) == f

    def test_reprint_is_stable(self):
        rng = random.Random(94)
        for _ in range(50):
            f = random_phase_poly(rng, max_degree=5)
            text = format_symbol(f)
            assert format_symbol(parse_symbol(text)) == text
