"""Commutative phase-space polynomials."""

import random
from fractions import Fraction

import pytest

from phaseqm.algebra import (
    HbarCoeff,
    PhasePoint,
    PhasePoly,
    poly_add,
    poly_derive,
    poly_eval,
    poly_mul,
)

from helpers import random_phase_poly


def hamiltonian() -> PhasePoly:
    return PhasePoly(
        {(2, 0): HbarCoeff.scalar(Fraction(1, 2)), (0, 2): HbarCoeff.scalar(Fraction(1, 2))}
    )


class TestRingStructure:
    def test_ring_axioms_random(self):
        rng = random.Random(21)
        zero = PhasePoly.zero()
        one = PhasePoly.one()
        for _ in range(200):
            f = random_phase_poly(rng, max_degree=6)
            g = random_phase_poly(rng, max_degree=6)
            h = random_phase_poly(rng, max_degree=6)
            assert poly_add(poly_add(f, g), h) == poly_add(f, poly_add(g, h))
            assert poly_add(f, g) == poly_add(g, f)
            assert poly_mul(poly_mul(f, g), h) == poly_mul(f, poly_mul(g, h))
            assert poly_mul(f, g) == poly_mul(g, f)
            assert poly_mul(f, poly_add(g, h)) == poly_add(poly_mul(f, g), poly_mul(f, h))
            assert poly_add(f, zero) == f
            assert poly_mul(f, one) == f
            assert f - f == zero

    def test_cancellation_prunes(self):
        q = PhasePoly.q()
        assert (q + (-q)).is_zero
        assert (q + (-q)) == PhasePoly.zero()

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            PhasePoly({(-1, 0): HbarCoeff.one()})

    def test_power(self):
        q = PhasePoly.q()
        assert q**3 == PhasePoly.monomial(3, 0)
        assert q**0 == PhasePoly.one()
        with pytest.raises(ValueError):
            q ** (-1)

    def test_oscillator_square(self):
        H = hamiltonian()
        expected = PhasePoly(
            {
                (4, 0): HbarCoeff.scalar(Fraction(1, 4)),
                (0, 4): HbarCoeff.scalar(Fraction(1, 4)),
                (2, 2): HbarCoeff.scalar(Fraction(1, 2)),
            }
        )
        assert H * H == expected

    def test_imaginary_parts_cancel(self):
        # (qp + i hbar/2) + (qp - i hbar/2) = 2 qp
        from phaseqm.algebra import GaussianRational

        plus = PhasePoly(
            {(1, 1): HbarCoeff.one(), (0, 0): HbarCoeff.hbar(1, GaussianRational(0, Fraction(1, 2)))}
        )
        minus = PhasePoly(
            {(1, 1): HbarCoeff.one(), (0, 0): HbarCoeff.hbar(1, GaussianRational(0, Fraction(-1, 2)))}
        )
        assert plus + minus == PhasePoly.monomial(1, 1, 2)


class TestDerivatives:
    def test_basic(self):
        H = hamiltonian()
        assert poly_derive(H, "q") == PhasePoly.q()
        assert poly_derive(H, "p") == PhasePoly.p()
        assert poly_derive(H, "p", 2) == PhasePoly.one()
        assert poly_derive(H, "p", 3).is_zero

    def test_leibniz_random(self):
        rng = random.Random(22)
        for _ in range(100):
            f = random_phase_poly(rng, max_degree=5)
            g = random_phase_poly(rng, max_degree=5)
            for var in ("q", "p"):
                lhs = poly_derive(f * g, var)
                rhs = poly_derive(f, var) * g + f * poly_derive(g, var)
                assert lhs == rhs

    def test_mixed_partials_commute(self):
        rng = random.Random(23)
        for _ in range(100):
            f = random_phase_poly(rng, max_degree=6)
            assert poly_derive(poly_derive(f, "q"), "p") == poly_derive(
                poly_derive(f, "p"), "q"
            )

    def test_invalid_args(self):
        with pytest.raises(ValueError):
            poly_derive(PhasePoly.q(), "x")
        with pytest.raises(ValueError):
            poly_derive(PhasePoly.q(), "q", -1)


class TestEvaluation:
    def test_oscillator_at_point(self):
        H = hamiltonian()
        assert poly_eval(H, PhasePoint(1.0, 1.0)) == 1.0 + 0j
        assert poly_eval(H, PhasePoint(0.0, 0.0)) == 0j

    def test_hbar_enters_exactly(self):
        # H^2 - hbar^2/4 at the origin is -hbar^2/4.
        H = hamiltonian()
        f = H * H - PhasePoly.constant(HbarCoeff.hbar(2, Fraction(1, 4)))
        assert poly_eval(f, PhasePoint(0.0, 0.0), hbar=1) == -0.25 + 0j
        assert poly_eval(f, PhasePoint(0.0, 0.0), hbar=Fraction(1, 2)) == -0.0625 + 0j

    def test_eval_is_ring_morphism(self):
        rng = random.Random(24)
        for _ in range(100):
            f = random_phase_poly(rng, max_degree=5)
            g = random_phase_poly(rng, max_degree=5)
            q0 = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
            p0 = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
            h = Fraction(rng.randint(1, 6), rng.randint(1, 6))
            assert (f + g).eval_exact(q0, p0, h) == f.eval_exact(
                q0, p0, h
            ) + g.eval_exact(q0, p0, h)
            assert (f * g).eval_exact(q0, p0, h) == f.eval_exact(
                q0, p0, h
            ) * g.eval_exact(q0, p0, h)

    def test_eval_rejects_nonpositive_hbar(self):
        with pytest.raises(ValueError):
            poly_eval(PhasePoly.q(), PhasePoint(0.0, 0.0), hbar=0)

    def test_float_coordinates_are_exact(self):
        # 0.5 is a dyadic float, so q at 0.5 must give exactly 1/2.
        val = PhasePoly.q().eval_exact(Fraction(0.5), Fraction(0), Fraction(1))
        assert val.re == Fraction(1, 2)


class TestStructureMaps:
    def test_hbar_grades_split(self):
        from phaseqm.algebra import GaussianRational

        f = PhasePoly(
            {
                (1, 1): HbarCoeff.one(),
                (0, 0): HbarCoeff.hbar(1, GaussianRational(0, Fraction(1, 2))),
            }
        )
        grades = f.hbar_grades()
        assert set(grades) == {0, 1}
        assert grades[0] == PhasePoly.monomial(1, 1)
        assert grades[1] == PhasePoly.monomial(
            0, 0, GaussianRational(0, Fraction(1, 2))
        )

    def test_grades_reassemble(self):
        rng = random.Random(25)
        for _ in range(50):
            f = random_phase_poly(rng, max_degree=6)
            total = PhasePoly.zero()
            for k, part in f.hbar_grades().items():
                total = total + part.scale(HbarCoeff.hbar(k))
            assert total == f

    def test_classical_part(self):
        H = hamiltonian()
        f = H * H - PhasePoly.constant(HbarCoeff.hbar(2, Fraction(1, 4)))
        assert f.classical_part() == H * H

    def test_total_degree(self):
        assert PhasePoly.zero().total_degree() == 0
        assert hamiltonian().total_degree() == 2
        assert (hamiltonian() ** 3).total_degree() == 6

    def test_monomial_ordering(self):
        f = PhasePoly(
            {(0, 2): HbarCoeff.one(), (2, 0): HbarCoeff.one(), (1, 0): HbarCoeff.one()}
        )
        keys = [key for key, _ in f.monomials()]
        assert keys == [(2, 0), (0, 2), (1, 0)]


class TestPhasePoint:
    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            PhasePoint(float("nan"), 0.0)
        with pytest.raises(ValueError):
            PhasePoint(0.0, float("inf"))
