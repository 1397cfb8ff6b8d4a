"""Lossless JSON forms for the exact types and the report types.

Exact scalars travel as strings of rationals ("3/4", "-2"), hbar grades
as integers, so every value round-trips with no floating-point step.  The
canonical printed text rides along in a "text" field for human readers;
the structured terms are authoritative when reading back.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from phaseqm.algebra import GaussianRational, HbarCoeff, PhasePoint, PhasePoly
from phaseqm.ensembles import HvDispersionReport
from phaseqm.moyal import GapReport, UnivariatePoly
from phaseqm.operators import OpPoly
from phaseqm.parsing import format_operator, format_symbol, format_univariate


def _scalar_fields(c: GaussianRational) -> dict[str, str]:
    return {"re": str(c.re), "im": str(c.im)}


def _scalar_from(obj: dict[str, Any]) -> GaussianRational:
    return GaussianRational(Fraction(obj["re"]), Fraction(obj["im"]))


def _coeff_to_json(coeff: HbarCoeff) -> list[dict[str, Any]]:
    return [{"hbar": grade, **_scalar_fields(scalar)} for grade, scalar in coeff.items()]


def _coeff_from_json(items: list[dict[str, Any]]) -> HbarCoeff:
    return HbarCoeff({int(obj["hbar"]): _scalar_from(obj) for obj in items})


def symbol_to_json(f: PhasePoly) -> dict[str, Any]:
    return {
        "kind": "symbol",
        "text": format_symbol(f),
        "terms": [
            {"q": a, "p": b, "coeff": _coeff_to_json(coeff)}
            for (a, b), coeff in f.monomials()
        ],
    }


def symbol_from_json(obj: dict[str, Any]) -> PhasePoly:
    return PhasePoly(
        {
            (int(term["q"]), int(term["p"])): _coeff_from_json(term["coeff"])
            for term in obj["terms"]
        }
    )


def operator_to_json(A: OpPoly) -> dict[str, Any]:
    return {
        "kind": "operator",
        "text": format_operator(A),
        "terms": [
            {"q": a, "p": b, "coeff": _coeff_to_json(coeff)}
            for (a, b), coeff in A.words()
        ],
    }


def operator_from_json(obj: dict[str, Any]) -> OpPoly:
    return OpPoly(
        {
            (int(term["q"]), int(term["p"])): _coeff_from_json(term["coeff"])
            for term in obj["terms"]
        }
    )


def univariate_to_json(f: UnivariatePoly) -> dict[str, Any]:
    return {
        "kind": "univariate",
        "text": format_univariate(f),
        "terms": [
            {"power": power, **_scalar_fields(scalar)} for power, scalar in f.terms()
        ],
    }


def univariate_from_json(obj: dict[str, Any]) -> UnivariatePoly:
    return UnivariatePoly(
        {int(term["power"]): _scalar_from(term) for term in obj["terms"]}
    )


def _complex_to_json(z: complex | None) -> dict[str, float] | None:
    if z is None:
        return None
    return {"re": z.real, "im": z.imag}


def _complex_from_json(obj: dict[str, float] | None) -> complex | None:
    if obj is None:
        return None
    return complex(obj["re"], obj["im"])


def gap_report_to_json(report: GapReport) -> dict[str, Any]:
    return {
        "quantity": operator_to_json(report.quantity),
        "function": univariate_to_json(report.function),
        "symbol_of_fA": symbol_to_json(report.symbol_of_fA),
        "f_of_symbol": symbol_to_json(report.f_of_symbol),
        "gap": symbol_to_json(report.gap),
        "gap_at_point": _complex_to_json(report.gap_at_point),
    }


def gap_report_from_json(obj: dict[str, Any]) -> GapReport:
    return GapReport(
        quantity=operator_from_json(obj["quantity"]),
        function=univariate_from_json(obj["function"]),
        symbol_of_fA=symbol_from_json(obj["symbol_of_fA"]),
        f_of_symbol=symbol_from_json(obj["f_of_symbol"]),
        gap=symbol_from_json(obj["gap"]),
        gap_at_point=_complex_from_json(obj["gap_at_point"]),
    )


def point_to_json(point: PhasePoint) -> dict[str, float]:
    return {"q0": point.q0, "p0": point.p0}


def point_from_json(obj: dict[str, float]) -> PhasePoint:
    return PhasePoint(float(obj["q0"]), float(obj["p0"]))


def hv_report_to_json(report: HvDispersionReport) -> dict[str, Any]:
    return {
        "point": point_to_json(report.point),
        "quantity": operator_to_json(report.quantity),
        "aprime_reading": report.aprime_reading,
        "assumption_I_reading": report.assumption_I_reading,
        "gap_polynomial": symbol_to_json(report.gap_polynomial),
        "reading_is_negative": report.reading_is_negative,
    }


def hv_report_from_json(obj: dict[str, Any]) -> HvDispersionReport:
    return HvDispersionReport(
        point=point_from_json(obj["point"]),
        quantity=operator_from_json(obj["quantity"]),
        aprime_reading=float(obj["aprime_reading"]),
        assumption_I_reading=float(obj["assumption_I_reading"]),
        gap_polynomial=symbol_from_json(obj["gap_polynomial"]),
    )
