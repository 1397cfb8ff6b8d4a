"""Command-line surface.

Every library operation is reachable as a subcommand.  Outputs are
deterministic: identical argv produces byte-identical stdout.  Exit codes:
0 on success, 1 for usage or expression errors, 2 when a numerical
contract is violated (truncation instability, imaginary residue,
inadequate grid).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from phaseqm.algebra import PhasePoint, poly_eval
from phaseqm.ensembles import (
    HvDispersionReport,
    hv_dispersion,
)
from phaseqm.errors import (
    DimensionError,
    ExprError,
    GridError,
    NumericalContractError,
    StateError,
    TruncationError,
)
from phaseqm.fock import DensityMatrix, dispersion, fock_state, mixture, trace_expectation
from phaseqm.moyal import assumption_I_gap, dequantize, moyal_bracket, star
from phaseqm.operators import op_mul, weyl_quantize
from phaseqm.parsing import (
    format_operator,
    format_symbol,
    format_univariate,
    parse_operator,
    parse_symbol,
    parse_univariate,
)
from phaseqm.plotting import render_wigner_figure
from phaseqm.serialize import (
    gap_report_to_json,
    hv_report_to_json,
    operator_to_json,
    symbol_to_json,
)
from phaseqm.wigner import GridSpec, wigner_grid

USAGE_EXIT = 1
CONTRACT_EXIT = 2


class UsageError(Exception):
    """Malformed command input detected after argument parsing."""


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with 2 on usage problems; this surface reserves 2 for
    # numerical-contract violations.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _fmt(value: float) -> str:
    return format(value, ".12g")


def _fmt_complex(z: complex) -> str:
    if z.imag == 0:
        return _fmt(z.real)
    sign = "+" if z.imag > 0 else "-"
    return f"{_fmt(z.real)}{sign}{_fmt(abs(z.imag))}*i"


def _hbar_value(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc
    if value <= 0:
        raise argparse.ArgumentTypeError("hbar must be positive")
    return value


def _dim_value(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 2:
        raise argparse.ArgumentTypeError("dimension must be at least 2")
    return value


def _axis_triple(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected min:max:count, got {text!r}")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad axis spec {text!r}") from exc


def _grid_value(text: str) -> GridSpec:
    axes = text.split(",")
    if len(axes) == 1:
        axes = [axes[0], axes[0]]
    if len(axes) != 2:
        raise argparse.ArgumentTypeError(
            f"expected one or two axis triples, got {text!r}"
        )
    (q_min, q_max, n_q) = _axis_triple(axes[0])
    (p_min, p_max, n_p) = _axis_triple(axes[1])
    try:
        return GridSpec(q_min, q_max, n_q, p_min, p_max, n_p)
    except GridError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _point_value(text: str) -> PhasePoint:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected q0,p0 got {text!r}")
    try:
        return PhasePoint(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad point {text!r}") from exc


def _build_state(spec_text: str, dim: int, hbar: Fraction) -> DensityMatrix:
    """States come as `fock:n` or `mix:w1:n1,w2:n2,...`."""
    try:
        if spec_text.startswith("fock:"):
            level = int(spec_text[len("fock:") :])
            return fock_state(level, dim, hbar)
        if spec_text.startswith("mix:"):
            weights = []
            levels = []
            for piece in spec_text[len("mix:") :].split(","):
                w_text, _, n_text = piece.partition(":")
                if not n_text:
                    raise UsageError(f"mixture component {piece!r} is not w:n")
                weights.append(Fraction(w_text))
                levels.append(int(n_text))
            return mixture(weights, [fock_state(n, dim, hbar) for n in levels])
    except (ValueError, ZeroDivisionError, StateError, DimensionError) as exc:
        raise UsageError(f"bad state spec {spec_text!r}: {exc}") from exc
    raise UsageError(
        f"unrecognized state spec {spec_text!r}; use fock:n or mix:w1:n1,w2:n2,..."
    )


# -- subcommand handlers -------------------------------------------------
# Each returns (json result, plain text lines, diagnostics).


def _cmd_dequantize(args):
    symbol = dequantize(parse_operator(args.expr))
    return symbol_to_json(symbol), [format_symbol(symbol)], {}


def _cmd_quantize(args):
    operator = weyl_quantize(parse_symbol(args.expr))
    return operator_to_json(operator), [format_operator(operator)], {}


def _cmd_star(args):
    result = star(parse_symbol(args.f), parse_symbol(args.g))
    return symbol_to_json(result), [format_symbol(result)], {}


def _cmd_bracket(args):
    result = moyal_bracket(parse_symbol(args.f), parse_symbol(args.g))
    return symbol_to_json(result), [format_symbol(result)], {}


def _cmd_normal_form(args):
    operator = parse_operator(args.expr)
    return operator_to_json(operator), [format_operator(operator)], {}


def _cmd_gap(args):
    quantity = parse_operator(args.op)
    function = parse_univariate(args.f)
    report = assumption_I_gap(quantity, function, args.at, args.hbar)
    lines = [
        f"quantity:         {format_operator(report.quantity)}",
        f"f(x):             {format_univariate(report.function)}",
        f"symbol of f(A):   {format_symbol(report.symbol_of_fA)}",
        f"f of symbol:      {format_symbol(report.f_of_symbol)}",
        f"gap:              {format_symbol(report.gap)}",
    ]
    if report.gap_at_point is not None:
        lines.append(
            f"gap at ({_fmt(args.at.q0)}, {_fmt(args.at.p0)}): "
            f"{_fmt_complex(report.gap_at_point)}"
        )
    diagnostics = {"gap_is_zero": report.gap.is_zero}
    return gap_report_to_json(report), lines, diagnostics


def _cmd_expect(args):
    state = _build_state(args.state, args.dim, args.hbar)
    value = trace_expectation(state, parse_operator(args.op))
    diagnostics = {"dim": args.dim, "state": args.state}
    return value, [_fmt(value)], diagnostics


def _cmd_dispersion(args):
    state = _build_state(args.state, args.dim, args.hbar)
    value = dispersion(state, parse_operator(args.op))
    diagnostics = {"dim": args.dim, "state": args.state}
    return value, [_fmt(value)], diagnostics


def _cmd_wigner(args):
    state = _build_state(args.state, args.dim, args.hbar)
    grid = wigner_grid(state, args.grid, args.hbar)
    grid.to_csv(args.out)
    integral = grid.integral()
    lines = [
        f"wrote {args.out} ({args.grid.n_q}x{args.grid.n_p} samples)",
        f"integral: {_fmt(integral)}",
    ]
    if args.plot:
        render_wigner_figure(grid, args.plot, title=f"state {args.state}")
        lines.append(f"wrote {args.plot}")
    result = {
        "csv": args.out,
        "plot": args.plot,
        "integral": integral,
        "n_q": args.grid.n_q,
        "n_p": args.grid.n_p,
    }
    diagnostics = {"dim": args.dim, "state": args.state}
    return result, lines, diagnostics


def _hv_report(args) -> HvDispersionReport:
    quantity = parse_operator(args.op)
    if args.f is None:
        return hv_dispersion(args.point, quantity, args.hbar)
    function = parse_univariate(args.f)
    gap = assumption_I_gap(quantity, function, None, args.hbar).gap
    value = gap.eval_exact(
        Fraction(args.point.q0), Fraction(args.point.p0), args.hbar
    )
    if not value.is_real:
        raise NumericalContractError(
            f"gap value {value} is not real; quantity not Hermitian?"
        )
    return HvDispersionReport(
        point=args.point,
        quantity=quantity,
        aprime_reading=0.0,
        assumption_I_reading=float(value.re),
        gap_polynomial=gap,
    )


def _cmd_hv(args):
    report = _hv_report(args)
    lines = [
        f"point:                ({_fmt(report.point.q0)}, {_fmt(report.point.p0)})",
        f"quantity:             {format_operator(report.quantity)}",
        f"A'-route reading:     {_fmt(report.aprime_reading)}",
        f"assumption-I reading: {_fmt(report.assumption_I_reading)}",
        f"gap polynomial:       {format_symbol(report.gap_polynomial)}",
    ]
    if report.reading_is_negative:
        lines.append("note: the assumption-I reading is negative")
    diagnostics = {"reading_is_negative": report.reading_is_negative}
    return hv_report_to_json(report), lines, diagnostics


def _cmd_vn_demo(args):
    operator = parse_operator("(Q^2+P^2)/2")
    symbol = dequantize(operator)
    square = op_mul(operator, operator)
    symbol_of_square = dequantize(square)
    square_of_symbol = symbol * symbol
    gap = symbol_of_square - square_of_symbol
    point = PhasePoint(1.0, 1.0)
    report = hv_dispersion(point, operator, args.hbar)
    state = fock_state(0, args.dim, args.hbar)
    witness_value = dispersion(state, parse_operator("Q"))
    header = "dispersion-free values in the phase-space formulation"
    lines = [
        header,
        "=" * len(header),
        "",
        f"operator:          {format_operator(operator)}",
        f"symbol:            {format_symbol(symbol)}",
        f"operator square:   {format_operator(square)}",
        f"symbol of square:  {format_symbol(symbol_of_square)}",
        f"square of symbol:  {format_symbol(square_of_symbol)}",
        f"gap:               {format_symbol(gap)}",
        "",
        "at hbar = 1:",
        "tilde(H^2) = H^2 - 1/4",
        "",
        f"pointwise assignment at ({_fmt(point.q0)}, {_fmt(point.p0)}), "
        f"hbar = {args.hbar}:",
        f"  A'-route reading:     {_fmt(report.aprime_reading)} (exact)",
        f"  assumption-I reading: {_fmt(report.assumption_I_reading)}",
        "",
        f"Hilbert-space contrast (dim {args.dim}): the ground state has",
        f"  dispersion {_fmt(witness_value)} in Q, so no state there is",
        "  dispersion-free.",
        "",
        "verdict: evaluating symbols at a phase-space point assigns every",
        "quantity a sharp value, and the A'-route dispersion vanishes",
        "identically.  The price is visible above: the symbol of the",
        "squared operator is not the square of the symbol, so the",
        "function-to-operator correspondence for polynomial quantities is",
        "the assumption such a value assignment gives up.",
    ]
    result = {
        "operator": operator_to_json(operator),
        "symbol_of_square": symbol_to_json(symbol_of_square),
        "square_of_symbol": symbol_to_json(square_of_symbol),
        "gap": symbol_to_json(gap),
        "identity_at_unit_hbar": "tilde(H^2) = H^2 - 1/4",
        "hv": hv_report_to_json(report),
        "hilbert_witness": {
            "quantity": operator_to_json(parse_operator("Q")),
            "dispersion": witness_value,
        },
    }
    diagnostics = {"dim": args.dim}
    return result, lines, diagnostics


# -- parser assembly -----------------------------------------------------


def build_parser() -> _ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument(
        "--hbar", type=_hbar_value, default=Fraction(1), help="rational hbar (default 1)"
    )
    common.add_argument(
        "--dim", type=_dim_value, default=64, help="Fock truncation dimension (default 64)"
    )
    common.add_argument(
        "--grid",
        type=_grid_value,
        default=GridSpec(),
        help="qmin:qmax:nq[,pmin:pmax:np] sampling window (default -8:8:257 both axes)",
    )
    common.add_argument("--json", action="store_true", help="emit a JSON envelope")

    parser = _ArgumentParser(
        prog="phaseqm",
        description="Exact phase-space quantum mechanics with a Fock-basis oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("dequantize", _cmd_dequantize, "operator expression -> phase-space symbol")
    p.add_argument("expr", help="operator expression, e.g. '(Q^2+P^2)/2'")

    p = add("quantize", _cmd_quantize, "symbol expression -> symmetric-ordered operator")
    p.add_argument("expr", help="symbol expression, e.g. 'q*p'")

    p = add("star", _cmd_star, "star product of two symbols")
    p.add_argument("f")
    p.add_argument("g")

    p = add("bracket", _cmd_bracket, "star antisymmetrization of two symbols")
    p.add_argument("f")
    p.add_argument("g")

    p = add("normal-form", _cmd_normal_form, "canonical normal form of an operator expression")
    p.add_argument("expr")

    p = add("gap", _cmd_gap, "compare f(operator) against f(symbol)")
    p.add_argument("--op", required=True, help="operator expression")
    p.add_argument("--f", required=True, help="univariate polynomial in x")
    p.add_argument("--at", type=_point_value, default=None, help="evaluation point q0,p0")

    p = add("expect", _cmd_expect, "trace expectation of an operator in a state")
    p.add_argument("--state", required=True, help="fock:n or mix:w1:n1,w2:n2,...")
    p.add_argument("--op", required=True)

    p = add("dispersion", _cmd_dispersion, "trace dispersion of an operator in a state")
    p.add_argument("--state", required=True)
    p.add_argument("--op", required=True)

    p = add("wigner", _cmd_wigner, "sample the quasi-probability grid to CSV")
    p.add_argument("--state", required=True)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--plot", default=None, help="optional PNG heat-map path")

    p = add("hv", _cmd_hv, "pointwise value-assignment dispersion report")
    p.add_argument("--point", type=_point_value, required=True, help="q0,p0")
    p.add_argument("--op", required=True)
    p.add_argument("--f", default=None, help="univariate polynomial (default x^2)")

    add("vn-demo", _cmd_vn_demo, "end-to-end correspondence-gap walkthrough")

    return parser


# Flags whose values may start with "-" (negative coordinates); argparse
# would otherwise read such a value as another option.
_VALUE_FLAGS = {"--grid", "--at", "--point"}


def _normalize_argv(argv: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    raw = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(_normalize_argv(raw))
    try:
        result, lines, diagnostics = args.handler(args)
    except ExprError as exc:
        print(f"phaseqm: parse error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except UsageError as exc:
        print(f"phaseqm: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (TruncationError, NumericalContractError, GridError, DimensionError, StateError) as exc:
        print(f"phaseqm: contract violation: {exc}", file=sys.stderr)
        return CONTRACT_EXIT
    if args.json:
        envelope = {
            "command": args.command,
            "hbar": str(args.hbar),
            "result": result,
            "diagnostics": diagnostics,
        }
        print(json.dumps(envelope, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
