"""End-to-end command-line checks via main(argv)."""

import json

import pytest

from phaseqm.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestSymbolicCommands:
    def test_star_frozen_example(self, capsys):
        rc, out, _ = run(capsys, "star", "q", "p")
        assert rc == 0
        assert out == "q*p + (1/2)*i*hbar\n"

    def test_star_keeps_hbar_symbolic(self, capsys):
        # the flag scales numerics only; symbolic output stays graded
        rc, out, _ = run(capsys, "star", "q", "p", "--hbar", "1/2")
        assert rc == 0
        assert out == "q*p + (1/2)*i*hbar\n"

    def test_bracket(self, capsys):
        rc, out, _ = run(capsys, "bracket", "q^2", "p^2")
        assert rc == 0
        assert out == "4*i*hbar*q*p\n"

    def test_normal_form(self, capsys):
        rc, out, _ = run(capsys, "normal-form", "P*Q")
        assert rc == 0
        assert out == "Q*P - i*hbar\n"

    def test_quantize(self, capsys):
        rc, out, _ = run(capsys, "quantize", "q*p")
        assert rc == 0
        assert out == "Q*P - (1/2)*i*hbar\n"

    def test_dequantize(self, capsys):
        rc, out, _ = run(capsys, "dequantize", "Q*P")
        assert rc == 0
        assert out == "q*p + (1/2)*i*hbar\n"

    def test_quantize_dequantize_inverse(self, capsys):
        rc, out, _ = run(capsys, "dequantize", "(Q^2 + P^2)/2")
        assert rc == 0
        assert out == "(1/2)*q^2 + (1/2)*p^2\n"


class TestGapCommand:
    def test_square_gap_lines(self, capsys):
        rc, out, _ = run(capsys, "gap", "--op", "(Q^2+P^2)/2", "--f", "x^2")
        assert rc == 0
        assert "gap:              -(1/4)*hbar^2" in out
        assert "gap at" not in out

    def test_gap_at_point(self, capsys):
        rc, out, _ = run(capsys, "gap", "--op", "(Q^2+P^2)/2", "--f", "x^2", "--at", "1,1")
        assert rc == 0
        assert "gap at (1, 1): -0.25" in out

    def test_gap_scales_with_hbar(self, capsys):
        rc, out, _ = run(
            capsys, "gap", "--op", "(Q^2+P^2)/2", "--f", "x^2", "--at", "1,1",
            "--hbar", "1/2",
        )
        assert rc == 0
        assert "gap at (1, 1): -0.0625" in out

    def test_linear_f_has_no_gap(self, capsys):
        rc, out, _ = run(capsys, "gap", "--op", "(Q^2+P^2)/2", "--f", "3*x - 2")
        assert rc == 0
        assert "gap:              0" in out

    def test_gap_json_flags_zero_gap(self, capsys):
        rc, out, _ = run(capsys, "gap", "--op", "Q", "--f", "x", "--json")
        assert rc == 0
        envelope = json.loads(out)
        assert envelope["diagnostics"]["gap_is_zero"] is True


class TestNumericCommands:
    def test_expect_frozen_example(self, capsys):
        rc, out, _ = run(capsys, "expect", "--state", "fock:0", "--op", "(Q^2+P^2)/2")
        assert rc == 0
        assert out == "0.5\n"

    def test_expect_mixture(self, capsys):
        rc, out, _ = run(
            capsys, "expect", "--state", "mix:1/2:0,1/2:1", "--op", "(Q^2+P^2)/2"
        )
        assert rc == 0
        assert out == "1\n"

    def test_dispersion_eigenstate(self, capsys):
        rc, out, _ = run(capsys, "dispersion", "--state", "fock:1", "--op", "(Q^2+P^2)/2")
        assert rc == 0
        assert float(out) == pytest.approx(0.0, abs=1e-9)

    def test_dispersion_mixture(self, capsys):
        rc, out, _ = run(
            capsys, "dispersion", "--state", "mix:1/2:0,1/2:1", "--op", "(Q^2+P^2)/2"
        )
        assert rc == 0
        assert out == "0.25\n"

    def test_expect_half_hbar(self, capsys):
        rc, out, _ = run(
            capsys, "expect", "--state", "fock:0", "--op", "(Q^2+P^2)/2", "--hbar", "1/2"
        )
        assert rc == 0
        assert out == "0.25\n"


class TestHvCommand:
    def test_default_square(self, capsys):
        rc, out, _ = run(capsys, "hv", "--point", "1,1", "--op", "(Q^2+P^2)/2")
        assert rc == 0
        assert "A'-route reading:     0\n" in out
        assert "assumption-I reading: -0.25\n" in out
        assert "gap polynomial:       -(1/4)*hbar^2\n" in out
        assert "note: the assumption-I reading is negative" in out

    def test_linear_quantity(self, capsys):
        rc, out, _ = run(capsys, "hv", "--point", "-2,3", "--op", "Q")
        assert rc == 0
        assert "assumption-I reading: 0\n" in out
        assert "note:" not in out

    def test_custom_function(self, capsys):
        rc, out, _ = run(capsys, "hv", "--point", "1,1", "--op", "Q", "--f", "x^3 - x")
        assert rc == 0
        assert "assumption-I reading: 0\n" in out

    def test_json_includes_sign_flag(self, capsys):
        rc, out, _ = run(capsys, "hv", "--point", "1,1", "--op", "(Q^2+P^2)/2", "--json")
        assert rc == 0
        envelope = json.loads(out)
        assert envelope["diagnostics"]["reading_is_negative"] is True
        assert envelope["result"]["aprime_reading"] == 0.0


class TestWignerCommand:
    def test_writes_csv_and_reports_integral(self, capsys, tmp_path):
        out_path = tmp_path / "w.csv"
        rc, out, _ = run(
            capsys, "wigner", "--state", "fock:0", "--out", str(out_path),
            "--grid", "-6:6:41",
        )
        assert rc == 0
        assert f"wrote {out_path} (41x41 samples)" in out
        lines = out_path.read_text().splitlines()
        assert lines[0] == "q,p,w"
        assert len(lines) == 1 + 41 * 41

    def test_plot_written(self, capsys, tmp_path):
        out_path = tmp_path / "w.csv"
        png_path = tmp_path / "w.png"
        rc, out, _ = run(
            capsys, "wigner", "--state", "mix:1/2:0,1/2:1", "--out", str(out_path),
            "--plot", str(png_path), "--grid", "-6:6:41",
        )
        assert rc == 0
        assert f"wrote {png_path}" in out
        assert png_path.read_bytes()[:4] == b"\x89PNG"

    def test_asymmetric_grid(self, capsys, tmp_path):
        out_path = tmp_path / "w.csv"
        rc, out, _ = run(
            capsys, "wigner", "--state", "fock:1", "--out", str(out_path),
            "--grid", "-7:7:31,-5:5:21",
        )
        assert rc == 0
        assert "(31x21 samples)" in out
        assert len(out_path.read_text().splitlines()) == 1 + 31 * 21


class TestVnDemo:
    def test_contains_required_identity_line(self, capsys):
        rc, out, _ = run(capsys, "vn-demo")
        assert rc == 0
        assert "tilde(H^2) = H^2 - 1/4\n" in out

    def test_shows_both_routes(self, capsys):
        rc, out, _ = run(capsys, "vn-demo")
        assert rc == 0
        assert "gap:               -(1/4)*hbar^2" in out
        assert "A'-route reading:     0 (exact)" in out
        assert "assumption-I reading: -0.25" in out

    def test_deterministic(self, capsys):
        rc1, out1, _ = run(capsys, "vn-demo")
        rc2, out2, _ = run(capsys, "vn-demo")
        assert (rc1, rc2) == (0, 0)
        assert out1 == out2


class TestJsonEnvelope:
    def test_fields_and_determinism(self, capsys):
        rc1, out1, _ = run(capsys, "star", "q", "p", "--json")
        rc2, out2, _ = run(capsys, "star", "q", "p", "--json")
        assert (rc1, rc2) == (0, 0)
        assert out1 == out2
        envelope = json.loads(out1)
        assert set(envelope) == {"command", "hbar", "result", "diagnostics"}
        assert envelope["command"] == "star"
        assert envelope["hbar"] == "1"
        assert envelope["result"]["text"] == "q*p + (1/2)*i*hbar"

    def test_hbar_echoed_as_rational(self, capsys):
        rc, out, _ = run(
            capsys, "expect", "--state", "fock:0", "--op", "Q^2", "--hbar", "1/2",
            "--json",
        )
        assert rc == 0
        envelope = json.loads(out)
        assert envelope["hbar"] == "1/2"
        assert envelope["result"] == pytest.approx(0.25)


class TestExitCodes:
    def test_parse_error_is_usage(self, capsys):
        rc, _, err = run(capsys, "dequantize", "q")
        assert rc == 1
        assert "parse error" in err

    def test_bad_state_spec_is_usage(self, capsys):
        rc, _, err = run(capsys, "expect", "--state", "fock:99", "--op", "Q")
        assert rc == 1
        assert "bad state spec" in err

    def test_unknown_state_prefix_is_usage(self, capsys):
        rc, _, err = run(capsys, "expect", "--state", "coherent:1", "--op", "Q")
        assert rc == 1
        assert "unrecognized state spec" in err

    def test_missing_argument_is_usage(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["gap", "--op", "Q"])
        assert excinfo.value.code == 1

    def test_unknown_command_is_usage(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["frobnicate"])
        assert excinfo.value.code == 1

    def test_bad_hbar_is_usage(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["star", "q", "p", "--hbar", "0"])
        assert excinfo.value.code == 1

    def test_non_hermitian_trace_is_contract_violation(self, capsys):
        rc, _, err = run(capsys, "expect", "--state", "fock:0", "--op", "Q*P")
        assert rc == 2
        assert "contract violation" in err


class TestNegativeValueFlags:
    def test_grid_with_leading_minus(self, capsys, tmp_path):
        out_path = tmp_path / "w.csv"
        rc, _, _ = run(
            capsys, "wigner", "--state", "fock:0", "--out", str(out_path),
            "--grid", "-4:4:21",
        )
        assert rc == 0

    def test_point_with_leading_minus(self, capsys):
        rc, out, _ = run(capsys, "hv", "--point", "-1,-2", "--op", "Q^2")
        assert rc == 0
        assert "point:                (-1, -2)" in out
