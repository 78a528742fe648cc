"""End-to-end tests of the command-line interface."""

import json

import pytest

from qdeform.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# q-numbers


def test_qnum_symbolic_golden(capsys):
    code, out, _ = run(capsys, "qnum", "--n", "2", "--r", "2", "--symbolic")
    assert code == 0
    assert out == "1 + q^2\n"


def test_qnum_symbolic_negative_index(capsys):
    code, out, _ = run(capsys, "qnum", "--n", "-1", "--r", "-2", "--symbolic")
    assert code == 0
    assert out == "-q^2\n"


def test_qnum_numeric(capsys):
    code, out, _ = run(capsys, "qnum", "--n", "3", "--r", "1", "--q", "1.5")
    assert code == 0
    value = float(out)
    q = 1.5
    expected = (1.0 - q ** 3) / (1.0 - q)
    assert value == pytest.approx(expected, rel=1e-12)


def test_qnum_half_integer_has_no_symbolic_form(capsys):
    code, _, err = run(capsys, "qnum", "--n", "0.5", "--r", "1", "--symbolic")
    assert code == 2
    assert "error:" in err


def test_qnum_numeric_requires_q(capsys):
    code, _, err = run(capsys, "qnum", "--n", "2", "--r", "2")
    assert code == 2
    assert "needs --q" in err


# ---------------------------------------------------------------------------
# representations and tensor products


def test_rep_check_json(capsys):
    code, out, _ = run(capsys, "rep", "--j", "0.5", "--q", "1.5",
                       "--check", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["j"] == 0.5 and payload["dims"] == 2
    assert all(v <= 1e-12 for v in payload["residuals"].values())
    assert payload["casimir"]["eigenvalue"] == pytest.approx(1.14, abs=1e-12)


def test_rep_check_respects_tolerance_override(capsys):
    code, _, err = run(capsys, "rep", "--j", "1", "--q", "1.5",
                       "--check", "--tol", "1e-30")
    assert code == 1
    assert "above tolerance" in err


def test_tensor_decomposition(capsys):
    code, out, _ = run(capsys, "tensor", "--j", "0.5", "--q", "1.2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["dim"] == 4
    blocks = {b["j"]: b for b in payload["blocks"]}
    assert set(blocks) == {0.0, 1.0}
    assert blocks[1.0]["casimir_eigenvalue"] == pytest.approx(2.44, abs=1e-10)
    assert payload["image_residual"] <= 1e-12


def test_tensor_mixed_spins(capsys):
    code, out, _ = run(capsys, "tensor", "--j", "0.5", "--j2", "1",
                       "--q", "1.2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert [b["j"] for b in payload["blocks"]] == [0.5, 1.5]


# ---------------------------------------------------------------------------
# noncommutative plane


def test_plane_normalize_golden(capsys):
    code, out, _ = run(capsys, "plane", "normalize", "--preset", "qheisenberg",
                       "--expr", "p*x")
    assert code == 0
    assert out == "-i + q*x*p\n"


def test_plane_normalize_custom_rule(capsys):
    code, out, _ = run(capsys, "plane", "normalize",
                       "--rule", "y*x -> (1/q)*x*y", "--expr", "y*x")
    assert code == 0
    assert out == "q^(-1)*x*y\n"


def test_plane_normalize_divergent_exits_one(capsys):
    code, _, err = run(capsys, "plane", "normalize", "--preset",
                       "counterexample", "--expr", "y*y*x")
    assert code == 1
    assert "error:" in err


def test_plane_normalize_parse_error_is_usage(capsys):
    code, _, err = run(capsys, "plane", "normalize", "--preset", "manin",
                       "--expr", "x *")
    assert code == 2
    assert "position" in err


def test_plane_flatness_counterexample_golden(capsys):
    code, out, _ = run(capsys, "plane", "flatness", "--preset",
                       "counterexample", "--max-degree", "3")
    assert code == 0
    assert "relation: x^3 + y^3 + x^2*y + x*y^2" in out
    assert "not flat" in out


def test_plane_flatness_manin_json(capsys):
    code, out, _ = run(capsys, "plane", "flatness", "--preset", "manin",
                       "--max-degree", "4", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["counts"] == [1, 2, 3, 4, 5]
    assert payload["is_flat"] is True
    assert payload["relations"] == []


def test_plane_derive(capsys):
    code, out, _ = run(capsys, "plane", "derive", "--preset", "wz-calculus",
                       "--d", "dx", "--expr", "x*y")
    assert code == 0
    assert out == "q^2*y\n"


def test_plane_derive_requires_flags(capsys):
    code, _, err = run(capsys, "plane", "derive", "--preset", "wz-calculus",
                       "--expr", "x*y")
    assert code == 2
    assert "--d" in err


# ---------------------------------------------------------------------------
# phase space


def test_phase_rep_residuals(capsys):
    code, out, _ = run(capsys, "phase", "rep", "--q", "1.5", "--N", "20",
                       "--json")
    assert code == 0
    payload = json.loads(out)
    assert all(v <= 1e-12 for v in payload["residuals"].values())


def test_phase_rep_invalid_params_usage_error(capsys):
    code, _, err = run(capsys, "phase", "rep", "--q", "0.9", "--N", "20")
    assert code == 2
    assert "q > 1" in err


def test_phase_reconstruct(capsys):
    code, out, _ = run(capsys, "phase", "reconstruct", "--q", "1.5",
                       "--N", "40", "--json")
    assert code == 0
    payload = json.loads(out)
    assert all(v <= 1e-10 for v in payload["residuals"].values())


def test_phase_spectrum_exact(capsys):
    code, out, _ = run(capsys, "phase", "spectrum", "--q", "1.5", "--N", "10",
                       "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["defect"] == 0.0
    assert payload["energies"] == sorted(payload["energies"])
    assert 0.5 in payload["energies"]


def test_phase_xspec_json_schema(capsys):
    code, out, _ = run(capsys, "phase", "xspec", "--q", "1.5", "--N", "30",
                       "--json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"q", "N", "s0", "sectors", "residuals",
                            "eigenvalues", "ratios", "ratio_dev_max"}


def test_phase_xspec_single_sector_usage_error(capsys):
    code, _, err = run(capsys, "phase", "xspec", "--q", "1.5", "--N", "30",
                       "--sectors", "plus")
    assert code == 2
    assert "both" in err


def test_phase_qft_matrix_export(capsys, tmp_path):
    target = tmp_path / "kernel.txt"
    code, out, _ = run(capsys, "phase", "qft", "--q", "1.5", "--N", "8",
                       "--out", str(target))
    assert code == 0
    assert out == ""
    rows = target.read_text().strip().splitlines()
    assert len(rows) == 2 * (2 * 8 + 1)
    assert all(len(r.split(",")) == len(rows) for r in rows)


def test_phase_qft_window_too_small_exits_one(capsys):
    code, _, err = run(capsys, "phase", "qft", "--q", "1.5", "--N", "5")
    assert code == 1
    assert "window" in err


# ---------------------------------------------------------------------------
# classical dynamics


def test_classical_verify(capsys):
    code, out, _ = run(capsys, "classical", "verify", "--E", "1", "--h", "0.1",
                       "--t-max", "5", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["max_rel_dev"] <= 1e-3
    assert payload["energy_drift"] <= 1e-8
    assert payload["slope_defect"] <= 1e-12


def test_classical_traj_csv(capsys, tmp_path):
    target = tmp_path / "traj.csv"
    code, out, _ = run(capsys, "classical", "traj", "--E", "1", "--h", "0.1",
                       "--t-max", "2", "--csv", "--out", str(target))
    assert code == 0
    lines = target.read_text().strip().splitlines()
    assert lines[0] == "t,x,p"
    assert len(lines) == 502
    first = lines[1].split(",")
    assert float(first[0]) == 0.0 and float(first[1]) == 0.0
    assert float(first[2]) == pytest.approx(1.415981697641535, rel=1e-10)


def test_classical_period(capsys):
    code, out, _ = run(capsys, "classical", "period", "--E", "1", "--h", "0.1",
                       "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["relative_error"] <= 0.01
    assert payload["maxima"] == 10


def test_classical_period_insufficient_range(capsys):
    code, _, err = run(capsys, "classical", "period", "--E", "1", "--h", "0.1",
                       "--t-start", "50", "--t-end", "60")
    assert code == 1
    assert "maxima" in err


def test_classical_invalid_params(capsys):
    code, _, err = run(capsys, "classical", "verify", "--E", "-1", "--h", "0.1")
    assert code == 2
    assert "positive" in err


# ---------------------------------------------------------------------------
# interface behavior


def test_unknown_command_is_usage_error(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_missing_required_flag_is_usage_error(capsys):
    code, _, _ = run(capsys, "rep", "--q", "1.5")
    assert code == 2


def test_output_is_byte_identical(capsys):
    _, first, _ = run(capsys, "phase", "xspec", "--q", "1.5", "--N", "25",
                      "--json")
    _, second, _ = run(capsys, "phase", "xspec", "--q", "1.5", "--N", "25",
                       "--json")
    assert first == second
    _, third, _ = run(capsys, "tensor", "--j", "0.5", "--q", "1.2", "--json")
    _, fourth, _ = run(capsys, "tensor", "--j", "0.5", "--q", "1.2", "--json")
    assert third == fourth
