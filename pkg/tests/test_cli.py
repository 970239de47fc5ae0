import json
import subprocess
import sys

import numpy as np
import pytest

from starprod.cli import main
from starprod.operator_space import PAULI_X, PAULI_Y, PAULI_Z
from starprod.serialization import (
    load_kernel,
    load_operator,
    load_scheme,
    load_vector,
    matrix_to_json,
    save_operator,
    save_scheme,
    save_vector,
)
from starprod.catalog import matrix_units_scheme, mub_qubit_scheme
from starprod.scheme import Scheme, dequantization_matrix


@pytest.fixture
def emit(tmp_path):
    def _emit(name, *flags):
        out = tmp_path / f"{name.replace(' ', '_')}_{len(list(tmp_path.iterdir()))}.json"
        code = main(["emit", name, *flags, "-o", str(out)])
        assert code == 0
        return out

    return _emit


class TestEmit:
    def test_sic_povm_effects_sum_to_identity(self, emit):
        s = load_scheme(str(emit("sic-qubit", "--normalization", "povm")))
        assert np.abs(s.dequantizers.sum(axis=0) - np.eye(2)).max() <= 1e-12

    def test_livine_matches_phase_space_quartet(self, emit):
        s = load_scheme(str(emit("livine")))
        expected = np.array([[2, 1 - 1j], [1 + 1j, 0]], dtype=complex) / 4
        assert np.abs(s.dequantizers[0] - expected).max() <= 1e-15
        assert np.array_equal(s.quantizers, 2 * s.dequantizers)

    def test_mub_prime_p3(self, emit):
        s = load_scheme(str(emit("mub-prime", "--p", "3")))
        assert (s.d, s.n_points) == (3, 12)

    def test_matrix_units_d3(self, emit):
        s = load_scheme(str(emit("matrix-units", "--d", "3")))
        assert np.array_equal(dequantization_matrix(s), np.eye(9))

    def test_wh_sic_default_fiducials(self, emit):
        for d in ("2", "3"):
            s = load_scheme(str(emit("wh-sic", "--d", d)))
            assert s.n_points == int(d) ** 2

    def test_random_povm_seeded(self, emit):
        a = load_scheme(str(emit("random-povm", "--seed", "5")))
        b = load_scheme(str(emit("random-povm", "--seed", "5")))
        assert np.array_equal(a.dequantizers, b.dequantizers)

    def test_unknown_scheme_exits_2(self, tmp_path):
        assert main(["emit", "nonesuch", "-o", str(tmp_path / "x.json")]) == 2

    def test_non_prime_exits_1(self, tmp_path):
        assert main(["emit", "mub-prime", "--p", "4", "-o", str(tmp_path / "x.json")]) == 1


class TestClassify:
    def test_livine_report(self, emit, tmp_path, capsys):
        scheme_path = emit("livine")
        report_path = tmp_path / "livine.report.json"
        code = main(["classify", str(scheme_path), "--report", str(report_path)])
        assert code == 0
        out = capsys.readouterr().out
        assert "self-dual, c = 0.5" in out
        assert "NOT a POVM" in out
        report = json.loads(report_path.read_text())["report"]
        assert report["self_dual_coefficient"] == pytest.approx(0.5)
        assert report["povm"]["min_effect_eigenvalue"] == pytest.approx(
            (1 - np.sqrt(3)) / 4, abs=1e-12
        )

    def test_sic_povm_report(self, emit, tmp_path, capsys):
        scheme_path = emit("sic-qubit", "--normalization", "povm")
        code = main(["classify", str(scheme_path), "--report", str(tmp_path / "r.json")])
        assert code == 0
        out = capsys.readouterr().out
        assert "minimal, tomographic" in out
        assert "POVM: yes" in out
        assert "1.732050808" in out

    def test_underfilled_report(self, tmp_path, capsys):
        s = Scheme(dequantizers=mub_qubit_scheme().dequantizers[:3], name="under")
        path = tmp_path / "under.json"
        save_scheme(s, str(path))
        code = main(["classify", str(path), "--report", str(tmp_path / "r.json")])
        assert code == 0
        out = capsys.readouterr().out
        assert "underfilled, not tomographic" in out
        assert "quantizers undefined" in out

    def test_default_report_path(self, emit, tmp_path, capsys):
        scheme_path = emit("pauli")
        assert main(["classify", str(scheme_path)]) == 0
        assert (tmp_path / (scheme_path.name + ".report.json")).exists()

    def test_pauli_basis_flag_matches_rowstacking(self, emit, tmp_path):
        scheme_path = emit("livine")
        r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
        assert main(["classify", str(scheme_path), "--report", str(r1)]) == 0
        assert (
            main(["classify", str(scheme_path), "--basis", "pauli", "--report", str(r2)])
            == 0
        )
        a = json.loads(r1.read_text())["report"]
        b = json.loads(r2.read_text())["report"]
        assert a["cardinality"] == b["cardinality"]
        assert a["rank"] == b["rank"]
        assert a["condition_number"] == pytest.approx(b["condition_number"], abs=1e-10)

    def test_basis_file(self, emit, tmp_path):
        scheme_path = emit("livine")
        ops = np.stack([np.eye(2), PAULI_X, PAULI_Y, PAULI_Z]) / np.sqrt(2)
        basis_path = tmp_path / "basis.json"
        basis_path.write_text(
            json.dumps({"operators": [matrix_to_json(op) for op in ops]})
        )
        code = main(
            [
                "classify",
                str(scheme_path),
                "--basis-file",
                str(basis_path),
                "--report",
                str(tmp_path / "r.json"),
            ]
        )
        assert code == 0

    def test_invalid_basis_file_exits_2(self, emit, tmp_path):
        scheme_path = emit("livine")
        ops = np.stack([np.eye(2), PAULI_X, PAULI_X, PAULI_Z]) / np.sqrt(2)
        basis_path = tmp_path / "basis.json"
        basis_path.write_text(
            json.dumps({"operators": [matrix_to_json(op) for op in ops]})
        )
        code = main(["classify", str(scheme_path), "--basis-file", str(basis_path)])
        assert code == 2

    def test_malformed_scheme_exits_2(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{")
        assert main(["classify", str(path)]) == 2

    def test_missing_file_exits_2(self, tmp_path):
        assert main(["classify", str(tmp_path / "none.json")]) == 2


class TestQuantize:
    def test_sic_povm_duals(self, emit, tmp_path):
        scheme_path = emit("sic-qubit", "--normalization", "povm")
        out = tmp_path / "sic_q.json"
        assert main(["quantize", str(scheme_path), "-o", str(out)]) == 0
        s = load_scheme(str(out))
        expected = 3 * 2 * s.dequantizers - np.eye(2)  # 3 Pi - I with Pi = 2 U
        assert np.abs(s.quantizers - expected).max() <= 1e-12

    def test_mub_completeness(self, emit, tmp_path, capsys):
        scheme_path = emit("mub-qubit")
        out = tmp_path / "mub_q.json"
        assert main(["quantize", str(scheme_path), "-o", str(out)]) == 0
        assert "completeness residual" in capsys.readouterr().out
        s = load_scheme(str(out))
        assert s.quantizers is not None and s.n_points == 6
        # The printed residual is mirrored in a machine-readable report.
        report = json.loads((tmp_path / "mub_q.json.report.json").read_text())
        assert report["completeness_residual"] <= 1e-10

    def test_underfilled_exits_1(self, tmp_path):
        s = Scheme(dequantizers=mub_qubit_scheme().dequantizers[:3])
        path = tmp_path / "under.json"
        save_scheme(s, str(path))
        assert main(["quantize", str(path), "-o", str(tmp_path / "out.json")]) == 1

    def test_valid_gauge(self, emit, tmp_path):
        scheme_path = emit("mub-qubit")
        u = dequantization_matrix(load_scheme(str(scheme_path)))
        _, _, vh = np.linalg.svd(u)
        null = vh[-1].conj()
        g = np.outer(np.ones(4), null.conj())
        gauge_path = tmp_path / "gauge.json"
        gauge_path.write_text(json.dumps({"matrix": matrix_to_json(g)}))
        out = tmp_path / "gauged.json"
        code = main(["quantize", str(scheme_path), "--gauge", str(gauge_path), "-o", str(out)])
        assert code == 0

    def test_invalid_gauge_exits_1(self, emit, tmp_path, rng):
        scheme_path = emit("mub-qubit")
        g = rng.standard_normal((4, 6))
        gauge_path = tmp_path / "gauge.json"
        gauge_path.write_text(json.dumps({"matrix": matrix_to_json(g)}))
        code = main(
            [
                "quantize",
                str(scheme_path),
                "--gauge",
                str(gauge_path),
                "-o",
                str(tmp_path / "out.json"),
            ]
        )
        assert code == 1


class TestSymbolReconstruct:
    def test_symbol_of_matrix_unit(self, tmp_path):
        scheme_path = tmp_path / "mu.json"
        save_scheme(matrix_units_scheme(2), str(scheme_path))
        op_path = tmp_path / "op.json"
        save_operator(np.array([[1, 0], [0, 0]], dtype=complex), str(op_path))
        out = tmp_path / "symbol.json"
        assert main(["symbol", str(scheme_path), str(op_path), "-o", str(out)]) == 0
        assert np.array_equal(load_vector(str(out)), np.array([1, 0, 0, 0], dtype=complex))

    def test_round_trip_through_files(self, emit, tmp_path, rng):
        scheme_path = emit("mub-qubit")
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        op_path = tmp_path / "op.json"
        save_operator(a, str(op_path))
        sym_path = tmp_path / "sym.json"
        assert main(["symbol", str(scheme_path), str(op_path), "-o", str(sym_path)]) == 0
        back_path = tmp_path / "back.json"
        assert (
            main(["reconstruct", str(scheme_path), str(sym_path), "-o", str(back_path)])
            == 0
        )
        assert np.abs(load_operator(str(back_path)) - a).max() <= 1e-10

    def test_wrong_length_symbol_exits_2(self, emit, tmp_path):
        scheme_path = emit("mub-qubit")
        sym_path = tmp_path / "sym.json"
        save_vector(np.zeros(5, dtype=complex), str(sym_path))
        code = main(
            ["reconstruct", str(scheme_path), str(sym_path), "-o", str(tmp_path / "o.json")]
        )
        assert code == 2

    def test_dimension_mismatch_exits_2(self, emit, tmp_path):
        scheme_path = emit("mub-qubit")
        op_path = tmp_path / "op3.json"
        save_operator(np.eye(3, dtype=complex), str(op_path))
        assert main(["symbol", str(scheme_path), str(op_path), "-o", str(tmp_path / "s.json")]) == 2


class TestKernel:
    def test_matrix_units_kernel(self, tmp_path, capsys):
        scheme_path = tmp_path / "mu.json"
        save_scheme(matrix_units_scheme(2), str(scheme_path))
        out = tmp_path / "kernel.json"
        assert main(["kernel", str(scheme_path), "--assoc-check", "-o", str(out)]) == 0
        text = capsys.readouterr().out
        assert "associativity residual" in text
        d, values = load_kernel(str(out))
        assert d == 2 and values.shape == (4, 4, 4)
        assert json.loads(out.read_text())["associativity_residual"] <= 1e-12

    def test_underfilled_exits_1(self, tmp_path):
        s = Scheme(dequantizers=mub_qubit_scheme().dequantizers[:3])
        path = tmp_path / "under.json"
        save_scheme(s, str(path))
        assert main(["kernel", str(path), "-o", str(tmp_path / "k.json")]) == 1


class TestIntertwine:
    def test_pauli_to_pauli_identity(self, emit, tmp_path, rng):
        p1 = emit("pauli")
        op_path = tmp_path / "op.json"
        save_operator(rng.standard_normal((2, 2)).astype(complex), str(op_path))
        report_path = tmp_path / "inter.json"
        code = main(
            ["intertwine", str(p1), str(p1), str(op_path), "--report", str(report_path)]
        )
        assert code == 0
        report = json.loads(report_path.read_text())
        forward = np.array(
            [[complex(re, im) for re, im in row] for row in report["forward"]]
        )
        assert np.abs(forward - np.eye(4)).max() <= 1e-12
        assert report["roundtrip_residual"] <= 1e-12

    def test_dimension_mismatch_exits_2(self, emit, tmp_path):
        a = emit("pauli")
        b = emit("mub-prime", "--p", "3")
        op_path = tmp_path / "op.json"
        save_operator(np.eye(2, dtype=complex), str(op_path))
        assert main(["intertwine", str(a), str(b), str(op_path)]) == 2


class TestVerify:
    def test_table_suite(self, tmp_path, capsys):
        report_path = tmp_path / "verify.json"
        code = main(["verify", "--suite", "table", "--report", str(report_path)])
        assert code == 0
        out = capsys.readouterr().out
        assert "PASS table-rows-1-3" in out
        assert "PASS table-rows-4-6" in out
        payload = json.loads(report_path.read_text())
        assert payload["passed"] is True
        assert {c["name"] for c in payload["checks"]} == {
            "table-rows-1-3",
            "table-rows-4-6",
        }

    def test_random_povm_suite_small(self, tmp_path):
        report_path = tmp_path / "verify.json"
        code = main(
            ["verify", "--suite", "random-povm", "--seeds", "25", "--report", str(report_path)]
        )
        assert code == 0
        checks = json.loads(report_path.read_text())["checks"]
        assert checks[0]["details"]["seeds"] == 25

    def test_reports_are_deterministic(self, tmp_path):
        r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
        assert main(["verify", "--suite", "propositions", "--seeds", "10", "--report", str(r1)]) == 0
        assert main(["verify", "--suite", "propositions", "--seeds", "10", "--report", str(r2)]) == 0
        assert r1.read_bytes() == r2.read_bytes()


class TestEntryPoint:
    def test_console_script_version(self):
        result = subprocess.run(
            [sys.executable, "-m", "starprod.cli", "--version"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert "starprod" in result.stdout
