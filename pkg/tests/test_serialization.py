import json
import math

import numpy as np
import pytest

from starprod import Scheme, SchemeParseError, classify
from starprod.catalog import entries, mub_qubit_scheme, sic_qubit_scheme
from starprod.serialization import (
    json_to_matrix,
    json_to_vector,
    load_kernel,
    load_operator,
    load_scheme,
    load_vector,
    matrix_to_json,
    parse_scheme,
    report_to_json,
    save_kernel,
    save_operator,
    save_scheme,
    save_vector,
    serialize_scheme,
    vector_to_json,
)

from _helpers import random_complex


class TestComplexEncoding:
    def test_matrix_round_trip_bit_exact(self, rng):
        m = random_complex(rng, (3, 4))
        assert np.array_equal(json_to_matrix(matrix_to_json(m)), m)

    def test_vector_round_trip_bit_exact(self, rng):
        v = random_complex(rng, 7)
        assert np.array_equal(json_to_vector(vector_to_json(v)), v)

    def test_bad_pair(self):
        with pytest.raises(SchemeParseError):
            json_to_matrix([[[1.0], [0.0, 0.0]]])
        with pytest.raises(SchemeParseError):
            json_to_matrix([[["a", 0.0], [0.0, 0.0]]])

    def test_ragged_rows(self):
        with pytest.raises(SchemeParseError):
            json_to_matrix([[[0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]])


class TestSchemeFiles:
    def test_round_trip_bit_exact_all_catalog(self):
        for entry in entries():
            s = entry.scheme
            back = parse_scheme(serialize_scheme(s))
            assert np.array_equal(back.dequantizers, s.dequantizers), entry.name
            assert back.name == s.name
            if s.quantizers is None:
                assert back.quantizers is None
            else:
                assert np.array_equal(back.quantizers, s.quantizers)

    def test_json_text_round_trip(self, tmp_path):
        s = sic_qubit_scheme("povm")
        path = tmp_path / "scheme.json"
        save_scheme(s, str(path))
        again = load_scheme(str(path))
        assert np.array_equal(again.dequantizers, s.dequantizers)
        # Serializing the parsed scheme reproduces the same file bytes.
        path2 = tmp_path / "scheme2.json"
        save_scheme(again, str(path2))
        assert path.read_bytes() == path2.read_bytes()

    @pytest.mark.parametrize(
        "payload",
        [
            [],
            {},
            {"d": 2},
            {"d": 0, "dequantizers": []},
            {"d": 2, "dequantizers": []},
            {"d": 2, "dequantizers": [[[0, 0]]]},
            {"d": 2, "dequantizers": [[[[0, 0], [0, 0]], [[0, 0], [0, 0]]]], "name": 5},
            {
                "d": 2,
                "dequantizers": [[[[1, 0], [0, 0]], [[0, 0], [0, 0]]]],
                "quantizers": [],
            },
        ],
    )
    def test_malformed_payloads(self, payload):
        with pytest.raises(SchemeParseError):
            parse_scheme(payload)

    def test_quantizer_count_mismatch(self):
        op = [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]
        with pytest.raises(SchemeParseError):
            parse_scheme({"d": 2, "dequantizers": [op, op], "quantizers": [op]})

    def test_invalid_json_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(SchemeParseError):
            load_scheme(str(path))


class TestOperatorVectorKernelFiles:
    def test_operator_round_trip(self, tmp_path, rng):
        m = random_complex(rng, (3, 3))
        path = tmp_path / "op.json"
        save_operator(m, str(path))
        assert np.array_equal(load_operator(str(path)), m)

    def test_vector_round_trip_with_metadata(self, tmp_path, rng):
        v = random_complex(rng, 6)
        path = tmp_path / "vec.json"
        save_vector(v, str(path), scheme="mub-qubit")
        assert np.array_equal(load_vector(str(path)), v)
        assert json.loads(path.read_text())["scheme"] == "mub-qubit"

    def test_kernel_round_trip(self, tmp_path, rng):
        values = random_complex(rng, (4, 4, 4))
        path = tmp_path / "kernel.json"
        save_kernel(2, values, str(path), assoc_residual=1.5e-12)
        d, back = load_kernel(str(path))
        assert d == 2
        assert np.array_equal(back, values)
        assert json.loads(path.read_text())["associativity_residual"] == 1.5e-12

    def test_operator_missing_field(self, tmp_path):
        path = tmp_path / "op.json"
        path.write_text('{"values": []}')
        with pytest.raises(SchemeParseError):
            load_operator(str(path))


class TestReportJson:
    def test_infinite_condition_number_is_null(self):
        underfilled = Scheme(dequantizers=mub_qubit_scheme().dequantizers[:3])
        data = report_to_json(classify(underfilled))
        assert data["condition_number"] is None
        assert json.dumps(data)  # serializable

    def test_full_report_serializes(self):
        report = classify(sic_qubit_scheme("povm"))
        data = report_to_json(report)
        assert data["povm"]["is_povm"] is True
        assert math.isclose(data["condition_number"], np.sqrt(3), rel_tol=1e-12)
        text = json.dumps(data)
        assert "NaN" not in text and "Infinity" not in text

    def test_matrix_unit_like_serialized(self):
        from starprod.catalog import matrix_units_scheme

        data = report_to_json(classify(matrix_units_scheme(2)))
        u = json_to_matrix(data["matrix_unit_like"])
        assert np.abs(u - np.eye(2)).max() <= 1e-12
