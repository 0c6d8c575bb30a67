import json
import random

import pytest

from rho3 import (
    A3,
    Exp,
    MonogenicFn,
    Polynomial,
    Scaled,
    Sum,
    Vec3,
    decompose,
    k3_check,
    melnichenko_frame,
)
from rho3.serialize import (
    a3_from_json,
    a3_to_json,
    complex_from_json,
    complex_to_json,
    decomposition_csv_rows,
    decomposition_to_json,
    format_float,
    holo_from_json,
    holo_to_json,
    report_to_json,
)

from support import random_a3, random_complex


class TestComplexCodec:
    def test_round_trip_exact(self):
        rng = random.Random(60)
        for _ in range(50):
            z = random_complex(rng, 1e3)
            assert complex_from_json(json.loads(json.dumps(complex_to_json(z)))) == z

    def test_shape_validated(self):
        with pytest.raises(ValueError):
            complex_from_json({"re": 1.0})
        with pytest.raises(ValueError):
            complex_from_json([1.0, 2.0])


class TestA3Codec:
    def test_round_trip_exact(self):
        rng = random.Random(61)
        for _ in range(50):
            u = random_a3(rng, 10.0)
            assert a3_from_json(json.loads(json.dumps(a3_to_json(u)))) == u

    def test_shape_validated(self):
        with pytest.raises(ValueError):
            a3_from_json({"a": complex_to_json(1), "b": complex_to_json(0)})


class TestHoloCodec:
    @pytest.mark.parametrize(
        "fn",
        [
            Polynomial([1, 2j, 3 - 1j]),
            Exp(0.5 - 2j),
            Sum([Polynomial([0, 1]), Exp(1)]),
            Scaled(2j, Sum([Polynomial([1]), Scaled(-1, Exp(0.5))])),
        ],
    )
    def test_round_trip(self, fn):
        back = holo_from_json(json.loads(json.dumps(holo_to_json(fn))))
        assert back == fn

    def test_unknown_tag_rejected(self):
        with pytest.raises(ValueError):
            holo_from_json({"type": "sine"})


class TestReportCodec:
    def test_fields_and_key_order(self):
        mel = melnichenko_frame()
        m = MonogenicFn(Polynomial([0, 0, 1]), Polynomial([0]), Polynomial([0]), mel)
        report = k3_check(m, mel, Vec3(0.1, 0.2, 0.3), Vec3(1, 0, 0), Vec3(0, 1, 0))
        data = report_to_json(report)
        assert data["name"] == "k3"
        assert data["pass"] is True
        assert list(data["residuals"]) == sorted(data["residuals"])
        assert data["tolerance"] == report.tolerance


@pytest.fixture(scope="module")
def result():
    mel = melnichenko_frame()
    m = MonogenicFn(Polynomial([0, 0, 1]), Polynomial([0, 1]), Polynomial([1]), mel)
    return decompose(m, mel, [0.25 + 0.25j, -0.5 + 0j], nodes=32)


class TestDecompositionCodec:

    def test_json_lengths(self, result):
        data = decomposition_to_json(result)
        for key in ("xi", "f0", "f1", "f2", "r1", "r2", "fiber_residuals"):
            assert len(data[key]) == 2
        assert data["max_r1"] == result.max_r1

    def test_csv_rows(self, result):
        header, rows = decomposition_csv_rows(result)
        assert header[0] == "xi_re" and header[-1] == "fiber_residual"
        assert len(rows) == 2 and all(len(r) == len(header) for r in rows)
        # 17 significant digits round-trip doubles exactly.
        assert float(rows[0][2]) == result.f0[0].real


class TestFormatFloat:
    def test_round_trips_doubles(self):
        rng = random.Random(62)
        values = [rng.uniform(-1, 1) * 10**rng.randint(-12, 12) for _ in range(100)]
        values += [0.0, 1.0, -1.5, 2**-52]
        for v in values:
            assert float(format_float(v)) == v
