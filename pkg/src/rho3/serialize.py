"""JSON codecs and CSV row builders for the package's value types.

Complex numbers serialize as ``{"re": ..., "im": ...}`` objects everywhere.
Floats pass through ``json`` unchanged (round-trip exact); CSV cells use 17
significant digits, which also round-trips IEEE doubles exactly.
"""

from __future__ import annotations

from typing import Any

from .algebra import A3
from .analysis import CheckReport, DecompositionResult
from .frames import Frame, Vec3, make_frame
from .holomorphic import Exp, HoloFn, Polynomial, Scaled, Sum
from .monogenic import MonogenicFn

__all__ = [
    "complex_to_json",
    "complex_from_json",
    "a3_to_json",
    "a3_from_json",
    "frame_to_json",
    "frame_from_json",
    "holo_to_json",
    "holo_from_json",
    "monogenic_to_json",
    "monogenic_from_json",
    "report_to_json",
    "decomposition_to_json",
    "decomposition_csv_rows",
    "format_float",
]


def format_float(value: float) -> str:
    """17 significant digits: enough to reproduce any double exactly."""
    return format(float(value), ".17g")


def complex_to_json(z: complex) -> dict[str, float]:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def complex_from_json(obj: Any) -> complex:
    if not isinstance(obj, dict) or set(obj) != {"re", "im"}:
        raise ValueError(f"expected an object with keys re/im, got {obj!r}")
    return complex(float(obj["re"]), float(obj["im"]))


def a3_to_json(u: A3) -> dict[str, Any]:
    return {
        "a": complex_to_json(u.a),
        "b": complex_to_json(u.b),
        "c": complex_to_json(u.c),
    }


def a3_from_json(obj: Any) -> A3:
    if not isinstance(obj, dict) or set(obj) != {"a", "b", "c"}:
        raise ValueError(f"expected an object with keys a/b/c, got {obj!r}")
    return A3(
        complex_from_json(obj["a"]),
        complex_from_json(obj["b"]),
        complex_from_json(obj["c"]),
    )


def frame_to_json(frame: Frame) -> dict[str, Any]:
    return {
        "e1": a3_to_json(frame.e1),
        "e2": a3_to_json(frame.e2),
        "e3": a3_to_json(frame.e3),
    }


def frame_from_json(obj: Any) -> Frame:
    if not isinstance(obj, dict) or set(obj) != {"e1", "e2", "e3"}:
        raise ValueError(f"expected an object with keys e1/e2/e3, got {obj!r}")
    return make_frame(
        a3_from_json(obj["e1"]),
        a3_from_json(obj["e2"]),
        a3_from_json(obj["e3"]),
    )


def holo_to_json(fn: HoloFn) -> dict[str, Any]:
    if isinstance(fn, Polynomial):
        return {
            "type": "polynomial",
            "coeffs": [complex_to_json(c) for c in fn.coeffs],
        }
    if isinstance(fn, Exp):
        return {"type": "exp", "rate": complex_to_json(fn.rate)}
    if isinstance(fn, Sum):
        return {"type": "sum", "terms": [holo_to_json(t) for t in fn.terms]}
    if isinstance(fn, Scaled):
        return {
            "type": "scaled",
            "factor": complex_to_json(fn.factor),
            "inner": holo_to_json(fn.inner),
        }
    raise TypeError(f"cannot serialize {type(fn).__name__}")


def holo_from_json(obj: Any) -> HoloFn:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValueError(f"expected a tagged function object, got {obj!r}")
    tag = obj["type"]
    if tag == "polynomial":
        return Polynomial(complex_from_json(c) for c in obj["coeffs"])
    if tag == "exp":
        return Exp(complex_from_json(obj["rate"]))
    if tag == "sum":
        return Sum(holo_from_json(t) for t in obj["terms"])
    if tag == "scaled":
        return Scaled(complex_from_json(obj["factor"]), holo_from_json(obj["inner"]))
    raise ValueError(f"unknown function tag: {tag!r}")


def monogenic_to_json(m: MonogenicFn) -> dict[str, Any]:
    return {
        "frame": frame_to_json(m.frame),
        "f0": holo_to_json(m.f0),
        "f1": holo_to_json(m.f1),
        "f2": holo_to_json(m.f2),
    }


def monogenic_from_json(obj: Any) -> MonogenicFn:
    if not isinstance(obj, dict) or set(obj) != {"frame", "f0", "f1", "f2"}:
        raise ValueError(
            f"expected an object with keys frame/f0/f1/f2, got {obj!r}"
        )
    return MonogenicFn(
        f0=holo_from_json(obj["f0"]),
        f1=holo_from_json(obj["f1"]),
        f2=holo_from_json(obj["f2"]),
        frame=frame_from_json(obj["frame"]),
    )


def report_to_json(report: CheckReport) -> dict[str, Any]:
    return {
        "name": report.name,
        "residuals": {k: report.residuals[k] for k in sorted(report.residuals)},
        "tolerance": report.tolerance,
        "pass": report.passed,
        "details": report.details,
    }


def decomposition_to_json(result: DecompositionResult) -> dict[str, Any]:
    return {
        "xi": [complex_to_json(x) for x in result.xi],
        "f0": [complex_to_json(x) for x in result.f0],
        "f1": [complex_to_json(x) for x in result.f1],
        "f2": [complex_to_json(x) for x in result.f2],
        "f0_d1": [complex_to_json(x) for x in result.f0_d1],
        "f0_d2": [complex_to_json(x) for x in result.f0_d2],
        "f1_d1": [complex_to_json(x) for x in result.f1_d1],
        "r1": list(result.r1),
        "r2": list(result.r2),
        "fiber_residuals": list(result.fiber_residuals),
        "max_r1": result.max_r1,
        "max_r2": result.max_r2,
    }


DECOMPOSITION_CSV_COLUMNS = [
    "xi_re", "xi_im",
    "f0_re", "f0_im",
    "f1_re", "f1_im",
    "f2_re", "f2_im",
    "f0_d1_re", "f0_d1_im",
    "f0_d2_re", "f0_d2_im",
    "f1_d1_re", "f1_d1_im",
    "r1", "r2", "fiber_residual",
]


def decomposition_csv_rows(result: DecompositionResult) -> tuple[list[str], list[list[str]]]:
    """Header and formatted rows for the decomposition grid CSV."""
    rows = []
    for i, xi in enumerate(result.xi):
        cells = [
            xi.real, xi.imag,
            result.f0[i].real, result.f0[i].imag,
            result.f1[i].real, result.f1[i].imag,
            result.f2[i].real, result.f2[i].imag,
            result.f0_d1[i].real, result.f0_d1[i].imag,
            result.f0_d2[i].real, result.f0_d2[i].imag,
            result.f1_d1[i].real, result.f1_d1[i].imag,
            result.r1[i], result.r2[i], result.fiber_residuals[i],
        ]
        rows.append([format_float(v) for v in cells])
    return list(DECOMPOSITION_CSV_COLUMNS), rows
