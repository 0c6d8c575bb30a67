"""Command-line front end for frame inspection, grid evaluation, and checks.

Usage::

    rho3 --config job.json [--output PATH] [--format csv|json]
         [--seed N] [--nodes N] [--tolerance X]

The config file is one JSON object; flags override the corresponding config
entries, so a single file records a reproducible run. Schema sketch (full
description in the README)::

    {
      "command": "frame-check" | "extend" | "cauchy-compare"
               | "monogenic-check" | "decompose" | "laplace",
      "frame": "melnichenko" | {"e1": ..., "e2": ..., "e3": ...},
      "functions": {"f0": ..., "f1": ..., "f2": ...} | "conjugate",
      "domain": {"x": [-1, 1], "y": [-1, 1], "z": [-1, 1]},
      "grid": [5, 5, 5],
      "xi": {"re": [-1, 1], "im": [-1, 1], "n": [9, 9]},
      "numeric": {"nodes": 64, "contour_radius": 0.5, "tolerance": 1e-6,
                  "delta_schedule": [...], "step": 0.01, "directions": 20},
      "points": [[0.3, -0.2, 0.7], ...],
      "seed": 0,
      "output": {"path": "out.csv", "format": "csv"}
    }

Exit codes: 0 when all requested checks pass, 1 when a check fails (reports
are still written), 2 on configuration errors. Identical config and seed
produce byte-identical output files; grid points are traversed x-outermost
and every random draw comes from the seeded generator.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from .algebra import NotInvertible
from .analysis import (
    DEFAULT_DELTA_SCHEDULE,
    conjugate_scalar_field,
    decompose,
    fiber_constancy_check,
    gateaux_check,
    k3_check,
    laplace_residual,
    NotHarmonicFrame,
)
from .frames import (
    DependentVectors,
    DomainBox,
    Frame,
    NotSurjective,
    Vec3,
    melnichenko_frame,
)
from .monogenic import MonogenicFn, cauchy_eval, eval_triple
from .serialize import (
    a3_from_json,
    decomposition_csv_rows,
    decomposition_to_json,
    format_float,
    frame_to_json,
    holo_from_json,
    report_to_json,
)

__all__ = ["ConfigError", "JobConfig", "load_config", "run", "main"]

COMMANDS = (
    "frame-check",
    "extend",
    "cauchy-compare",
    "monogenic-check",
    "decompose",
    "laplace",
)
CSV_COMMANDS = ("extend", "decompose")

EXTEND_CSV_COLUMNS = [
    "x", "y", "z",
    "one_re", "one_im",
    "rho_re", "rho_im",
    "rho2_re", "rho2_im",
]


class ConfigError(ValueError):
    """Invalid or inconsistent job configuration."""


@dataclass
class JobConfig:
    command: str
    frame_spec: Any
    functions_spec: Any
    domain: DomainBox
    grid: tuple[int, int, int]
    xi_re: tuple[float, float]
    xi_im: tuple[float, float]
    xi_n: tuple[int, int]
    nodes: int
    contour_radius: float
    delta_schedule: tuple[float, ...]
    tolerance: Optional[float]
    step: float
    directions: int
    points: Optional[tuple[Vec3, ...]]
    seed: int
    output_path: Optional[str]
    output_format: str


def _fail(field: str, message: str):
    raise ConfigError(f"{field}: {message}")


def _interval(obj: Any, field: str) -> tuple[float, float]:
    if (
        not isinstance(obj, (list, tuple))
        or len(obj) != 2
        or not all(isinstance(v, (int, float)) for v in obj)
    ):
        _fail(field, f"expected [low, high], got {obj!r}")
    lo, hi = float(obj[0]), float(obj[1])
    if lo > hi:
        _fail(field, f"empty interval [{lo}, {hi}]")
    return lo, hi


def _positive_int(obj: Any, field: str, minimum: int = 1) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool) or obj < minimum:
        _fail(field, f"expected integer >= {minimum}, got {obj!r}")
    return obj


def _number(obj: Any, field: str) -> float:
    if not isinstance(obj, (int, float)) or isinstance(obj, bool):
        _fail(field, f"expected a number, got {obj!r}")
    return float(obj)


def parse_config(data: Any, overrides: Optional[dict[str, Any]] = None) -> JobConfig:
    """Validate a raw config object and apply flag overrides."""
    overrides = overrides or {}
    if not isinstance(data, dict):
        raise ConfigError(f"top level: expected a JSON object, got {type(data).__name__}")

    command = data.get("command")
    if command not in COMMANDS:
        _fail("command", f"expected one of {', '.join(COMMANDS)}, got {command!r}")

    frame_spec = data.get("frame", "melnichenko")
    if not (frame_spec == "melnichenko" or isinstance(frame_spec, dict)):
        _fail("frame", "expected \"melnichenko\" or an object with e1/e2/e3")

    functions_spec = data.get("functions")
    if functions_spec is not None and functions_spec != "conjugate" and not isinstance(functions_spec, dict):
        _fail("functions", "expected an object with f0/f1/f2 or \"conjugate\"")

    domain_data = data.get("domain", {})
    if not isinstance(domain_data, dict):
        _fail("domain", f"expected an object, got {domain_data!r}")
    try:
        domain = DomainBox(
            _interval(domain_data.get("x", [-1.0, 1.0]), "domain.x"),
            _interval(domain_data.get("y", [-1.0, 1.0]), "domain.y"),
            _interval(domain_data.get("z", [-1.0, 1.0]), "domain.z"),
        )
    except ValueError as exc:
        raise ConfigError(f"domain: {exc}") from exc

    grid_data = data.get("grid", [5, 5, 5])
    if not isinstance(grid_data, (list, tuple)) or len(grid_data) != 3:
        _fail("grid", f"expected 3 per-axis counts, got {grid_data!r}")
    grid = tuple(
        _positive_int(n, f"grid[{i}]") for i, n in enumerate(grid_data)
    )

    xi_data = data.get("xi", {})
    if not isinstance(xi_data, dict):
        _fail("xi", f"expected an object, got {xi_data!r}")
    xi_re = _interval(xi_data.get("re", [-1.0, 1.0]), "xi.re")
    xi_im = _interval(xi_data.get("im", [-1.0, 1.0]), "xi.im")
    xi_n_data = xi_data.get("n", [9, 9])
    if not isinstance(xi_n_data, (list, tuple)) or len(xi_n_data) != 2:
        _fail("xi.n", f"expected [n_re, n_im], got {xi_n_data!r}")
    xi_n = tuple(_positive_int(n, f"xi.n[{i}]") for i, n in enumerate(xi_n_data))

    numeric = data.get("numeric", {})
    if not isinstance(numeric, dict):
        _fail("numeric", f"expected an object, got {numeric!r}")
    nodes = _positive_int(numeric.get("nodes", 64), "numeric.nodes", minimum=8)
    contour_radius = _number(numeric.get("contour_radius", 0.5), "numeric.contour_radius")
    if contour_radius <= 0:
        _fail("numeric.contour_radius", f"expected a positive number, got {contour_radius!r}")
    schedule_data = numeric.get("delta_schedule")
    if schedule_data is None:
        delta_schedule = DEFAULT_DELTA_SCHEDULE
    else:
        if not isinstance(schedule_data, (list, tuple)) or not schedule_data:
            _fail("numeric.delta_schedule", "expected a non-empty list of steps")
        delta_schedule = tuple(
            _number(d, f"numeric.delta_schedule[{i}]") for i, d in enumerate(schedule_data)
        )
    tolerance = numeric.get("tolerance")
    if tolerance is not None:
        tolerance = _number(tolerance, "numeric.tolerance")
        if tolerance <= 0:
            _fail("numeric.tolerance", f"expected a positive number, got {tolerance!r}")
    step = _number(numeric.get("step", 0.01), "numeric.step")
    if step <= 0:
        _fail("numeric.step", f"expected a positive number, got {step!r}")
    directions = _positive_int(numeric.get("directions", 20), "numeric.directions")

    points_data = data.get("points")
    points = None
    if points_data is not None:
        if not isinstance(points_data, list) or not points_data:
            _fail("points", "expected a non-empty list of [x, y, z]")
        parsed = []
        for i, entry in enumerate(points_data):
            if not isinstance(entry, (list, tuple)) or len(entry) != 3:
                _fail(f"points[{i}]", f"expected [x, y, z], got {entry!r}")
            parsed.append(Vec3(*(_number(v, f"points[{i}][{j}]") for j, v in enumerate(entry))))
        points = tuple(parsed)

    seed = data.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        _fail("seed", f"expected an integer, got {seed!r}")

    output = data.get("output", {})
    if not isinstance(output, dict):
        _fail("output", f"expected an object, got {output!r}")
    output_path = output.get("path")
    if output_path is not None and not isinstance(output_path, str):
        _fail("output.path", f"expected a string, got {output_path!r}")
    output_format = output.get("format", "json")

    if "output" in overrides and overrides["output"] is not None:
        output_path = overrides["output"]
    if "format" in overrides and overrides["format"] is not None:
        output_format = overrides["format"]
    if "seed" in overrides and overrides["seed"] is not None:
        seed = overrides["seed"]
    if "nodes" in overrides and overrides["nodes"] is not None:
        nodes = _positive_int(overrides["nodes"], "--nodes", minimum=8)
    if "tolerance" in overrides and overrides["tolerance"] is not None:
        tolerance = _number(overrides["tolerance"], "--tolerance")
        if tolerance <= 0:
            _fail("--tolerance", f"expected a positive number, got {tolerance!r}")

    if output_format not in ("csv", "json"):
        _fail("output.format", f"expected csv or json, got {output_format!r}")
    if output_format == "csv" and command not in CSV_COMMANDS:
        _fail("output.format", f"csv output is only available for {', '.join(CSV_COMMANDS)}")
    if output_format == "csv" and output_path is None:
        _fail("output.path", "required for csv output")

    return JobConfig(
        command=command,
        frame_spec=frame_spec,
        functions_spec=functions_spec,
        domain=domain,
        grid=grid,
        xi_re=xi_re,
        xi_im=xi_im,
        xi_n=xi_n,
        nodes=nodes,
        contour_radius=contour_radius,
        delta_schedule=delta_schedule,
        tolerance=tolerance,
        step=step,
        directions=directions,
        points=points,
        seed=seed,
        output_path=output_path,
        output_format=output_format,
    )


def load_config(path: str, overrides: Optional[dict[str, Any]] = None) -> JobConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return parse_config(data, overrides)


def _build_frame(spec: Any) -> Frame:
    if spec == "melnichenko":
        return melnichenko_frame()
    if set(spec) != {"e1", "e2", "e3"}:
        _fail("frame", f"expected keys e1/e2/e3, got {sorted(spec)!r}")
    try:
        from .frames import make_frame

        return make_frame(
            a3_from_json(spec["e1"]), a3_from_json(spec["e2"]), a3_from_json(spec["e3"])
        )
    except ValueError as exc:
        raise ConfigError(f"frame: {exc}") from exc


def _build_triple(config: JobConfig, frame: Frame) -> MonogenicFn:
    spec = config.functions_spec
    if spec is None:
        _fail("functions", f"required for command {config.command!r}")
    if spec == "conjugate":
        _fail("functions", f"\"conjugate\" is only valid for monogenic-check")
    if set(spec) != {"f0", "f1", "f2"}:
        _fail("functions", f"expected keys f0/f1/f2, got {sorted(spec)!r}")
    try:
        return MonogenicFn(
            f0=holo_from_json(spec["f0"]),
            f1=holo_from_json(spec["f1"]),
            f2=holo_from_json(spec["f2"]),
            frame=frame,
        )
    except ValueError as exc:
        raise ConfigError(f"functions: {exc}") from exc


def _linspace(interval: tuple[float, float], count: int) -> list[float]:
    lo, hi = interval
    if count == 1:
        return [lo]
    return [lo + i * (hi - lo) / (count - 1) for i in range(count)]


def _grid_points(config: JobConfig) -> list[Vec3]:
    xs = _linspace(config.domain.x, config.grid[0])
    ys = _linspace(config.domain.y, config.grid[1])
    zs = _linspace(config.domain.z, config.grid[2])
    return [Vec3(x, y, z) for x in xs for y in ys for z in zs]


def _xi_grid(config: JobConfig) -> list[complex]:
    res = _linspace(config.xi_re, config.xi_n[0])
    ims = _linspace(config.xi_im, config.xi_n[1])
    return [complex(r, i) for r in res for i in ims]


def _sample_points(config: JobConfig, count: int = 3) -> list[Vec3]:
    # Points in the middle half of each axis, away from probe excursions.
    if config.points is not None:
        return list(config.points)
    rng = random.Random(config.seed)
    out = []
    for _ in range(count):
        coords = []
        for lo, hi in (config.domain.x, config.domain.y, config.domain.z):
            width = hi - lo
            coords.append(rng.uniform(lo + 0.25 * width, hi - 0.25 * width))
        out.append(Vec3(*coords))
    return out


def _k3_directions(frame: Frame) -> tuple[Vec3, Vec3]:
    axes = (Vec3(1.0, 0.0, 0.0), Vec3(0.0, 1.0, 0.0), Vec3(0.0, 0.0, 1.0))
    from .analysis import _direction_determinant

    for i in range(3):
        for j in range(i + 1, 3):
            h1, h2 = axes[i], axes[j]
            if abs(_direction_determinant(h1, h2, frame.l)) <= 1e-6:
                continue
            if frame.embed(h1).is_invertible():
                return h1, h2
            if frame.embed(h2).is_invertible():
                return h2, h1
    _fail("frame", "no coordinate axis pair forms a usable direction basis")


def _cmd_frame_check(config: JobConfig):
    try:
        frame = _build_frame(config.frame_spec)
    except ConfigError as exc:
        cause = exc.__cause__
        if isinstance(cause, (DependentVectors, NotSurjective)):
            payload = {"violation": type(cause).__name__, "message": str(cause)}
            return False, payload, None
        raise
    payload = {
        "harmonic": frame.harmonic,
        "radical_direction": list(frame.l.as_tuple()),
        "basis": frame_to_json(frame),
    }
    return True, payload, None


def _extend_rows(m: MonogenicFn, points: list[Vec3]) -> list[list[float]]:
    rows = []
    for p in points:
        val = eval_triple(m, p)
        rows.append(
            [
                p.x, p.y, p.z,
                val.a.real, val.a.imag,
                val.b.real, val.b.imag,
                val.c.real, val.c.imag,
            ]
        )
    return rows


def _cmd_extend(config: JobConfig):
    frame = _build_frame(config.frame_spec)
    m = _build_triple(config, frame)
    rows = _extend_rows(m, _grid_points(config))
    payload = {"columns": list(EXTEND_CSV_COLUMNS), "rows": rows}
    csv_rows = [[format_float(v) for v in row] for row in rows]
    return True, payload, (list(EXTEND_CSV_COLUMNS), csv_rows)


def _cmd_cauchy_compare(config: JobConfig):
    frame = _build_frame(config.frame_spec)
    m = _build_triple(config, frame)
    tolerance = config.tolerance if config.tolerance is not None else 1e-9
    worst = 0.0
    for p in _grid_points(config):
        diff = (cauchy_eval(m, p, nodes=config.nodes) - eval_triple(m, p)).norm()
        worst = max(worst, diff)
    payload = {
        "max_discrepancy": worst,
        "tolerance": tolerance,
        "nodes": config.nodes,
        "grid_points": len(_grid_points(config)),
    }
    return worst <= tolerance, payload, None


def _cmd_monogenic_check(config: JobConfig):
    frame = _build_frame(config.frame_spec)
    conjugate = config.functions_spec == "conjugate"
    if conjugate:
        field = conjugate_scalar_field(frame)
        m = None
    else:
        m = _build_triple(config, frame)
        field = m
    tolerance = config.tolerance if config.tolerance is not None else 1e-6
    h1, h2 = _k3_directions(frame)
    reports = []
    for p in _sample_points(config):
        reports.append(
            k3_check(field, frame, p, h1, h2, tol=tolerance, deltas=config.delta_schedule)
        )
        if m is not None:
            reports.append(
                gateaux_check(
                    m,
                    p,
                    direction_count=config.directions,
                    tol=tolerance,
                    deltas=config.delta_schedule,
                    seed=config.seed,
                )
            )
        reports.append(
            fiber_constancy_check(field, frame, p, c_samples=(-0.2, 0.2))
        )
    payload = {
        "checks": [report_to_json(r) for r in reports],
        "worst_residual": max(r.worst_residual for r in reports),
    }
    return all(r.passed for r in reports), payload, None


def _cmd_decompose(config: JobConfig):
    frame = _build_frame(config.frame_spec)
    m = _build_triple(config, frame)
    result = decompose(
        m,
        frame,
        _xi_grid(config),
        contour_radius=config.contour_radius,
        nodes=config.nodes,
    )
    tolerance = config.tolerance if config.tolerance is not None else 1e-9
    passed = max(result.max_r1, result.max_r2) <= tolerance
    payload = decomposition_to_json(result)
    payload["tolerance"] = tolerance
    header, rows = decomposition_csv_rows(result)
    return passed, payload, (header, rows)


def _cmd_laplace(config: JobConfig):
    frame = _build_frame(config.frame_spec)
    m = _build_triple(config, frame)
    if not frame.harmonic:
        payload = {
            "violation": NotHarmonicFrame.__name__,
            "message": "frame squares do not sum to zero",
        }
        return False, payload, None
    reports = [laplace_residual(m, p, config.step) for p in _grid_points(config)]
    payload = {
        "step": config.step,
        "max_residual": max(r.worst_residual for r in reports),
        "tolerance": reports[0].tolerance,
        "checks": [report_to_json(r) for r in reports],
    }
    return all(r.passed for r in reports), payload, None


_HANDLERS = {
    "frame-check": _cmd_frame_check,
    "extend": _cmd_extend,
    "cauchy-compare": _cmd_cauchy_compare,
    "monogenic-check": _cmd_monogenic_check,
    "decompose": _cmd_decompose,
    "laplace": _cmd_laplace,
}


def _write_json(path: Optional[str], payload: dict[str, Any]) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _write_csv(path: str, header: list[str], rows: list[list[str]]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def run(config: JobConfig) -> int:
    """Execute one job; returns the process exit code (0 pass, 1 fail)."""
    passed, payload, csv_data = _HANDLERS[config.command](config)
    payload = {"command": config.command, "pass": passed, **payload}
    if config.output_format == "csv":
        _write_csv(config.output_path, *csv_data)
    else:
        _write_json(config.output_path, payload)
    return 0 if passed else 1


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="rho3",
        description="Frame inspection, grid evaluation, and verification "
        "checks for fields over the rho^3 = 0 algebra.",
    )
    parser.add_argument("--config", required=True, help="path to the JSON job config")
    parser.add_argument("--output", help="override output.path")
    parser.add_argument("--format", choices=("csv", "json"), help="override output.format")
    parser.add_argument("--seed", type=int, help="override the sampling seed")
    parser.add_argument("--nodes", type=int, help="override numeric.nodes")
    parser.add_argument("--tolerance", type=float, help="override numeric.tolerance")
    args = parser.parse_args(argv)
    overrides = {
        "output": args.output,
        "format": args.format,
        "seed": args.seed,
        "nodes": args.nodes,
        "tolerance": args.tolerance,
    }
    try:
        config = load_config(args.config, overrides)
        return run(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (NotInvertible, ValueError, ArithmeticError) as exc:
        print(f"config error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
