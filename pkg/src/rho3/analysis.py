"""Numeric verification of differential structure for algebra-valued fields.

Every check here works on plain evaluable fields and produces a
:class:`CheckReport` with named residuals, a tolerance, and a verdict that is
always ``max(residuals) <= tolerance``. The suite covers directional
difference quotients with Richardson extrapolation, the three-direction
derivative consistency check, statistical Gateaux and Lorch differentiability
probes, finite-difference Laplace residuals over harmonic frames, scalar
constancy along fibers, and the peeling decomposition that recovers the
holomorphic component triple of a field from its values alone.
"""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .algebra import A3, scalar_part
from .frames import Frame, Vec3
from .holomorphic import Contour, contour_value_and_derivatives
from .monogenic import FieldA3, MonogenicFn, eval_triple

__all__ = [
    "QuotientEstimate",
    "CheckReport",
    "DecompositionResult",
    "DegenerateDirections",
    "NotHarmonicFrame",
    "SectionOutsideDomain",
    "ContourOutsideDomain",
    "DEFAULT_DELTA_SCHEDULE",
    "LAPLACE_TOL_COEFF",
    "directional_quotient",
    "k3_check",
    "gateaux_check",
    "lorch_check",
    "laplace_residual",
    "fiber_constancy_check",
    "decompose",
    "extension_uniqueness_check",
    "make_section",
    "conjugate_scalar_field",
]

FieldLike = Callable[[Vec3], A3]

#: Geometric step schedule, halving from 1e-2 down to just under 1e-5.
DEFAULT_DELTA_SCHEDULE: tuple[float, ...] = tuple(1e-2 * 0.5**k for k in range(11))

#: Coefficient C of the default Laplace pass tolerance C * step**2.
#: Calibrated on a cubic reference triple over the harmonic frame (see the
#: test fixtures); valid for steps in roughly [5e-3, 1e-1], below which
#: rounding noise in the second differences dominates the bound.
LAPLACE_TOL_COEFF = 1e-5


class DegenerateDirections(ValueError):
    """The supplied directions do not form a real basis with the radical line."""


class NotHarmonicFrame(ValueError):
    """A Laplace residual was requested over a frame that is not harmonic."""


class SectionOutsideDomain(ValueError):
    """No point of the requested fiber lies inside the field's domain."""


class ContourOutsideDomain(ValueError):
    """A quadrature node's fiber has no point inside the field's domain."""


@dataclass(frozen=True)
class QuotientEstimate:
    """Directional difference quotients and their extrapolated limit.

    ``raw`` holds one quotient per signed step; ``value`` averages the two
    one-sided Richardson limits, which are kept separately so callers can
    report the worse of the two sides.
    """

    value: A3
    raw: tuple[tuple[float, A3], ...]
    convergence_rate: float
    limit_pos: A3
    limit_neg: A3


@dataclass(frozen=True)
class CheckReport:
    """Named residuals with a verdict: passed == max(residuals) <= tolerance."""

    name: str
    residuals: dict[str, float]
    tolerance: float
    passed: bool
    details: str = ""

    @property
    def worst_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)


def _report(name: str, residuals: dict[str, float], tolerance: float, details: str = "") -> CheckReport:
    worst = max(residuals.values(), default=0.0)
    return CheckReport(name, dict(residuals), tolerance, worst <= tolerance, details)


@dataclass(frozen=True)
class DecompositionResult:
    """Recovered component samples on a complex grid, with peel residuals.

    ``r1`` and ``r2`` are the magnitudes of the components that must vanish
    after peeling the scalar and rho layers; ``fiber_residuals`` measure
    scalar drift along each grid point's fiber. Derivative samples are kept
    so the field can be reconstructed from the result alone.
    """

    xi: tuple[complex, ...]
    f0: tuple[complex, ...]
    f1: tuple[complex, ...]
    f2: tuple[complex, ...]
    f0_d1: tuple[complex, ...]
    f0_d2: tuple[complex, ...]
    f1_d1: tuple[complex, ...]
    r1: tuple[float, ...]
    r2: tuple[float, ...]
    fiber_residuals: tuple[float, ...]

    @property
    def max_r1(self) -> float:
        return max(self.r1, default=0.0)

    @property
    def max_r2(self) -> float:
        return max(self.r2, default=0.0)

    @property
    def max_fiber_residual(self) -> float:
        return max(self.fiber_residuals, default=0.0)


def _validate_schedule(deltas: Sequence[float]) -> list[float]:
    steps = [float(d) for d in deltas]
    if not steps:
        raise ValueError("empty step schedule")
    for d in steps:
        if not (d > 0.0 and math.isfinite(d)):
            raise ValueError(f"steps must be positive and finite, got {d!r}")
    for a, b in zip(steps, steps[1:]):
        if b >= a:
            raise ValueError("step schedule must be strictly decreasing")
    return steps


def _extrapolate_to_zero(xs: Sequence[float], vals: Sequence[A3]) -> A3:
    # Neville's scheme for the interpolating polynomial evaluated at 0;
    # exact Richardson extrapolation for quotients polynomial in the step.
    t = list(vals)
    n = len(t)
    for j in range(1, n):
        for i in range(n - j):
            x0, x1 = xs[i], xs[i + j]
            t[i] = (t[i] * x1 - t[i + 1] * x0) / (x1 - x0)
    return t[0]


def _convergence_rate(xs: Sequence[float], vals: Sequence[A3], limit: A3) -> float:
    floor = 1e-13 * (1.0 + limit.norm())
    errors = [(v - limit).norm() for v in vals]
    rates = []
    for i in range(len(errors) - 1):
        if errors[i] > floor and errors[i + 1] > floor:
            rates.append(
                math.log(errors[i] / errors[i + 1]) / math.log(xs[i] / xs[i + 1])
            )
    return statistics.median(rates) if rates else 0.0


def directional_quotient(
    field: FieldLike,
    p: Vec3,
    h: Vec3,
    deltas: Sequence[float] = DEFAULT_DELTA_SCHEDULE,
) -> QuotientEstimate:
    """Limit of (field(p + d h) - field(p)) / d for real d approaching 0.

    Quotients are formed at every step of the schedule on both sides of zero
    and each side is Richardson-extrapolated; the reported value is their
    average, and both one-sided limits are retained. Raises
    :class:`rho3.frames.OutsideDomain` if a probe point leaves a restricted
    field's domain.
    """
    steps = _validate_schedule(deltas)
    base = field(p)
    raw: list[tuple[float, A3]] = []
    qpos: list[A3] = []
    qneg: list[A3] = []
    for d in steps:
        qp = (field(p + d * h) - base) / d
        qm = (field(p + (-d) * h) - base) / (-d)
        raw.append((d, qp))
        raw.append((-d, qm))
        qpos.append(qp)
        qneg.append(qm)
    limit_pos = _extrapolate_to_zero(steps, qpos)
    limit_neg = _extrapolate_to_zero(steps, qneg)
    value = (limit_pos + limit_neg) / 2.0
    rate = _convergence_rate(steps, qpos, value)
    return QuotientEstimate(value, tuple(raw), rate, limit_pos, limit_neg)


def _direction_determinant(h1: Vec3, h2: Vec3, h3: Vec3) -> float:
    return (
        h1.x * (h2.y * h3.z - h2.z * h3.y)
        - h1.y * (h2.x * h3.z - h2.z * h3.x)
        + h1.z * (h2.x * h3.y - h2.y * h3.x)
    )


def k3_check(
    field: FieldLike,
    frame: Frame,
    p: Vec3,
    h1: Vec3,
    h2: Vec3,
    tol: float = 1e-6,
    deltas: Sequence[float] = DEFAULT_DELTA_SCHEDULE,
) -> CheckReport:
    """Three-direction derivative consistency at p.

    Estimates the directional limits along h1, h2, and the frame's radical
    direction, solves for the single candidate derivative element from the h1
    limit (h1 must embed to an invertible element), and reports how far the
    other two limits deviate from multiplication by that candidate. The
    residuals take the worse of the two one-sided limits. Fields that are
    differentiable in the algebra sense pass at tight tolerances; direction-
    dependent fields (such as the scalar conjugate) fail by orders of
    magnitude.
    """
    l = frame.l
    # Invertibility first: any direction whose embedding is noninvertible is
    # parallel to l, and "pick a different h1" is the actionable error.
    inv_h1 = frame.embed(h1).inverse()
    scale = max(h1.norm() * h2.norm() * l.norm(), 1e-300)
    if abs(_direction_determinant(h1, h2, l)) <= 1e-12 * scale:
        raise DegenerateDirections(
            "h1, h2 and the radical direction do not form a real basis"
        )
    q1 = directional_quotient(field, p, h1, deltas)
    q2 = directional_quotient(field, p, h2, deltas)
    ql = directional_quotient(field, p, l, deltas)
    emb_h2 = frame.embed(h2)
    emb_l = frame.embed(l)
    resid_h2 = 0.0
    resid_l = 0.0
    for a1, a2, al in ((q1.limit_pos, q2.limit_pos, ql.limit_pos),
                       (q1.limit_neg, q2.limit_neg, ql.limit_neg)):
        candidate = inv_h1 * a1
        resid_h2 = max(resid_h2, (emb_h2 * candidate - a2).norm())
        resid_l = max(resid_l, (emb_l * candidate - al).norm())
    return _report(
        "k3",
        {"h2_direction": resid_h2, "radical_direction": resid_l},
        tol,
        details=f"p={p.as_tuple()}, h1={h1.as_tuple()}, h2={h2.as_tuple()}",
    )


def _random_unit_vec3(rng: random.Random) -> Vec3:
    while True:
        x, y, z = rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1)
        n = math.hypot(x, y, z)
        if n > 1e-6:
            return Vec3(x / n, y / n, z / n)


def gateaux_check(
    m: MonogenicFn,
    p: Vec3,
    direction_count: int = 100,
    tol: float = 1e-6,
    deltas: Sequence[float] = DEFAULT_DELTA_SCHEDULE,
    seed: int = 0,
) -> CheckReport:
    """Directional limits against the algebraic derivative at p.

    For seeded pseudo-random unit directions h, compares the extrapolated
    quotient limit with embed(h) times the derivative triple's value; the
    residual per direction is the worse of the two one-sided limits.
    """
    target = eval_triple(m.derivative(), p)
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(direction_count):
        h = _random_unit_vec3(rng)
        est = directional_quotient(m, p, h, deltas)
        goal = m.frame.embed(h) * target
        resid = max((est.limit_pos - goal).norm(), (est.limit_neg - goal).norm())
        worst = max(worst, resid)
    return _report(
        "gateaux",
        {"max_direction_residual": worst},
        tol,
        details=f"p={p.as_tuple()}, directions={direction_count}",
    )


def lorch_check(
    m: MonogenicFn,
    p: Vec3,
    delta: float = 1e-3,
    direction_count: int = 64,
    tol: float = 0.1,
    seed: int = 0,
) -> CheckReport:
    """Uniform differentiability probe: remainder decay over a shrinking ball.

    Samples directions h with embedded norm delta, computes the worst
    normalized remainder ``|field(p+h) - field(p) - embed(h) deriv| / |h|``
    at delta and at delta/2 (same directions), and reports both suprema plus
    the deviation of their ratio from the ideal linear decay factor 0.5.
    Exactly affine fields sit below the rounding floor and count as zero
    deviation.
    """
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta!r}")
    rng = random.Random(seed)
    directions = [_random_unit_vec3(rng) for _ in range(direction_count)]
    deriv = eval_triple(m.derivative(), p)
    base = m(p)

    def sup_remainder(step: float) -> float:
        worst = 0.0
        for u in directions:
            emb_u = m.frame.embed(u)
            h = (step / emb_u.norm()) * u
            emb_h = m.frame.embed(h)
            remainder = (m(p + h) - base - emb_h * deriv).norm() / emb_h.norm()
            worst = max(worst, remainder)
        return worst

    sup_full = sup_remainder(delta)
    sup_half = sup_remainder(delta / 2.0)
    floor = 1e-12 * (1.0 + base.norm() + deriv.norm())
    if sup_full <= floor and sup_half <= floor:
        deviation = 0.0
        ratio = 0.0
    else:
        ratio = sup_half / max(sup_full, 1e-300)
        deviation = abs(ratio - 0.5)
    return _report(
        "lorch",
        {
            "sup_at_delta": sup_full,
            "sup_at_half_delta": sup_half,
            "linear_decay_deviation": deviation,
        },
        tol,
        details=f"p={p.as_tuple()}, delta={delta:g}, ratio={ratio:.6g}",
    )


_AXES = (Vec3(1.0, 0.0, 0.0), Vec3(0.0, 1.0, 0.0), Vec3(0.0, 0.0, 1.0))


def laplace_residual(
    m: MonogenicFn,
    p: Vec3,
    step: float,
    tol_coeff: Optional[float] = None,
    force: bool = False,
) -> CheckReport:
    """Central-difference Laplacian of the six real component fields at p.

    Requires a harmonic frame (``force=True`` skips the gate, for
    demonstrating the failure on non-harmonic frames). The verdict tolerance
    is ``tol_coeff * step**2`` with the calibrated module default; pass a
    custom coefficient when probing fields with large fourth derivatives.
    """
    if not m.frame.harmonic and not force:
        raise NotHarmonicFrame("frame squares do not sum to zero")
    if not step > 0:
        raise ValueError(f"step must be positive, got {step!r}")
    center = m(p)
    acc = A3()
    for axis in _AXES:
        acc = acc + (m(p + step * axis) - 2.0 * center + m(p + (-step) * axis))
    lap = acc / (step * step)
    residuals = {
        "one_re": abs(lap.a.real),
        "one_im": abs(lap.a.imag),
        "rho_re": abs(lap.b.real),
        "rho_im": abs(lap.b.imag),
        "rho2_re": abs(lap.c.real),
        "rho2_im": abs(lap.c.imag),
    }
    coeff = LAPLACE_TOL_COEFF if tol_coeff is None else tol_coeff
    return _report(
        "laplace",
        residuals,
        coeff * step * step,
        details=f"p={p.as_tuple()}, step={step:g}",
    )


def fiber_constancy_check(
    field: FieldLike,
    frame: Frame,
    p: Vec3,
    c_samples: Sequence[float] = (-1.0, -0.5, 0.5, 1.0),
    tol: float = 1e-12,
) -> CheckReport:
    """Scalar part along the fiber through p must not drift.

    Differentiable fields have scalar parts depending only on the scalar
    projection, which is constant along the radical direction.
    """
    base = scalar_part(field(p))
    worst = 0.0
    for c in c_samples:
        drift = abs(scalar_part(field(p + c * frame.l)) - base)
        worst = max(worst, drift)
    return _report(
        "fiber-constancy",
        {"max_scalar_drift": worst},
        tol,
        details=f"p={p.as_tuple()}, offsets={tuple(c_samples)}",
    )


def make_section(
    frame: Frame,
    offset: float = 0.0,
    domain=None,
) -> Callable[[complex], Vec3]:
    """Right inverse of the scalar projection.

    Returns the minimum-norm coordinates whose embedded value projects to the
    requested complex number, shifted ``offset`` along the radical direction
    and then translated along that direction into ``domain`` when one is
    given (raising :class:`SectionOutsideDomain` if the fiber misses the
    box). Distinct offsets give distinct sections of the same fibers.
    """
    projection = np.array(
        [
            [c.real for (c, _, _) in frame.coeffs],
            [c.imag for (c, _, _) in frame.coeffs],
        ]
    )
    pinv = np.linalg.pinv(projection)
    rows = [[float(pinv[i][0]), float(pinv[i][1])] for i in range(3)]
    l = frame.l

    def section(xi: complex) -> Vec3:
        p = Vec3(
            rows[0][0] * xi.real + rows[0][1] * xi.imag,
            rows[1][0] * xi.real + rows[1][1] * xi.imag,
            rows[2][0] * xi.real + rows[2][1] * xi.imag,
        ) + offset * l
        if domain is None or domain.contains(p, tol=1e-12):
            return p
        lo, hi = -math.inf, math.inf
        for coord, (blo, bhi), direction in zip(
            p.as_tuple(), (domain.x, domain.y, domain.z), l.as_tuple()
        ):
            if abs(direction) < 1e-15:
                if not (blo - 1e-12 <= coord <= bhi + 1e-12):
                    raise SectionOutsideDomain(
                        f"fiber of {xi!r} does not meet the domain box"
                    )
                continue
            t0 = (blo - coord) / direction
            t1 = (bhi - coord) / direction
            lo = max(lo, min(t0, t1))
            hi = min(hi, max(t0, t1))
        if lo > hi:
            raise SectionOutsideDomain(
                f"fiber of {xi!r} does not meet the domain box"
            )
        return p + min(max(0.0, lo), hi) * l

    return section


def conjugate_scalar_field(frame: Frame, domain=None) -> FieldA3:
    """Continuous but direction-dependent reference field.

    The complex conjugate of the scalar projection, embedded as a scalar
    algebra value; its one-sided directional limits exist everywhere but no
    single element reproduces them across independent directions, so it is
    the standard negative control for :func:`k3_check`.
    """

    def fn(p: Vec3) -> A3:
        return A3(frame.scalar_projection(p).conjugate())

    return FieldA3(fn, domain)


def decompose(
    field: FieldLike,
    frame: Frame,
    xi_grid: Sequence[complex],
    contour_radius: float = 0.5,
    nodes: int = 64,
    section: Optional[Callable[[complex], Vec3]] = None,
    fiber_offsets: Sequence[float] = (-0.5, -0.25, 0.25, 0.5),
) -> DecompositionResult:
    """Recover the holomorphic component triple of a field from its values.

    Peels one radical power at a time at each grid point xi:

    1. pick a fiber point through ``section`` and read the scalar part as
       f0(xi); sample f0 on a circle around xi to estimate f0' and f0'' by
       contour quadrature, and record r1, the drift between the direct
       scalar value and its quadrature reconstruction;
    2. subtract the rho contribution of f0 from the rho component to expose
       f1(xi); estimating f1' needs f1 at every circle node, each of which
       needs f0' there, hence one nested quadrature per node;
    3. subtract the rho^2 contributions of f0 and f1 to expose f2(xi), and
       record r2, the drift of the rho layer's quadrature reconstruction.

    Fiber residuals sample the scalar part along each grid point's fiber.
    Section failures at a grid point raise
    :class:`SectionOutsideDomain`; failures at quadrature nodes raise
    :class:`ContourOutsideDomain`.
    """
    domain = getattr(field, "domain", None)
    if section is None:
        section = make_section(frame, domain=domain)

    def node_section(t: complex) -> Vec3:
        try:
            return section(t)
        except SectionOutsideDomain as exc:
            raise ContourOutsideDomain(
                f"contour node {t!r} has no section inside the domain"
            ) from exc

    xi_list = [complex(x) for x in xi_grid]
    f0_out, f1_out, f2_out = [], [], []
    f0d1_out, f0d2_out, f1d1_out = [], [], []
    r1_out, r2_out, fiber_out = [], [], []

    for xi in xi_list:
        sec = section(xi)
        val = field(sec)
        _, alpha, beta = frame.fiber_coordinates(sec)
        ring = Contour(xi, contour_radius, nodes).points()

        scalar_samples = [(t, scalar_part(field(node_section(t)))) for t in ring]
        q0, f0d1, f0d2 = contour_value_and_derivatives(scalar_samples, xi, 2)
        f0 = scalar_part(val)
        r1 = abs(f0 - q0)
        f1 = val.b - alpha * f0d1

        rho_samples = []
        for t in ring:
            sec_t = node_section(t)
            val_t = field(sec_t)
            _, alpha_t, _ = frame.fiber_coordinates(sec_t)
            inner = Contour(t, contour_radius, nodes).points()
            inner_samples = [
                (s, scalar_part(field(node_section(s)))) for s in inner
            ]
            _, d1_t = contour_value_and_derivatives(inner_samples, t, 1)
            rho_samples.append((t, val_t.b - alpha_t * d1_t))
        q1, f1d1 = contour_value_and_derivatives(rho_samples, xi, 1)
        r2 = abs(f1 - q1)
        f2 = val.c - (beta * f0d1 + 0.5 * alpha * alpha * f0d2 + alpha * f1d1)

        drift = 0.0
        for c in fiber_offsets:
            q = sec + c * frame.l
            if domain is not None and not domain.contains(q, tol=1e-12):
                continue
            drift = max(drift, abs(scalar_part(field(q)) - f0))

        f0_out.append(f0)
        f1_out.append(f1)
        f2_out.append(f2)
        f0d1_out.append(f0d1)
        f0d2_out.append(f0d2)
        f1d1_out.append(f1d1)
        r1_out.append(r1)
        r2_out.append(r2)
        fiber_out.append(drift)

    return DecompositionResult(
        xi=tuple(xi_list),
        f0=tuple(f0_out),
        f1=tuple(f1_out),
        f2=tuple(f2_out),
        f0_d1=tuple(f0d1_out),
        f0_d2=tuple(f0d2_out),
        f1_d1=tuple(f1d1_out),
        r1=tuple(r1_out),
        r2=tuple(r2_out),
        fiber_residuals=tuple(fiber_out),
    )


def extension_uniqueness_check(
    m: MonogenicFn,
    xi_grid: Sequence[complex],
    sections: Optional[tuple[Callable[[complex], Vec3], Callable[[complex], Vec3]]] = None,
    contour_radius: float = 0.5,
    nodes: int = 64,
    tol: float = 1e-7,
    offsets: tuple[float, float] = (0.0, 0.5),
) -> CheckReport:
    """Recovered components must not depend on the choice of section.

    Runs :func:`decompose` with two distinct sections of the same fibers
    (by default the minimum-norm section and its translate along the radical
    direction) and reports the largest pointwise discrepancy per component.
    """
    frame = m.frame
    if sections is None:
        sections = (
            make_section(frame, offset=offsets[0]),
            make_section(frame, offset=offsets[1]),
        )
    first = decompose(m, frame, xi_grid, contour_radius, nodes, section=sections[0])
    second = decompose(m, frame, xi_grid, contour_radius, nodes, section=sections[1])
    residuals = {
        "f0": max(
            (abs(a - b) for a, b in zip(first.f0, second.f0)), default=0.0
        ),
        "f1": max(
            (abs(a - b) for a, b in zip(first.f1, second.f1)), default=0.0
        ),
        "f2": max(
            (abs(a - b) for a, b in zip(first.f2, second.f2)), default=0.0
        ),
    }
    return _report(
        "extension-uniqueness",
        residuals,
        tol,
        details=f"grid={len(xi_grid)} points, offsets={offsets}",
    )
