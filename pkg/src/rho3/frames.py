"""Real three-dimensional coordinate subspaces of the algebra.

A frame fixes three elements e1, e2, e3 that are linearly independent over
the reals and identifies the coordinate point (x, y, z) with the element
``x*e1 + y*e2 + z*e3``. The scalar projection restricted to that span must
cover the whole complex plane; its kernel is then a single line of
noninvertible elements whose unit direction ``l`` is stored on the frame.
Shifting a point along ``l`` never changes its scalar projection, so the
preimage of a complex number is the line through any one of its points in
the direction ``l`` (the "fiber").

Frames whose squares sum to zero (``e1^2 + e2^2 + e3^2 = 0``) are flagged
harmonic: the coordinate components of differentiable fields over such
frames solve the three-dimensional Laplace equation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import A3

__all__ = [
    "Vec3",
    "DomainBox",
    "ComplexRect",
    "Frame",
    "DependentVectors",
    "NotSurjective",
    "OutsideDomain",
    "make_frame",
    "melnichenko_frame",
    "f_image",
]

# Relative singular-value cutoff for rank decisions.
_RANK_TOL = 1e-10
_HARMONIC_TOL = 1e-12


class DependentVectors(ValueError):
    """The three spanning elements are linearly dependent over the reals."""


class NotSurjective(ValueError):
    """The scalar projection of the span misses part of the complex plane."""


class OutsideDomain(ValueError):
    """A point fell outside the domain a field or check is restricted to."""


def _finite(value) -> float:
    x = float(value)
    if not math.isfinite(x):
        raise ValueError(f"non-finite coordinate: {value!r}")
    return x


class Vec3:
    """Real coordinates (x, y, z) relative to a frame."""

    __slots__ = ("x", "y", "z")

    def __init__(self, x=0.0, y=0.0, z=0.0):
        self.x = _finite(x)
        self.y = _finite(y)
        self.z = _finite(z)

    def __add__(self, other):
        if not isinstance(other, Vec3):
            return NotImplemented
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        if not isinstance(other, Vec3):
            return NotImplemented
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, scale):
        if not isinstance(scale, (int, float)):
            return NotImplemented
        return Vec3(self.x * scale, self.y * scale, self.z * scale)

    __rmul__ = __mul__

    def __neg__(self):
        return Vec3(-self.x, -self.y, -self.z)

    def __eq__(self, other):
        if not isinstance(other, Vec3):
            return NotImplemented
        return self.x == other.x and self.y == other.y and self.z == other.z

    def __hash__(self):
        return hash((self.x, self.y, self.z))

    def __repr__(self):
        return f"Vec3({self.x!r}, {self.y!r}, {self.z!r})"

    def norm(self) -> float:
        return math.hypot(self.x, self.y, self.z)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class DomainBox:
    """Axis-aligned box of coordinate points, convex along every direction."""

    x: tuple[float, float] = (-1.0, 1.0)
    y: tuple[float, float] = (-1.0, 1.0)
    z: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self):
        for name in ("x", "y", "z"):
            lo, hi = (float(v) for v in getattr(self, name))
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError(f"non-finite bound on axis {name}")
            if lo > hi:
                raise ValueError(f"empty interval on axis {name}: [{lo}, {hi}]")
            object.__setattr__(self, name, (lo, hi))

    def contains(self, p: Vec3, tol: float = 0.0) -> bool:
        return (
            self.x[0] - tol <= p.x <= self.x[1] + tol
            and self.y[0] - tol <= p.y <= self.y[1] + tol
            and self.z[0] - tol <= p.z <= self.z[1] + tol
        )

    def center(self) -> Vec3:
        return Vec3(
            0.5 * (self.x[0] + self.x[1]),
            0.5 * (self.y[0] + self.y[1]),
            0.5 * (self.z[0] + self.z[1]),
        )


@dataclass(frozen=True)
class ComplexRect:
    """Axis-aligned rectangle in the complex plane."""

    re: tuple[float, float]
    im: tuple[float, float]

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        return (
            self.re[0] - tol <= z.real <= self.re[1] + tol
            and self.im[0] - tol <= z.imag <= self.im[1] + tol
        )

    def interior_distance(self, z: complex) -> float:
        """Distance from z to the rectangle's boundary, 0 if z is outside."""
        dr = min(z.real - self.re[0], self.re[1] - z.real)
        di = min(z.imag - self.im[0], self.im[1] - z.imag)
        return max(0.0, min(dr, di))


@dataclass(frozen=True)
class Frame:
    """A validated spanning triple with its derived data.

    ``coeffs`` holds one row per basis element with that element's three
    algebra coefficients, ``l`` is the unit direction of the noninvertible
    line (sign-normalized so its first nonzero coordinate is positive), and
    ``harmonic`` records whether the squares of the basis sum to zero.
    Build instances through :func:`make_frame`; the constructor performs no
    validation.
    """

    e1: A3
    e2: A3
    e3: A3
    coeffs: tuple[tuple[complex, complex, complex], ...]
    l: Vec3
    harmonic: bool

    def embed(self, p: Vec3) -> A3:
        """The element ``x*e1 + y*e2 + z*e3`` at coordinates p."""
        return p.x * self.e1 + p.y * self.e2 + p.z * self.e3

    def fiber_coordinates(self, p: Vec3) -> tuple[complex, complex, complex]:
        """Coefficients (xi, alpha, beta) of the embedded point.

        xi is the scalar projection; alpha and beta are the coefficients of
        rho and rho^2, so ``embed(p) == xi + alpha*rho + beta*rho^2``.
        """
        (a0, a1, a2), (b0, b1, b2), (c0, c1, c2) = self.coeffs
        return (
            a0 * p.x + b0 * p.y + c0 * p.z,
            a1 * p.x + b1 * p.y + c1 * p.z,
            a2 * p.x + b2 * p.y + c2 * p.z,
        )

    def scalar_projection(self, p: Vec3) -> complex:
        """The complex number the embedded point projects to."""
        (a0, _, _), (b0, _, _), (c0, _, _) = self.coeffs
        return a0 * p.x + b0 * p.y + c0 * p.z


def make_frame(e1: A3, e2: A3, e3: A3) -> Frame:
    """Validate a spanning triple and compute its derived frame data.

    Raises :class:`DependentVectors` when the triple is linearly dependent
    over the reals and :class:`NotSurjective` when the scalar projections of
    the span do not cover the complex plane (rank below 2). The direction of
    the noninvertible line is the unit kernel vector of the projection,
    sign-normalized for reproducibility.
    """
    basis = (e1, e2, e3)
    columns = np.array(
        [
            [v.a.real, v.a.imag, v.b.real, v.b.imag, v.c.real, v.c.imag]
            for v in basis
        ]
    ).T
    singular = np.linalg.svd(columns, compute_uv=False)
    if singular[-1] <= _RANK_TOL * singular[0]:
        raise DependentVectors(
            "basis elements are linearly dependent over the reals"
        )

    projection = np.array(
        [[v.a.real for v in basis], [v.a.imag for v in basis]]
    )
    _, psing, vt = np.linalg.svd(projection)
    if psing[-1] <= _RANK_TOL * psing[0]:
        raise NotSurjective(
            "scalar projection of the span does not cover the complex plane"
        )

    kernel = vt[-1]
    kernel = kernel / np.linalg.norm(kernel)
    for component in kernel:
        if abs(component) > 1e-12:
            if component < 0:
                kernel = -kernel
            break

    squares = e1 * e1 + e2 * e2 + e3 * e3
    return Frame(
        e1=e1,
        e2=e2,
        e3=e3,
        coeffs=tuple((v.a, v.b, v.c) for v in basis),
        l=Vec3(*(float(c) for c in kernel)),
        harmonic=squares.norm() <= _HARMONIC_TOL,
    )


def melnichenko_frame() -> Frame:
    """The classical harmonic triple ``1, i + (i/2) rho^2, rho``.

    Its squares cancel exactly in floating point and its noninvertible line
    is the z-axis, which makes it the standard frame for examples and
    verification runs.
    """
    return make_frame(A3(1.0), A3(1j, 0.0, 0.5j), A3(0.0, 1.0))


def f_image(frame: Frame, box: DomainBox) -> ComplexRect:
    """Tight bounding rectangle of the scalar projections of a box.

    The image of a box under the real-linear projection is a zonotope; this
    returns its axis-aligned bounding rectangle, computed by interval
    arithmetic on the three coordinate intervals.
    """
    re_lo = re_hi = 0.0
    im_lo = im_hi = 0.0
    for (a0, _, _), (lo, hi) in zip(frame.coeffs, (box.x, box.y, box.z)):
        t0, t1 = a0.real * lo, a0.real * hi
        re_lo += min(t0, t1)
        re_hi += max(t0, t1)
        t0, t1 = a0.imag * lo, a0.imag * hi
        im_lo += min(t0, t1)
        im_hi += max(t0, t1)
    return ComplexRect((re_lo, re_hi), (im_lo, im_hi))
