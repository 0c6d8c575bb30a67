"""Holomorphic functions of one complex variable with exact derivatives.

The supported classes (polynomials, scaled exponentials, and their linear
combinations) are closed under differentiation, so values and the first two
derivatives come from closed forms rather than numerical differencing. The
module also provides trapezoidal contour quadrature on circles, which is
spectrally accurate for analytic integrands and recovers values and
derivatives from equispaced boundary samples.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "HoloFn",
    "Polynomial",
    "Exp",
    "Sum",
    "Scaled",
    "Contour",
    "TooFewNodes",
    "holo_eval",
    "poly_derivative",
    "contour_value_and_derivatives",
    "default_contour",
]

MIN_NODES = 8
DEFAULT_NODES = 64
MIN_CONTOUR_RADIUS = 1e-3


class TooFewNodes(ValueError):
    """Fewer quadrature nodes than the minimum the error analysis assumes."""


class HoloFn:
    """Base class for holomorphic functions with closed-form derivatives."""

    def derivatives(self, xi: complex) -> tuple[complex, complex, complex]:
        """Value, first, and second derivative at xi."""
        raise NotImplementedError

    def derivative(self) -> "HoloFn":
        """The exact derivative as a new function."""
        raise NotImplementedError


class Polynomial(HoloFn):
    """Polynomial with complex coefficients in ascending degree order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[complex]):
        cs = tuple(complex(c) for c in coeffs)
        self.coeffs = cs if cs else (0j,)

    def derivatives(self, xi):
        # Simultaneous Horner recurrences for p, p', p''.
        xi = complex(xi)
        p = d1 = d2 = 0j
        for c in reversed(self.coeffs):
            d2 = d2 * xi + 2.0 * d1
            d1 = d1 * xi + p
            p = p * xi + c
        return p, d1, d2

    def derivative(self):
        return poly_derivative(self)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"


class Exp(HoloFn):
    """The exponential ``xi -> exp(rate * xi)``."""

    __slots__ = ("rate",)

    def __init__(self, rate: complex = 1.0):
        self.rate = complex(rate)

    def derivatives(self, xi):
        e = cmath.exp(self.rate * xi)
        return e, self.rate * e, self.rate * self.rate * e

    def derivative(self):
        return Scaled(self.rate, self)

    def __eq__(self, other):
        return isinstance(other, Exp) and self.rate == other.rate

    def __hash__(self):
        return hash(("exp", self.rate))

    def __repr__(self):
        return f"Exp({self.rate!r})"


class Sum(HoloFn):
    """Pointwise sum of finitely many functions."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[HoloFn]):
        self.terms = tuple(terms)

    def derivatives(self, xi):
        p = d1 = d2 = 0j
        for term in self.terms:
            v, w1, w2 = term.derivatives(xi)
            p += v
            d1 += w1
            d2 += w2
        return p, d1, d2

    def derivative(self):
        return Sum(term.derivative() for term in self.terms)

    def __eq__(self, other):
        return isinstance(other, Sum) and self.terms == other.terms

    def __hash__(self):
        return hash(("sum", self.terms))

    def __repr__(self):
        return f"Sum({list(self.terms)!r})"


class Scaled(HoloFn):
    """A function multiplied by a complex constant."""

    __slots__ = ("factor", "inner")

    def __init__(self, factor: complex, inner: HoloFn):
        self.factor = complex(factor)
        self.inner = inner

    def derivatives(self, xi):
        v, d1, d2 = self.inner.derivatives(xi)
        return self.factor * v, self.factor * d1, self.factor * d2

    def derivative(self):
        return Scaled(self.factor, self.inner.derivative())

    def __eq__(self, other):
        return (
            isinstance(other, Scaled)
            and self.factor == other.factor
            and self.inner == other.inner
        )

    def __hash__(self):
        return hash(("scaled", self.factor, self.inner))

    def __repr__(self):
        return f"Scaled({self.factor!r}, {self.inner!r})"


def holo_eval(fn: HoloFn, xi: complex, order: int = 2) -> tuple[complex, ...]:
    """Value and derivatives of fn at xi up to the requested order (0, 1, 2)."""
    if order not in (0, 1, 2):
        raise ValueError(f"derivative order must be 0, 1 or 2, got {order!r}")
    return fn.derivatives(xi)[: order + 1]


def poly_derivative(poly: Polynomial) -> Polynomial:
    """Exact derivative by coefficient shift and scale."""
    shifted = tuple(k * c for k, c in enumerate(poly.coeffs) if k > 0)
    return Polynomial(shifted)


@dataclass(frozen=True)
class Contour:
    """Circle with equispaced quadrature nodes."""

    center: complex
    radius: float
    nodes: int = DEFAULT_NODES

    def __post_init__(self):
        if not self.radius > 0.0:
            raise ValueError(f"radius must be positive, got {self.radius!r}")
        if self.nodes < MIN_NODES:
            raise TooFewNodes(f"need at least {MIN_NODES} nodes, got {self.nodes}")

    def points(self) -> list[complex]:
        """Equispaced nodes, antipodal pairs exactly negated for even counts.

        The exact negation makes symmetric cancellations (for instance the
        node sum itself) come out as floating-point zeros.
        """
        n = self.nodes
        if n % 2 == 0:
            half = [
                self.radius * cmath.exp(2j * cmath.pi * k / n)
                for k in range(n // 2)
            ]
            offsets = half + [-w for w in half]
        else:
            offsets = [
                self.radius * cmath.exp(2j * cmath.pi * k / n) for k in range(n)
            ]
        return [self.center + w for w in offsets]


def contour_value_and_derivatives(
    samples: Sequence[tuple[complex, complex]],
    center: complex,
    max_order: int = 2,
) -> tuple[complex, ...]:
    """Value and derivatives at the center from equispaced circle samples.

    For samples (t_j, v_j) of a function holomorphic on a neighborhood of the
    closed disk, the trapezoidal rule for the derivative integrals collapses
    to

        k-th derivative ~ (k! / n) * sum_j v_j / (t_j - center)**k,

    which converges at least geometrically in the node count. Returns a tuple
    of length ``max_order + 1``.
    """
    pts = list(samples)
    if len(pts) < MIN_NODES:
        raise TooFewNodes(f"need at least {MIN_NODES} samples, got {len(pts)}")
    if max_order not in (0, 1, 2):
        raise ValueError(f"max_order must be 0, 1 or 2, got {max_order!r}")
    n = len(pts)
    out = []
    for k in range(max_order + 1):
        factorial = 2.0 if k == 2 else 1.0
        acc = 0j
        if k == 0:
            for _, v in pts:
                acc += v
        else:
            for t, v in pts:
                acc += v / (t - center) ** k
        out.append(factorial * acc / n)
    return tuple(out)


def default_contour(center: complex, region=None, nodes: int = DEFAULT_NODES) -> Contour:
    """Circle around center with the default radius rule.

    With a bounding region the radius is half the distance from the center to
    the region's boundary, floored at ``MIN_CONTOUR_RADIUS``; without one
    (entire functions) the radius is 1.
    """
    if region is None:
        radius = 1.0
    else:
        radius = max(0.5 * region.interior_distance(center), MIN_CONTOUR_RADIUS)
    return Contour(center, radius, nodes)
