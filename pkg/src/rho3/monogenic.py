"""Algebra-valued fields built from holomorphic components.

A field here is a triple of holomorphic functions (f0, f1, f2) over a frame,
evaluated at coordinates p through one closed form: with (xi, alpha, beta)
the fiber coordinates of p, the value is

    f0(xi)
    + (alpha f0'(xi) + f1(xi)) rho
    + (beta f0'(xi) + alpha^2/2 f0''(xi) + alpha f1'(xi) + f2(xi)) rho^2.

The same value arises as a Cauchy-type integral of f0 + f1 rho + f2 rho^2
against the algebra resolvent over any circle around xi, which
:func:`cauchy_eval` computes by trapezoidal quadrature as an independent
route for verification. Fields of this shape have an algebraic derivative:
differentiating each component gives the triple whose values multiply
direction elements in the directional-derivative limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .algebra import A3, NotInvertible
from .frames import DomainBox, Frame, OutsideDomain, Vec3
from .holomorphic import Contour, HoloFn, default_contour

__all__ = [
    "MonogenicFn",
    "FieldA3",
    "ContourTouchesFiber",
    "principal_extension",
    "eval_triple",
    "resolvent",
    "cauchy_eval",
    "derivative",
]


class ContourTouchesFiber(ArithmeticError):
    """A quadrature node hit the fiber of the evaluation point."""


@dataclass(frozen=True)
class MonogenicFn:
    """Holomorphic component triple over a frame; callable at coordinates."""

    f0: HoloFn
    f1: HoloFn
    f2: HoloFn
    frame: Frame

    def __call__(self, p: Vec3) -> A3:
        return eval_triple(self, p)

    def derivative(self) -> "MonogenicFn":
        return derivative(self)

    def as_field(self, domain: Optional[DomainBox] = None) -> "FieldA3":
        return FieldA3(self, domain)


@dataclass(frozen=True)
class FieldA3:
    """An evaluable coordinate field, optionally restricted to a box.

    Wraps any deterministic callable from coordinates to algebra values
    (a :class:`MonogenicFn`, or a raw test field such as the conjugate
    counterexample) and enforces the domain restriction on every call.
    """

    fn: Callable[[Vec3], A3]
    domain: Optional[DomainBox] = None

    def __call__(self, p: Vec3) -> A3:
        if self.domain is not None and not self.domain.contains(p, tol=1e-12):
            raise OutsideDomain(f"point {p!r} outside field domain")
        return self.fn(p)


def principal_extension(fn: HoloFn, frame: Frame, p: Vec3) -> A3:
    """Value at p of the holomorphic function extended into the algebra.

    With fiber coordinates (xi, alpha, beta) of p, the closed form is

        fn(xi) + alpha fn'(xi) rho
               + (beta fn'(xi) + alpha^2/2 fn''(xi)) rho^2.

    For polynomials this agrees with substituting the embedded element into
    the polynomial using algebra powers.
    """
    xi, alpha, beta = frame.fiber_coordinates(p)
    v, d1, d2 = fn.derivatives(xi)
    return A3(v, alpha * d1, beta * d1 + 0.5 * alpha * alpha * d2)


def eval_triple(m: MonogenicFn, p: Vec3) -> A3:
    """Closed-form value of the component triple at coordinates p.

    Equivalent to the sum of the principal extensions of f0, f1 rho, and
    f2 rho^2, expanded so each component is evaluated only to the derivative
    order it actually contributes: f0 to order 2, f1 to order 1, f2 to
    order 0.
    """
    xi, alpha, beta = m.frame.fiber_coordinates(p)
    v0, v0d1, v0d2 = m.f0.derivatives(xi)
    v1, v1d1, _ = m.f1.derivatives(xi)
    v2 = m.f2.derivatives(xi)[0]
    return A3(
        v0,
        alpha * v0d1 + v1,
        beta * v0d1 + 0.5 * alpha * alpha * v0d2 + alpha * v1d1 + v2,
    )


def resolvent(t: complex, zeta: A3) -> A3:
    """Inverse of ``t - zeta``; the integrand kernel of the Cauchy route.

    Raises :class:`NotInvertible` when t is (numerically) the scalar part of
    zeta, i.e. the point t lies on the fiber of zeta.
    """
    return (t - zeta).inverse()


def cauchy_eval(
    m: MonogenicFn,
    p: Vec3,
    contour: Optional[Contour] = None,
    nodes: Optional[int] = None,
) -> A3:
    """Quadrature of the algebra-valued Cauchy integral of the triple at p.

    Integrates (1/2 pi i) of (f0 + f1 rho + f2 rho^2)(t) (t - zeta)^(-1) dt
    over a circle enclosing the scalar projection of p. The default contour
    is the unit-radius circle centered there; pass ``contour`` to override,
    or ``nodes`` to change only the node count. Agrees with
    :func:`eval_triple` up to quadrature error, which decays at least
    geometrically as nodes double.
    """
    zeta = m.frame.embed(p)
    if contour is None:
        contour = default_contour(zeta.a, nodes=nodes if nodes else 64)
    elif nodes is not None and nodes != contour.nodes:
        contour = Contour(contour.center, contour.radius, nodes)
    acc = A3()
    for t in contour.points():
        g = A3(
            m.f0.derivatives(t)[0],
            m.f1.derivatives(t)[0],
            m.f2.derivatives(t)[0],
        )
        try:
            kernel = resolvent(t, zeta)
        except NotInvertible as exc:
            raise ContourTouchesFiber(
                f"contour node {t!r} lies on the fiber of {p!r}"
            ) from exc
        acc = acc + (t - contour.center) * (g * kernel)
    return acc / contour.nodes


def derivative(m: MonogenicFn) -> MonogenicFn:
    """The algebraic derivative: exact derivatives of all three components."""
    return MonogenicFn(
        m.f0.derivative(), m.f1.derivative(), m.f2.derivative(), m.frame
    )
