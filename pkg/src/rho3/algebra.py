"""Arithmetic in the three-dimensional commutative algebra C[rho]/(rho^3).

Elements are written ``a + b*rho + c*rho**2`` with complex coefficients and a
nilpotent generator satisfying ``rho**3 = 0``, so multiplication truncates at
the ``rho**2`` term:

    (u v).a = u.a v.a
    (u v).b = u.a v.b + u.b v.a
    (u v).c = u.a v.c + u.b v.b + u.c v.a

An element is invertible exactly when its scalar coefficient ``a`` is nonzero;
the noninvertible elements ``b*rho + c*rho**2`` form the unique maximal ideal.
Projecting onto the scalar coefficient (:func:`scalar_part`) is linear,
multiplicative, and bounded by the Euclidean norm, which makes it the
workhorse for everything built on top of this module.
"""

from __future__ import annotations

import cmath
import math

__all__ = [
    "A3",
    "NotInvertible",
    "scalar_part",
    "ZERO",
    "ONE",
    "RHO",
    "RHO2",
]

# Relative cutoff below which the scalar coefficient counts as zero for
# inversion; guards the 1/a**3 term against catastrophic amplification.
INVERTIBILITY_CUTOFF = 1e-12


class NotInvertible(ArithmeticError):
    """The scalar coefficient is (numerically) zero, so no inverse exists."""


def _coefficient(value) -> complex:
    z = complex(value)
    if not cmath.isfinite(z):
        raise ValueError(f"non-finite coefficient: {value!r}")
    return z


class A3:
    """Element ``a + b*rho + c*rho**2`` of the algebra with ``rho**3 = 0``.

    Instances are immutable by convention; every operation returns a new
    value. Scalars (int, float, complex) mix freely with elements and are
    lifted onto the scalar coefficient. Coefficients must be finite; any
    operation producing a non-finite coefficient raises ``ValueError``
    immediately rather than propagating NaN or infinity.
    """

    __slots__ = ("a", "b", "c")

    def __init__(self, a=0.0, b=0.0, c=0.0):
        self.a = _coefficient(a)
        self.b = _coefficient(b)
        self.c = _coefficient(c)

    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return A3(self.a + other.a, self.b + other.b, self.c + other.c)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return A3(self.a - other.a, self.b - other.b, self.c - other.c)

    def __rsub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return A3(
            self.a * other.a,
            self.a * other.b + self.b * other.a,
            self.a * other.c + self.b * other.b + self.c * other.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex)):
            return A3(self.a / other, self.b / other, self.c / other)
        return NotImplemented

    def __neg__(self):
        return A3(-self.a, -self.b, -self.c)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise ValueError("negative powers are not defined; use inverse()")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, A3):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.c == other.c

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __repr__(self):
        return f"A3({self.a!r}, {self.b!r}, {self.c!r})"

    def __abs__(self):
        return self.norm()

    def norm(self) -> float:
        """Euclidean norm: square root of the six squared real components."""
        return math.hypot(
            self.a.real, self.a.imag,
            self.b.real, self.b.imag,
            self.c.real, self.c.imag,
        )

    def is_invertible(self) -> bool:
        return abs(self.a) > INVERTIBILITY_CUTOFF * max(1.0, self.norm())

    def inverse(self) -> A3:
        """Closed-form inverse ``1/a - (b/a^2) rho + (b^2/a^3 - c/a^2) rho^2``.

        Raises :class:`NotInvertible` when ``|a|`` falls below the relative
        cutoff, i.e. the element lies in or numerically near the radical.
        """
        if not self.is_invertible():
            raise NotInvertible(f"scalar coefficient too small: {self.a!r}")
        inv_a = 1.0 / self.a
        return A3(
            inv_a,
            -self.b * inv_a * inv_a,
            (self.b * self.b * inv_a - self.c) * inv_a * inv_a,
        )


def _lift(value):
    if isinstance(value, A3):
        return value
    if isinstance(value, (int, float, complex)):
        return A3(value)
    return None


def scalar_part(u: A3) -> complex:
    """The multiplicative functional: the coefficient of 1.

    Satisfies ``scalar_part(u * v) == scalar_part(u) * scalar_part(v)`` and
    ``abs(scalar_part(u)) <= u.norm()``; its kernel is the radical.
    """
    return u.a


ZERO = A3()
ONE = A3(1.0)
RHO = A3(0.0, 1.0)
RHO2 = A3(0.0, 0.0, 1.0)
