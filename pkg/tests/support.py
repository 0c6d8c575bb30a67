"""Deterministic random builders shared across the test modules."""

from __future__ import annotations

import random

from rho3 import A3, MonogenicFn, Polynomial, Vec3, make_frame


def random_complex(rng: random.Random, scale: float = 1.0) -> complex:
    return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))


def random_a3(rng: random.Random, scale: float = 1.0) -> A3:
    return A3(
        random_complex(rng, scale),
        random_complex(rng, scale),
        random_complex(rng, scale),
    )


def random_point(rng: random.Random, scale: float = 1.0) -> Vec3:
    return Vec3(
        rng.uniform(-scale, scale),
        rng.uniform(-scale, scale),
        rng.uniform(-scale, scale),
    )


def random_polynomial(rng: random.Random, degree: int, scale: float = 1.0) -> Polynomial:
    return Polynomial([random_complex(rng, scale) for _ in range(degree + 1)])


def random_triple(rng: random.Random, frame, degree: int = 4, scale: float = 1.0) -> MonogenicFn:
    return MonogenicFn(
        random_polynomial(rng, degree, scale),
        random_polynomial(rng, max(degree - 1, 0), scale),
        random_polynomial(rng, max(degree - 2, 0), scale),
        frame,
    )


def random_frame(rng: random.Random, scale: float = 2.0):
    """A random valid frame; retries the rare degenerate draws."""
    while True:
        try:
            return make_frame(
                random_a3(rng, scale), random_a3(rng, scale), random_a3(rng, scale)
            )
        except ValueError:
            continue
