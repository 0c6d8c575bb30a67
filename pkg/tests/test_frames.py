import json
import math
import random

import pytest

from rho3 import (
    A3,
    RHO2,
    ZERO,
    DependentVectors,
    DomainBox,
    NotSurjective,
    Vec3,
    f_image,
    make_frame,
    melnichenko_frame,
    scalar_part,
)
from rho3.serialize import frame_from_json, frame_to_json

from support import random_frame, random_point

I = 1j


@pytest.fixture(scope="module")
def mel():
    return melnichenko_frame()


class TestMakeFrame:
    def test_simple_valid_frame_not_harmonic(self):
        fr = make_frame(A3(1), A3(I), A3(0, 1))
        squares = fr.e1 * fr.e1 + fr.e2 * fr.e2 + fr.e3 * fr.e3
        assert squares == RHO2
        assert fr.harmonic is False

    def test_melnichenko_triple_harmonic(self):
        fr = make_frame(A3(1), A3(I, 0, 0.5 * I), A3(0, 1))
        assert fr.harmonic is True

    def test_scaled_radical_vector_not_harmonic(self):
        fr = make_frame(A3(1), A3(I), A3(0, 2))
        squares = fr.e1 * fr.e1 + fr.e2 * fr.e2 + fr.e3 * fr.e3
        assert squares == A3(0, 0, 4)
        assert fr.harmonic is False

    def test_dependent_vectors_rejected(self):
        with pytest.raises(DependentVectors):
            make_frame(A3(1), A3(2), A3(0, 1))

    def test_projection_must_cover_plane(self):
        # Scalar parts 1, 1, 0 only span the real axis.
        with pytest.raises(NotSurjective):
            make_frame(A3(1), A3(1, 1), A3(0, 0, 1))


class TestMelnichenkoFrame:
    def test_harmonic_sum_exactly_zero(self, mel):
        squares = mel.e1 * mel.e1 + mel.e2 * mel.e2 + mel.e3 * mel.e3
        assert squares == ZERO
        assert squares.norm() == 0.0

    def test_coefficient_rows(self, mel):
        assert mel.coeffs[0] == (1, 0, 0)
        assert mel.coeffs[1] == (I, 0, 0.5 * I)
        assert mel.coeffs[2] == (0, 1, 0)

    def test_third_vector_in_radical(self, mel):
        assert scalar_part(mel.e3) == 0

    def test_radical_direction(self, mel):
        assert mel.l == Vec3(0.0, 0.0, 1.0)


class TestRadicalDirection:
    def test_solves_projection_kernel(self):
        fr = make_frame(A3(1), A3(I), A3(1 + I, 1))
        expected = Vec3(1, 1, -1) * (1 / math.sqrt(3))
        assert (fr.l - expected).norm() < 1e-12

    def test_embed_l_is_noninvertible(self, mel):
        rng = random.Random(3)
        for _ in range(25):
            fr = random_frame(rng)
            assert abs(scalar_part(fr.embed(fr.l))) <= 1e-14

    def test_sign_convention(self):
        rng = random.Random(4)
        for _ in range(25):
            fr = random_frame(rng)
            for coord in fr.l.as_tuple():
                if abs(coord) > 1e-12:
                    assert coord > 0
                    break

    def test_fiber_has_constant_scalar_projection(self):
        rng = random.Random(5)
        for _ in range(10):
            fr = random_frame(rng)
            p = random_point(rng, 2.0)
            base = fr.scalar_projection(p)
            for c in (-10.0, -3.5, 0.25, 10.0):
                drift = abs(fr.scalar_projection(p + c * fr.l) - base)
                assert drift <= 1e-13


class TestEmbed:
    def test_unit_diagonal(self, mel):
        assert mel.embed(Vec3(1, 0, 1)) == A3(1, 1, 0)

    def test_origin(self, mel):
        assert mel.embed(Vec3(0, 0, 0)) == ZERO

    def test_second_axis(self, mel):
        assert mel.embed(Vec3(0, 1, 0)) == mel.e2

    def test_real_linear(self):
        rng = random.Random(6)
        for _ in range(10):
            fr = random_frame(rng)
            p, q = random_point(rng), random_point(rng)
            a, b = rng.uniform(-2, 2), rng.uniform(-2, 2)
            lhs = fr.embed(a * p + b * q)
            rhs = a * fr.embed(p) + b * fr.embed(q)
            assert (lhs - rhs).norm() <= 1e-13 * (1 + lhs.norm())

    def test_coefficient_path_matches_algebra_path(self):
        rng = random.Random(7)
        for _ in range(20):
            fr = random_frame(rng)
            p = random_point(rng, 3.0)
            via_algebra = scalar_part(fr.embed(p))
            via_coeffs = fr.scalar_projection(p)
            assert abs(via_algebra - via_coeffs) <= 1e-14 * (1 + abs(via_coeffs))
            xi, alpha, beta = fr.fiber_coordinates(p)
            emb = fr.embed(p)
            assert abs(emb.a - xi) <= 1e-14 * (1 + abs(xi))
            assert abs(emb.b - alpha) <= 1e-14 * (1 + abs(alpha))
            assert abs(emb.c - beta) <= 1e-14 * (1 + abs(beta))


class TestFImage:
    def test_unit_box_projects_to_unit_square(self, mel):
        rect = f_image(mel, DomainBox((0, 1), (0, 1), (0, 1)))
        assert rect.re == (0.0, 1.0) and rect.im == (0.0, 1.0)

    def test_degenerate_box_single_point(self, mel):
        p = Vec3(0.3, -0.4, 0.9)
        box = DomainBox((p.x, p.x), (p.y, p.y), (p.z, p.z))
        rect = f_image(mel, box)
        xi = mel.scalar_projection(p)
        assert rect.re == (xi.real, xi.real) and rect.im == (xi.imag, xi.imag)

    def test_symmetric_box(self, mel):
        rect = f_image(mel, DomainBox())
        assert rect.re == (-1.0, 1.0) and rect.im == (-1.0, 1.0)

    def test_covers_sampled_projections(self):
        rng = random.Random(8)
        fr = random_frame(rng)
        box = DomainBox((-0.5, 1.5), (-2, 0), (0.25, 0.75))
        rect = f_image(fr, box)
        for _ in range(200):
            p = Vec3(
                rng.uniform(*box.x), rng.uniform(*box.y), rng.uniform(*box.z)
            )
            assert rect.contains(fr.scalar_projection(p), tol=1e-12)


class TestDomainBox:
    def test_empty_interval_rejected(self):
        with pytest.raises(ValueError):
            DomainBox((1, 0), (0, 1), (0, 1))

    def test_contains(self):
        box = DomainBox((-1, 1), (-1, 1), (-1, 1))
        assert box.contains(Vec3(0, 0, 0))
        assert box.contains(Vec3(1, 1, 1))
        assert not box.contains(Vec3(1.001, 0, 0))
        assert box.contains(Vec3(1.001, 0, 0), tol=0.01)

    def test_segments_along_radical_direction_stay_inside(self, mel):
        # Convex in every direction, hence along l in particular.
        rng = random.Random(9)
        box = DomainBox((-1, 1), (-1, 1), (-1, 1))
        for _ in range(100):
            p = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1))
            c = rng.uniform(-1, 1)
            q = p + c * mel.l
            if not box.contains(q):
                continue
            for t in (0.25, 0.5, 0.75):
                assert box.contains(p + (t * c) * mel.l)

    def test_center(self):
        assert DomainBox((0, 2), (-4, 0), (1, 1)).center() == Vec3(1, -2, 1)


class TestVec3:
    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            Vec3(float("nan"), 0, 0)

    def test_arithmetic(self):
        assert Vec3(1, 2, 3) + Vec3(1, 0, -1) == Vec3(2, 2, 2)
        assert 2 * Vec3(1, 2, 3) == Vec3(2, 4, 6)
        assert -Vec3(1, 0, 0) == Vec3(-1, 0, 0)
        assert Vec3(3, 4, 0).norm() == 5.0


class TestSerialization:
    def test_round_trip_exact(self):
        rng = random.Random(10)
        for _ in range(10):
            fr = random_frame(rng)
            data = json.loads(json.dumps(frame_to_json(fr)))
            back = frame_from_json(data)
            assert back.e1 == fr.e1 and back.e2 == fr.e2 and back.e3 == fr.e3
            assert back.coeffs == fr.coeffs
            assert back.l == fr.l and back.harmonic == fr.harmonic
