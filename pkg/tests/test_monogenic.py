import json
import random

import pytest

from rho3 import (
    A3,
    ONE,
    RHO,
    Contour,
    ContourTouchesFiber,
    DomainBox,
    Exp,
    FieldA3,
    MonogenicFn,
    NotInvertible,
    OutsideDomain,
    Polynomial,
    Vec3,
    cauchy_eval,
    derivative,
    eval_triple,
    melnichenko_frame,
    principal_extension,
    resolvent,
    scalar_part,
)
from rho3.serialize import monogenic_from_json, monogenic_to_json

from support import random_frame, random_point, random_polynomial, random_triple

I = 1j

XI_SQ = Polynomial([0, 0, 1])
ZERO_FN = Polynomial([0])


@pytest.fixture(scope="module")
def mel():
    return melnichenko_frame()


def triple(frame, f0=ZERO_FN, f1=ZERO_FN, f2=ZERO_FN):
    return MonogenicFn(f0, f1, f2, frame)


class TestPrincipalExtension:
    def test_square_reproduces_algebra_power(self, mel):
        p = Vec3(1, 0, 1)
        value = principal_extension(XI_SQ, mel, p)
        assert value == A3(1, 2, 1)
        assert value == mel.embed(p) ** 2

    def test_constant_is_fixed(self, mel):
        rng = random.Random(30)
        for _ in range(5):
            fr = random_frame(rng)
            assert principal_extension(Polynomial([1]), fr, random_point(rng)) == ONE

    def test_identity_reproduces_embedding(self, mel):
        rng = random.Random(31)
        identity = Polynomial([0, 1])
        for _ in range(10):
            p = random_point(rng, 2.0)
            got = principal_extension(identity, mel, p)
            want = mel.embed(p)
            assert (got - want).norm() <= 1e-14 * (1 + want.norm())

    def test_power_consistency_with_algebra_powers(self, mel):
        # Independent oracle: repeated algebra multiplication of embed(p).
        rng = random.Random(32)
        for _ in range(25):
            p = random_point(rng, 2.0)
            emb = mel.embed(p)
            for n in range(9):
                mono = Polynomial([0] * n + [1])
                got = principal_extension(mono, mel, p)
                want = emb ** n
                assert (got - want).norm() <= 1e-10 * (1 + want.norm())


class TestEvalTriple:
    def test_rho_shifted_identity_at_origin(self, mel):
        m = triple(mel, f0=Polynomial([0, 1]), f1=Polynomial([1]))
        assert eval_triple(m, Vec3(0, 0, 0)) == RHO

    def test_degenerate_triple_equals_principal_extension(self, mel):
        rng = random.Random(33)
        m = triple(mel, f0=XI_SQ)
        for _ in range(10):
            p = random_point(rng, 2.0)
            assert eval_triple(m, p) == principal_extension(XI_SQ, mel, p)

    def test_pure_second_component(self, mel):
        m = triple(mel, f2=Polynomial([0, 1]))
        assert eval_triple(m, Vec3(1, 1, 0)) == A3(0, 0, 1 + I)

    def test_linearity_in_components(self, mel):
        rng = random.Random(34)
        fs = [random_polynomial(rng, 4) for _ in range(3)]
        gs = [random_polynomial(rng, 4) for _ in range(3)]
        m_f = MonogenicFn(*fs, mel)
        m_g = MonogenicFn(*gs, mel)
        from rho3 import Scaled, Sum

        m_sum = MonogenicFn(
            *(Sum([f, Scaled(2j, g)]) for f, g in zip(fs, gs)), mel
        )
        for _ in range(10):
            p = random_point(rng)
            want = eval_triple(m_f, p) + 2j * eval_triple(m_g, p)
            got = eval_triple(m_sum, p)
            assert (got - want).norm() <= 1e-13 * (1 + want.norm())

    def test_scalar_component_constant_on_fibers(self, mel):
        rng = random.Random(35)
        m = random_triple(rng, mel, degree=4)
        p = random_point(rng)
        base = scalar_part(eval_triple(m, p))
        for c in (-2.0, -0.5, 1.0, 3.0):
            value = scalar_part(eval_triple(m, p + c * mel.l))
            assert abs(value - base) <= 1e-12 * (1 + abs(base))

    def test_fiber_restriction_is_quadratic(self, mel):
        # Shifting along the radical direction adds a nilpotent increment,
        # so the value is a degree <= 2 polynomial in the shift size.
        rng = random.Random(36)
        m = random_triple(rng, mel, degree=5)
        p = random_point(rng)
        v0 = eval_triple(m, p + 0.0 * mel.l)
        v1 = eval_triple(m, p + 1.0 * mel.l)
        v2 = eval_triple(m, p + 2.0 * mel.l)
        # Quadratic through c = 0, 1, 2 evaluated at c = 3.
        predicted = v0 - 3.0 * v1 + 3.0 * v2
        got = eval_triple(m, p + 3.0 * mel.l)
        assert (got - predicted).norm() <= 1e-10 * (1 + got.norm())


class TestResolvent:
    def test_scalar_case(self):
        assert resolvent(2, ONE) == ONE

    def test_shifted_radical(self):
        assert resolvent(1, RHO) == A3(1, 1, 1)

    def test_on_fiber_not_invertible(self, mel):
        zeta = mel.embed(Vec3(0.5, -0.25, 2.0))
        with pytest.raises(NotInvertible):
            resolvent(scalar_part(zeta), zeta)


class TestCauchyEval:
    def test_square_matches_closed_form(self, mel):
        m = triple(mel, f0=XI_SQ)
        p = Vec3(1, 0, 1)
        got = cauchy_eval(m, p, Contour(1 + 0j, 1.0, 64))
        assert (got - A3(1, 2, 1)).norm() <= 1e-10

    def test_constants_reproduce_themselves(self, mel):
        m = triple(
            mel,
            f0=Polynomial([1]),
            f1=Polynomial([1]),
            f2=Polynomial([1]),
        )
        got = cauchy_eval(m, Vec3(0.3, -0.7, 0.2))
        assert (got - A3(1, 1, 1)).norm() <= 1e-12

    def test_exponential(self, mel):
        m = triple(mel, f0=Exp(1))
        got = cauchy_eval(m, Vec3(0, 0, 1))
        assert (got - A3(1, 1, 0.5)).norm() <= 1e-10

    def test_agrees_with_eval_triple_for_random_triples(self, mel):
        rng = random.Random(37)
        for _ in range(5):
            m = MonogenicFn(
                random_polynomial(rng, 8),
                random_polynomial(rng, 8),
                random_polynomial(rng, 8),
                mel,
            )
            p = random_point(rng)
            diff = (cauchy_eval(m, p, nodes=64) - eval_triple(m, p)).norm()
            assert diff <= 1e-9

    def test_error_decays_as_nodes_double(self, mel):
        rng = random.Random(38)
        m = MonogenicFn(
            random_polynomial(rng, 8),
            random_polynomial(rng, 8),
            random_polynomial(rng, 8),
            mel,
        )
        p = Vec3(0.4, -0.3, 0.6)
        want = eval_triple(m, p)
        errors = [
            (cauchy_eval(m, p, nodes=n) - want).norm() for n in (8, 16, 32)
        ]
        for before, after in zip(errors, errors[1:]):
            assert after <= max(0.5 * before, 1e-13)

    def test_contour_touching_fiber_rejected(self, mel):
        m = triple(mel, f0=XI_SQ)
        p = Vec3(0.5, 0.5, 0.0)
        xi = mel.scalar_projection(p)
        # First node of the shifted contour lands exactly on xi.
        with pytest.raises(ContourTouchesFiber):
            cauchy_eval(m, p, Contour(xi + 0.5, 0.5, 16))


class TestDerivative:
    def test_square(self, mel):
        m = triple(mel, f0=XI_SQ)
        d = derivative(m)
        assert d.f0 == Polynomial([0, 2])
        assert d.f1 == Polynomial([0]) and d.f2 == Polynomial([0])

    def test_constants_vanish(self, mel):
        m = triple(mel, f0=Polynomial([3]), f1=Polynomial([2j]), f2=Polynomial([1]))
        d = m.derivative()
        for fn in (d.f0, d.f1, d.f2):
            assert fn == Polynomial([0])

    def test_term_wise(self, mel):
        m = triple(
            mel,
            f0=Polynomial([0, 0, 0, 1]),
            f1=Polynomial([0, 1]),
            f2=Polynomial([1]),
        )
        d = m.derivative()
        assert d.f0 == Polynomial([0, 0, 3])
        assert d.f1 == Polynomial([1])
        assert d.f2 == Polynomial([0])

    def test_difference_quotients_converge_first_order(self, mel):
        rng = random.Random(39)
        m = random_triple(rng, mel, degree=4)
        p = random_point(rng)
        h = random_point(rng)
        target = mel.embed(h) * eval_triple(m.derivative(), p)
        errors = []
        for delta in (1e-2, 5e-3, 2.5e-3):
            quotient = (eval_triple(m, p + delta * h) - eval_triple(m, p)) / delta
            errors.append((quotient - target).norm())
        for before, after in zip(errors, errors[1:]):
            assert after <= 0.6 * before


class TestFieldA3:
    def test_domain_enforced(self, mel):
        m = triple(mel, f0=XI_SQ)
        field = m.as_field(DomainBox((-1, 1), (-1, 1), (-1, 1)))
        field(Vec3(0.5, 0.5, 0.5))
        with pytest.raises(OutsideDomain):
            field(Vec3(2, 0, 0))

    def test_unrestricted(self, mel):
        field = FieldA3(triple(mel, f0=XI_SQ))
        assert field(Vec3(2, 0, 0)) == A3(4)

    def test_deterministic(self, mel):
        rng = random.Random(40)
        m = random_triple(rng, mel)
        p = random_point(rng)
        assert eval_triple(m, p) == eval_triple(m, p)


class TestSerialization:
    def test_round_trip(self, mel):
        m = MonogenicFn(
            Polynomial([1, 2j, 3]),
            Exp(0.5 - 1j),
            Polynomial([0]),
            mel,
        )
        data = json.loads(json.dumps(monogenic_to_json(m)))
        back = monogenic_from_json(data)
        assert back.f0 == m.f0 and back.f1 == m.f1 and back.f2 == m.f2
        assert back.frame.coeffs == m.frame.coeffs
        rng = random.Random(41)
        for _ in range(5):
            p = random_point(rng)
            assert eval_triple(back, p) == eval_triple(m, p)
