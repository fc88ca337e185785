import math
import random
from fractions import Fraction

import pytest

from hypercone.errors import (NoInvariantDirection, NotCanonicalizable,
                              PreconditionViolated)
from hypercone.sl2core import (Mat2, MatClass, c1_bound, canonical_form,
                               classify, eigen_data, gamma_from_traces,
                               invariant_dirs, normalize_tuple)
from hypercone.twoshift import eval_string


def rand_sl2(rng, scale=3.0):
    while True:
        a = rng.uniform(-scale, scale)
        b = rng.uniform(-scale, scale)
        c = rng.uniform(-scale, scale)
        if abs(a) > 1e-3:
            return Mat2(a, b, c, (1.0 + b * c) / a)


def test_classify_examples():
    assert classify(Mat2(2, 1, 0, 0.5)) is MatClass.HYPERBOLIC
    assert classify(Mat2.identity()) is MatClass.PLUS_MINUS_IDENTITY
    assert classify(Mat2(0, -1, 1, 0)) is MatClass.ELLIPTIC
    assert classify(Mat2(1, 1, 0, 1)) is MatClass.PARABOLIC


def test_classify_conjugation_invariance():
    rng = random.Random(3)
    for _ in range(10_000):
        m = rand_sl2(rng)
        r = rand_sl2(rng, scale=1000.0)
        assert classify(r @ m @ r.inverse()) is classify(m)


def test_invariant_dirs_worked_example():
    u, s = invariant_dirs(Mat2(2, 1, 0, 0.5))
    assert u.angle == pytest.approx(0.0, abs=1e-12)
    # stable direction spans (-2/3, 1)
    assert math.tan(s.angle) == pytest.approx(-1.5, rel=1e-12)


def test_invariant_dirs_parabolic_and_diagonal():
    u, s = invariant_dirs(Mat2(1, 1, 0, 1))
    assert u.angle == pytest.approx(s.angle)
    u, s = invariant_dirs(Mat2(2, 0, 0, 0.5))
    assert u.angle == pytest.approx(0.0)
    assert s.angle == pytest.approx(math.pi / 2)


def test_invariant_dirs_rejects_elliptic():
    with pytest.raises(NoInvariantDirection):
        invariant_dirs(Mat2(0, -1, 1, 0))


def test_eigen_residual():
    rng = random.Random(4)
    checked = 0
    while checked < 500:
        m = rand_sl2(rng)
        if abs(float(m.trace())) <= 2.0 + 1e-6:
            continue
        (u, lu), (s, ls) = eigen_data(m)
        for p, lam in ((u, lu), (s, ls)):
            x, y = p.vector()
            rx = float(m.a) * x + float(m.b) * y - lam * x
            ry = float(m.c) * x + float(m.d) * y - lam * y
            assert math.hypot(rx, ry) <= 1e-8
        assert abs(lu) >= 1.0 >= abs(ls)
        checked += 1


def test_canonical_form_worked_example(free_pair):
    A, B = free_pair
    cp = canonical_form(A, B)
    assert cp.mu == pytest.approx(2.0, rel=1e-12)
    assert cp.nu == pytest.approx(2.0, rel=1e-12)
    assert cp.alpha == pytest.approx(1.0, rel=1e-9)
    assert cp.beta == pytest.approx(-9.0, rel=1e-9)
    assert cp.gamma == pytest.approx(-9.0, rel=1e-9)


def test_canonical_gamma_conjugation_invariant(free_pair):
    A, B = free_pair
    rng = random.Random(5)
    for _ in range(50):
        r = rand_sl2(rng, scale=4.0)
        cp = canonical_form(r @ A @ r.inverse(), r @ B @ r.inverse())
        assert cp.gamma == pytest.approx(-9.0, rel=1e-6)


def test_canonical_reconstruction_and_trace_identity(free_pair):
    A, B = free_pair
    cp = canonical_form(A, B)
    P, Pinv = cp.basis, cp.basis.inverse()
    A2 = P @ Mat2(cp.mu, cp.alpha, 0, 1 / cp.mu) @ Pinv
    B2 = P @ Mat2(1 / cp.nu, 0, cp.beta, cp.nu) @ Pinv
    for m, m2 in ((A, A2), (B, B2)):
        for v, v2 in zip((m.a, m.b, m.c, m.d), (m2.a, m2.b, m2.c, m2.d)):
            assert v2 == pytest.approx(v, abs=1e-8)
    # tr AB = mu/nu + nu/mu + gamma
    direct = (A @ B).trace()
    assert cp.mu / cp.nu + cp.nu / cp.mu + cp.gamma == pytest.approx(direct,
                                                                    abs=1e-9)
    # gamma from traces agrees with gamma from the basis
    g2 = gamma_from_traces(A.trace(), B.trace(), direct)
    assert g2 == pytest.approx(cp.gamma, abs=1e-9)


def test_canonical_form_rejections():
    with pytest.raises(NotCanonicalizable):
        canonical_form(Mat2(0, -1, 1, 0), Mat2(2, 0, 0, 0.5))
    with pytest.raises(NotCanonicalizable):
        canonical_form(Mat2(2, 0, 0, 0.5), Mat2(3, 0, 0, 1 / 3))  # same axis


# ---------------------------------------------------------------------------
# normalization


def test_normalize_identity_tuple():
    R, out = normalize_tuple([Mat2.identity(), Mat2.identity()], 10.0)
    assert R.rows() == Mat2.identity().rows()
    assert out[0].rows() == Mat2.identity().rows()


def test_normalize_single_shear():
    R, out = normalize_tuple([Mat2(1, 1000, 0, 1)], 10.0)
    m = out[0]
    assert m.a == pytest.approx(1.0)
    assert m.b == pytest.approx(1.0, rel=1e-12)
    assert abs(m.c) <= 1e-12


def test_normalize_precondition_violated():
    with pytest.raises(PreconditionViolated):
        normalize_tuple([Mat2(100, 0, 0, 0.01)], 10.0)


def test_normalize_bounds_traces_idempotence(free_pair):
    A, B = free_pair
    rng = random.Random(6)
    bound = c1_bound(10.0)
    for _ in range(100):
        n = math.exp(rng.uniform(0, math.log(1e6)))
        R0 = Mat2(n, rng.uniform(-1, 1) * n, 0, 1 / n) @ Mat2.rotation(rng.uniform(0, math.pi))
        conj = [R0 @ m @ R0.inverse() for m in (A, B)]
        R, out = normalize_tuple(conj, 10.0)
        assert max(m.max_abs_entry() for m in out) <= bound
        # conjugation identity
        for m0, m1 in zip(conj, out):
            back = R @ m0 @ R.inverse()
            for v, w in zip((back.a, back.b, back.c, back.d),
                            (m1.a, m1.b, m1.c, m1.d)):
                assert w == pytest.approx(v, abs=1e-6 * max(1.0, abs(v)))
        # word traces preserved
        for word in ("A", "B", "AB", "AAB", "ABB"):
            t0 = eval_string(conj, word).trace()
            t1 = eval_string(out, word).trace()
            assert t1 == pytest.approx(t0, rel=1e-6, abs=1e-6)
        # idempotence
        _, out2 = normalize_tuple(out, 10.0)
        for m1, m2 in zip(out, out2):
            for v, w in zip((m1.a, m1.b, m1.c, m1.d), (m2.a, m2.b, m2.c, m2.d)):
                assert abs(v - w) <= 1e-6


def test_mat2_norm_closed_form():
    m = Mat2(3, 1, 0, 1 / 3)
    s = m.frobenius_sq()
    expect = math.sqrt(0.5 * (s + math.sqrt(s * s - 4.0)))
    assert m.norm() == pytest.approx(expect, rel=1e-12)


def test_exact_entries_survive_products():
    a = Mat2(Fraction(2), Fraction(1), Fraction(0), Fraction(1, 2))
    b = Mat2(Fraction(1, 2), Fraction(0), Fraction(-9), Fraction(2))
    p = a @ b
    assert p.is_exact()
    assert p.trace() == Fraction(-7)
