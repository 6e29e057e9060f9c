import mpmath
import numpy as np
import pytest

from helpers import cualni_matrix
from nonplanar.errors import KappaDegenerate, KappaOutOfRange, NoAdmissibleKappa, NonPositiveDelta
from nonplanar.interior import (
    certificate_from_dict,
    construct_interior_point,
    cubic_austenite_check,
    delta_condition_lhs,
    distance_identity_sq,
    epsilon_dk,
)
from nonplanar.symmetry import cubic_group


def lhs_mp(delta):
    mpmath.mp.dps = 50
    d = mpmath.mpf(delta)
    c = mpmath.cbrt(d)
    return abs(c - 1) / c * mpmath.sqrt(c**4 + 2 * d + c**2 + 2)


def test_epsilon_cualni_value():
    assert epsilon_dk(0.957286) == pytest.approx(2.94277e-5, rel=1e-4)


def test_epsilon_boundary():
    assert epsilon_dk(1.5 - 1e-12) == pytest.approx(0.25 / 62, rel=1e-10)
    assert epsilon_dk(1e-9) < 1


@pytest.mark.parametrize("kappa", [0.0, -0.5, 1.5, 2.0])
def test_epsilon_out_of_range(kappa):
    with pytest.raises(KappaOutOfRange):
        epsilon_dk(kappa)


def test_epsilon_degenerate():
    with pytest.raises(KappaDegenerate):
        epsilon_dk(1.0)


def test_lhs_at_one():
    assert delta_condition_lhs(1.0) == 0.0


def test_lhs_cualni_value():
    # the six-digit cube root is too coarse: |cbrt - 1| ~ 1e-3 amplifies rounding
    delta = np.linalg.det(cualni_matrix())
    assert np.cbrt(delta) == pytest.approx(0.998935, abs=5e-7)
    assert delta_condition_lhs(delta) == pytest.approx(2.60824e-3, rel=1e-4)
    assert delta_condition_lhs(0.998935**3) == pytest.approx(2.60824e-3, rel=5e-4)


@pytest.mark.parametrize("delta", [1.000001, 0.9999, 1.0001, 0.5, 2.0])
def test_lhs_matches_extended_precision(delta):
    assert delta_condition_lhs(delta) == pytest.approx(float(lhs_mp(delta)), rel=1e-12)


def test_lhs_nonpositive_delta():
    with pytest.raises(NonPositiveDelta):
        delta_condition_lhs(0.0)


def test_lhs_monotone_near_one():
    t = np.linspace(0.0, 0.01, 401)
    for side in (1, -1):
        values = [delta_condition_lhs(1 + side * x) for x in t]
        assert values[0] == 0.0
        assert np.all(np.diff(values) > 0)


def test_construct_identity():
    cert = construct_interior_point(1.0, n=[0, 1, 0], kappa=0.9)
    assert cert.holds
    np.testing.assert_array_equal(cert.point, np.eye(3))
    np.testing.assert_array_equal(cert.shear, np.zeros(3))


def test_construct_small_delta():
    cert = construct_interior_point(1.000001, n=[1, 0, 0], kappa=0.9)
    eps = 0.1**2 / 62
    assert cert.epsilon == pytest.approx(eps, rel=1e-14)
    assert cert.holds == (float(lhs_mp(1.000001)) < eps)
    assert cert.holds
    np.testing.assert_allclose(cert.point, np.diag([1.000001, 1, 1]), rtol=0, atol=1e-15)


def test_construct_identity_of_proof(rng):
    for delta in rng.uniform(0.9999, 1.0001, size=50):
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        cert = construct_interior_point(delta, n=n, kappa=0.8)
        F = cert.point
        assert abs(np.linalg.det(F) - delta) <= 1e-12 * delta
        np.testing.assert_allclose(cert.deviation, F - np.cbrt(delta) * np.eye(3), rtol=0, atol=1e-15)
        assert np.sum(cert.deviation**2) == pytest.approx(distance_identity_sq(delta), rel=1e-12)
        if cert.holds:
            assert cert.distance_to_center < cert.ball_radius
            assert cert.contains(F)


@pytest.mark.parametrize("delta", [1 + 2**-40, 1 - 3e-9, 1.00007])
def test_distance_identity_near_one_matches_extended_precision(delta):
    mpmath.mp.dps = 50
    c = mpmath.cbrt(mpmath.mpf(delta))
    expected = (1 - c) ** 2 * (c**4 + 2 * mpmath.mpf(delta) + c**2 + 2)
    assert distance_identity_sq(delta) == pytest.approx(float(expected), rel=1e-13)
    cert = construct_interior_point(delta, n=[0.0, 0.0, 1.0], kappa=0.9)
    assert cert.distance_to_center**2 == pytest.approx(float(expected), rel=1e-13)
    assert cert.holds


def test_construct_cualni_fails():
    cert = construct_interior_point(np.linalg.det(cualni_matrix()), kappa=0.957286)
    assert not cert.holds
    assert cert.lhs > cert.epsilon


def test_cubic_check_isotropic():
    with pytest.raises(NoAdmissibleKappa):
        cubic_austenite_check(1.001 * np.eye(3))


def test_cubic_check_cualni(cualni_U):
    check = cubic_austenite_check(cualni_U)
    cert = check.certificate
    assert cert.kappa == pytest.approx(0.957286, abs=5e-7)
    assert cert.epsilon == pytest.approx(2.94277e-5, rel=1e-4)
    assert cert.lhs == pytest.approx(2.60824e-3, rel=1e-4)
    assert not cert.holds
    assert len(check.admissible) == 3
    assert not any(h for _, _, h in check.admissible)


def test_cubic_check_near_volume_preserving(cualni_U):
    d0 = np.linalg.det(cualni_U)
    gap = 1e-3
    while True:
        U = np.cbrt((1 + gap) / d0) * cualni_U
        check = cubic_austenite_check(U)
        if check.holds:
            break
        gap /= 2
        assert gap > 1e-9
    cert = check.certificate
    assert cert.kappa == pytest.approx(0.957286, abs=5e-7)
    assert abs(np.linalg.det(cert.point) - cert.delta) <= 1e-12 * cert.delta
    assert cert.distance_to_center < cert.ball_radius
    assert cert.surface_epsilon > 0


def test_cubic_check_group_invariance(cualni_U):
    base = cubic_austenite_check(cualni_U)
    base_kappas = sorted(k for k, _, _ in base.admissible)
    for R in cubic_group():
        other = cubic_austenite_check(R.T @ cualni_U @ R)
        np.testing.assert_allclose(sorted(k for k, _, _ in other.admissible), base_kappas, rtol=1e-12)
        assert other.holds == base.holds
        assert other.certificate.kappa == pytest.approx(base.certificate.kappa, rel=1e-12)


def test_certificate_round_trip():
    cert = construct_interior_point(1.00002, n=[0, 0, 1], kappa=0.9)
    back = certificate_from_dict({"certificate": cert.as_dict()})
    assert back.holds == cert.holds
    np.testing.assert_array_equal(back.point, cert.point)
    assert back.ball_radius == cert.ball_radius
