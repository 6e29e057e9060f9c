import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonplanar.cualni import (
    LatticeParams,
    VolumeFractionCoefficients,
    cualni_stretch,
    run_cualni_case,
    volume_fraction_roots,
)
from nonplanar.errors import DegenerateDenominator, InputError
from nonplanar.mat3 import sym_eigen


def ratio(rhs):
    return VolumeFractionCoefficients(rhs, 1.0, 0.0, 0.0)


def test_stretch_determinant_and_eigenvalues():
    p = LatticeParams()
    U = cualni_stretch(p)
    assert U.delta == pytest.approx(p.alpha * p.beta * p.gamma, rel=1e-12)
    assert np.cbrt(U.delta) == pytest.approx(0.998935, abs=5e-7)
    np.testing.assert_allclose(sym_eigen(U.matrix).eigenvalues, sorted([p.alpha, p.beta, p.gamma]), atol=1e-12)


def test_equal_alpha_gamma_is_diagonal():
    U = cualni_stretch(LatticeParams(1.05, 0.9, 1.05))
    np.testing.assert_array_equal(U.matrix, np.diag([0.9, 1.05, 1.05]))


def test_lattice_positive():
    with pytest.raises(InputError):
        LatticeParams(1.0, -1.0, 1.0)


def test_case_values():
    r = run_cualni_case()
    assert r["delta_cbrt"] == pytest.approx(0.998935, abs=5e-7)
    assert r["kappa_star"] == pytest.approx(0.957286, abs=5e-7)
    p = LatticeParams()
    assert r["kappa_star"] == pytest.approx(p.beta ** (1 / 3) * (p.alpha * p.gamma) ** (-1 / 6), rel=1e-12)
    assert r["epsilon"] == pytest.approx(2.94277e-5, rel=1e-4)
    assert r["lhs"] == pytest.approx(2.60824e-3, rel=1e-4)
    assert r["holds"] is False
    assert r["kappa_provenance"]
    assert all(0 < e["kappa"] < 1.5 and e["kappa"] != 1 for e in r["all_admissible_kappas"])


def test_case_deterministic():
    assert run_cualni_case() == run_cualni_case()


@pytest.mark.parametrize(
    "rhs, expected",
    [(0.0, (0.0, 1.0)), (-0.25, (0.5, 0.5)), (-0.21, (0.3, 0.7))],
)
def test_roots_examples(rhs, expected):
    np.testing.assert_allclose(volume_fraction_roots(ratio(rhs), 0.3), expected, atol=1e-12)


def test_roots_none_outside_range():
    assert volume_fraction_roots(ratio(0.1), 0.5) == ()
    assert volume_fraction_roots(ratio(-0.3), 0.5) == ()


def test_general_coefficients():
    c = VolumeFractionCoefficients(-0.1, 2.0, 0.4, 1.0)
    L = 0.4
    q = L * L - L
    lo, hi = volume_fraction_roots(c, L)
    rhs = (c.a0 + c.a2 * q) / (c.a1 + c.a3 * q)
    for lam in (lo, hi):
        assert lam * lam - lam == pytest.approx(rhs, abs=1e-14)


def test_degenerate_denominator():
    # a1 + a3 (L^2 - L) = 0.25 - 0.25 at L = 1/2
    with pytest.raises(DegenerateDenominator):
        volume_fraction_roots(VolumeFractionCoefficients(0.0, 0.25, 0.0, 1.0), 0.5)


def test_lambda_range():
    with pytest.raises(InputError):
        volume_fraction_roots(ratio(0.0), 1.5)


finite = st.floats(-5, 5, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(finite, finite, finite, finite, st.floats(0, 1))
def test_roots_pair_symmetric(a0, a1, a2, a3, L):
    c = VolumeFractionCoefficients(a0, a1, a2, a3)
    try:
        roots = volume_fraction_roots(c, L)
    except DegenerateDenominator:
        return
    assert len(roots) in (0, 2)
    if roots:
        lo, hi = roots
        assert 0.0 <= lo <= 0.5 <= hi <= 1.0
        assert lo + hi == pytest.approx(1.0, abs=1e-15)
