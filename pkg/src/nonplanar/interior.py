"""Rank-one connections from the austenite well into the relative interior of the hull.

The radius comes from an explicit bound on the hull of two tetragonal wells,
eps(kappa) = (kappa - 1)^2 / 62 (valid for kappa < 3/2). A determinant Delta
passes when

    |Delta^(1/3) - 1| / Delta^(1/3) * sqrt(Delta^(4/3) + 2 Delta + Delta^(2/3) + 2) < eps(kappa)

and the rank-one point is then F = 1 + (Delta - 1) n (x) n for any unit n.
"""
from dataclasses import dataclass

import numpy as np

from . import mat3
from .errors import InputError, KappaDegenerate, KappaOutOfRange, NoAdmissibleKappa, NonPositiveDelta
from .hulls import KAPPA_ONE_TOL, kappa_set
from .symmetry import as_stretch

KAPPA_MAX = 1.5


def epsilon_dk(kappa):
    """Explicit ball radius (kappa - 1)^2 / 62 around the identity."""
    kappa = float(kappa)
    if not 0.0 < kappa < KAPPA_MAX:
        raise KappaOutOfRange(f"kappa = {kappa!r} outside (0, 3/2)")
    if abs(kappa - 1.0) <= KAPPA_ONE_TOL:
        raise KappaDegenerate("kappa = 1 gives a single well")
    return (kappa - 1.0) ** 2 / 62.0


def _check_delta(delta):
    delta = float(delta)
    if not delta > 0.0:
        raise NonPositiveDelta(f"Delta = {delta!r} must be positive")
    return delta


def cbrt_minus_one(delta):
    """Delta^(1/3) - 1 without cancellation near Delta = 1."""
    return float(np.expm1(np.log1p(float(delta) - 1.0) / 3.0))


def delta_condition_lhs(delta):
    delta = _check_delta(delta)
    c = np.cbrt(delta)
    return abs(cbrt_minus_one(delta)) / c * np.sqrt(c**4 + 2.0 * delta + c**2 + 2.0)


def distance_identity_sq(delta):
    """(1 - Delta^(1/3))^2 (Delta^(4/3) + 2 Delta + Delta^(2/3) + 2)."""
    delta = _check_delta(delta)
    c = np.cbrt(delta)
    return cbrt_minus_one(delta) ** 2 * (c**4 + 2.0 * delta + c**2 + 2.0)


@dataclass(frozen=True)
class InteriorPointCertificate:
    delta: float
    kappa: float
    epsilon: float
    lhs: float
    holds: bool
    point: np.ndarray
    shear: np.ndarray
    normal: np.ndarray
    ball_radius: float
    # the laminate realizing the interior point is not constructed
    microstructure: str = "unknown"

    @property
    def center(self):
        return np.cbrt(self.delta) * np.eye(3)

    @property
    def deviation(self):
        """point - center, evaluated as (1 - Delta^(1/3)) 1 + a (x) n.

        Forming ``point - center`` directly cancels almost every digit when
        Delta is close to 1.
        """
        return -cbrt_minus_one(self.delta) * np.eye(3) + np.outer(self.shear, self.normal)

    @property
    def distance_to_center(self):
        return mat3.norm(self.deviation)

    @property
    def surface_epsilon(self):
        """Radius of a ball around ``point`` contained in the certified ball."""
        return self.ball_radius - self.distance_to_center

    def contains(self, G, det_tol=1e-12):
        """True when G lies in the certified ball intersected with {det = Delta}."""
        G = np.asarray(G, dtype=float)
        on_surface = abs(np.linalg.det(G) - self.delta) <= det_tol * self.delta
        return bool(on_surface and mat3.norm(G - self.center) < self.ball_radius)

    def as_dict(self):
        return {
            "delta": self.delta,
            "kappa": self.kappa,
            "epsilon": self.epsilon,
            "lhs": self.lhs,
            "holds": self.holds,
            "point": self.point.tolist(),
            "shear": self.shear.tolist(),
            "normal": self.normal.tolist(),
            "ball_radius": self.ball_radius,
            "microstructure": self.microstructure,
        }


def construct_interior_point(delta, n=(1.0, 0.0, 0.0), kappa=None, epsilon=None):
    """Certificate for F = 1 + (Delta - 1) n (x) n.

    Pass either ``kappa`` (epsilon then follows from the explicit bound) or
    ``epsilon`` directly.
    """
    delta = _check_delta(delta)
    n = mat3.as_vec3(n, "normal")
    if abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise InputError("normal must be a unit vector")
    if epsilon is None:
        epsilon = epsilon_dk(kappa)
    lhs = delta_condition_lhs(delta)
    a = (delta - 1.0) * n
    F = np.eye(3) + np.outer(a, n)
    cbrt = np.cbrt(delta)
    cert = InteriorPointCertificate(
        delta=delta,
        kappa=float("nan") if kappa is None else float(kappa),
        epsilon=float(epsilon),
        lhs=float(lhs),
        holds=bool(lhs < epsilon),
        point=F,
        shear=a,
        normal=n,
        ball_radius=float(cbrt * epsilon),
    )
    if cert.holds:
        assert abs(np.linalg.det(F) - delta) <= 1e-12 * delta
        assert cert.distance_to_center < cert.ball_radius
    return cert


@dataclass(frozen=True)
class CubicCheck:
    certificate: InteriorPointCertificate
    provenance: tuple
    admissible: tuple  # (kappa, epsilon, holds) for every admissible kappa

    @property
    def holds(self):
        return self.certificate.holds


def cubic_austenite_check(U, n=(1.0, 0.0, 0.0)):
    """Interior-point test for cubic austenite with transformation stretch U.

    Among the admissible kappa (0 < kappa < 3/2, kappa != 1) the one
    maximizing (kappa - 1)^2 is used.
    """
    U = as_stretch(U)
    entries = [e for e in kappa_set(U) if e.usable and 0.0 < e.kappa < KAPPA_MAX]
    if not entries:
        raise NoAdmissibleKappa("no kappa in (0, 3/2) other than 1")
    lhs = delta_condition_lhs(U.delta)
    admissible = tuple(
        (e.kappa, epsilon_dk(e.kappa), bool(lhs < epsilon_dk(e.kappa))) for e in entries
    )
    best = max(entries, key=lambda e: (e.kappa - 1.0) ** 2)
    cert = construct_interior_point(U.delta, n=n, kappa=best.kappa)
    return CubicCheck(cert, best.provenance, admissible)


def certificate_from_dict(d):
    """Rebuild a certificate from its JSON form (as emitted by ``as_dict``)."""
    d = d.get("certificate", d)
    kappa = d.get("kappa")
    return InteriorPointCertificate(
        delta=float(d["delta"]),
        kappa=float("nan") if kappa is None else float(kappa),
        epsilon=float(d["epsilon"]),
        lhs=float(d["lhs"]),
        holds=bool(d["holds"]),
        point=mat3.as_mat3(d["point"], "point"),
        shear=mat3.as_vec3(d["shear"], "shear"),
        normal=mat3.as_vec3(d["normal"], "normal"),
        ball_radius=float(d["ball_radius"]),
        microstructure=d.get("microstructure", "unknown"),
    )
