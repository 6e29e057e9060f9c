"""CuAlNi cubic-to-orthorhombic case study and the volume-fraction relation."""
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDenominator, InputError
from .interior import cubic_austenite_check
from .symmetry import Stretch

# lattice parameters of the CuAlNi specimen
CUALNI_ALPHA = 1.06372
CUALNI_BETA = 0.91542
CUALNI_GAMMA = 1.02368


@dataclass(frozen=True)
class LatticeParams:
    alpha: float = CUALNI_ALPHA
    beta: float = CUALNI_BETA
    gamma: float = CUALNI_GAMMA

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma) <= 0:
            raise InputError("lattice parameters must be positive")


def cualni_stretch(params=None):
    """Orthorhombic stretch with beta on e1 and the alpha/gamma pair on the (e2, e3) block."""
    p = LatticeParams() if params is None else params
    s = 0.5 * (p.alpha + p.gamma)
    d = 0.5 * (p.alpha - p.gamma)
    return Stretch(np.array([[p.beta, 0.0, 0.0], [0.0, s, d], [0.0, d, s]]))


def run_cualni_case(params=None):
    """Interior-point verdict for CuAlNi, as a JSON-ready report."""
    U = cualni_stretch(params)
    check = cubic_austenite_check(U)
    cert = check.certificate
    return {
        "delta_cbrt": float(np.cbrt(U.delta)),
        "kappa_star": cert.kappa,
        "kappa_provenance": [
            {"pair": [j + 1, k + 1], "formula": f} for j, k, f in check.provenance
        ],
        "epsilon": cert.epsilon,
        "lhs": cert.lhs,
        "holds": cert.holds,
        "all_admissible_kappas": [
            {"kappa": k, "epsilon": e, "holds": h} for k, e, h in check.admissible
        ],
    }


@dataclass(frozen=True)
class VolumeFractionCoefficients:
    a0: float
    a1: float
    a2: float
    a3: float

    def rhs(self, Lambda):
        q = Lambda * Lambda - Lambda
        den = self.a1 + self.a3 * q
        if abs(den) < 1e-14:
            raise DegenerateDenominator(f"a1 + a3 (Lambda^2 - Lambda) vanishes at Lambda = {Lambda!r}")
        return (self.a0 + self.a2 * q) / den


def volume_fraction_roots(coeffs, Lambda):
    """Volume fractions lambda in [0, 1] with lambda^2 - lambda equal to the coefficient ratio.

    Returns () or a pair (lambda, 1 - lambda) with lambda <= 1/2.
    """
    if not 0.0 <= Lambda <= 1.0:
        raise InputError("Lambda must lie in [0, 1]")
    disc = 1.0 + 4.0 * coeffs.rhs(Lambda)
    if disc < 0.0 or disc > 1.0:
        return ()
    r = 0.5 * np.sqrt(disc)
    return (0.5 - r, 0.5 + r)
