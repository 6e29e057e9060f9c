"""Explicit quasiconvex-hull machinery.

Covers the two-well membership test, the two-step Mallard diagonalization of a
cubic-austenite stretch, the embedded cubic-to-tetragonal three-well
configurations it produces, and the set of candidate kappa values.
"""
import itertools
from dataclasses import dataclass, field

import numpy as np

from . import mat3
from .errors import InputError
from .symmetry import Stretch, as_stretch
from .twinning import mallard_step

BLOCK_TOL = 1e-8
MINOR_TOL = 1e-8
TRACE_SLACK = 1e-10
KAPPA_MERGE_TOL = 1e-10
KAPPA_ONE_TOL = 1e-12

# the three diagonal entries of the Mallard-diagonalized stretch, in the order
# mu-candidates are listed: Delta/sqrt(cof_jj), sqrt(cof_jj/(U^2)_kk), sqrt((U^2)_kk)
FORMULAS = ("delta/sqrt(cof_jj)", "sqrt(cof_jj/U2_kk)", "sqrt(U2_kk)")


@dataclass(frozen=True)
class TwoWellSpec:
    """Wells U1 = diag(eta1, eta2, eta3) and U2 = diag(eta2, eta1, eta3)."""

    eta1: float
    eta2: float
    eta3: float

    def __post_init__(self):
        if min(self.eta1, self.eta2, self.eta3) <= 0:
            raise InputError("well parameters must be positive")
        if self.eta1 == self.eta2:
            raise InputError("eta1 == eta2: the two wells coincide")

    @property
    def wells(self):
        return (np.diag([self.eta1, self.eta2, self.eta3]), np.diag([self.eta2, self.eta1, self.eta3]))

    def scaled(self, s):
        return TwoWellSpec(s * self.eta1, s * self.eta2, s * self.eta3)


@dataclass(frozen=True)
class HullVerdict:
    member: bool
    block_structure_residual: float
    det_residual: float
    trace_margin: float

    def as_dict(self):
        return {
            "member": self.member,
            "block_structure_residual": self.block_structure_residual,
            "det_residual": self.det_residual,
            "trace_margin": self.trace_margin,
        }


def two_well_membership(F, spec, block_tol=BLOCK_TOL, minor_tol=MINOR_TOL, slack=TRACE_SLACK):
    """Membership of F in the quasiconvex hull of SO(3)U1 u SO(3)U2.

    F^T F must read [[a, c, 0], [c, b, 0], [0, 0, eta3^2]] with
    ab - c^2 = eta1^2 eta2^2 and a + b + 2|c| <= eta1^2 + eta2^2.
    """
    F = mat3.as_mat3(F, "F")
    C = F.T @ F
    e1s, e2s, e3s = spec.eta1**2, spec.eta2**2, spec.eta3**2
    block = max(abs(C[0, 2]), abs(C[1, 2]), abs(C[2, 0]), abs(C[2, 1]), abs(C[2, 2] - e3s))
    a, b = C[0, 0], C[1, 1]
    c = 0.5 * (C[0, 1] + C[1, 0])
    target = e1s * e2s
    det_res = abs(a * b - c * c - target) / target
    margin = e1s + e2s - (a + b + 2.0 * abs(c))
    member = block <= block_tol and det_res <= minor_tol and margin >= -slack
    return HullVerdict(bool(member), float(block), float(det_res), float(margin))


def mallard_diagonalize(U, axes=(0, 1), allow_trivial=False, tol=1e-10):
    """Diagonal stretch reached by two successive Mallard equal-fraction laminates.

    ``axes`` = (j, k) are zero-based indices of the first and second half-turn
    axes. With l the remaining index the result is diag with entries
    Delta/sqrt((cof U^2)_jj) at j, sqrt((cof U^2)_jj/(U^2)_ll) at k and
    sqrt((U^2)_ll) at l.

    A step whose half turn leaves the current Cauchy-Green tensor invariant has
    no twin; by default this raises NoTwin, with ``allow_trivial`` the step is
    taken with zero shear (the laminate is then the matrix itself).
    """
    U = as_stretch(U)
    j, k = axes
    if j == k or {j, k} - {0, 1, 2}:
        raise InputError(f"axes must be two distinct indices in 0..2, got {axes}")
    basis = np.eye(3)
    F = U.matrix
    for axis in (j, k):
        c = mallard_step(F, basis[axis], tol=tol, allow_trivial=allow_trivial)
        F = F + 0.5 * np.outer(c.shear, c.normal)
    D = F.T @ F
    # remaining off-diagonal entries are rounding noise
    return np.diag(np.sqrt(np.diag(D)))


def diagonal_closed_form(U, axes=(0, 1)):
    """Closed-form diagonal entries of ``mallard_diagonalize``."""
    U = as_stretch(U)
    j, k = axes
    (l,) = {0, 1, 2} - {j, k}
    U2 = U.matrix @ U.matrix
    cof = mat3.cofactor(U2)
    d = np.empty(3)
    d[j] = U.delta / np.sqrt(cof[j, j])
    d[k] = np.sqrt(cof[j, j] / U2[l, l])
    d[l] = np.sqrt(U2[l, l])
    return np.diag(d)


def tetragonal_wells(mu, s):
    """diag(mu, s, s) and its two coordinate permutations."""
    return [np.diag(np.roll([mu, s, s], i)) for i in range(3)]


def mu_candidates(U, j, k):
    """The three values available to mu for the index pair (j, k)."""
    U = as_stretch(U)
    U2 = U.matrix @ U.matrix
    cof = mat3.cofactor(U2)
    return (
        U.delta / np.sqrt(cof[j, j]),
        np.sqrt(cof[j, j] / U2[k, k]),
        np.sqrt(U2[k, k]),
    )


@dataclass(frozen=True)
class ThreeWellConfig:
    mu: float
    nu: float
    xi: float
    kappa: float
    pair: tuple
    formula: str
    wells: tuple = field(repr=False)

    @property
    def degenerate(self):
        return abs(self.kappa - 1.0) <= KAPPA_ONE_TOL

    def as_dict(self):
        return {
            "mu": self.mu,
            "nu": self.nu,
            "xi": self.xi,
            "kappa": self.kappa,
            "pair": [self.pair[0] + 1, self.pair[1] + 1],
            "formula": self.formula,
            "degenerate": self.degenerate,
        }


def three_well_configs(U):
    """Every embedded three-well configuration diag(mu, sqrt(nu xi), sqrt(nu xi)).

    One config per ordered pair (j, k), j != k, and per choice of which
    candidate plays mu. kappa follows from mu = Delta^(1/3) kappa^2.
    """
    U = as_stretch(U)
    cbrt = np.cbrt(U.delta)
    out = []
    for j, k in itertools.permutations(range(3), 2):
        cands = mu_candidates(U, j, k)
        for i, formula in enumerate(FORMULAS):
            mu = cands[i]
            nu, xi = (cands[q] for q in range(3) if q != i)
            s = np.sqrt(nu * xi)
            out.append(
                ThreeWellConfig(
                    float(mu), float(nu), float(xi), float(np.sqrt(mu / cbrt)),
                    (j, k), formula, tuple(tetragonal_wells(mu, s)),
                )
            )
    return out


@dataclass(frozen=True)
class KappaEntry:
    kappa: float
    provenance: tuple  # of (j, k, formula), zero-based indices

    @property
    def usable(self):
        return abs(self.kappa - 1.0) > KAPPA_ONE_TOL

    def as_dict(self):
        return {
            "kappa": self.kappa,
            "usable": self.usable,
            "provenance": [
                {"pair": [j + 1, k + 1], "formula": f} for j, k, f in self.provenance
            ],
        }


@dataclass(frozen=True)
class KappaSet:
    entries: tuple

    def values(self):
        return [e.kappa for e in self.entries]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def kappa_set(U, merge_tol=KAPPA_MERGE_TOL):
    """Candidate kappa values, merged within ``merge_tol`` and sorted ascending.

    kappa = Delta^(1/3)/(cof U^2)_jj^(1/4), (cof U^2)_jj^(1/4)/((U^2)_kk^(1/4) Delta^(1/6))
    or (U^2)_kk^(1/4)/Delta^(1/6), over all j != k.
    """
    U = as_stretch(U)
    U2 = U.matrix @ U.matrix
    cof = mat3.cofactor(U2)
    d = U.delta
    raw = []
    for j, k in itertools.permutations(range(3), 2):
        vals = (
            d ** (1 / 3) / cof[j, j] ** 0.25,
            cof[j, j] ** 0.25 / (U2[k, k] ** 0.25 * d ** (1 / 6)),
            U2[k, k] ** 0.25 / d ** (1 / 6),
        )
        raw += [(float(v), (j, k, f)) for v, f in zip(vals, FORMULAS)]
    raw.sort(key=lambda t: t[0])
    merged = []
    for value, prov in raw:
        if merged and abs(value - merged[-1][0]) <= merge_tol:
            merged[-1][1].append(prov)
        else:
            merged.append((value, [prov]))
    return KappaSet(tuple(KappaEntry(v, tuple(p)) for v, p in merged))
