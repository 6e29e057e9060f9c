"""Independent generators and oracles shared by the test modules."""
import numpy as np
from scipy.optimize import least_squares
from scipy.spatial.transform import Rotation

from nonplanar import twinning

CUALNI = (1.06372, 0.91542, 1.02368)


def cualni_matrix(alpha=CUALNI[0], beta=CUALNI[1], gamma=CUALNI[2]):
    s, d = (alpha + gamma) / 2, (alpha - gamma) / 2
    return np.array([[beta, 0, 0], [0, s, d], [0, d, s]], dtype=float)


def random_rotation(rng):
    return Rotation.random(random_state=rng).as_matrix()


def random_spd(rng, spread=0.15):
    """Generic symmetric positive-definite matrix near the identity."""
    Q = random_rotation(rng)
    w = 1.0 + rng.uniform(-spread, spread, size=3)
    return Q @ np.diag(w) @ Q.T


def random_symmetric(rng, scale=1.0):
    A = rng.normal(scale=scale, size=(3, 3))
    return 0.5 * (A + A.T)


# --- two-well laminates ---------------------------------------------------

def first_order_laminate(spec, rng, which=None, lam=None):
    """U1 + lam a (x) n for a twin connection Q U2 = U1 + a (x) n, left-rotated."""
    U1, U2 = spec.wells
    conns = twinning.solve_rank_one(U1, U2)
    c = conns[rng.integers(2) if which is None else which]
    lam = rng.uniform() if lam is None else lam
    return U1 + lam * np.outer(c.shear, c.normal)


def second_order_laminate(spec, rng):
    """Convex combination, along a rank-one line, of two first-order laminates."""
    G1 = first_order_laminate(spec, rng, which=0)
    G2 = random_rotation(rng) @ first_order_laminate(spec, rng, which=1)
    conns = twinning.solve_rank_one(G1, G2)
    assert conns, "block-structured matrices of equal determinant are always rank-one connected"
    c = conns[rng.integers(2)]
    return G1 + rng.uniform() * np.outer(c.shear, c.normal)


def laminates(spec, rng, count):
    out = []
    for i in range(count):
        F = first_order_laminate(spec, rng) if i % 2 == 0 else second_order_laminate(spec, rng)
        out.append(random_rotation(rng) @ F)
    return out


def trace_violators(spec, rng, count, min_excess=1e-3):
    """Det-matched matrices whose F^T F has the right block form but a + b + 2|c| too large."""
    e1s, e2s, e3s = spec.eta1**2, spec.eta2**2, spec.eta3**2
    out = []
    while len(out) < count:
        c = rng.uniform(-0.5, 0.5)
        a = rng.uniform(0.3, 3.0)
        b = (e1s * e2s + c * c) / a
        if a + b + 2 * abs(c) - (e1s + e2s) < min_excess:
            continue
        C = np.array([[a, c, 0], [c, b, 0], [0, 0, e3s]])
        w, V = np.linalg.eigh(C)
        out.append(random_rotation(rng) @ V @ np.diag(np.sqrt(w)) @ V.T)
    return out


# --- brute-force rank-one search --------------------------------------------

def _cof(M):
    return np.array([np.cross(M[1], M[2]), np.cross(M[2], M[0]), np.cross(M[0], M[1])])


def brute_force_rank_one(A, B, axes=150, angles=48):
    """Rotations Q with Q B - A rank one, by grid search over axis-angle then polishing.

    Rank one means every 2x2 minor vanishes, i.e. cof(Q B - A) = 0, which is a
    smooth system in the rotation vector.
    """
    i = np.arange(axes) + 0.5
    phi = np.arccos(1 - 2 * i / axes)
    theta = np.pi * (1 + 5**0.5) * i
    dirs = np.column_stack([np.cos(theta) * np.sin(phi), np.sin(theta) * np.sin(phi), np.cos(phi)])
    cands = []
    for d in dirs:
        for t in np.linspace(0, np.pi, angles, endpoint=False)[1:]:
            rv = t * d
            Q = Rotation.from_rotvec(rv).as_matrix()
            cands.append((np.linalg.norm(_cof(Q @ B - A)), rv))
    cands.sort(key=lambda c: c[0])

    def resid(rv):
        return _cof(Rotation.from_rotvec(rv).as_matrix() @ B - A).ravel()

    found = []
    for _, rv in cands[:40]:
        sol = least_squares(resid, rv, xtol=1e-15, ftol=1e-15, gtol=1e-15)
        Q = Rotation.from_rotvec(sol.x).as_matrix()
        M = Q @ B - A
        if np.linalg.norm(_cof(M)) > 1e-12 or np.linalg.norm(M) < 1e-8:
            continue
        if all(np.linalg.norm(Q - P) > 1e-6 for P, _ in found):
            _, s, vt = np.linalg.svd(M)
            found.append((Q, vt[0]))
    return found
