"""Rank-one connections, Mallard twins and the habit-plane equation.

The solver works through the classical middle-eigenvalue construction: for
F with C = F^T F != 1 and eigenvalues l1 <= l2 = 1 <= l3, the equation
Q F = 1 + b (x) m has exactly two solutions, given in closed form in the
eigenframe of C.
"""
from dataclasses import dataclass

import numpy as np

from . import mat3
from .errors import (
    DegenerateCoincidence,
    DeterminantMismatch,
    IdentityInput,
    NoSolution,
    NoTwin,
    SingularInput,
)
from .symmetry import as_stretch, half_turn

MIDDLE_EIGENVALUE_TOL = 1e-8
DET_MATCH_TOL = 1e-10


@dataclass(frozen=True)
class RankOneConnection:
    """Q B = A + a (x) n."""

    rotation: np.ndarray
    shear: np.ndarray
    normal: np.ndarray
    residual: float

    def as_dict(self):
        return {
            "rotation": self.rotation.tolist(),
            "shear": self.shear.tolist(),
            "normal": self.normal.tolist(),
            "residual": self.residual,
        }


@dataclass(frozen=True)
class HabitPlaneSolution:
    """R M = 1 + b (x) m."""

    rotation: np.ndarray
    shape_vector: np.ndarray
    habit_normal: np.ndarray
    residual: float

    def as_dict(self):
        return {
            "rotation": self.rotation.tolist(),
            "shape_vector": self.shape_vector.tolist(),
            "habit_normal": self.habit_normal.tolist(),
            "residual": self.residual,
        }


def _identity_rank_one(F, tol):
    """Solutions (Q, b, m) of Q F = 1 + b (x) m, |m| = 1.

    Raises IdentityInput when F^T F = 1 and NoSolution when the middle
    eigenvalue of F^T F is not 1.
    """
    C = F.T @ F
    if mat3.norm(C - np.eye(3)) <= tol:
        raise IdentityInput("F^T F is the identity; F is a rotation")
    eig = mat3.sym_eigen(C)
    l1, l2, l3 = eig.eigenvalues
    if abs(l2 - 1.0) > tol:
        raise NoSolution(f"middle eigenvalue of F^T F is {l2:.12g}, not 1")
    e1, e3 = eig.eigenvectors[:, 0], eig.eigenvectors[:, 2]
    # clamp tiny negatives from rounding when an outer eigenvalue sits at 1
    p1 = max(1.0 - l1, 0.0)
    p3 = max(l3 - 1.0, 0.0)
    gap = l3 - l1
    Finv = np.linalg.inv(F)
    out = []
    for kappa in (1.0, -1.0):
        m = (np.sqrt(l3) - np.sqrt(l1)) / np.sqrt(gap) * (-np.sqrt(p1) * e1 + kappa * np.sqrt(p3) * e3)
        b = np.sqrt(l3 * p1 / gap) * e1 + kappa * np.sqrt(l1 * p3 / gap) * e3
        rho = np.linalg.norm(m)
        m, b = m / rho, b * rho
        m, s = mat3.sign_normalize(m)
        b = s * b
        Q = (np.eye(3) + np.outer(b, m)) @ Finv
        out.append((Q, b, m))
    return out


def _lex_key(v):
    return tuple(np.round(v, 12))


def solve_rank_one(A, B, tol=MIDDLE_EIGENVALUE_TOL):
    """All (Q, a, n) with Q B = A + a (x) n, |n| = 1.

    Returns an empty list when no rotation connects the wells and otherwise
    exactly two connections ordered by their normals. Raises
    DegenerateCoincidence when B already lies on the well of A.
    """
    A = mat3.as_mat3(A, "A")
    B = mat3.as_mat3(B, "B")
    dA, dB = np.linalg.det(A), np.linalg.det(B)
    if dA <= 0.0 or dB <= 0.0:
        raise SingularInput("A and B need positive determinants")
    if abs(dA - dB) > DET_MATCH_TOL * max(abs(dA), abs(dB)):
        raise DeterminantMismatch(f"det A = {dA:.12g} but det B = {dB:.12g}")
    # Q B A^{-1} = 1 + a (x) A^{-T} n
    F = B @ np.linalg.inv(A)
    try:
        sols = _identity_rank_one(F, tol)
    except IdentityInput:
        raise DegenerateCoincidence("B = Q A for some rotation Q") from None
    except NoSolution:
        return []
    out = []
    for Q, b, m in sols:
        q = A.T @ m
        length = np.linalg.norm(q)
        n, a = q / length, b * length
        n, s = mat3.sign_normalize(n)
        a = s * a
        Q = mat3.polar_rotation(Q)
        res = mat3.norm(Q @ B - A - np.outer(a, n))
        out.append(RankOneConnection(Q, a, n, res))
    out.sort(key=lambda c: _lex_key(c.normal))
    return out


def habit_plane(M, tol=MIDDLE_EIGENVALUE_TOL):
    """The two solutions (R, b, m) of R M = 1 + b (x) m."""
    M = mat3.as_mat3(M, "M")
    if np.linalg.det(M) <= 0.0:
        raise SingularInput("det M must be positive")
    out = []
    for R, b, m in _identity_rank_one(M, tol):
        R = mat3.polar_rotation(R)
        res = mat3.norm(R @ M - np.eye(3) - np.outer(b, m))
        out.append(HabitPlaneSolution(R, b, m, res))
    out.sort(key=lambda s: _lex_key(s.habit_normal))
    return out


def twin_shear(F, e):
    """Shear ``a`` of the Mallard twin Q F R - F = a (x) e, R the half turn about e.

    a = 2 (F^{-T} e / |F^{-T} e|^2 - F e). Valid for any F with positive
    determinant; it vanishes exactly when R F^T F R = F^T F.
    """
    g = np.linalg.solve(F.T, e)
    return 2.0 * (g / (g @ g) - F @ e)


def mallard_step(F, e, tol=1e-10, allow_trivial=False):
    """Rank-one connection between F and F R for R the half turn about ``e``.

    With ``allow_trivial`` an invariant direction (R F^T F R = F^T F) yields the
    trivial connection Q = F R F^{-1}, a = 0 instead of NoTwin.
    """
    F = mat3.as_mat3(F)
    e = mat3.unit(mat3.as_vec3(e, "axis"))
    R = half_turn(e)
    C = F.T @ F
    if mat3.norm(R @ C @ R - C) <= tol * max(1.0, mat3.norm(C)):
        if not allow_trivial:
            raise NoTwin("the half turn leaves F^T F invariant")
        Q = mat3.polar_rotation(F @ np.linalg.inv(F @ R))
        a = np.zeros(3)
    else:
        a = twin_shear(F, e)
        Q = mat3.polar_rotation((F + np.outer(a, e)) @ np.linalg.inv(F @ R))
    res = mat3.norm(Q @ F @ R - F - np.outer(a, e))
    return RankOneConnection(Q, a, e, res)


def mallard_twin(U, e, tol=1e-10):
    """Mallard twin (Q, a, e) with Q U R - U = a (x) e, R = -1 + 2 e (x) e."""
    U = as_stretch(U)
    return mallard_step(U.matrix, e, tol=tol)


def mallard_average(U, e, tol=1e-10, allow_trivial=False):
    """Equal-fraction laminate F_1/2 = U + a (x) e / 2 of the Mallard twin."""
    U = as_stretch(U)
    c = mallard_step(U.matrix, e, tol=tol, allow_trivial=allow_trivial)
    return U.matrix + 0.5 * np.outer(c.shear, c.normal)
