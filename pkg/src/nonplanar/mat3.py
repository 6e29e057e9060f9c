"""Small 3x3 linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of shape (3, 3). Vectors are arrays of
shape (3,).
"""
from dataclasses import dataclass

import numpy as np

from .errors import NonFinite, NonSymmetric, SingularInput

DEFAULT_TOL = 1e-10
SYMMETRY_TOL = 1e-12


def as_mat3(A, name="matrix"):
    """Coerce ``A`` to a finite float (3, 3) array."""
    M = np.array(A, dtype=float)
    if M.shape != (3, 3):
        raise NonFinite(f"{name} must be 3x3, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NonFinite(f"{name} has non-finite entries")
    return M


def as_vec3(v, name="vector"):
    x = np.array(v, dtype=float)
    if x.shape != (3,):
        raise NonFinite(f"{name} must have 3 components, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise NonFinite(f"{name} has non-finite entries")
    return x


def norm(A):
    """Frobenius norm (Euclidean norm for vectors)."""
    return float(np.linalg.norm(A))


def outer(a, b):
    return np.outer(a, b)


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def sign_normalize(v):
    """Flip ``v`` so its largest-magnitude component is positive.

    Components tying with the maximum up to rounding resolve to the first one.
    Returns the (possibly flipped) vector and the applied sign.
    """
    v = np.asarray(v, dtype=float)
    mag = np.abs(v)
    lead = int(np.argmax(mag >= mag.max() * (1.0 - 1e-12)))
    s = 1.0 if v[lead] >= 0 else -1.0
    return s * v, s


@dataclass(frozen=True)
class SymEigen:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # columns, matching eigenvalues

    def reconstruct(self):
        V = self.eigenvectors
        return V @ np.diag(self.eigenvalues) @ V.T


def asymmetry(A):
    return norm(A - A.T) / max(1.0, norm(A))


def sym_eigen(A, tol=SYMMETRY_TOL):
    """Sorted spectrum and orthonormal eigenframe of a symmetric matrix.

    Each eigenvector is signed so that its largest-magnitude component is
    positive, which makes the frame reproducible across platforms.
    """
    A = as_mat3(A)
    if asymmetry(A) > tol:
        raise NonSymmetric(f"relative asymmetry {asymmetry(A):.3e} exceeds {tol:.1e}")
    w, V = np.linalg.eigh(0.5 * (A + A.T))
    for i in range(3):
        V[:, i], _ = sign_normalize(V[:, i])
    return SymEigen(w, V)


def sym_sqrt(C):
    """Positive square root of a symmetric positive-definite matrix."""
    eig = sym_eigen(C)
    return eig.eigenvectors @ np.diag(np.sqrt(eig.eigenvalues)) @ eig.eigenvectors.T


def polar_rotation(F, tol=DEFAULT_TOL):
    """Rotation factor R of the polar decomposition F = R U."""
    F = as_mat3(F)
    d = np.linalg.det(F)
    if d <= tol:
        raise SingularInput(f"det F = {d:.3e} is not positive")
    W, _, Vt = np.linalg.svd(F)
    return W @ Vt


def cofactor(A):
    """Cofactor matrix, satisfying cof(A)^T A = det(A) 1."""
    A = as_mat3(A)
    r0, r1, r2 = A
    return np.array([np.cross(r1, r2), np.cross(r2, r0), np.cross(r0, r1)])


def is_rotation(R, tol=1e-10):
    R = np.asarray(R, dtype=float)
    return norm(R.T @ R - np.eye(3)) <= tol and abs(np.linalg.det(R) - 1.0) <= tol
