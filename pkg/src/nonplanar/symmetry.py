"""Cubic point group and martensite variants."""
from dataclasses import dataclass, field

import numpy as np

from . import mat3
from .errors import InputError, ZeroAxis

VARIANT_TOL = 1e-8


def rotation_about_axis(angle, axis):
    """Rotation by ``angle`` (radians) about ``axis`` (Rodrigues formula)."""
    e = mat3.as_vec3(axis, "axis")
    length = np.linalg.norm(e)
    if length == 0.0:
        raise ZeroAxis("rotation axis must be non-zero")
    e = e / length
    K = np.array([[0.0, -e[2], e[1]], [e[2], 0.0, -e[0]], [-e[1], e[0], 0.0]])
    c, s = np.cos(angle), np.sin(angle)
    return c * np.eye(3) + s * K + (1.0 - c) * np.outer(e, e)


def half_turn(e):
    """180 degree rotation about ``e``: -1 + 2 e(x)e for unit e."""
    e = mat3.unit(mat3.as_vec3(e, "axis"))
    return -np.eye(3) + 2.0 * np.outer(e, e)


def _cubic_generators():
    e1, e2, e3 = np.eye(3)
    q = np.pi / 2
    t = 2 * np.pi / 3
    out = [(0.0, e1)]
    for e in (e1, e2, e3):
        out += [(q, e), (-q, e)]
    for d in (e1 + e2 + e3, -e1 + e2 + e3, e1 - e2 + e3, e1 + e2 - e3):
        out += [(t, d), (-t, d)]
    for e in (e1, e2, e3):
        out.append((np.pi, e))
    for d in (e1 + e2, e1 - e2, e2 + e3, e2 - e3, e3 + e1, e3 - e1):
        out.append((np.pi, d))
    return out


@dataclass(frozen=True)
class PointGroup:
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def index_of(self, R, tol=1e-10):
        """Index of the element closest to ``R``, or -1 if none is within ``tol``."""
        d = [mat3.norm(R - G) for G in self.elements]
        i = int(np.argmin(d))
        return i if d[i] <= tol else -1


def cubic_group():
    """The 24 rotations of the cube.

    Order: identity, +-90 deg about e1, e2, e3, +-120 deg about the four body
    diagonals, 180 deg about e1, e2, e3, then 180 deg about the six face
    diagonals.
    """
    elements = []
    for angle, axis in _cubic_generators():
        R = rotation_about_axis(angle, axis)
        # entries are exactly 0, +-1 for the cubic group
        elements.append(np.round(R))
    return PointGroup(tuple(elements))


@dataclass(frozen=True)
class Stretch:
    """Symmetric positive-definite transformation stretch U with det U = delta."""

    matrix: np.ndarray
    determinant: float = field(default=None)

    def __post_init__(self):
        U = mat3.as_mat3(self.matrix, "stretch")
        if mat3.asymmetry(U) > 1e-12:
            raise InputError("stretch must be symmetric")
        U = 0.5 * (U + U.T)
        if np.linalg.eigvalsh(U)[0] <= 0.0:
            raise InputError("stretch must be positive definite")
        object.__setattr__(self, "matrix", U)
        object.__setattr__(self, "determinant", float(np.linalg.det(U)))

    @property
    def delta(self):
        return self.determinant

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def as_stretch(U):
    return U if isinstance(U, Stretch) else Stretch(U)


def variants(U, group=None, tol=VARIANT_TOL):
    """Distinct matrices R^T U R over the group, in group order."""
    U = as_stretch(U)
    group = cubic_group() if group is None else group
    found = []
    for R in group:
        V = R.T @ U.matrix @ R
        if all(mat3.norm(V - W) > tol for W in found):
            found.append(V)
    return [Stretch(V) for V in found]
