"""Curved austenite-martensite interfaces and their compatibility checks.

The interface is the zero set of

    f(x) = x.n + h(x.v),    v = a ^ n  (or a vector perpendicular to a and n),

so grad f = n + h'(x.v) v and a.grad f = a.n everywhere. On the '+' side the
deformation is y(x) = x + a f(x), on the '-' side y(x) = x (austenite), and the
jump Dy+ - 1 = a (x) grad f = a(x) (x) n(x) with a(x) = |grad f| a,
n(x) = grad f / |grad f| holds on the whole interface.

Vectors are stored as a unit direction ``transverse`` and its length
``transverse_scale`` so that v = transverse_scale * transverse.
"""
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import mat3
from .errors import (
    BoundViolated,
    DisconnectedMesh,
    InputError,
    MeshSurfaceMismatch,
    OutOfDomain,
    PlanarProfile,
    ZeroShear,
)

PARALLEL_TOL = 1e-12
ON_SURFACE_TOL = 1e-10
NONPLANAR_TOL = 1e-6
DEFAULT_STEPS = 1000

# max |(2t - 2t^3) exp(-t^2)|, attained at t^2 = (5 - sqrt(17)) / 4
_T2 = (5.0 - np.sqrt(17.0)) / 4.0
GAUSS_BUMP_SUP = float((2.0 * np.sqrt(_T2) - 2.0 * _T2 * np.sqrt(_T2)) * np.exp(-_T2))


@dataclass(frozen=True)
class ProfileFunction:
    """Profile h with derivative dh and a certified bound sup |dh| <= sup_bound."""

    h: Callable
    dh: Callable
    sup_bound: float
    name: str = "custom"
    scale: float = 1.0

    def __post_init__(self):
        if abs(float(self.h(0.0))) > 1e-12 or abs(float(self.dh(0.0))) > 1e-12:
            raise InputError("profile must satisfy h(0) = h'(0) = 0")

    def check_bound(self, lo, hi, samples=20001):
        """Largest sampled |dh| on [lo, hi]; raises if it exceeds sup_bound."""
        t = np.linspace(lo, hi, samples)
        peak = float(np.max(np.abs(self.dh(t))))
        if peak > self.sup_bound * (1.0 + 1e-12):
            raise InputError(f"sampled sup |h'| = {peak:.6g} exceeds declared bound {self.sup_bound:.6g}")
        return peak

    def is_planar(self, lo, hi, samples=20001):
        """True when dh is constant (to within 1e-6) on [lo, hi]."""
        d = self.dh(np.linspace(lo, hi, samples))
        return float(np.max(d) - np.min(d)) <= NONPLANAR_TOL


def gauss_bump(scale=1.0):
    """h(t) = scale * t^2 exp(-t^2)."""
    s = float(scale)
    return ProfileFunction(
        h=lambda t: s * np.square(t) * np.exp(-np.square(t)),
        dh=lambda t: s * (2.0 * t - 2.0 * t**3) * np.exp(-np.square(t)),
        sup_bound=abs(s) * GAUSS_BUMP_SUP,
        name="gauss-bump",
        scale=s,
    )


def zero_profile():
    return ProfileFunction(
        h=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        dh=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        sup_bound=0.0,
        name="zero",
        scale=0.0,
    )


def perpendicular_unit(n):
    """First standard basis vector not parallel to n, orthonormalized against n."""
    for e in np.eye(3):
        p = e - (e @ n) * n
        if np.linalg.norm(p) > NONPLANAR_TOL:
            return p / np.linalg.norm(p)
    raise InputError("no perpendicular found")  # unreachable for unit n


@dataclass(frozen=True)
class InterfaceSurface:
    normal_at_origin: np.ndarray
    shear: np.ndarray
    transverse: np.ndarray
    transverse_scale: float
    profile: ProfileFunction
    domain_radius: float
    epsilon: Optional[float] = None

    @property
    def tangent(self):
        """Unit vector m perpendicular to n and the transverse direction."""
        return np.cross(self.normal_at_origin, self.transverse)

    @property
    def half_width(self):
        """Half-width of the square parameter patch that is meshed."""
        return 0.5 * self.domain_radius

    def f(self, x):
        x = np.asarray(x, dtype=float)
        return x @ self.normal_at_origin + self.profile.h(self.transverse_scale * (x @ self.transverse))

    def grad_f(self, x):
        x = np.asarray(x, dtype=float)
        slope = self.profile.dh(self.transverse_scale * (x @ self.transverse))
        return self.normal_at_origin + self.transverse_scale * np.multiply.outer(slope, self.transverse)

    def point(self, s, k):
        """Point of the interface with transverse coordinate s and tangent coordinate k."""
        s = np.asarray(s, dtype=float)
        k = np.asarray(k, dtype=float)
        lift = -self.profile.h(self.transverse_scale * s)
        return (
            np.multiply.outer(lift, self.normal_at_origin)
            + np.multiply.outer(s, self.transverse)
            + np.multiply.outer(k, self.tangent)
        )


def build_surface(n, a, profile, epsilon=None, radius=1.0, allow_planar=False):
    """Interface f(x) = x.n + h(x.(a ^ n)) = 0 through the origin.

    When ``epsilon`` is given the profile must satisfy sup |h'| < epsilon/|a|^2,
    which keeps |grad f - n| < epsilon/|a| and hence Dy+ inside the ball of
    radius epsilon around 1 + a (x) n. Without it no smallness is imposed.
    """
    n = mat3.as_vec3(n, "normal")
    a = mat3.as_vec3(a, "shear")
    if abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise InputError("normal must be a unit vector")
    a_len = np.linalg.norm(a)
    if a_len == 0.0:
        raise ZeroShear("shear vector must be non-zero")
    if not radius > 0:
        raise InputError("domain radius must be positive")
    cross = np.cross(a, n)
    c_len = np.linalg.norm(cross)
    if c_len <= PARALLEL_TOL * a_len:
        w, scale = perpendicular_unit(n), a_len
    else:
        w, scale = cross / c_len, c_len
    if epsilon is not None:
        limit = epsilon / a_len**2
        if not profile.sup_bound < limit:
            raise BoundViolated(
                f"sup |h'| = {profile.sup_bound:.6g} must be < epsilon/|a|^2 = {limit:.6g}"
            )
    reach = scale * 0.5 * radius
    if not allow_planar and profile.is_planar(-reach, reach):
        raise PlanarProfile("h' is constant on the meshed range: the interface is a plane")
    return InterfaceSurface(n, a, w, float(scale), profile, float(radius), epsilon)


def deformation_plus(surface, x):
    """y+(x) = x + a f(x) and its gradient 1 + a (x) grad f(x)."""
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1)
    if np.any(r > surface.domain_radius * (1.0 + 1e-12)):
        raise OutOfDomain(f"|x| = {np.max(r):.6g} exceeds the domain radius {surface.domain_radius:.6g}")
    a = surface.shear
    y = x + np.multiply.outer(surface.f(x), a)
    grad = np.eye(3) + np.einsum("i,...j->...ij", a, surface.grad_f(x))
    return y, grad


@dataclass(frozen=True)
class SurfaceMesh:
    vertices: np.ndarray
    triangles: np.ndarray
    normals: np.ndarray
    shears: np.ndarray
    params: np.ndarray = field(repr=False)  # (s, k) per vertex
    resolution: int = 0
    surface: InterfaceSurface = field(default=None, repr=False)


def mesh_interface(surface, resolution):
    """Graph mesh of the interface over the square |s|, |k| <= radius/2.

    s runs along the transverse direction and k along the tangent m; vertex
    (i, j) sits at index i * resolution + j.
    """
    resolution = int(resolution)
    if resolution < 2:
        raise InputError("resolution must be at least 2")
    L = surface.half_width
    grid = np.linspace(-L, L, resolution)
    S, K = np.meshgrid(grid, grid, indexing="ij")
    params = np.column_stack([S.ravel(), K.ravel()])
    vertices = surface.point(params[:, 0], params[:, 1])
    if np.any(np.linalg.norm(vertices, axis=1) > surface.domain_radius):
        raise OutOfDomain("profile lifts the mesh outside the domain ball; increase the radius")

    idx = np.arange(resolution * resolution).reshape(resolution, resolution)
    p00, p10 = idx[:-1, :-1].ravel(), idx[1:, :-1].ravel()
    p01, p11 = idx[:-1, 1:].ravel(), idx[1:, 1:].ravel()
    triangles = np.concatenate([np.column_stack([p00, p10, p11]), np.column_stack([p00, p11, p01])])

    G = surface.grad_f(vertices)
    lengths = np.linalg.norm(G, axis=1)
    return SurfaceMesh(
        vertices=vertices,
        triangles=triangles,
        normals=G / lengths[:, None],
        shears=np.outer(lengths, surface.shear),
        params=params,
        resolution=resolution,
        surface=surface,
    )


@dataclass(frozen=True)
class CompatibilityReport:
    max_jump_residual: float
    det_deviation: float
    ball_membership_margin: Optional[float]
    path_continuity_residual: float
    nonplanarity_witness: Optional[tuple]
    hull_failures: Optional[int] = None
    vertex_count: int = 0
    per_vertex: dict = field(default=None, repr=False, compare=False)

    def as_dict(self):
        return {
            "max_jump_residual": self.max_jump_residual,
            "det_deviation": self.det_deviation,
            "ball_membership_margin": self.ball_membership_margin,
            "path_continuity_residual": self.path_continuity_residual,
            "nonplanarity_witness": None if self.nonplanarity_witness is None else list(self.nonplanarity_witness),
            # distinct normals are searched on the meshed patch only, not on every smaller neighborhood
            "nonplanarity_scope": "meshed-domain",
            "hull_failures": self.hull_failures,
            "vertex_count": self.vertex_count,
        }


def _check_mesh(surface, mesh):
    if mesh.surface is not None and mesh.surface is not surface:
        raise MeshSurfaceMismatch("mesh was built from a different surface")
    off = np.max(np.abs(surface.f(mesh.vertices)))
    if off > ON_SURFACE_TOL:
        raise MeshSurfaceMismatch(f"mesh vertex off the surface by {off:.3e}")


def verify_compatibility(surface, mesh, hull_test=None):
    """Check Dy+(x) = 1 + a(x) (x) n(x) and det Dy+ = 1 + a.n at every vertex.

    ``hull_test`` is an optional predicate on 3x3 matrices; each Dy+(x) is
    passed to it and the failures are counted.
    """
    _check_mesh(surface, mesh)
    x = mesh.vertices
    a, n = surface.shear, surface.normal_at_origin
    _, D = deformation_plus(surface, x)
    jump = D - np.eye(3) - np.einsum("vi,vj->vij", mesh.shears, mesh.normals)
    jump_res = np.linalg.norm(jump, axis=(1, 2))
    det_dev = np.abs(np.linalg.det(D) - (1.0 + a @ n))
    if surface.epsilon is None:
        margins = np.full(len(x), np.nan)
        margin = None
    else:
        G = surface.grad_f(x)
        margins = surface.epsilon / np.linalg.norm(a) - np.linalg.norm(G - n, axis=1)
        margin = float(np.min(margins))
    failures = None
    if hull_test is not None:
        failures = int(sum(not hull_test(Dv) for Dv in D))
    vertex_gap = float(np.max(np.abs(surface.f(x)))) * float(np.linalg.norm(a))

    tw = mesh.normals @ surface.transverse
    i, j = int(np.argmin(tw)), int(np.argmax(tw))
    witness = (i, j) if np.linalg.norm(mesh.normals[i] - mesh.normals[j]) > NONPLANAR_TOL else None

    return CompatibilityReport(
        max_jump_residual=float(np.max(jump_res)),
        det_deviation=float(np.max(det_dev)),
        ball_membership_margin=margin,
        path_continuity_residual=vertex_gap,
        nonplanarity_witness=witness,
        hull_failures=failures,
        vertex_count=len(x),
        per_vertex={"jump_residual": jump_res, "det_deviation": det_dev, "ball_margin": margins},
    )


def _require_connected(mesh):
    t = mesh.triangles
    rows = np.concatenate([t[:, 0], t[:, 1], t[:, 2]])
    cols = np.concatenate([t[:, 1], t[:, 2], t[:, 0]])
    N = len(mesh.vertices)
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(N, N))
    count, _ = connected_components(graph, directed=False)
    if count != 1:
        raise DisconnectedMesh(f"mesh has {count} connected components")


def random_pairs(mesh, trials, seed=0):
    rng = np.random.default_rng(seed)
    return rng.integers(0, len(mesh.vertices), size=(int(trials), 2))


def _running_sup(integrand, dt):
    """max_t |int_0^t g| for samples g of shape (trials, steps + 1, 3)."""
    acc = cumulative_trapezoid(integrand, dx=dt, axis=1, initial=0.0)
    return np.max(np.linalg.norm(acc, axis=2), axis=1)


def in_surface_path_residuals(surface, mesh, pairs, steps=DEFAULT_STEPS):
    """Accumulated jump along in-surface graph paths between vertex pairs.

    Each path is the straight segment between the endpoints' (s, k)
    coordinates lifted onto the interface. Returns, per pair, the largest
    |int_0^t [Dy+ - Dy-] gamma' dt| over t in [0, 1].
    """
    t = np.linspace(0.0, 1.0, steps + 1)
    p0, p1 = mesh.params[pairs[:, 0]], mesh.params[pairs[:, 1]]
    ds, dk = (p1 - p0)[:, 0], (p1 - p0)[:, 1]
    S = p0[:, 0, None] + t * ds[:, None]
    K = p0[:, 1, None] + t * dk[:, None]
    gamma = surface.point(S, K)
    sigma = surface.transverse_scale
    slope = surface.profile.dh(sigma * S)
    n, w, m = surface.normal_at_origin, surface.transverse, surface.tangent
    velocity = (
        np.multiply.outer(-sigma * slope * ds[:, None], n)
        + np.multiply.outer(ds[:, None] * np.ones_like(t), w)
        + np.multiply.outer(dk[:, None] * np.ones_like(t), m)
    )
    rate = np.einsum("tsi,tsi->ts", surface.grad_f(gamma), velocity)
    return _running_sup(np.multiply.outer(rate, surface.shear), 1.0 / steps)


def chord_residuals(surface, mesh, pairs, steps=DEFAULT_STEPS):
    """Same integral along the straight chord between the two vertices.

    The chord leaves the interface, so the running jump is generically non-zero.
    """
    t = np.linspace(0.0, 1.0, steps + 1)
    x0, x1 = mesh.vertices[pairs[:, 0]], mesh.vertices[pairs[:, 1]]
    gamma = x0[:, None, :] + t[None, :, None] * (x1 - x0)[:, None, :]
    rate = np.einsum("tsi,ti->ts", surface.grad_f(gamma), x1 - x0)
    return _running_sup(np.multiply.outer(rate, surface.shear), 1.0 / steps)


def path_continuity_check(surface, mesh, trials=100, steps=DEFAULT_STEPS, seed=0):
    """Largest displacement mismatch y+ - y- along random in-surface paths.

    Also includes the direct vertex check |y+(x) - x| = |a f(x)|.
    """
    _check_mesh(surface, mesh)
    _require_connected(mesh)
    pairs = random_pairs(mesh, trials, seed)
    paths = in_surface_path_residuals(surface, mesh, pairs, steps)
    vertex_gap = np.max(np.abs(surface.f(mesh.vertices))) * np.linalg.norm(surface.shear)
    return float(max(np.max(paths, initial=0.0), vertex_gap))
