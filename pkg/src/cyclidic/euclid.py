"""Euclidean chart: lifts of points, spheres and planes, and the way back.

A sphere with center ``c`` and signed radius ``r`` lifts to
``(c, (1 - |c|^2 + r^2)/2, (1 + |c|^2 - r^2)/2, r)``; points use ``r = 0``
and the oriented plane ``N . x = d`` lifts to ``(N, -d, d, 1)``.
Infinity is the lightlike direction ``e5 - e4``.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .errors import NotLightlike
from .incidence import Circle, circle_from_span
from .minkowski import EPS_LIGHT, P, e, inner

INFINITY = e(5) - e(4)
PROJECT_TOL = 1e-10


@dataclass(frozen=True)
class EuclidSphere:
    """One of: oriented sphere, oriented plane, point, or the point at infinity."""

    kind: str
    center: Optional[np.ndarray] = None
    radius: float = 0.0
    normal: Optional[np.ndarray] = None
    offset: float = 0.0

    @classmethod
    def sphere(cls, center, radius):
        return cls("sphere", center=np.asarray(center, dtype=float), radius=float(radius))

    @classmethod
    def point(cls, x):
        return cls("point", center=np.asarray(x, dtype=float))

    @classmethod
    def plane(cls, normal, offset=0.0):
        n = np.asarray(normal, dtype=float)
        length = np.linalg.norm(n)
        return cls("plane", normal=n / length, offset=float(offset) / length)

    @classmethod
    def infinity(cls):
        return cls("infinity")

    def close_to(self, other, tol=1e-10):
        if self.kind != other.kind:
            return False
        if self.kind == "infinity":
            return True
        if self.kind == "plane":
            return (np.allclose(self.normal, other.normal, atol=tol)
                    and abs(self.offset - other.offset) < tol)
        ok = np.allclose(self.center, other.center, atol=tol)
        return ok and abs(self.radius - other.radius) < tol


def lift_point(x):
    """Lift of a point or an ``(n, 3)`` stack of points."""
    x = np.asarray(x, dtype=float)
    x2 = np.sum(x * x, axis=-1)
    out = np.zeros(x.shape[:-1] + (6,))
    out[..., :3] = x
    out[..., 3] = (1.0 - x2) / 2.0
    out[..., 4] = (1.0 + x2) / 2.0
    return out


def lift_sphere(center, radius):
    c = np.asarray(center, dtype=float)
    c2 = float(c @ c)
    r = float(radius)
    return np.array([c[0], c[1], c[2], (1 - c2 + r * r) / 2, (1 + c2 - r * r) / 2, r])


def lift_plane(normal, offset):
    n = np.asarray(normal, dtype=float)
    length = np.linalg.norm(n)
    n, d = n / length, float(offset) / length
    return np.array([n[0], n[1], n[2], -d, d, 1.0])


def lift(s: EuclidSphere):
    if s.kind == "sphere":
        return lift_sphere(s.center, s.radius)
    if s.kind == "point":
        return lift_point(s.center)
    if s.kind == "plane":
        return lift_plane(s.normal, s.offset)
    if s.kind == "infinity":
        return INFINITY.copy()
    raise ValueError(f"unknown sphere kind {s.kind!r}")


def project(v, tol=PROJECT_TOL, point_tol=1e-12):
    """Inverse of :func:`lift` on the projective light cone."""
    v = np.asarray(v, dtype=float)
    scale = np.linalg.norm(v)
    if scale == 0 or abs(float(inner(v, v))) > 1e3 * EPS_LIGHT * scale * scale:
        raise NotLightlike("vector is not on the light cone")
    w = v[3] + v[4]
    if abs(w) < tol * scale:
        if abs(v[5]) < tol * scale:
            return EuclidSphere.infinity()
        return EuclidSphere("plane", normal=v[:3] / v[5], offset=float(-v[3] / v[5]))
    u = v / w
    if abs(u[5]) <= point_tol * max(1.0, np.linalg.norm(u)):
        return EuclidSphere.point(u[:3])
    return EuclidSphere.sphere(u[:3], u[5])


def project_points(V, tol=PROJECT_TOL):
    """Euclidean positions of point-sphere vectors ``(..., 6)``.

    Returns ``(points, at_infinity)``; flagged rows hold NaN.
    """
    V = np.asarray(V, dtype=float)
    shape = V.shape[:-1]
    pts, flags = _kernels.project_points(V.reshape(-1, 6), tol)
    return pts.reshape(shape + (3,)), flags.reshape(shape)


def sphere_center_radius(v):
    """(center, signed radius) of a lightlike non-plane vector."""
    s = project(v)
    if s.kind not in ("sphere", "point"):
        raise ValueError(f"{s.kind} has no center")
    return s.center, s.radius


@dataclass(frozen=True)
class SpaceForm:
    q: np.ndarray
    curvature: float


def euclidean_space_form(p=P):
    q = INFINITY.copy()
    if abs(float(inner(q, p))) > 1e-12:
        raise ValueError("the Euclidean space form vector needs p = e6")
    return SpaceForm(q=q, curvature=float(-inner(q, q)))


# ---- circles in the chart ----

def circle_through_points(x1, x2, x3):
    """Model circle through three distinct Euclidean points."""
    return circle_from_span(lift_point(np.array([x1, x2, x3])))


def sample_circle_euclidean(c: Circle, n: int, phase=0.0, tol=PROJECT_TOL):
    if n < 3:
        raise ValueError("need at least 3 samples")
    us = phase + 2 * np.pi * np.arange(n) / n
    return project_points(c.points(us), tol)


def fit_circle(points):
    """Least-squares circle in 3-space.

    Returns ``(center, radius, normal, residual)``; the residual is the max of
    radial and out-of-plane deviation divided by the radius.
    """
    X = np.asarray(points, dtype=float)
    mean = X.mean(axis=0)
    Y = X - mean
    _, _, vt = np.linalg.svd(Y, full_matrices=False)
    normal = vt[2]
    ex, ey = vt[0], vt[1]
    a, b = Y @ ex, Y @ ey
    M = np.column_stack([2 * a, 2 * b, np.ones_like(a)])
    sol, *_ = np.linalg.lstsq(M, a * a + b * b, rcond=None)
    cx, cy, k = sol
    radius = float(np.sqrt(k + cx * cx + cy * cy))
    center = mean + cx * ex + cy * ey
    radial = np.abs(np.linalg.norm(X - center, axis=1) - radius)
    planar = np.abs(Y @ normal)
    residual = float(max(radial.max(), planar.max()) / radius)
    return center, radius, normal, residual


def line_fit_residual(points):
    """Max distance from the best line, relative to the point spread."""
    X = np.asarray(points, dtype=float)
    Y = X - X.mean(axis=0)
    _, sv, vt = np.linalg.svd(Y, full_matrices=False)
    d = vt[0]
    perp = Y - np.outer(Y @ d, d)
    spread = max(sv[0], 1e-300)
    return float(np.linalg.norm(perp, axis=1).max() / spread * np.sqrt(len(X)))


def circle_tangent(x1, x2, x3):
    """Unit tangent at ``x1`` of the circle through three points (toward x2)."""
    x1, x2, x3 = (np.asarray(v, dtype=float) for v in (x1, x2, x3))
    a, b = x2 - x1, x3 - x1
    n = np.cross(a, b)
    nn = n @ n
    if nn < 1e-24 * (a @ a) * (b @ b):
        t = a
    else:
        # circumcenter relative to x1
        rel = (np.cross(n, a) * (b @ b) + np.cross(b, n) * (a @ a)) / (2 * nn)
        t = np.cross(n, -rel)
        if t @ a < 0:
            t = -t
    return t / np.linalg.norm(t)


def surface_angle(n1, n2):
    """Unoriented angle in [0, pi/2] between two planes given by normals."""
    n1 = np.asarray(n1, dtype=float)
    n2 = np.asarray(n2, dtype=float)
    c = abs(n1 @ n2) / (np.linalg.norm(n1) * np.linalg.norm(n2))
    return float(np.arccos(min(c, 1.0)))
