"""Circles as (2,1)-planes of point spheres, and M-sphere pencils."""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    CoincidentPoints,
    DegenerateInput,
    DegeneratePencil,
    DegenerateSpan,
    NoCommonSphere,
    NonIntersecting,
    NotOnSphere,
)
from .minkowski import (
    EPS_LIGHT,
    P,
    gram,
    inner,
    inversive_distance,
    lie_inversion,
    mobius_part,
    orthogonal,
    orthogonal_complement,
    orthogonality_residual,
    plane_intersection,
    pseudo_orthonormal,
    row_basis,
    same_point,
    solve_trig,
    span_residual,
)

CIRCLE_TOL = 1e-9


@dataclass(frozen=True)
class Circle:
    """gamma: pseudo-orthonormal (b1, b2 spacelike, b3 timelike) basis of the
    point-sphere plane; gamma_perp: same kind of basis of its complement."""

    gamma: np.ndarray
    gamma_perp: np.ndarray

    def point(self, u):
        b1, b2, b3 = self.gamma
        return np.cos(u) * b1 + np.sin(u) * b2 + b3

    def points(self, us):
        us = np.asarray(us, dtype=float)
        return (np.cos(us)[:, None] * self.gamma[0] + np.sin(us)[:, None] * self.gamma[1]
                + self.gamma[2])

    def parameter_of(self, m):
        """Parameter u of a point sphere on the circle."""
        m = np.asarray(m, dtype=float)
        c = np.array([inner(m, self.gamma[0]), inner(m, self.gamma[1]), -inner(m, self.gamma[2])])
        c = c / c[2]
        return float(np.mod(np.arctan2(c[1], c[0]), 2 * np.pi))

    def contains(self, m, tol=1e-8):
        return span_residual(m, self.gamma) < tol

    def transformed(self, a):
        """Image of the circle under the Lie inversion sigma_a."""
        return Circle(lie_inversion(a, self.gamma), lie_inversion(a, self.gamma_perp))


def circle_from_span(B, p=P, tol=CIRCLE_TOL):
    """Circle whose point spheres are the lightlike directions of span(B)."""
    Q = row_basis(B)
    if Q.shape[0] != 3:
        raise DegenerateSpan(f"a circle needs a 3-dimensional span, got {Q.shape[0]}")
    if np.max(np.abs(Q @ (p * np.array([1, 1, 1, 1, -1, -1])))) > tol * np.linalg.norm(p):
        raise DegenerateSpan("span is not contained in the point sphere hyperplane")
    gamma = pseudo_orthonormal(Q, expected=(2, 1))
    perp = pseudo_orthonormal(orthogonal_complement(gamma), expected=(2, 1))
    return Circle(gamma, perp)


def circle_point(c: Circle, u):
    return c.point(u)


def orthogonal_circle(m1, m2, s, p=P, tol=1e-9):
    """The circle through the point spheres ``m1``, ``m2`` meeting ``s`` orthogonally."""
    for m in (m1, m2):
        if abs(float(inner(m, p))) > tol * np.linalg.norm(m) * np.linalg.norm(p):
            raise NotOnSphere("argument is not a point sphere")
        if not orthogonal(m, s, p, tol):
            raise NotOnSphere("point does not lie on the sphere")
    if same_point(m1, m2):
        raise CoincidentPoints("the two points coincide")
    return circle_from_span(np.array([m1, m2, mobius_part(s, p)]), p)


def circle_orthogonality_residual(c: Circle, s, p=P):
    """Zero iff the circle meets the sphere ``s`` orthogonally."""
    return span_residual(mobius_part(s, p), c.gamma)


def circle_orthogonal_to_sphere(c: Circle, s, p=P, tol=1e-8):
    return circle_orthogonality_residual(c, s, p) < tol


def circle_on_sphere_residual(c: Circle, s, p=P):
    """Zero iff every point of the circle lies on ``s``."""
    s = np.asarray(s, dtype=float)
    g = gram(np.vstack([c.gamma, s]))[:3, 3]
    return float(np.max(np.abs(g)) / np.linalg.norm(s))


def circle_sphere_angle(c: Circle, s, p=P, tol=1e-9):
    """Angle in [0, pi/2] at which the circle crosses the sphere ``s``.

    ``0`` means the circle lies on ``s``; ``pi/2`` means it is orthogonal.
    Both are Moebius invariant, so no Euclidean chart is involved.
    """
    s = np.asarray(s, dtype=float)
    g = float(inner(s, p))
    if abs(g) < EPS_LIGHT * np.linalg.norm(s) * np.linalg.norm(p):
        raise ValueError("angle with a point sphere is undefined")
    w = mobius_part(s / g, p) * np.sqrt(-float(inner(p, p)))
    # component of w in gamma_perp, minus its p part, has norm^2 = cos^2(angle)
    W = orthogonal_complement(np.vstack([c.gamma, p]))
    G = gram(W)
    coef = np.linalg.solve(G, (W * np.array([1, 1, 1, 1, -1, -1])) @ w)
    cos2 = float(coef @ G @ coef)
    if cos2 > 1.0 + tol:
        raise NonIntersecting("circle and sphere do not meet")
    # the gamma component carries sin^2; using both keeps either end accurate
    Gg = gram(c.gamma)
    cg = np.linalg.solve(Gg, (c.gamma * np.array([1, 1, 1, 1, -1, -1])) @ w)
    sin2 = float(cg @ Gg @ cg)
    return float(np.arctan2(np.sqrt(max(sin2, 0.0)), np.sqrt(max(cos2, 0.0))))


def spheres_orthogonal_to_circle(f, fhat, p=P):
    """Basis of span(r, s, s_hat, p) for contact elements f, fhat sharing r."""
    f = np.atleast_2d(np.asarray(f, dtype=float))
    fhat = np.atleast_2d(np.asarray(fhat, dtype=float))
    try:
        r = plane_intersection(f, fhat)
    except DegenerateSpan as exc:
        raise DegenerateInput("contact elements coincide") from exc
    if r is None:
        raise NoCommonSphere("contact elements share no sphere")
    S = row_basis(np.vstack([f, fhat, p[None, :]]))
    if S.shape[0] != 4:
        raise DegenerateInput(f"expected a 4-dimensional span, got {S.shape[0]}")
    return S


# ---- M-sphere pencils ----

class PencilKind(Enum):
    PENCIL0 = 0
    PENCIL1 = 1
    PENCIL2 = 2


@dataclass(frozen=True)
class MSpherePencil:
    """span(s1, s2, p) with a parametrization of its sphere directions.

    ``sphere(0)`` is ``s1`` and ``sphere(t1)`` is ``s2`` (up to orientation
    when the two touch with opposite orientations).
    """

    s1: np.ndarray
    s2: np.ndarray
    p: np.ndarray
    kind: PencilKind
    basis: np.ndarray
    t1: float
    invdist: float = field(default=np.nan)

    def sphere(self, t):
        t = np.asarray(t, dtype=float)
        b = self.basis
        if self.kind is PencilKind.PENCIL0:
            v = (np.multiply.outer(np.cos(t), b[0]) + np.multiply.outer(np.sin(t), b[1]) + b[2])
        elif self.kind is PencilKind.PENCIL2:
            v = (b[0] + np.multiply.outer(np.cos(t), b[1]) + np.multiply.outer(np.sin(t), b[2]))
        else:
            v = np.multiply.outer(np.cos(t / 2), b[0]) + np.multiply.outer(np.sin(t / 2), b[1])
        return v

    def trig_coefficients(self, w):
        """(A, B, C) with <sphere(t), w> = A cos t + B sin t + C (not for 1-pencils)."""
        b = self.basis
        g = [float(inner(x, w)) for x in b]
        if self.kind is PencilKind.PENCIL0:
            return g[0], g[1], g[2]
        if self.kind is PencilKind.PENCIL2:
            return g[1], g[2], g[0]
        raise ValueError("1-pencils are parametrized by half angles")

    def singular_parameters(self):
        """Parameters of the point spheres in the pencil."""
        if self.kind is PencilKind.PENCIL1:
            g1, g2 = float(inner(self.basis[0], self.p)), float(inner(self.basis[1], self.p))
            half = np.mod(np.arctan2(-g1, g2), np.pi)
            return [float(2 * half)]
        roots, _ = solve_trig(*self.trig_coefficients(self.p))
        return roots

    def parameter_of(self, s):
        """Parameter of a sphere of the pencil."""
        s = np.asarray(s, dtype=float)
        b = self.basis
        if self.kind is PencilKind.PENCIL0:
            c = np.array([inner(s, b[0]), inner(s, b[1]), -inner(s, b[2])])
            return float(np.mod(np.arctan2(c[1] / c[2], c[0] / c[2]), 2 * np.pi))
        if self.kind is PencilKind.PENCIL2:
            c = np.array([inner(s, b[0]), -inner(s, b[1]), -inner(s, b[2])])
            return float(np.mod(np.arctan2(c[2] / c[0], c[1] / c[0]), 2 * np.pi))
        # contact line: solve s = x b0 + y b1 by least squares
        xy, *_ = np.linalg.lstsq(b[:2].T, s, rcond=None)
        return float(2 * np.mod(np.arctan2(xy[1], xy[0]), np.pi))


def _is_point_sphere(s, p):
    return abs(float(inner(s, p))) < EPS_LIGHT * np.linalg.norm(s) * np.linalg.norm(p)


def classify_pencil(s1, s2, p=P, tol=1e-9):
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    s1 = s1 / np.linalg.norm(s1)
    s2 = s2 / np.linalg.norm(s2)
    if span_residual(s1, np.array([s2, p])) < tol:
        raise DegeneratePencil("s1 lies in span(s2, p)")
    if _is_point_sphere(s1, p) or _is_point_sphere(s2, p):
        incident = orthogonality_residual(s1, s2, p) < tol
        kind = PencilKind.PENCIL1 if incident else PencilKind.PENCIL2
        invdist = np.nan
    else:
        invdist = inversive_distance(s1, s2, p)
        if abs(abs(invdist) - 1.0) <= tol:
            kind = PencilKind.PENCIL1
        elif abs(invdist) < 1.0:
            kind = PencilKind.PENCIL0
        else:
            kind = PencilKind.PENCIL2
    if kind is PencilKind.PENCIL0:
        basis, t1 = _basis_21(s1, s2, p)
    elif kind is PencilKind.PENCIL2:
        basis, t1 = _basis_12(s1, s2, p)
    else:
        basis, t1 = _basis_contact(s1, s2, p)
    return MSpherePencil(s1, s2, np.asarray(p, float), kind, basis, t1, float(invdist))


def _complement_in(M, vecs):
    # unit vector of span(M) orthogonal to all of vecs
    Q = row_basis(M)
    A = np.array([[inner(q, v) for q in Q] for v in vecs])
    _, _, vt = np.linalg.svd(A)
    w = vt[-1] @ Q
    return w / np.sqrt(abs(float(inner(w, w))))


def _basis_21(s1, s2, p):
    M = np.array([s1, s2, p])
    tau = pseudo_orthonormal(M, expected=(2, 1))[2]
    s1n = s1 / -float(inner(s1, tau))
    b1 = s1n - tau
    b2 = _complement_in(M, [b1, tau])
    s2n = s2 / -float(inner(s2, tau))
    c, s = float(inner(s2n, b1)), float(inner(s2n, b2))
    if s < 0:
        b2, s = -b2, -s
    return np.array([b1, b2, tau]), float(np.arctan2(s, c))


def _basis_12(s1, s2, p):
    M = np.array([s1, s2, p])
    b1 = pseudo_orthonormal(M, expected=(1, 2))[0]
    s1n = s1 / float(inner(s1, b1))
    b2 = s1n - b1
    b3 = _complement_in(M, [b1, b2])
    s2n = s2 / float(inner(s2, b1))
    c, s = -float(inner(s2n, b2)), -float(inner(s2n, b3))
    if s < 0:
        b3, s = -b3, -s
    return np.array([b1, b2, b3]), float(np.arctan2(s, c))


def _basis_contact(s1, s2, p):
    if abs(float(inner(s1, s2))) > 1e-6 * np.linalg.norm(s1) * np.linalg.norm(s2):
        # touching with opposite orientations: use the reversed s2
        s2 = lie_inversion(p, s2)
    return np.array([s1, s2, np.zeros(6)]), float(np.pi)


def pencil_sphere(m: MSpherePencil, t):
    return m.sphere(t)
