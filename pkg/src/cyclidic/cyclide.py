"""Dupin cyclides as orthogonal splittings D1 + D2 of R^{4,2}.

Each D_i carries a pseudo-orthonormal basis (b1, b2, b3) with Gram
diag(1, 1, -1), so that ``s(t) = cos t b1 + sin t b2 + b3`` runs through the
curvature spheres of that family. Curvature-line grids come from evolving a
circle by the M-Lie inversions that move the base curvature sphere along
its family.
"""
from dataclasses import dataclass, field
from typing import List

import numpy as np

from . import _kernels
from .errors import (
    BaseParameter,
    CircleFamily,
    CircleNotOnSphere,
    CoincidentPoints,
    DegenerateSpan,
    DegenerateTorus,
    FourPointIntersection,
    NoCommonCurvatureSphere,
    NonSpacelikeDerivative,
    NotCurvatureCircle,
    NotOnQuerSphere,
    NotOrthogonal,
    NotOrthogonalToBaseCircle,
    OutsideJStar,
    SingularParameter,
)
from .incidence import Circle, MSpherePencil, circle_from_span, circle_on_sphere_residual
from .minkowski import (
    EPS_LIGHT,
    ETA,
    P,
    gram,
    inner,
    lie_inversion,
    mobius_part,
    orthogonal_complement,
    orthogonality_residual,
    plane_intersection,
    point_sphere,
    pseudo_orthonormal,
    solve_trig,
    span_residual,
    subspace_distance,
)

SPLIT_TOL = 1e-9
SINGULAR_SKIP = 1e-6
_DIAG = np.diag([1.0, 1.0, -1.0])


def _is_pseudo_orthonormal(B, tol=1e-10):
    return B.shape == (3, 6) and np.max(np.abs(gram(B) - _DIAG)) < tol


def _angle_diff(a, b):
    d = np.mod(a - b + np.pi, 2 * np.pi) - np.pi
    return abs(d)


@dataclass(frozen=True)
class DupinCyclide:
    D1: np.ndarray
    D2: np.ndarray

    def __post_init__(self):
        D1 = np.asarray(self.D1, dtype=float)
        D2 = np.asarray(self.D2, dtype=float)
        if not _is_pseudo_orthonormal(D1):
            D1 = pseudo_orthonormal(D1, expected=(2, 1))
        if not _is_pseudo_orthonormal(D2):
            D2 = pseudo_orthonormal(D2, expected=(2, 1))
        cross = (D1 * ETA) @ D2.T
        if np.max(np.abs(cross)) > SPLIT_TOL * max(1.0, np.abs(D1).max() * np.abs(D2).max()):
            raise DegenerateSpan("D1 and D2 are not orthogonal")
        object.__setattr__(self, "D1", D1)
        object.__setattr__(self, "D2", D2)

    @classmethod
    def from_spheres(cls, s_a, s_b, s_c):
        """Cyclide whose first curvature sphere family passes through three spheres."""
        D1 = pseudo_orthonormal(np.array([s_a, s_b, s_c]), expected=(2, 1))
        D2 = pseudo_orthonormal(orthogonal_complement(D1), expected=(2, 1))
        return cls(D1, D2)

    def plane(self, i):
        return self.D1 if i == 1 else self.D2

    def family(self, i):
        return CurvatureSphereFamily(self, i)

    def transformed(self, a):
        """sigma_a applied to both planes; parameters correspond."""
        return DupinCyclide(lie_inversion(a, self.D1), lie_inversion(a, self.D2))

    def splitting_residual(self):
        return float(np.max(np.abs((self.D1 * ETA) @ self.D2.T)))

    def contact_element(self, u, v):
        return np.array([self.family(1).sphere(u), self.family(2).sphere(v)])

    def point(self, u, v, p=P):
        """Point sphere of the contact element at (u, v)."""
        s1, s2 = self.contact_element(u, v)
        return point_sphere(s1, s2, p)

    def points(self, us, vs, p=P):
        """Point spheres on the (u, v) grid, shape (len(us), len(vs), 6)."""
        S1 = self.family(1).spheres(us)
        S2 = self.family(2).spheres(vs)
        g1 = S1 @ (ETA * p)
        g2 = S2 @ (ETA * p)
        return g2[None, :, None] * S1[:, None, :] - g1[:, None, None] * S2[None, :, :]

    def contains_sphere(self, s, tol=1e-8):
        """Index of the family containing ``s``, or 0."""
        for i in (1, 2):
            if span_residual(s, self.plane(i)) < tol:
                return i
        return 0

    def same_as(self, other, tol=1e-8):
        return (subspace_distance(self.D1, other.D1) < tol
                and subspace_distance(self.D2, other.D2) < tol)


def cyclide_from_torus(R, r, allow_singular=False):
    """Torus of revolution about the z-axis: spine radius R, tube radius r.

    Family 1 is the tube spheres, with ``t`` the spine angle. Family 2 holds
    the spheres centered on the axis (touching along the parallels).
    """
    R, r = float(R), float(r)
    if R <= 0 or r <= 0:
        raise DegenerateTorus("radii must be positive")
    if R <= r and not allow_singular:
        raise DegenerateTorus("horn/spindle torus (R <= r) needs allow_singular=True")
    w = np.array([0, 0, 0, (1 - R * R + r * r) / 2, (1 + R * R - r * r) / 2, r])
    D1 = np.array([np.eye(6)[0], np.eye(6)[1], w / R])
    comp = orthogonal_complement(np.vstack([D1, np.eye(6)[2]]))
    c = pseudo_orthonormal(comp, expected=(1, 1))
    D2 = np.array([np.eye(6)[2], c[0], c[1]])
    return DupinCyclide(D1, D2)


@dataclass(frozen=True)
class CurvatureSphereFamily:
    parent: DupinCyclide
    index: int

    @property
    def basis(self):
        return self.parent.plane(self.index)

    @property
    def other(self):
        return self.parent.plane(3 - self.index)

    def sphere(self, t):
        b = self.basis
        return np.cos(t) * b[0] + np.sin(t) * b[1] + b[2]

    def spheres(self, ts):
        ts = np.asarray(ts, dtype=float)
        b = self.basis
        return np.cos(ts)[:, None] * b[0] + np.sin(ts)[:, None] * b[1] + b[2]

    def derivative(self, t):
        b = self.basis
        return -np.sin(t) * b[0] + np.cos(t) * b[1]

    def parameter_of(self, s, tol=1e-8):
        s = np.asarray(s, dtype=float)
        if span_residual(s, self.basis) > tol:
            raise DegenerateSpan("sphere is not in this curvature sphere family")
        b = self.basis
        c = np.array([inner(s, b[0]), inner(s, b[1]), -inner(s, b[2])])
        t = float(np.mod(np.arctan2(c[1] / c[2], c[0] / c[2]), 2 * np.pi))
        return 0.0 if t > 2 * np.pi - 1e-12 else t

    def trig_coefficients(self, w):
        b = self.basis
        return float(inner(b[0], w)), float(inner(b[1], w)), float(inner(b[2], w))

    def singular_parameters(self, p=P):
        """Parameters whose curvature sphere is a point sphere."""
        if span_residual(p, self.basis) < 1e-9:
            raise CircleFamily("p lies in this plane: the family consists of point spheres")
        roots, _ = solve_trig(*self.trig_coefficients(p))
        return roots

    def is_regular(self, t, p=P, tol=EPS_LIGHT):
        s = self.sphere(t)
        return abs(float(inner(s, p))) > tol * np.linalg.norm(s) * np.linalg.norm(p)

    def curvature_circle(self, t, p=P):
        """Circle along which s(t) touches the cyclide."""
        if not self.is_regular(t, p):
            raise SingularParameter(f"curvature sphere at t={t} is a point sphere")
        V = np.vstack([self.sphere(t), self.other])
        g = V @ (ETA * p)
        _, _, vt = np.linalg.svd(g[None, :])
        return circle_from_span(vt[1:] @ V, p)

    def quer_spheres(self, t, p=P):
        """The two spheres meeting s(t) orthogonally along its curvature circle."""
        s, ds = self.sphere(t), self.derivative(t)
        g, dg = float(inner(s, p)), float(inner(ds, p))
        if abs(g) < EPS_LIGHT * np.linalg.norm(s) * np.linalg.norm(p):
            raise SingularParameter(f"curvature sphere at t={t} is a point sphere")
        d = ds / g - s * dg / g ** 2
        n = float(inner(d, d))
        if n <= EPS_LIGHT * float(d @ d):
            raise NonSpacelikeDerivative("normalized derivative is not spacelike")
        lam = np.sqrt(n / -float(inner(p, p)))
        return d + lam * p, d - lam * p

    def quer_pencil_span(self, p=P):
        """span(D_i ∩ p-perp, p): the 3-space containing all quer-spheres."""
        b = self.basis
        g = b @ (ETA * p)
        _, _, vt = np.linalg.svd(g[None, :])
        return np.vstack([vt[1:] @ b, p])


@dataclass(frozen=True)
class EvolutionMap:
    """The M-Lie inversions moving s(t0) to s(t) inside one family."""

    family: CurvatureSphereFamily
    t0: float
    p: np.ndarray = field(default_factory=lambda: P.copy())

    def __post_init__(self):
        if not self.family.is_regular(self.t0, self.p):
            raise SingularParameter("base curvature sphere is a point sphere")

    @property
    def base(self):
        return self.family.sphere(self.t0)

    def complex(self, t):
        if _angle_diff(t, self.t0) < 1e-12:
            raise BaseParameter("the evolution complex vanishes at the base parameter")
        if not self.family.is_regular(t, self.p):
            raise SingularParameter(f"curvature sphere at t={t} is a point sphere")
        s0, st = self.base, self.family.sphere(t)
        return float(inner(st, self.p)) * s0 - float(inner(s0, self.p)) * st

    def singular_parameters(self):
        return self.family.singular_parameters(self.p)

    def complexes(self, ts):
        """Stack of evolution complexes; rows at the base or at singular
        parameters are NaN. Returns (A, base_mask, singular_mask)."""
        ts = np.asarray(ts, dtype=float)
        S = self.family.spheres(ts)
        s0 = self.base
        gt = S @ (ETA * self.p)
        g0 = float(inner(s0, self.p))
        A = gt[:, None] * s0[None, :] - g0 * S
        base = _angle_diff(ts, self.t0) < 1e-12
        sing = np.zeros(len(ts), dtype=bool)
        for r in self.singular_parameters():
            sing |= _angle_diff(ts, r) < SINGULAR_SKIP
        A[base | sing] = np.nan
        return A, base, sing

    def evolve_vectors(self, X, ts):
        """sigma_t applied to the rows of X for each t; shape (T, N, 6)."""
        A, base, sing = self.complexes(ts)
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = np.full((len(A), len(X), 6), np.nan)
        ok = ~(base | sing)
        if ok.any():
            out[ok] = _kernels.reflect_grid(A[ok], X)
        out[base] = X
        return out, sing


def evolution_complex(e: EvolutionMap, t):
    return e.complex(t)


@dataclass
class SphereGrid:
    """Sampled (t, u) grid of point spheres. Rows are indexed by ``t``."""

    vectors: np.ndarray
    u: np.ndarray
    t: np.ndarray
    singular_t: List[float] = field(default_factory=list)
    skipped_rows: np.ndarray = None
    spherical: bool = False
    meta: dict = field(default_factory=dict)

    def points(self):
        from .euclid import project_points
        return project_points(self.vectors)

    def valid_rows(self):
        if self.skipped_rows is None:
            return np.ones(len(self.t), dtype=bool)
        return ~self.skipped_rows


def _check_curvature_circle(e: EvolutionMap, c0: Circle, tol=1e-8):
    s0 = e.base
    if circle_on_sphere_residual(c0, s0, e.p) > tol:
        raise NotCurvatureCircle("circle does not lie on the base curvature sphere")
    span = np.vstack([s0, e.family.other])
    res = max(span_residual(g, span) for g in c0.gamma)
    if res > tol:
        raise NotCurvatureCircle("circle is not the curvature circle of the base sphere")


def _u_samples(r_samples):
    if np.isscalar(r_samples):
        return 2 * np.pi * np.arange(int(r_samples)) / int(r_samples)
    return np.asarray(r_samples, dtype=float)


def _grid(e: EvolutionMap, c: Circle, r_samples, t_samples):
    us = _u_samples(r_samples)
    ts = np.asarray(t_samples, dtype=float)
    X = c.points(us)
    V, sing = e.evolve_vectors(X, ts)
    singular = []
    try:
        singular = e.singular_parameters()
    except CircleFamily:
        pass
    return SphereGrid(V, us, ts, singular, sing, meta={"family": e.family.index, "t0": e.t0})


def evolve_circle(e: EvolutionMap, c0: Circle, r_samples, t_samples):
    """Curvature-line grid f(r, t) = sigma_t(c0(r))."""
    _check_curvature_circle(e, c0)
    return _grid(e, c0, r_samples, t_samples)


def quer_spheres(fam: CurvatureSphereFamily, t, p=P):
    return fam.quer_spheres(t, p)


def curvature_sphere(fam: CurvatureSphereFamily, t):
    return fam.sphere(t)


# ---- evolution along an M-sphere pencil ----

def _pencil_complex(m: MSpherePencil, t0, t, p):
    q0, q = m.sphere(t0), m.sphere(t)
    scale = np.linalg.norm(q0) * np.linalg.norm(q)
    if abs(float(inner(q0, q))) < 1e-12 * scale:
        raise OutsideJStar(f"pencil sphere at t={t} touches the base sphere")
    if abs(float(inner(q, p))) < EPS_LIGHT * scale / np.linalg.norm(q0):
        raise OutsideJStar(f"pencil sphere at t={t} is a point sphere")
    return float(inner(q, p)) * q0 - float(inner(q0, p)) * q


def evolve_from_pencil(m: MSpherePencil, t0, s0, t, p=P, tol=1e-8):
    """sigma_{a_t}(s0) for the evolution complexes of the pencil."""
    s0 = np.asarray(s0, dtype=float)
    if orthogonality_residual(s0, m.sphere(t0), p) > tol:
        raise NotOrthogonal("s0 is not orthogonal to the base pencil sphere")
    if _angle_diff(t, t0) < 1e-12:
        return s0.copy()
    return lie_inversion(_pencil_complex(m, t0, t, p), s0)


def surface_from_pencil_and_circle(m: MSpherePencil, t0, c: Circle, r_samples, t_samples,
                                   p=P, tol=1e-8):
    """Grid (u, t) -> sigma_{a_t}(c(u)) for the evolution complexes of a pencil.

    ``spherical`` is set when every grid point lies on one fixed sphere
    (an orthogonal circle net on that sphere instead of a cyclide).
    """
    q0 = m.sphere(t0)
    if circle_on_sphere_residual(c, q0, p) > tol:
        raise CircleNotOnSphere("circle does not lie on the base pencil sphere")
    us = _u_samples(r_samples)
    ts = np.asarray(t_samples, dtype=float)
    X = c.points(us)
    singular = m.singular_parameters()
    V = np.full((len(ts), len(us), 6), np.nan)
    skipped = np.zeros(len(ts), dtype=bool)
    for k, t in enumerate(ts):
        if _angle_diff(t, t0) < 1e-12:
            V[k] = X
            continue
        if any(_angle_diff(t, r) < SINGULAR_SKIP for r in singular):
            skipped[k] = True
            continue
        try:
            a = _pencil_complex(m, t0, t, p)
        except OutsideJStar:
            skipped[k] = True
            continue
        V[k] = _kernels.reflect_rows(a, X)
    finite = V[~skipped].reshape(-1, 6)
    finite = finite / np.linalg.norm(finite, axis=1)[:, None]
    sv = np.linalg.svd(finite, compute_uv=False)
    spherical = bool(sv[4] < 1e-9 * sv[0]) if len(sv) >= 5 else True
    return SphereGrid(V, us, ts, list(singular), skipped, spherical,
                      meta={"pencil": m.kind.name, "t0": float(t0)})


# ---- 2-ortho circles and cyclides ----

def two_ortho_circle(d: DupinCyclide, f1, f2, p=P, tol=1e-8):
    """Circle through the points of f1, f2 meeting the cyclide orthogonally there."""
    f1 = np.asarray(f1, dtype=float)
    f2 = np.asarray(f2, dtype=float)
    if subspace_distance(f1, f2) < 1e-9:
        raise CoincidentPoints("the two contact elements coincide")
    try:
        s = plane_intersection(f1, f2)
    except DegenerateSpan as exc:
        raise CoincidentPoints("the two contact elements coincide") from exc
    if s is None:
        raise FourPointIntersection("contact elements share no sphere")
    if d.contains_sphere(s, tol) == 0:
        raise NoCommonCurvatureSphere("the shared sphere is not a curvature sphere")
    m1 = point_sphere(f1[0], f1[1], p)
    m2 = point_sphere(f2[0], f2[1], p)
    return circle_from_span(np.array([m1, m2, mobius_part(s, p)]), p)


def common_curvature_sphere(d: DupinCyclide, f1, f2, tol=1e-8):
    """(family index, sphere) shared by two contact elements, or raise."""
    try:
        s = plane_intersection(np.asarray(f1, float), np.asarray(f2, float))
    except DegenerateSpan as exc:
        raise CoincidentPoints("the two contact elements coincide") from exc
    if s is None:
        raise FourPointIntersection("contact elements share no sphere")
    i = d.contains_sphere(s, tol)
    if i == 0:
        raise NoCommonCurvatureSphere("the shared sphere is not a curvature sphere")
    return i, s


def two_ortho_cyclide(e: EvolutionMap, c_tilde: Circle, r_samples, t_samples, tol=1e-8):
    """Evolve a circle lying on a base quer-sphere and crossing the base
    curvature circle orthogonally."""
    q_plus, q_minus = e.family.quer_spheres(e.t0, e.p)
    on = min(circle_on_sphere_residual(c_tilde, q, e.p) for q in (q_plus, q_minus))
    if on > tol:
        raise NotOnQuerSphere("circle does not lie on the base quer-sphere")
    if span_residual(mobius_part(e.base, e.p), c_tilde.gamma) > tol:
        raise NotOrthogonalToBaseCircle("circle does not cross the base curvature circle orthogonally")
    return _grid(e, c_tilde, r_samples, t_samples)


def two_ortho_intersections(e: EvolutionMap, c_tilde: Circle):
    """Parameters u where c_tilde meets the base curvature circle."""
    b = c_tilde.gamma
    s0 = e.base
    roots, _ = solve_trig(float(inner(b[0], s0)), float(inner(b[1], s0)), float(inner(b[2], s0)))
    return roots
