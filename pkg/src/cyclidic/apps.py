"""Modeling procedures: blending, symmetric subdivision, cyclidic cubes and
discrete circular nets."""
from dataclasses import dataclass, field
from typing import List

import numpy as np

from . import _kernels
from .cyclide import DupinCyclide, SphereGrid, surface_from_pencil_and_circle
from .dc_system import LameFamily
from .errors import (
    DoubleRoot,
    NoMidpointSphere,
    NotMLie,
    NotOnSphere,
    SameSphere,
    SingularBox,
)
from .euclid import circle_tangent, project_points, surface_angle
from .incidence import (
    Circle,
    MSpherePencil,
    circle_on_sphere_residual,
    classify_pencil,
)
from .minkowski import (
    ETA,
    P,
    complex_from_sphere_pair,
    inner,
    lie_inversion,
    mobius_part,
    orthogonal_complement,
    point_sphere,
    pseudo_orthonormal,
    same_point,
    solve_trig,
    span_residual,
)

CONCIRCULAR_TOL = 1e-8


def concircularity(X):
    """Smallest over largest singular value of four normalized point spheres.

    Zero (up to rounding) iff the four points lie on a circle.
    """
    X = np.asarray(X, dtype=float)
    X = X / np.linalg.norm(X, axis=1)[:, None]
    sv = np.linalg.svd(X, compute_uv=False)
    return float(sv[-1] / sv[0])


# ---- blending ----

@dataclass(frozen=True)
class BlendSpec:
    s1: np.ndarray
    s2: np.ndarray
    gamma1: Circle


@dataclass
class BlendResult:
    a: np.ndarray
    gamma2: Circle
    q1: np.ndarray
    q2: np.ndarray
    pencil: MSpherePencil
    grid: SphereGrid
    cyclide: DupinCyclide
    contact_residual: float


def quer_sphere_along(c: Circle, s, p=P, sign=1.0):
    """Sphere through the circle ``c`` meeting ``s`` orthogonally ('+' first)."""
    # spheres through c live in gamma_perp; those orthogonal to s span (w, p)
    w = pseudo_orthonormal(orthogonal_complement(np.vstack([c.gamma, mobius_part(s, p), p])))[0]
    pn = p / np.sqrt(-float(inner(p, p)))
    return w + sign * pn


def blend(spec: BlendSpec, p=P, orientation="+", r_samples=32, t_samples=None, tol=1e-8):
    """Dupin cyclide touching s1 along gamma1 and s2 along sigma_a(gamma1)."""
    s1 = np.asarray(spec.s1, dtype=float)
    s2 = np.asarray(spec.s2, dtype=float)
    if circle_on_sphere_residual(spec.gamma1, s1, p) > tol:
        raise NotOnSphere("gamma1 does not lie on s1")
    a = complex_from_sphere_pair(s1, s2, p)
    gamma2 = spec.gamma1.transformed(a)
    q1 = quer_sphere_along(spec.gamma1, s1, p, 1.0 if orientation == "+" else -1.0)
    q2 = lie_inversion(a, q1)
    pencil = classify_pencil(q1, q2, p)
    if t_samples is None or np.ndim(t_samples) == 0:
        t_samples = np.linspace(0, pencil.t1, 16 if t_samples is None else int(t_samples))
    ts = np.asarray(t_samples, dtype=float)
    grid = surface_from_pencil_and_circle(pencil, 0.0, spec.gamma1, r_samples, ts, p)
    # curvature spheres of the evolved family: sigma_t(s1) at three values of t
    from .cyclide import evolve_from_pencil
    span_ts = [0.0, pencil.t1 / 3, 2 * pencil.t1 / 3]
    D1 = np.array([evolve_from_pencil(pencil, 0.0, s1, t, p) for t in span_ts])
    D1 = pseudo_orthonormal(D1, expected=(2, 1))
    cyc = DupinCyclide(D1, pseudo_orthonormal(orthogonal_complement(D1), expected=(2, 1)))
    res = blend_contact_residual(cyc, grid, pencil, s1, s2, p)
    return BlendResult(a, gamma2, q1, q2, pencil, grid, cyc, res)


def blend_contact_residual(cyc: DupinCyclide, grid: SphereGrid, pencil, s1, s2, p=P):
    """Max residual of: s1, s2 being curvature spheres of ``cyc`` and every
    grid point lying on its row's curvature sphere in oriented contact with D2."""
    from .cyclide import evolve_from_pencil
    res = max(span_residual(s1, cyc.D1), span_residual(s2, cyc.D1))
    for k, t in enumerate(grid.t):
        if not grid.valid_rows()[k]:
            continue
        st = evolve_from_pencil(pencil, 0.0, s1, t, p)
        span = np.vstack([st, cyc.D2])
        for x in grid.vectors[k]:
            xn = x / np.linalg.norm(x)
            res = max(res, abs(float(inner(xn, st))) / np.linalg.norm(st), span_residual(xn, span))
    return float(res)


# ---- subdivision ----

@dataclass(frozen=True)
class Subdivision:
    family: int
    params: np.ndarray
    circles: List[Circle]


def _midpoint(fam, ta, tb, p, other_patch=False):
    sa, sb = fam.sphere(ta), fam.sphere(tb)
    if same_point(sa, sb):
        raise SameSphere("the two curvature spheres coincide")
    a = complex_from_sphere_pair(sa, sb, p)
    roots, double = solve_trig(*fam.trig_coefficients(a))
    if double:
        raise DoubleRoot("the two midpoint spheres coincide")
    if not roots:
        raise NoMidpointSphere("no curvature sphere lies in the midpoint complex")
    span = np.mod(tb - ta, 2 * np.pi)
    for r in roots:
        inside = 0 < np.mod(r - ta, 2 * np.pi) < span
        if inside != other_patch:
            return float(r)
    raise NoMidpointSphere("no midpoint on the requested patch")


def subdivide(d: DupinCyclide, s1, s2, depth, p=P, other_patch=False):
    """2**depth + 1 curvature circles between the curvature circles of s1 and s2.

    The default patch runs counterclockwise from s1 to s2 in the family
    parameter; the returned parameters are unwrapped so that they increase
    (decrease for ``other_patch``).
    """
    i = d.contains_sphere(s1)
    if i == 0 or d.contains_sphere(s2) != i:
        raise NotOnSphere("s1 and s2 must be curvature spheres of one family")
    fam = d.family(i)
    t1, t2 = fam.parameter_of(s1), fam.parameter_of(s2)
    if same_point(fam.sphere(t1), fam.sphere(t2)):
        raise SameSphere("the two curvature spheres coincide")
    ts = [t1, t2]
    for _ in range(depth):
        new = [ts[0]]
        for ta, tb in zip(ts[:-1], ts[1:]):
            if other_patch:
                m = _midpoint(fam, tb, ta, p, other_patch=False)
            else:
                m = _midpoint(fam, ta, tb, p)
            new += [m, tb]
        ts = new
    ts = np.array(ts)
    step = np.mod(np.diff(ts), 2 * np.pi)
    if other_patch:
        step = step - 2 * np.pi
    unwrapped = np.concatenate([[ts[0]], ts[0] + np.cumsum(step)])
    circles = [fam.curvature_circle(t, p) for t in ts]
    return Subdivision(i, unwrapped, circles)


def midpoint_residual(d: DupinCyclide, family, ta, tm, tb, p=P):
    """|<s(tm), a>| for the complex a swapping s(ta), s(tb) (normalized)."""
    fam = d.family(family)
    a = complex_from_sphere_pair(fam.sphere(ta), fam.sphere(tb), p)
    s = fam.sphere(tm)
    return abs(float(inner(s, a))) / (np.linalg.norm(s) * np.linalg.norm(a))


# ---- cyclidic cubes ----

@dataclass
class CyclidicCube:
    """Corners x[i, j, k] (point spheres) of the box u[i], v[j], beta[k]
    and six face grids keyed by ('u'|'v'|'beta', 0|1)."""

    family: LameFamily
    u: tuple
    v: tuple
    beta: tuple
    corners: np.ndarray
    faces: dict = field(default_factory=dict)

    def face_corners(self, axis, side):
        x = self.corners
        if axis == "u":
            q = x[side]
            return np.array([q[0, 0], q[1, 0], q[1, 1], q[0, 1]])
        if axis == "v":
            q = x[:, side]
            return np.array([q[0, 0], q[1, 0], q[1, 1], q[0, 1]])
        q = x[:, :, side]
        return np.array([q[0, 0], q[1, 0], q[1, 1], q[0, 1]])

    def face_concircularity(self):
        return {(ax, s): concircularity(self.face_corners(ax, s))
                for ax in ("u", "v", "beta") for s in (0, 1)}

    def diagonal_concircularity(self):
        """Quadruples formed by the diagonals of the two beta faces."""
        x = self.corners
        q1 = np.array([x[0, 0, 0], x[1, 1, 0], x[1, 1, 1], x[0, 0, 1]])
        q2 = np.array([x[1, 0, 0], x[0, 1, 0], x[0, 1, 1], x[1, 0, 1]])
        return concircularity(q1), concircularity(q2)

    def point(self, u, v, beta):
        return cube_point(self.family, u, v, beta)

    def edge_angles(self, samples=5, spread=0.25):
        """Deviation from pi/2 of the face crossing angle along all 12 edges."""
        out = {}
        box = {"u": self.u, "v": self.v, "beta": self.beta}
        axes = ("u", "v", "beta")
        for run in axes:
            a1, a2 = [ax for ax in axes if ax != run]
            for s1 in (0, 1):
                for s2 in (0, 1):
                    lo, hi = box[run]
                    worst = 0.0
                    for r in np.linspace(lo, hi, samples):
                        coords = {run: r, a1: box[a1][s1], a2: box[a2][s2]}
                        t = _tangents(self.family, coords, spread)
                        # face a1 = const is spanned by (run, a2); face a2 = const by (run, a1)
                        n1 = np.cross(t[run], t[a2])
                        n2 = np.cross(t[run], t[a1])
                        worst = max(worst, abs(surface_angle(n1, n2) - np.pi / 2))
                    out[(run, a1, s1, a2, s2)] = worst
        return out


def cube_point(fam: LameFamily, u, v, beta):
    b = fam.b(beta)
    s1 = lie_inversion(b, fam.delta.family(1).sphere(u))
    s2 = lie_inversion(b, fam.delta.family(2).sphere(v))
    return point_sphere(s1, s2, fam.p)


def _euclid(x):
    pts, flags = project_points(x[None, :])
    if flags[0]:
        raise SingularBox("cube point at infinity")
    return pts[0]


def _tangents(fam, coords, spread):
    """Unit tangents of the three coordinate circles through a point."""
    base = _euclid(cube_point(fam, coords["u"], coords["v"], coords["beta"]))
    out = {}
    for ax in ("u", "v", "beta"):
        c_plus = dict(coords)
        c_minus = dict(coords)
        c_plus[ax] += spread
        c_minus[ax] -= spread
        xp = _euclid(cube_point(fam, c_plus["u"], c_plus["v"], c_plus["beta"]))
        xm = _euclid(cube_point(fam, c_minus["u"], c_minus["v"], c_minus["beta"]))
        out[ax] = circle_tangent(base, xp, xm)
    return out


def _check_box(fam: LameFamily, u, v, beta, p, samples=9):
    bs = np.linspace(beta[0], beta[1], 4 * samples + 1)
    nb = np.array([float(inner(fam.b(t), fam.b(t))) for t in bs])
    scale = np.array([float(fam.b(t) @ fam.b(t)) for t in bs])
    if np.any(np.abs(nb) < 1e-9 * scale) or np.any(np.sign(nb) != np.sign(nb[0])):
        raise SingularBox("beta interval contains a null direction of span(a, p)")
    us = np.linspace(u[0], u[1], samples)
    vs = np.linspace(v[0], v[1], samples)
    for t in bs[:: 4]:
        b = fam.b(t)
        for fam_i, ps in ((1, us), (2, vs)):
            S = lie_inversion(b, fam.delta.family(fam_i).spheres(ps))
            g = S @ (ETA * p) / np.linalg.norm(S, axis=1)
            if np.any(np.abs(g) < 1e-6) or np.any(np.sign(g) != np.sign(g[0])):
                raise SingularBox("box contains a singular curvature sphere")


def cyclidic_cube(fam: LameFamily, u, v, beta, p=P, face_samples=5):
    """Corners and boundary patches of the DC-system box u x v x beta."""
    u, v, beta = tuple(map(float, u)), tuple(map(float, v)), tuple(map(float, beta))
    _check_box(fam, u, v, beta, p)
    corners = np.empty((2, 2, 2, 6))
    for i in range(2):
        for j in range(2):
            for k in range(2):
                corners[i, j, k] = cube_point(fam, u[i], v[j], beta[k])
    cube = CyclidicCube(fam, u, v, beta, corners)
    n = face_samples
    box = {"u": u, "v": v, "beta": beta}
    axes = ("u", "v", "beta")
    for ax in axes:
        a1, a2 = [x for x in axes if x != ax]
        g1 = np.linspace(*box[a1], n)
        g2 = np.linspace(*box[a2], n)
        for side in (0, 1):
            grid = np.empty((n, n, 6))
            for r, x1 in enumerate(g1):
                for c, x2 in enumerate(g2):
                    coords = {ax: box[ax][side], a1: x1, a2: x2}
                    grid[r, c] = cube_point(fam, coords["u"], coords["v"], coords["beta"])
            cube.faces[(ax, side)] = grid
    return cube


# ---- discrete nets ----

@dataclass
class DiscreteNet:
    """vertices[k, j]: row 0 is the initial circle, row k the k-th image."""

    vertices: np.ndarray

    @property
    def dims(self):
        return self.vertices.shape[:-1]

    def quad_concircularity(self):
        V = self.vertices
        K, J = V.shape[:2]
        out = np.empty((K - 1, J - 1))
        for k in range(K - 1):
            for j in range(J - 1):
                out[k, j] = concircularity([V[k, j], V[k, j + 1], V[k + 1, j + 1], V[k + 1, j]])
        return out

    def is_circular(self, tol=CONCIRCULAR_TOL):
        return bool(np.all(self.quad_concircularity() < tol))


def discrete_net(c0, inversions, p=P, tol=1e-9):
    """Rows c0, sigma_1(c0), ..., sigma_K(c0) for M-Lie complexes sigma_k."""
    c0 = np.atleast_2d(np.asarray(c0, dtype=float))
    A = np.atleast_2d(np.asarray(inversions, dtype=float))
    for a in A:
        if abs(float(inner(a, p))) > tol * np.linalg.norm(a) * np.linalg.norm(p):
            raise NotMLie("complex is not orthogonal to the point sphere complex")
    g = c0 @ (ETA * p)
    if np.any(np.abs(g) > tol * np.linalg.norm(c0, axis=1)):
        raise NotOnSphere("initial samples must be point spheres")
    rows = _kernels.reflect_grid(A, c0)
    return DiscreteNet(np.concatenate([c0[None], rows], axis=0))
