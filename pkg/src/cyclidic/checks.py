"""Randomized residual suites for the kernel and the Euclidean chart.

Used by ``cyclidic check``. Each suite returns ``{name: array of errors}``.
"""
import numpy as np

from .euclid import EuclidSphere, lift, lift_point, lift_sphere, project
from .minkowski import ETA, P, angle, lie_inversion, orthogonal


def _inner(X, Y):
    return np.einsum("ij,j,ij->i", X, ETA, Y)


def _reflect(A, X):
    """Row-wise sigma_{A[i]}(X[i]) through the package kernel."""
    return np.array([lie_inversion(a, x) for a, x in zip(A, X)])


def random_complexes(rng, n, min_ratio=0.1):
    """Random complexes with |<a,a>| >= min_ratio |a|^2 (away from parabolic)."""
    out = np.empty((0, 6))
    while len(out) < n:
        A = rng.normal(size=(2 * n, 6))
        ok = np.abs(_inner(A, A)) >= min_ratio * np.sum(A * A, axis=1)
        out = np.vstack([out, A[ok]])
    return out[:n]


def kernel_suite(n=10000, seed=0):
    rng = np.random.default_rng(seed)
    A = random_complexes(rng, n)
    V = rng.normal(size=(n, 6))
    W = rng.normal(size=(n, 6))
    nv, nw = np.linalg.norm(V, axis=1), np.linalg.norm(W, axis=1)
    involution = np.linalg.norm(_reflect(A, _reflect(A, V)) - V, axis=1) / nv
    isometry = np.abs(_inner(_reflect(A, V), _reflect(A, W)) - _inner(V, W)) / (nv * nw)
    C = rng.uniform(-10, 10, size=(n, 3))
    R = rng.uniform(0.1, 5, size=n) * rng.choice([-1, 1], size=n)
    L = np.array([lift_sphere(c, r) for c, r in zip(C, R)])
    SL = _reflect(A, L)
    lightcone = np.abs(_inner(SL, SL)) / np.sum(SL * SL, axis=1)
    Ap = A.copy()
    Ap[:, 5] = 0.0
    Pn = np.tile(P, (n, 1))
    pfix = np.linalg.norm(_reflect(Ap, Pn) - Pn, axis=1)
    return {"involution": involution, "isometry": isometry, "lightcone": lightcone,
            "p_fixed": pfix}


def _random_sphere(rng):
    kind = rng.integers(3)
    if kind == 0:
        r = rng.uniform(0.01, 5) * rng.choice([-1, 1])
        return EuclidSphere.sphere(rng.uniform(-10, 10, 3), r)
    if kind == 1:
        n = rng.normal(size=3)
        return EuclidSphere.plane(n / np.linalg.norm(n), rng.uniform(-10, 10))
    return EuclidSphere.point(rng.uniform(-10, 10, 3))


def _roundtrip_error(s, t):
    if s.kind != t.kind:
        return np.inf
    if s.kind == "plane":
        return max(np.abs(s.normal - t.normal).max(), abs(s.offset - t.offset))
    return max(np.abs(s.center - t.center).max(), abs(s.radius - t.radius))


def intersection_angle_oracle(c1, r1, c2, r2):
    """Oriented angle between the normals (x - c_i)/r_i at an intersection point."""
    d = np.linalg.norm(c2 - c1)
    e = (c2 - c1) / d
    f = np.cross(e, [1.0, 0, 0])
    if np.linalg.norm(f) < 0.1:
        f = np.cross(e, [0, 1.0, 0])
    f /= np.linalg.norm(f)
    a = (d * d + r1 * r1 - r2 * r2) / (2 * d)
    h = np.sqrt(max(r1 * r1 - a * a, 0.0))
    x = c1 + a * e + h * f
    n1 = (x - c1) / r1
    n2 = (x - c2) / r2
    return float(np.arccos(np.clip(n1 @ n2, -1, 1)))


def bridge_suite(n=1000, seed=0):
    rng = np.random.default_rng(seed)
    rt, light, incid, ang = [], [], [], []
    for _ in range(n):
        s = _random_sphere(rng)
        v = lift(s)
        rt.append(_roundtrip_error(s, project(v)))
        light.append(abs(float(v @ (ETA * v))) / float(v @ v))
        # incidence: half the points are placed on the sphere
        c = rng.uniform(-5, 5, 3)
        r = rng.uniform(0.1, 3) * rng.choice([-1, 1])
        d = rng.normal(size=3)
        d /= np.linalg.norm(d)
        x = c + (abs(r) if rng.random() < 0.5 else rng.uniform(0, 6)) * d
        truth = abs(np.linalg.norm(x - c) - abs(r)) < 1e-9
        incid.append(0.0 if orthogonal(lift_point(x), lift_sphere(c, r), P) == truth else 1.0)
        # angle: two spheres that intersect
        r1, r2 = rng.uniform(0.5, 3, 2) * rng.choice([-1, 1], 2)
        dist = rng.uniform(abs(abs(r1) - abs(r2)) + 1e-3, abs(r1) + abs(r2) - 1e-3)
        c1 = rng.uniform(-5, 5, 3)
        c2 = c1 + dist * d
        oracle = intersection_angle_oracle(c1, r1, c2, r2)
        ang.append(abs(angle(lift_sphere(c1, r1), lift_sphere(c2, r2), P) - oracle))
    return {"roundtrip": np.array(rt), "lightlike": np.array(light),
            "incidence_mismatch": np.array(incid), "angle": np.array(ang)}


def summarize(errors):
    return {k: {"max": float(np.max(v)), "mean": float(np.mean(v))} for k, v in errors.items()}
