"""Linear algebra on R^{4,2}: inner product, Lie inversions, sphere complexes.

Vectors are plain ``numpy`` arrays of length 6 (or stacks ``(..., 6)``).
Coordinates 1-4 are spacelike, 5-6 timelike; the default point sphere
complex is ``P = e6``.
"""
from enum import Enum

import numpy as np

from . import _kernels
from .errors import (
    ContactViolation,
    DegeneratePair,
    DegenerateSpan,
    NoLinearRelation,
    NonIntersecting,
    NoRealSpheres,
    ParabolicComplex,
    PointSphereArgument,
)

ETA = _kernels.ETA
EPS_LIGHT = 1e-9
EPS_PROJ = 1e-9


def e(i):
    """Basis vector e_i, 1-based as in the usual R^{4,2} notation."""
    v = np.zeros(6)
    v[i - 1] = 1.0
    return v


P = e(6)


def inner(v, w):
    """Signature (4,2) bilinear form; broadcasts over leading axes."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    return np.einsum("...i,i,...i->...", v, ETA, w)


def gram(B):
    B = np.atleast_2d(np.asarray(B, dtype=float))
    return (B * ETA) @ B.T


def _norm(v):
    return float(np.linalg.norm(v))


def is_lightlike(v, tol=EPS_LIGHT):
    v = np.asarray(v, dtype=float)
    return abs(float(inner(v, v))) <= tol * max(_norm(v) ** 2, 1e-300)


def normalize(v):
    """Unit Euclidean 6-norm, first non-negligible coordinate positive."""
    v = np.asarray(v, dtype=float)
    n = _norm(v)
    if n == 0.0:
        raise ValueError("zero vector has no projective class")
    v = v / n
    idx = np.flatnonzero(np.abs(v) > 1e-12)
    if v[idx[0]] < 0:
        v = -v
    return v


def projective_distance(v, w):
    """Distance between projective classes; ~ angle for nearby classes."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    v = v / _norm(v)
    w = w / _norm(w)
    return float(min(np.linalg.norm(v - w), np.linalg.norm(v + w)))


def same_point(v, w, tol=EPS_PROJ):
    return projective_distance(v, w) < tol


def point_sphere_complex(v=None):
    """Timelike vector rescaled to <p,p> = -1 (default e6)."""
    if v is None:
        return P.copy()
    v = np.asarray(v, dtype=float)
    vv = float(inner(v, v))
    if vv >= -EPS_LIGHT * _norm(v) ** 2:
        raise ValueError("a point sphere complex must be timelike")
    return v / np.sqrt(-vv)


def mobius_part(v, p=P):
    """Component of ``v`` orthogonal to ``p``: v - <v,p>/<p,p> p."""
    v = np.asarray(v, dtype=float)
    return v - np.multiply.outer(inner(v, p) / inner(p, p), p)


class ComplexKind(Enum):
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"


def complex_kind(a, tol=EPS_LIGHT):
    a = np.asarray(a, dtype=float)
    aa = float(inner(a, a))
    if abs(aa) < tol * _norm(a) ** 2:
        return ComplexKind.PARABOLIC
    return ComplexKind.ELLIPTIC if aa > 0 else ComplexKind.HYPERBOLIC


def lie_inversion(a, r):
    """Reflection of ``r`` in the hyperplane orthogonal to ``a``.

    ``r`` may be a single vector or a stack ``(n, 6)``.
    """
    a = np.asarray(a, dtype=float)
    if complex_kind(a) is ComplexKind.PARABOLIC:
        raise ParabolicComplex("Lie inversion undefined for a parabolic complex")
    r = np.asarray(r, dtype=float)
    if r.ndim == 1:
        return _kernels.reflect_rows(a, r[None, :])[0]
    shape = r.shape
    return _kernels.reflect_rows(a, r.reshape(-1, 6)).reshape(shape)


def complex_from_sphere_pair(s1, s2, p=P):
    """Complex of the M-Lie inversion interchanging ``s1`` and ``s2``."""
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    a = inner(s2, p) * s1 - inner(s1, p) * s2
    scale = _norm(s1) * _norm(s2) * _norm(p)
    if _norm(a) < EPS_PROJ * scale:
        raise DegeneratePair("<s2,p> s1 - <s1,p> s2 vanishes")
    if complex_kind(a) is ComplexKind.PARABOLIC:
        raise DegeneratePair("spheres are in oriented contact; the complex is parabolic")
    return a


def _null_space(M, tol):
    # columns of M; returns rows spanning {c : M c = 0}
    _, sv, vt = np.linalg.svd(M)
    rank = int(np.sum(sv > tol * sv[0])) if sv.size else 0
    return vt[rank:]


def inversion_from_four_spheres(s1, s2, s3, s4, p=None, tol=1e-9):
    """Complex ``a`` with sigma_a(s1) = s2 and sigma_a(s4) = s3.

    The representatives are rescaled through the linear relation
    s1 - s2 + s3 - s4 = 0; then ``a = s1 - s2``. When the relation is not
    unique (e.g. s3 = s2, s4 = s1) a point sphere complex ``p`` selects the
    M-Lie solution, otherwise :class:`NoLinearRelation` is raised.
    """
    S = [normalize(s) for s in (s1, s2, s3, s4)]
    for i in range(4):
        for j in range(i + 1, 4):
            if same_point(S[i], S[j]):
                continue
            if abs(float(inner(S[i], S[j]))) < tol:
                raise ContactViolation(f"spheres {i + 1} and {j + 1} are in oriented contact")
    N = _null_space(np.column_stack(S), tol)
    if len(N) == 0:
        raise NoLinearRelation("the four representatives are linearly independent")
    if len(N) == 1:
        c = N[0]
        if np.min(np.abs(c)) < tol * np.max(np.abs(c)):
            raise NoLinearRelation("linear relation does not involve all four spheres")
        a = c[0] * S[0] + c[1] * S[1]
    else:
        if p is None:
            raise NoLinearRelation("linear relation not unique; pass p to select the M-Lie solution")
        a = complex_from_sphere_pair(S[0], S[1], p)
        if not same_point(lie_inversion(a, S[3]), S[2], 1e-7):
            raise NoLinearRelation("no M-Lie inversion maps s4 to s3")
    if complex_kind(a) is ComplexKind.PARABOLIC:
        raise NoLinearRelation("recovered complex is parabolic")
    return a


def _check_regular(s, p):
    if abs(float(inner(s, p))) < EPS_LIGHT * _norm(s) * _norm(p):
        raise PointSphereArgument("angle undefined for a point sphere")


def inversive_distance(s1, s2, p=P):
    """Unclamped 1 - <s1,s2><p,p> / (<s1,p><s2,p>); equals cos(angle) when |.| <= 1."""
    _check_regular(s1, p)
    _check_regular(s2, p)
    return float(1.0 - inner(s1, s2) * inner(p, p) / (inner(s1, p) * inner(s2, p)))


def angle(s1, s2, p=P, tol=1e-9):
    c = inversive_distance(s1, s2, p)
    if abs(c) > 1.0 + tol:
        raise NonIntersecting(f"|cos| = {abs(c):.6g} > 1: spheres do not intersect")
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def orthogonality_residual(s1, s2, p=P):
    """Scale-free |<s1, s2 - <s2,p>/<p,p> p>|."""
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    r = float(inner(s1, mobius_part(s2, p)))
    return abs(r) / (_norm(s1) * _norm(s2))


def orthogonal(s1, s2, p=P, tol=1e-9):
    """Moebius orthogonality; for a point sphere this is incidence."""
    return orthogonality_residual(s1, s2, p) < tol


def elliptic_complex_spheres(a, p=P):
    """The two lightlike directions of span(a, p), '+' first.

    For a p-orthogonal spacelike ``a`` these are a + p and a - p.
    """
    a = np.asarray(a, dtype=float)
    aa, ap, pp = float(inner(a, a)), float(inner(a, p)), float(inner(p, p))
    disc = ap * ap - pp * aa
    if disc <= EPS_LIGHT * (_norm(a) * _norm(p)) ** 2:
        raise NoRealSpheres("span(a, p) contains no lightlike direction")
    root = np.sqrt(disc)
    lam_plus = (-ap - root) / pp
    lam_minus = (-ap + root) / pp
    return a + lam_plus * p, a + lam_minus * p


# ---- subspaces ----

def row_basis(B, tol=1e-10):
    """Euclidean-orthonormal rows spanning the row space of ``B``."""
    B = np.atleast_2d(np.asarray(B, dtype=float))
    _, sv, vt = np.linalg.svd(B, full_matrices=False)
    if sv.size == 0 or sv[0] == 0:
        return np.zeros((0, B.shape[1]))
    rank = int(np.sum(sv > tol * sv[0]))
    return vt[:rank]


def orthogonal_complement(B, tol=1e-10):
    """Rows spanning {x : <x, b> = 0 for every row b of B}."""
    B = np.atleast_2d(np.asarray(B, dtype=float))
    Q = row_basis(B, tol)
    _, sv, vt = np.linalg.svd(Q * ETA)
    return vt[Q.shape[0]:]


def signature(B, tol=1e-9):
    """(positive, negative, zero) counts of the induced Gram matrix."""
    Q = row_basis(B)
    lam = np.linalg.eigvalsh(gram(Q))
    scale = max(np.max(np.abs(lam)), 1e-300)
    pos = int(np.sum(lam > tol * scale))
    neg = int(np.sum(lam < -tol * scale))
    return pos, neg, len(lam) - pos - neg


def pseudo_orthonormal(B, expected=None, tol=1e-9):
    """Basis of span(B) with Gram diag(+1,..,+1,-1,..,-1), positives first."""
    Q = row_basis(B)
    lam, V = np.linalg.eigh(gram(Q))
    scale = max(np.max(np.abs(lam)), 1e-300)
    if np.any(np.abs(lam) < tol * scale):
        raise DegenerateSpan("span is degenerate (null direction in the induced metric)")
    order = np.argsort(-lam)
    lam, V = lam[order], V[:, order]
    basis = (V.T @ Q) / np.sqrt(np.abs(lam))[:, None]
    for k in range(len(basis)):
        idx = np.flatnonzero(np.abs(basis[k]) > 1e-12 * np.max(np.abs(basis[k])))
        if basis[k, idx[0]] < 0:
            basis[k] = -basis[k]
    sig = (int(np.sum(lam > 0)), int(np.sum(lam < 0)))
    if expected is not None and sig != tuple(expected):
        raise DegenerateSpan(f"signature {sig}, expected {tuple(expected)}")
    return basis


def span_residual(v, B):
    """Relative distance of ``v`` from the row span of ``B`` (Euclidean)."""
    v = np.asarray(v, dtype=float)
    Q = row_basis(B)
    r = v - (v @ Q.T) @ Q
    return float(np.linalg.norm(r) / np.linalg.norm(v))


def subspace_distance(A, B):
    """Sine of the largest principal angle between two row spans."""
    Qa, Qb = row_basis(A), row_basis(B)
    if Qa.shape[0] != Qb.shape[0]:
        return 1.0
    R = Qa - (Qa @ Qb.T) @ Qb
    return float(np.linalg.norm(R, 2))


def plane_intersection(F, G, tol=1e-9):
    """Common direction of two 2-planes (rows of F and G), or None.

    Raises :class:`DegenerateSpan` when the planes coincide.
    """
    F = np.array([normalize(f) for f in F])
    G = np.array([normalize(g) for g in G])
    N = _null_space(np.column_stack([F[0], F[1], G[0], G[1]]), tol)
    if len(N) == 0:
        return None
    if len(N) > 1:
        raise DegenerateSpan("the two planes coincide")
    c = N[0]
    return c[0] * F[0] + c[1] * F[1]


def point_sphere(x, y, p=P):
    """The point sphere of the contact element span(x, y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    m = np.multiply.outer(inner(y, p), np.ones(6)) * x - np.multiply.outer(inner(x, p), np.ones(6)) * y
    if m.ndim == 1:
        if _norm(m) < 1e-14 * _norm(x) * _norm(y):
            return x if abs(float(inner(x, p))) < abs(float(inner(y, p))) else y
    return m


def solve_trig(A, B, C, tol=1e-9):
    """Roots in [0, 2 pi) of A cos t + B sin t + C = 0.

    Returns ``(roots, double)``; a tangential solution (|C| = hypot(A, B)
    within ``tol``) is reported once with ``double = True``.
    """
    rho = float(np.hypot(A, B))
    scale = max(rho, abs(C), 1e-300)
    if rho < tol * scale:
        if abs(C) < tol * scale:
            raise ValueError("equation vanishes identically")
        return [], False
    phi = float(np.arctan2(B, A))
    if abs(rho - abs(C)) <= tol * scale:
        t = phi + (np.pi if C > 0 else 0.0)
        return [float(np.mod(t, 2 * np.pi))], True
    if abs(C) > rho:
        return [], False
    d = float(np.arccos(-C / rho))
    roots = sorted(float(np.mod(phi + s * d, 2 * np.pi)) for s in (1.0, -1.0))
    return roots, False
