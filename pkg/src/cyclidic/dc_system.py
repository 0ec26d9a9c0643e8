"""Ribaucour pairs of Dupin cyclides and Lamé families of DC-systems.

A complex ``a`` and the point sphere complex ``p`` span a plane C. Lie
inversions in the non-null directions b of C move a cyclide through a
Lamé family; the circles span(pi s1(u), pi s2(v), pi a) are the orthogonal
trajectories (pi removes the p component).
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np

from .cyclide import DupinCyclide
from .errors import (
    DegenerateSpan,
    NullDirection,
    ParabolicComplex,
    PointSphereComplexArgument,
    UnsupportedChart,
)
from .euclid import INFINITY, SpaceForm, line_fit_residual, project_points
from .incidence import circle_from_span
from .minkowski import (
    P,
    ComplexKind,
    complex_kind,
    inner,
    lie_inversion,
    mobius_part,
    orthogonal_complement,
    pseudo_orthonormal,
    span_residual,
)

SPECTRAL_NODES = 5


@dataclass(frozen=True)
class RibaucourPair:
    delta: DupinCyclide
    a: np.ndarray
    delta_hat: DupinCyclide
    p: np.ndarray = field(default_factory=lambda: P.copy())

    def ribaucour_sphere(self, u, v):
        """The sphere enveloped by both cyclides at (u, v): f(u,v) ∩ a-perp."""
        s1 = self.delta.family(1).sphere(u)
        s2 = self.delta.family(2).sphere(v)
        return float(inner(s2, self.a)) * s1 - float(inner(s1, self.a)) * s2


def _check_complex(a, p):
    a = np.asarray(a, dtype=float)
    if span_residual(a, p[None, :]) < 1e-9:
        raise PointSphereComplexArgument("the complex is the point sphere complex")
    return a


def ribaucour_transform(d: DupinCyclide, a, p=P):
    a = _check_complex(a, p)
    if complex_kind(a) is ComplexKind.PARABOLIC:
        raise ParabolicComplex("Ribaucour transform needs a non-parabolic complex")
    return RibaucourPair(d, a, d.transformed(a), np.asarray(p, float))


def _span_from_derivatives(f, x, nodes=SPECTRAL_NODES):
    """span(f, f', f'') at x for a 2 pi-periodic f.

    Derivatives come from trigonometric interpolation on ``nodes``
    equispaced samples, which is exact for the degree-one trigonometric
    curves traced by curvature sphere families and free of step-size
    roundoff.
    """
    n = int(nodes)
    xs = x + 2 * np.pi * np.arange(n) / n
    F = np.array([f(t) for t in xs])
    c = np.fft.fft(F, axis=0) / n
    k = np.fft.fftfreq(n, 1.0 / n)
    if n % 2 == 0:
        k[n // 2] = 0.0
    d1 = np.real(np.sum((1j * k)[:, None] * c, axis=0))
    d2 = np.real(np.sum((-(k ** 2))[:, None] * c, axis=0))
    rows = np.array([F[0], d1, d2])
    rows = rows / np.linalg.norm(rows, axis=1)[:, None]
    _, sv, vt = np.linalg.svd(rows, full_matrices=False)
    return vt[:3]


def ribaucour_cyclide(pair: RibaucourPair, direction, fixed_param, at=0.0, nodes=SPECTRAL_NODES):
    """Ribaucour cyclide: span of r and its first two derivatives along the
    other curvature parameter, with the first parameter held fixed.

    ``direction=1`` fixes u and differentiates in v (C1 depends on u only);
    ``direction=2`` fixes v and differentiates in u.
    """
    if direction == 1:
        C = _span_from_derivatives(lambda v: pair.ribaucour_sphere(fixed_param, v), at, nodes)
    elif direction == 2:
        C = _span_from_derivatives(lambda u: pair.ribaucour_sphere(u, fixed_param), at, nodes)
    else:
        raise ValueError("direction must be 1 or 2")
    C = pseudo_orthonormal(C, expected=(2, 1))
    return DupinCyclide(C, pseudo_orthonormal(orthogonal_complement(C), expected=(2, 1)))


def ribaucour_plane_exact(pair: RibaucourPair, direction, fixed_param):
    """Closed form of the same plane: span{<b_k, a> s(x) - <s(x), a> b_k}."""
    i = direction
    fam = pair.delta.family(i)
    other = pair.delta.plane(3 - i)
    s = fam.sphere(fixed_param)
    g = float(inner(s, pair.a))
    return np.array([float(inner(b, pair.a)) * s - g * b for b in other])


# ---- Lamé families ----

class FamilyType(Enum):
    TYPE1 = 1
    TYPE2 = 2
    TYPE3 = 3


@dataclass(frozen=True)
class Classification:
    family_type: FamilyType
    e1: np.ndarray
    space_form: SpaceForm
    umbilics: Optional[tuple] = None
    concurrent: bool = False


def classify_family(a, p=P, tol=1e-9):
    """Type of span(a, p) by the sign of <e1, e1>, e1 = p-free part of a."""
    a = _check_complex(a, p)
    e1 = mobius_part(a, p)
    n2 = float(e1 @ e1)
    ee = float(inner(e1, e1))
    if abs(ee) < tol * n2:
        q = e1
        ftype = FamilyType.TYPE1
        concurrent = span_residual(INFINITY, q[None, :]) > 1e-9
        return Classification(ftype, e1, SpaceForm(q, 0.0), None, concurrent)
    u = e1 / np.sqrt(abs(ee))
    if ee > 0:
        pp = -float(inner(p, p))
        pn = p / np.sqrt(pp)
        return Classification(FamilyType.TYPE2, e1, SpaceForm(u, -1.0), (u + pn, u - pn))
    return Classification(FamilyType.TYPE3, e1, SpaceForm(u, 1.0))


@dataclass(frozen=True)
class LameFamily:
    """Members sigma_b(delta), b = cos(beta) u + sin(beta) p (Types 2, 3) or
    b = e1 + lam p (Type 1)."""

    delta: DupinCyclide
    a: np.ndarray
    p: np.ndarray
    e1: np.ndarray
    family_type: FamilyType
    space_form: SpaceForm
    umbilics: Optional[tuple] = None
    concurrent: bool = False

    @property
    def u(self):
        if self.family_type is FamilyType.TYPE1:
            return self.e1
        return self.e1 / np.sqrt(abs(float(inner(self.e1, self.e1))))

    @property
    def pn(self):
        return self.p / np.sqrt(-float(inner(self.p, self.p)))

    def b(self, param):
        if self.family_type is FamilyType.TYPE1:
            return self.e1 + param * self.pn
        return np.cos(param) * self.u + np.sin(param) * self.pn

    def is_null(self, param, tol=1e-9):
        b = self.b(param)
        return abs(float(inner(b, b))) < tol * float(b @ b)

    def null_parameters(self):
        """Parameters where b is lightlike (the umbilic spheres)."""
        if self.family_type is FamilyType.TYPE1:
            return [0.0]
        if self.family_type is FamilyType.TYPE2:
            return [np.pi / 4, 3 * np.pi / 4, 5 * np.pi / 4, 7 * np.pi / 4]
        return []

    def parameter_of(self, b):
        """Parameter of a vector of span(a, p)."""
        b = np.asarray(b, dtype=float)
        if span_residual(b, np.array([self.e1, self.p])) > 1e-8:
            raise DegenerateSpan("vector is not in span(a, p)")
        if self.family_type is FamilyType.TYPE1:
            # b = x e1 + y pn; return y / x
            x, y = np.linalg.lstsq(np.array([self.e1, self.pn]).T, b, rcond=None)[0]
            return float(y / x)
        x, y = np.linalg.lstsq(np.array([self.u, self.pn]).T, b, rcond=None)[0]
        return float(np.mod(np.arctan2(y, x), np.pi))

    def member(self, param):
        if self.is_null(param):
            raise NullDirection(f"b({param}) is lightlike: the member is a sphere")
        return self.delta.transformed(self.b(param))

    def members(self, params):
        """Members for non-null parameters and the list of skipped ones."""
        out, skipped = [], []
        for t in params:
            try:
                out.append((t, self.member(t)))
            except NullDirection:
                skipped.append(t)
        return out, skipped

    def mirrored_parameter(self, param):
        """Parameter of b-perp in span(a, p).

        sigma_{e1} maps the member at ``param`` to the member at the mirrored
        parameter with all orientations reversed (composed with sigma_p).
        """
        if self.family_type is FamilyType.TYPE2:
            return float(np.mod(np.pi / 2 - param, np.pi))
        if self.family_type is FamilyType.TYPE3:
            return float(np.mod(param + np.pi / 2, np.pi))
        raise ParabolicComplex("Type 1 families have no Moebius symmetry (e1 is null)")

    def relating_complex(self, k, l):
        """c in span(a, p) with sigma_c(M_k) = sigma_p(M_l)."""
        bk, bl = self.b(k), self.b(l)
        X = np.array([self.e1 / np.linalg.norm(self.e1), self.pn])
        Y = lie_inversion(self.p, lie_inversion(bl, lie_inversion(bk, X)))
        # the composite acts on span(a, p) as a reflection; c spans its -1 eigenspace
        M = np.linalg.lstsq(X.T, Y.T, rcond=None)[0]
        w, V = np.linalg.eig(M)
        idx = int(np.argmin(np.abs(w + 1)))
        return np.real(V[:, idx]) @ X

    def congruence_circle(self, uv):
        return congruence_circle(self.delta, self.a, uv[0], uv[1], self.p)

    def member_point(self, param, u, v):
        """Point where the member at ``param`` meets the trajectory circle at (u, v)."""
        m = self.member(param)
        return m.point(u, v, self.p)


def lame_family(d: DupinCyclide, a, p=P, params=()):
    """Lamé family of (d, a) and its members at ``params`` (null ones skipped)."""
    c = classify_family(a, p)
    fam = LameFamily(d, np.asarray(a, float), np.asarray(p, float), c.e1, c.family_type,
                     c.space_form, c.umbilics, c.concurrent)
    members, skipped = fam.members(params)
    return fam, members, skipped


def congruence_circle(d: DupinCyclide, a, u, v, p=P):
    """Trajectory circle through the point (u, v): span(pi s1, pi s2, pi a)."""
    s1 = d.family(1).sphere(u)
    s2 = d.family(2).sphere(v)
    return circle_from_span(np.array([mobius_part(s1, p), mobius_part(s2, p), mobius_part(a, p)]), p)


@dataclass
class ParallelReport:
    supported: bool
    reason: str = ""
    collinearity_max: float = np.nan
    offset_std_max: float = np.nan
    offsets: List[float] = field(default_factory=list)


def parallel_check(family: LameFamily, params, p=P, samples=8, seed=0, strict=False):
    """Check that Type 1 members (e1 = Euclidean q) are parallel surfaces:
    straight trajectories and constant offsets between members."""
    e1 = family.e1
    if family.family_type is not FamilyType.TYPE1 or span_residual(INFINITY, e1[None, :]) > 1e-9:
        msg = "only Type 1 families with the Euclidean space form vector are checked"
        if strict:
            raise UnsupportedChart(msg)
        return ParallelReport(False, msg)
    rng = np.random.default_rng(seed)
    uv = rng.uniform(0, 2 * np.pi, size=(samples, 2))
    members = [family.member(t) for t in params]
    P3 = np.empty((len(members), samples, 3))
    for k, m in enumerate(members):
        V = np.array([m.point(u, v, p) for u, v in uv])
        P3[k], flags = project_points(V)
        if flags.any():
            raise UnsupportedChart("member point at infinity")
    col = max(line_fit_residual(P3[:, j]) for j in range(samples))
    offsets, stds = [], []
    for k in range(len(members) - 1):
        dist = np.linalg.norm(P3[k + 1] - P3[k], axis=1)
        offsets.append(float(dist.mean()))
        stds.append(float(dist.std()))
    return ParallelReport(True, "", float(col), float(max(stds) if stds else 0.0), offsets)
