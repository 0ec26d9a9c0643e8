import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclidic.cyclide import cyclide_from_torus
from cyclidic.errors import DegenerateInput, DegeneratePencil, NoCommonSphere, NotOnSphere
from cyclidic.euclid import INFINITY, circle_through_points, lift_plane, lift_point, lift_sphere
from cyclidic.incidence import (PencilKind, circle_on_sphere_residual, circle_orthogonality_residual,
                                circle_sphere_angle, classify_pencil, orthogonal_circle,
                                spheres_orthogonal_to_circle)
from cyclidic.minkowski import ETA, P, gram, inner, orthogonal, same_point, span_residual


def _x_axis_circle():
    return orthogonal_circle(lift_point([1, 0, 0]), lift_point([-1, 0, 0]), lift_sphere([0, 0, 0], 1))


def test_orthogonal_circle_x_axis():
    c = _x_axis_circle()
    expected = np.array([[1, 0, 0, 0, 1, 0], [-1, 0, 0, 0, 1, 0], [0, 0, 0, 1, 0, 0]], float)
    for v in expected:
        assert span_residual(v, c.gamma) < 1e-12
    for x in np.linspace(-5, 5, 11):
        assert c.contains(lift_point([x, 0, 0]))
    assert c.contains(INFINITY)
    assert not c.contains(lift_point([0, 1, 0]))
    for m in (lift_point([1, 0, 0]), lift_point([-1, 0, 0])):
        np.testing.assert_allclose(c.gamma_perp @ (ETA * m), 0, atol=1e-12)


def test_orthogonal_circle_not_on_sphere():
    with pytest.raises(NotOnSphere):
        orthogonal_circle(lift_point([2, 0, 0]), lift_point([-1, 0, 0]), lift_sphere([0, 0, 0], 1))


def test_circle_points_lightlike_and_injective():
    c = _x_axis_circle()
    us = np.linspace(0, 2 * np.pi, 50, endpoint=False)
    X = c.points(us)
    np.testing.assert_allclose(np.einsum("ij,j,ij->i", X, ETA, X), 0, atol=1e-12)
    np.testing.assert_allclose(X @ (ETA * P), 0, atol=1e-12)
    np.testing.assert_allclose([c.parameter_of(x) for x in X], us, atol=1e-10)


def test_split_reconstructs_identity():
    c = _x_axis_circle()
    B = np.vstack([c.gamma, c.gamma_perp])
    G = gram(B)
    np.testing.assert_allclose(G, np.diag([1, 1, -1, 1, 1, -1]), atol=1e-12)


def test_circle_sphere_angle_extremes():
    c = circle_through_points(np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.array([-1.0, 0, 0]))
    unit = lift_sphere([0, 0, 0], 1)
    assert circle_on_sphere_residual(c, unit) < 1e-12
    assert circle_sphere_angle(c, unit) == pytest.approx(0, abs=1e-8)
    plane = lift_plane([1, 0, 0], 0)
    assert circle_orthogonality_residual(c, plane) < 1e-12
    assert circle_sphere_angle(c, plane) == pytest.approx(np.pi / 2, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.1, 1.4))
def test_circle_sphere_angle_against_tilted_planes(phi):
    # the unit circle in z = 0 crosses the plane through the x-axis tilted by phi at angle phi
    c = circle_through_points(np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.array([-1.0, 0, 0]))
    plane = lift_plane([0, -np.sin(phi), np.cos(phi)], 0)
    assert circle_sphere_angle(c, plane) == pytest.approx(phi, abs=1e-9)


def _lightlike_in(S, rng):
    # random element of span(S) moved onto the light cone along p (p is in S)
    x = rng.normal(size=len(S)) @ S
    a, b, c = inner(P, P), 2 * inner(x, P), inner(x, x)
    lam = (-b + np.sqrt(b * b - 4 * a * c)) / (2 * a)
    return x + lam * P


def test_spheres_orthogonal_to_circle_torus_meridian():
    d = cyclide_from_torus(2, 1)
    f, fhat = d.contact_element(0.0, 0.4), d.contact_element(0.0, 2.0)
    S = spheres_orthogonal_to_circle(f, fhat)
    assert S.shape == (4, 6)
    # the circle through both points orthogonal to the shared tube sphere lies in the
    # meridian plane y = 0, so every sphere of S meets that plane orthogonally
    meridian = lift_plane([0, 1, 0], 0)
    m1, m2 = d.point(0.0, 0.4), d.point(0.0, 2.0)
    c = orthogonal_circle(m1, m2, f[0])
    assert circle_on_sphere_residual(c, meridian) < 1e-12
    rng = np.random.default_rng(0)
    for _ in range(20):
        v = _lightlike_in(S, rng)
        assert orthogonal(v, meridian)
        if abs(inner(v, P)) > 1e-6 * np.linalg.norm(v):
            assert circle_orthogonality_residual(c, v) < 1e-10
    with pytest.raises(DegenerateInput):
        spheres_orthogonal_to_circle(f, f)
    with pytest.raises(NoCommonSphere):
        spheres_orthogonal_to_circle(d.contact_element(0.0, 0.4), d.contact_element(1.0, 2.0))


def test_orthogonal_circle_meets_both_contact_elements():
    d = cyclide_from_torus(2, 1)
    f, fhat = d.contact_element(0.7, 0.4), d.contact_element(0.7, 2.9)
    c = orthogonal_circle(d.point(0.7, 0.4), d.point(0.7, 2.9), f[0])
    for t in np.linspace(0, np.pi, 9):
        for s1, s2 in (f, fhat):
            assert circle_orthogonality_residual(c, np.cos(t) * s1 + np.sin(t) * s2) < 1e-10


def test_fact_circle_orthogonal_to_contact_element():
    # a circle orthogonal to two spheres of a contact element is orthogonal to all of them
    from cyclidic.incidence import circle_from_span
    from cyclidic.minkowski import mobius_part
    d = cyclide_from_torus(2, 1)
    s1, s2 = d.contact_element(0.3, 1.1)
    c = circle_from_span(np.vstack([mobius_part(s1), mobius_part(s2), lift_point([5.0, 1.0, -2.0])]))
    for t in np.linspace(0, 3, 7):
        assert circle_orthogonality_residual(c, np.cos(t) * s1 + np.sin(t) * s2) < 1e-10


def test_classify_pencil_examples():
    u = lift_sphere([0, 0, 0], 1)
    assert classify_pencil(u, lift_sphere([0, 0, 0], 2)).kind is PencilKind.PENCIL2
    assert classify_pencil(u, lift_sphere([1, 0, 0], 1)).kind is PencilKind.PENCIL0
    # outward normals of externally tangent spheres are opposite: contact with s2 reversed
    assert classify_pencil(u, lift_sphere([2, 0, 0], 1)).kind is PencilKind.PENCIL1
    with pytest.raises(DegeneratePencil):
        classify_pencil(u, u + 0.5 * P)


@pytest.mark.parametrize("s2", [lift_sphere([0, 0, 0], 2), lift_sphere([1, 0, 0], 1),
                                lift_sphere([2, 0, 0], 1), lift_sphere([0.3, 0.2, 0], 1.5),
                                lift_plane([0, 0, 1], 0.5)])
def test_pencil_endpoints_and_lightlike(s2):
    s1 = lift_sphere([0, 0, 0], 1)
    m = classify_pencil(s1, s2)
    assert same_point(m.sphere(0.0), s1)
    end = m.sphere(m.t1)
    assert same_point(end, s2) or same_point(end, s2 - 2 * inner(s2, P) / inner(P, P) * P)
    assert 0 < m.t1 <= np.pi
    ts = np.linspace(0, 2 * np.pi, 40)
    V = m.sphere(ts)
    np.testing.assert_allclose(np.einsum("ij,j,ij->i", V, ETA, V) / np.sum(V * V, axis=1), 0,
                               atol=1e-12)
    for v in V:
        assert span_residual(v, np.array([s1, s2, P])) < 1e-10


def test_pencil0_members_contain_the_common_circle():
    s1, s2 = lift_sphere([0, 0, 0], 1), lift_sphere([1, 0, 0], 1)
    m = classify_pencil(s1, s2)
    # intersection circle: x = 1/2, y^2 + z^2 = 3/4
    h = np.sqrt(0.75)
    pts = [lift_point([0.5, h, 0]), lift_point([0.5, 0, -h])]
    for t in np.linspace(0, 2 * np.pi, 13):
        for x in pts:
            assert orthogonal(x, m.sphere(t))


def test_pencil_parameter_of_inverts_sphere():
    for s2 in (lift_sphere([0, 0, 0], 2), lift_sphere([1, 0, 0], 1)):
        m = classify_pencil(lift_sphere([0, 0, 0], 1), s2)
        for t in (0.3, 1.0, 2.5, 4.0):
            assert m.parameter_of(m.sphere(t)) == pytest.approx(t, abs=1e-9)
