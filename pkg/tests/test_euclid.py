import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclidic.errors import NotLightlike
from cyclidic.euclid import (INFINITY, EuclidSphere, circle_through_points, euclidean_space_form,
                             fit_circle, lift, lift_plane, lift_point, lift_sphere, project,
                             project_points, sample_circle_euclidean)
from cyclidic.incidence import orthogonal_circle
from cyclidic.minkowski import P, inner, orthogonal

from oracles import lift as lift_oracle

coord = st.floats(-10, 10, allow_nan=False)
radius = st.floats(0.01, 5).flatmap(lambda r: st.sampled_from([r, -r]))


def test_lift_examples():
    np.testing.assert_array_equal(lift_point([0, 0, 0]), [0, 0, 0, 0.5, 0.5, 0])
    # (1 - 0 + 1)/2 = 1 and (1 + 0 - 1)/2 = 0
    np.testing.assert_array_equal(lift_sphere([0, 0, 0], 1), [0, 0, 0, 1, 0, 1])
    np.testing.assert_array_equal(lift_plane([0, 0, 1], 0), [0, 0, 1, 0, 0, 1])
    assert inner(lift_sphere([0, 0, 0], 1), lift_sphere([0, 0, 0], 1)) == 0


def test_project_examples():
    assert project([0, 0, 0, 1, 0, 1]).close_to(EuclidSphere.sphere([0, 0, 0], 1))
    assert project([0, 0, 1, 0, 0, 1]).close_to(EuclidSphere.plane([0, 0, 1], 0))
    assert project(INFINITY).kind == "infinity"
    assert project(3 * lift_point([1, 2, 3])).close_to(EuclidSphere.point([1, 2, 3]))
    with pytest.raises(NotLightlike):
        project([1, 0, 0, 0, 0, 0])


def test_infinity_is_the_limit_of_far_points():
    far = lift_point([1e6, 0, 0])
    v = far / np.linalg.norm(far)
    assert np.linalg.norm(v - INFINITY / np.linalg.norm(INFINITY)) < 1e-5


@settings(max_examples=300, deadline=None)
@given(st.tuples(coord, coord, coord), radius)
def test_sphere_roundtrip(c, r):
    s = EuclidSphere.sphere(c, r)
    v = lift(s)
    np.testing.assert_allclose(v, lift_oracle(c, r), rtol=1e-15, atol=1e-15)
    assert project(v).close_to(s, 1e-10)
    assert abs(inner(v, v)) <= 1e-12 * (v @ v)
    assert inner(v, P) == -r


@settings(max_examples=200, deadline=None)
@given(st.tuples(coord, coord, coord), coord)
def test_plane_roundtrip(n, d):
    n = np.array(n)
    if np.linalg.norm(n) < 1e-3:
        return
    s = EuclidSphere.plane(n, d)
    assert project(lift(s)).close_to(s, 1e-10)
    assert inner(lift(s), P) == -1


@settings(max_examples=200, deadline=None)
@given(st.tuples(coord, coord, coord))
def test_point_roundtrip(x):
    v = lift_point(x)
    assert inner(v, P) == 0
    assert project(v).close_to(EuclidSphere.point(x), 1e-10)


def test_space_form():
    sf = euclidean_space_form()
    assert inner(sf.q, sf.q) == 0 and sf.curvature == 0
    assert inner(sf.q, P) == 0
    for x in ([0, 0, 0], [1, 2, 3], [-5, 0, 2]):
        assert inner(lift_point(x), sf.q) == pytest.approx(-1.0)


@settings(max_examples=200, deadline=None)
@given(st.tuples(coord, coord, coord), st.floats(0.1, 3), st.floats(0, 6), st.booleans())
def test_incidence_oracle(c, r, dist, on):
    c = np.array(c)
    d = np.array([0.6, 0.0, 0.8])
    x = c + (r if on else dist) * d
    truth = abs(np.linalg.norm(x - c) - r) < 1e-9
    assert orthogonal(lift_point(x), lift_sphere(c, r), P) == truth


def test_sample_x_axis_circle():
    s = lift_sphere([0, 0, 0], 1)
    c = orthogonal_circle(lift_point([1, 0, 0]), lift_point([-1, 0, 0]), s)
    pts, flags = sample_circle_euclidean(c, 4)
    finite = pts[~flags]
    assert len(finite) >= 3
    np.testing.assert_allclose(finite[:, 1:], 0, atol=1e-12)


def test_sample_radius_two_circle():
    c = circle_through_points(np.array([2.0, 0, 0]), np.array([0, 2.0, 0]), np.array([-2.0, 0, 0]))
    pts, flags = sample_circle_euclidean(c, 17)
    assert not flags.any()
    np.testing.assert_allclose(np.linalg.norm(pts, axis=1), 2, atol=1e-10)
    pts3, _ = sample_circle_euclidean(c, 3)
    assert min(np.linalg.norm(pts3[i] - pts3[j]) for i in range(3) for j in range(i)) > 1


def test_project_points_flags_infinity():
    V = np.array([lift_point([1, 2, 3]), INFINITY])
    pts, flags = project_points(V)
    np.testing.assert_allclose(pts[0], [1, 2, 3])
    assert flags.tolist() == [False, True]


def test_fit_circle():
    t = np.linspace(0, 2, 7)
    X = np.column_stack([1 + 3 * np.cos(t), 3 * np.sin(t), np.full_like(t, 2.0)])
    c, r, n, res = fit_circle(X)
    np.testing.assert_allclose(c, [1, 0, 2], atol=1e-12)
    assert r == pytest.approx(3) and res < 1e-12
