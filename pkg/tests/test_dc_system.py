import numpy as np
import pytest

from cyclidic.cyclide import cyclide_from_torus
from cyclidic.dc_system import (FamilyType, classify_family, congruence_circle,
                                lame_family, parallel_check, ribaucour_cyclide, ribaucour_plane_exact,
                                ribaucour_transform)
from cyclidic.errors import (NullDirection, ParabolicComplex, PointSphereComplexArgument,
                             UnsupportedChart)
from cyclidic.euclid import INFINITY, lift_sphere, project_points
from cyclidic.incidence import circle_sphere_angle
from cyclidic.minkowski import (ETA, P, e, inner, lie_inversion, mobius_part, orthogonal_complement,
                                row_basis, same_point, signature, span_residual, subspace_distance)

from oracles import fitted_tube_radius, torus_residual
from suites import ribaucour_suite, type_suite

TORUS = cyclide_from_torus(2, 1)
A_GENERIC = mobius_part(lift_sphere([0.4, -0.3, 0.7], 1.3))


def test_complex_inside_a_plane_keeps_the_cyclide():
    # D1 + D2 is all of R^{4,2}, so no nonzero complex is orthogonal to both planes;
    # a complex inside D1 fixes D2 pointwise and maps D1 onto itself
    a = TORUS.D1[0]
    pair = ribaucour_transform(TORUS, a)
    assert pair.delta_hat.same_as(TORUS)


def test_ribaucour_transform_valid():
    pair = ribaucour_transform(TORUS, A_GENERIC)
    assert pair.delta_hat.splitting_residual() < 1e-10
    assert signature(pair.delta_hat.D1)[:2] == (2, 1)
    with pytest.raises(PointSphereComplexArgument):
        ribaucour_transform(TORUS, 2 * P)
    with pytest.raises(ParabolicComplex):
        ribaucour_transform(TORUS, INFINITY)


def test_enveloped_sphere_shared():
    pair = ribaucour_transform(TORUS, A_GENERIC)
    for u, v in [(0.1, 0.2), (1.5, 4.0), (3.0, 5.5)]:
        r = pair.ribaucour_sphere(u, v)
        assert abs(inner(r, A_GENERIC)) < 1e-12 * np.linalg.norm(r)
        assert span_residual(r, TORUS.contact_element(u, v)) < 1e-12
        assert span_residual(r, pair.delta_hat.contact_element(u, v)) < 1e-12


def test_ribaucour_cyclide_matches_closed_form_and_is_constant():
    pair = ribaucour_transform(TORUS, A_GENERIC)
    for direction in (1, 2):
        exact = ribaucour_plane_exact(pair, direction, 0.8)
        planes = [ribaucour_cyclide(pair, direction, 0.8, at=y).D1 for y in np.linspace(0, 6, 10)]
        for pl in planes:
            assert subspace_distance(pl, row_basis(exact)) < 1e-9
        for s in (TORUS.family(direction).sphere(0.8), pair.delta_hat.family(direction).sphere(0.8)):
            assert span_residual(s, orthogonal_complement(planes[0])) < 1e-9


def test_ribaucour_directions_structure():
    pair = ribaucour_transform(TORUS, A_GENERIC)
    u, v = 0.7, 2.1
    C1 = ribaucour_cyclide(pair, 1, u).D1
    C2 = ribaucour_cyclide(pair, 2, v).D1
    r = pair.ribaucour_sphere(u, v)
    assert span_residual(r, C1) < 1e-9 and span_residual(r, C2) < 1e-9
    # together they fill a-perp, meeting only in r
    total = row_basis(np.vstack([C1, C2]))
    assert total.shape[0] == 5
    np.testing.assert_allclose(total @ (ETA * A_GENERIC), 0, atol=1e-9)


def test_classify_family_examples():
    c = classify_family(INFINITY)
    assert c.family_type is FamilyType.TYPE1 and c.space_form.curvature == 0 and not c.concurrent
    c2 = classify_family(e(1))
    assert c2.family_type is FamilyType.TYPE2
    for b in c2.umbilics:
        assert abs(inner(b, b)) < 1e-12
    c3 = classify_family(np.array([0, 0, 0.3, 0.2, 1.0, 0]))
    assert c3.family_type is FamilyType.TYPE3 and c3.umbilics is None
    assert classify_family(e(1) + e(5)).concurrent
    with pytest.raises(PointSphereComplexArgument):
        classify_family(P)


def test_lame_member_b_equal_a_is_ribaucour_partner():
    fam, members, _ = lame_family(TORUS, A_GENERIC, P, [0.0])
    a_hat = A_GENERIC / np.sqrt(inner(A_GENERIC, A_GENERIC))
    assert same_point(fam.b(0.0), a_hat)
    assert members[0][1].same_as(TORUS.transformed(A_GENERIC))


def test_null_direction_skipped():
    fam, members, skipped = lame_family(TORUS, e(1), P, [0.3, np.pi / 4, 1.0])
    assert skipped == [np.pi / 4] and len(members) == 2
    with pytest.raises(NullDirection):
        fam.member(np.pi / 4)


def test_group_closure():
    fam, _, _ = lame_family(TORUS, A_GENERIC, P, [])
    M = fam.member(0.4)
    img = M.transformed(fam.b(1.1)).transformed(fam.b(0.7))
    # three reflections of the plane span(a, p) compose to a reflection: find its axis
    X = np.array([fam.u, fam.pn])
    Y = lie_inversion(fam.b(0.7), lie_inversion(fam.b(1.1), lie_inversion(fam.b(0.4), X)))
    w, V = np.linalg.eig(np.linalg.lstsq(X.T, Y.T, rcond=None)[0])
    k = fam.parameter_of(np.real(V[:, np.argmin(np.abs(w + 1))]) @ X)
    target = fam.member(k)
    assert img.same_as(target, 1e-9) or img.same_as(target.transformed(P), 1e-9)


@pytest.mark.parametrize("a", [e(1), np.array([0, 0, 0.3, 0.2, 1.0, 0])])
def test_mirrored_member(a):
    fam, _, _ = lame_family(TORUS, a, P, [])
    for beta in (0.2, 0.5, 1.3):
        img = fam.member(beta).transformed(fam.u)
        mirror = fam.member(fam.mirrored_parameter(beta))
        assert img.same_as(mirror.transformed(P), 1e-9) or img.same_as(mirror, 1e-9)


def test_congruence_circle_meets_members_orthogonally():
    fam, members, _ = lame_family(TORUS, A_GENERIC, P, [0.2, 0.9, 1.6, 2.4])
    for u, v in [(0.3, 0.4), (2.0, 5.0)]:
        g = congruence_circle(TORUS, A_GENERIC, u, v)
        for _, M in members:
            assert span_residual(M.point(u, v), g.gamma) < 1e-10
            for s in M.contact_element(u, v):
                assert circle_sphere_angle(g, s) == pytest.approx(np.pi / 2, abs=1e-6)


def test_trajectory_circles_are_circles():
    # the members' points over one (u, v) are concircular (the trajectory)
    fam, members, _ = lame_family(TORUS, A_GENERIC, P, list(np.linspace(0.1, 3.0, 7)))
    X = np.array([M.point(0.5, 1.5) for _, M in members])
    assert np.linalg.svd(X / np.linalg.norm(X, axis=1)[:, None], compute_uv=False)[3] < 1e-10


def test_parallel_tori():
    lams = [3.0, 4.0, 6.0]
    fam, members, _ = lame_family(TORUS, INFINITY, P, lams)
    us = np.linspace(0, 2 * np.pi, 9)
    for lam, (_, M) in zip(lams, members):
        pts = project_points(M.points(us, us))[0].reshape(-1, 3)
        rho = abs(1 + 2 / lam)
        assert torus_residual(pts, 2, rho).max() < 1e-10
        assert np.ptp(fitted_tube_radius(pts, 2)) < 1e-10
    rep = parallel_check(fam, lams)
    assert rep.supported and rep.collinearity_max < 1e-8 and rep.offset_std_max < 1e-7


def test_parallel_check_unsupported():
    fam, _, _ = lame_family(TORUS, e(1), P, [])
    assert not parallel_check(fam, [0.3, 0.5]).supported
    with pytest.raises(UnsupportedChart):
        parallel_check(fam, [0.3], strict=True)


def test_small_suites():
    r = ribaucour_suite(n_complexes=2, n_members=4)
    assert r["relation"] < 1e-7 and r["ribaucour_constancy"] < 1e-7
    t = type_suite()
    assert t["type1_monotone"] and t["type3_null_params"] == []
