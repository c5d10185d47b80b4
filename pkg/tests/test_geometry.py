import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entangle.errors import DegeneratePair, DegenerateProjection, DegenerateTurn
from entangle.geometry import (
    binormal_angle,
    binormal_angles,
    crossing_signs,
    pair_linking,
    seg_pair_linking,
    segment_distance,
    signed_crossing,
)
from entangle.chains import unit_vectors

from conftest import random_pair, rotation

# frozen with scipy.integrate.dblquad of the Gauss integrand (abs err 2e-13)
PERPENDICULAR_PAIR = -0.2951672353008665

coords = st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False)
points4 = st.lists(st.tuples(coords, coords, coords), min_size=4, max_size=4)


def test_coplanar_pair_is_zero():
    assert seg_pair_linking(((0, 0, 0), (1, 0, 0)), ((0, 1, 0), (1, 1, 0))) == 0.0


def test_symmetric_in_arguments():
    a = ((0, 0, 0), (1, 0, 0))
    b = ((0.3, 0.4, 0.5), (0.7, -0.2, 0.8))
    assert seg_pair_linking(a, b) == pytest.approx(seg_pair_linking(b, a), abs=1e-15)


def test_perpendicular_pair_matches_quadrature_value():
    val = seg_pair_linking(((0, 0, 0), (1, 0, 0)), ((0.5, -0.5, 0.25), (0.5, 0.5, 0.25)))
    assert abs(val - PERPENDICULAR_PAIR) < 1e-8


def test_shared_endpoint_and_touching_raise():
    with pytest.raises(DegeneratePair):
        seg_pair_linking(((0, 0, 0), (1, 0, 0)), ((1, 0, 0), (1, 1, 1)))
    with pytest.raises(DegeneratePair):
        seg_pair_linking(((0, 0, 0), (1, 0, 0)), ((0.5, -1, 0), (0.5, 1, 0)))


@settings(max_examples=200, deadline=None)
@given(points4)
def test_bounded_and_antisymmetric(pts):
    p = np.array(pts)
    if segment_distance(p[0], p[1], p[2], p[3]) < 1e-3:
        return
    if min(np.linalg.norm(p[1] - p[0]), np.linalg.norm(p[3] - p[2])) < 1e-3:
        return
    val = seg_pair_linking(p[:2], p[2:])
    assert abs(val) <= 0.5 + 1e-12
    assert seg_pair_linking(p[1::-1], p[2:]) == pytest.approx(-val, abs=1e-12)
    assert seg_pair_linking(p[:2], p[:1:-1]) == pytest.approx(-val, abs=1e-12)


def test_rigid_motion_and_scale_invariance(rng):
    for _ in range(50):
        a, b = random_pair(rng)
        base = seg_pair_linking(a, b)
        rot = rotation(rng)
        shift = rng.normal(size=3)
        s = rng.uniform(0.1, 10)
        moved = seg_pair_linking(s * a @ rot.T + shift, s * b @ rot.T + shift)
        assert moved == pytest.approx(base, abs=1e-9)
        mirrored = seg_pair_linking(a * (1, 1, -1), b * (1, 1, -1))
        assert mirrored == pytest.approx(-base, abs=1e-12)


def test_vectorized_matches_scalar(rng):
    pts = rng.random((100, 4, 3))
    vec = pair_linking(pts[:, 0], pts[:, 1], pts[:, 2], pts[:, 3])
    scal = [seg_pair_linking(p[:2], p[2:]) for p in pts]
    np.testing.assert_allclose(vec, scal, atol=1e-15)


def test_crossing_sign_flips_with_orientation():
    a = ((0, -1, 1), (0, 1, 1))
    b = ((-1, 0, 0), (1, 0, 0))
    s = signed_crossing(a, b, (0, 0, 1))
    assert s in (-1, 1)
    assert signed_crossing(a[::-1], b, (0, 0, 1)) == -s
    # swapping over and under strands also flips the sign
    assert signed_crossing(a, b, (0, 0, -1)) == s


def test_disjoint_projection_has_no_crossing():
    assert signed_crossing(((0, 0, 0), (1, 0, 0)), ((2, 1, 0), (3, 1, 0)), (0, 0, 1)) == 0


def test_crossing_through_endpoint_is_degenerate():
    with pytest.raises(DegenerateProjection):
        signed_crossing(((0, 0, 0), (1, 0, 0)), ((0.5, 0, 1), (0.5, 1, 1)), (0, 0, 1))


def test_projection_average_equals_twice_linking(rng):
    a, b = np.array([[0.1, 0.2, 0.3], [0.9, 0.7, 0.4]]), np.array([[0.6, 0.1, 0.9], [0.3, 0.8, 0.05]])
    target = 2.0 * seg_pair_linking(a, b)
    xi = unit_vectors(100_000, rng)
    n = len(xi)
    signs, bad = crossing_signs(
        np.broadcast_to(a[0], (n, 3)), np.broadcast_to(a[1], (n, 3)),
        np.broadcast_to(b[0], (n, 3)), np.broadcast_to(b[1], (n, 3)), xi,
    )
    assert not bad.any()
    vals = signs.astype(float)
    se = vals.std(ddof=1) / np.sqrt(n)
    assert abs(vals.mean() - target) <= 3 * se


def test_binormal_angle_cases():
    assert binormal_angle((1, 0, 0), (0, 1, 0), (-1, 0.5, 0)) == 0.0
    assert binormal_angle((1, 0, 0), (0, 1, 0), (0, 0, 1)) == pytest.approx(np.pi / 2, abs=1e-12)
    e = np.array([(0.3, 0.1, 0.4), (-0.2, 0.5, 0.1), (0.1, 0.2, -0.6)])
    phi = binormal_angle(*e)
    assert binormal_angle(*(e * (1, 1, -1))) == pytest.approx(-phi, abs=1e-12)


def test_parallel_turn():
    with pytest.raises(DegenerateTurn):
        binormal_angle((1, 0, 0), (2, 0, 0), (0, 1, 0))
    angles, deg = binormal_angles(np.array([[1.0, 0, 0]]), np.array([[2.0, 0, 0]]), np.array([[0, 1.0, 0]]))
    assert angles[0] == 0.0 and deg[0]
