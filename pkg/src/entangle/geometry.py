"""Segment-level kernels: Gauss linking of two straight edges, projected
crossing signs, and binormal torsion angles.

The vectorized functions (``pair_linking``, ``segment_distance``,
``crossing_signs``, ``binormal_angles``) broadcast over leading axes and never
raise; the scalar functions validate their input and raise on degeneracy.
"""

import numpy as np

from ._validation import EPS_GEOM, check_direction, check_segment, check_vector
from .errors import DegeneratePair, DegenerateProjection, DegenerateTurn

_TWO_PI = 2.0 * np.pi


def _dot(u, v):
    return np.einsum("...i,...i->...", u, v)


def _norm(u):
    return np.sqrt(_dot(u, u))


def _triangle_terms(a, b, c, na, nb, nc):
    # Van Oosterom-Strackee: tan(omega/2) = num / den for the spherical
    # triangle spanned by the directions of a, b, c.
    num = _dot(a, np.cross(b, c))
    den = na * nb * nc + _dot(a, b) * nc + _dot(a, c) * nb + _dot(b, c) * na
    return num, den


def pair_linking(a0, a1, b0, b1):
    """Gauss linking integral of segments a0->a1 and b0->b1.

    Exact closed form: the Gauss map of the pair covers a geodesic
    quadrilateral on the sphere whose corners are the directions between
    endpoints; its signed area is split into two triangles. Returns values in
    [-1/2, 1/2]. Degenerate pairs are not detected here.
    """
    a0, a1, b0, b1 = (np.asarray(x, dtype=np.float64) for x in (a0, a1, b0, b1))
    r13 = b0 - a0
    r14 = b1 - a0
    r23 = b0 - a1
    r24 = b1 - a1
    n13, n14, n23, n24 = _norm(r13), _norm(r14), _norm(r23), _norm(r24)
    num1, den1 = _triangle_terms(r13, r14, r24, n13, n14, n24)
    num2, den2 = _triangle_terms(r13, r24, r23, n13, n24, n23)
    return -(np.arctan2(num1, den1) + np.arctan2(num2, den2)) / _TWO_PI


def segment_distance(a0, a1, b0, b1):
    """Minimum Euclidean distance between segments (vectorized)."""
    a0, a1, b0, b1 = (np.asarray(x, dtype=np.float64) for x in (a0, a1, b0, b1))
    d1 = a1 - a0
    d2 = b1 - b0
    r = a0 - b0
    aa = _dot(d1, d1)
    ee = _dot(d2, d2)
    ff = _dot(d2, r)
    cc = _dot(d1, r)
    bb = _dot(d1, d2)
    denom = aa * ee - bb * bb
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(denom > 1e-14 * aa * ee, np.clip((bb * ff - cc * ee) / denom, 0.0, 1.0), 0.0)
        t = (bb * s + ff) / ee
        low = t < 0.0
        high = t > 1.0
        s = np.where(low, np.clip(-cc / aa, 0.0, 1.0), s)
        s = np.where(high, np.clip((bb - cc) / aa, 0.0, 1.0), s)
        t = np.clip(t, 0.0, 1.0)
    diff = a0 + s[..., None] * d1 - b0 - t[..., None] * d2
    return _norm(diff)


def shares_endpoint(a0, a1, b0, b1, eps=EPS_GEOM):
    """True where some endpoint of one segment coincides with one of the other."""
    ends = [_norm(p - q) for p in (a0, a1) for q in (b0, b1)]
    return np.minimum.reduce(ends) < eps


def crossing_signs(a0, a1, b0, b1, xi, eps=EPS_GEOM):
    """Signed crossings of projected segments along direction(s) ``xi``.

    ``xi`` must be unit length and points toward the viewer; the strand with
    larger height along ``xi`` is the over-strand. A crossing is +1 when
    (over direction x under direction) . xi > 0, i.e. the over-strand turned
    counterclockwise by 90 degrees points along the under-strand.

    Returns ``(signs, degenerate)``: int8 signs in {-1, 0, 1} and a boolean
    mask of pairs not in general position (shared projected endpoints,
    overlapping parallel projections, equal heights at the crossing).
    """
    a0, a1, b0, b1, xi = (np.asarray(x, dtype=np.float64) for x in (a0, a1, b0, b1, xi))
    da = a1 - a0
    db = b1 - b0
    r = b0 - a0
    denom = _dot(np.cross(da, db), xi)
    cr_db = _dot(np.cross(r, db), xi)
    cr_da = _dot(np.cross(r, da), xi)

    # projected lengths, for scale-aware tolerances
    la = _norm(da - _dot(da, xi)[..., None] * xi)
    lb = _norm(db - _dot(db, xi)[..., None] * xi)
    parallel = np.abs(denom) <= eps * np.maximum(la * lb, eps)

    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(parallel, 0.5, cr_db / np.where(parallel, 1.0, denom))
        s = np.where(parallel, 0.5, cr_da / np.where(parallel, 1.0, denom))
        tol_t = eps / np.maximum(la, eps)
        tol_s = eps / np.maximum(lb, eps)
    inside_t = (t > tol_t) & (t < 1.0 - tol_t)
    inside_s = (s > tol_s) & (s < 1.0 - tol_s)
    near_t = (t >= -tol_t) & (t <= 1.0 + tol_t)
    near_s = (s >= -tol_s) & (s <= 1.0 + tol_s)
    touching = near_t & near_s & ~(inside_t & inside_s)

    # parallel projections: degenerate only if the projected lines coincide
    # and the projected intervals overlap
    collinear = parallel & (np.abs(cr_da) <= eps * np.maximum(la, eps))
    with np.errstate(divide="ignore", invalid="ignore"):
        da_p = da - _dot(da, xi)[..., None] * xi
        la2 = np.maximum(la * la, eps * eps)
        u0 = _dot(r - _dot(r, xi)[..., None] * xi, da_p) / la2
        u1 = _dot(r + db - _dot(r + db, xi)[..., None] * xi, da_p) / la2
    overlap = collinear & (np.maximum(u0, u1) >= -tol_t) & (np.minimum(u0, u1) <= 1.0 + tol_t)

    crossing = ~parallel & inside_t & inside_s
    pa = a0 + t[..., None] * da
    pb = b0 + s[..., None] * db
    height = _dot(pa - pb, xi)
    flat = crossing & (np.abs(height) <= eps)

    signs = np.where(crossing, np.sign(height) * np.sign(denom), 0.0).astype(np.int8)
    degenerate = (touching & ~parallel) | overlap | flat
    signs = np.where(degenerate, 0, signs).astype(np.int8)
    return signs, degenerate


def binormal_angles(e1, e2, e3, eps=EPS_GEOM):
    """Signed angles between binormals e1 x e2 and e2 x e3 (vectorized).

    The sign is that of (B1 x B2) . e2. Where a consecutive pair is parallel
    the angle is set to 0. Returns ``(angles, degenerate)``.
    """
    e1, e2, e3 = (np.asarray(x, dtype=np.float64) for x in (e1, e2, e3))
    b1 = np.cross(e1, e2)
    b2 = np.cross(e2, e3)
    n1, n2, n3 = _norm(e1), _norm(e2), _norm(e3)
    degenerate = (_norm(b1) <= eps * n1 * n2) | (_norm(b2) <= eps * n2 * n3)
    with np.errstate(divide="ignore", invalid="ignore"):
        y = _dot(np.cross(b1, b2), e2) / n2
    x = _dot(b1, b2)
    angles = np.where(degenerate, 0.0, np.arctan2(y, x))
    return angles, degenerate


def seg_pair_linking(a, b):
    """Gauss linking integral of two oriented segments, each a pair of points.

    Raises DegeneratePair if the segments intersect, come within EPS_GEOM of
    each other, or share an endpoint.
    """
    a = check_segment(a, "a")
    b = check_segment(b, "b")
    if shares_endpoint(a[0], a[1], b[0], b[1]):
        raise DegeneratePair("segments share an endpoint")
    if segment_distance(a[0], a[1], b[0], b[1]) < EPS_GEOM:
        raise DegeneratePair("segments intersect or nearly intersect")
    return float(pair_linking(a[0], a[1], b[0], b[1]))


def signed_crossing(a, b, xi):
    """Crossing sign of the projections of ``a`` and ``b`` along ``xi``.

    Returns 0 when the projections do not cross. Raises DegenerateProjection
    when the pair is not in general position for this direction.
    """
    a = check_segment(a, "a")
    b = check_segment(b, "b")
    xi = check_direction(xi)
    sign, degenerate = crossing_signs(a[0], a[1], b[0], b[1], xi)
    if degenerate:
        raise DegenerateProjection("projection is not in general position")
    return int(sign)


def binormal_angle(e1, e2, e3):
    """Signed torsion angle at the edge ``e2`` of three consecutive edge vectors.

    Raises DegenerateTurn if a consecutive pair is parallel; chain-level
    torsion treats that case as a zero angle instead.
    """
    e1, e2, e3 = (check_vector(e, name) for e, name in ((e1, "e1"), (e2, "e2"), (e3, "e3")))
    angle, degenerate = binormal_angles(e1, e2, e3)
    if degenerate:
        raise DegenerateTurn("consecutive edges are parallel")
    return float(angle)
