"""Compiled batch kernels used by the Monte Carlo runner.

Each function takes a stack of chains with identical vertex counts, shape
(samples, vertices, 3), and returns one value per chain together with a flag
marking chains that contain a degenerate (intersecting or touching) pair.
Sums run in a fixed sequential order so results are bit-stable.
"""

import math

import numpy as np
from numba import njit

_TWO_PI = 2.0 * math.pi


@njit(cache=True, inline="always")
def _pair(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz):
    # same closed form as geometry.pair_linking, written out per component
    x13, y13, z13 = cx - ax, cy - ay, cz - az
    x14, y14, z14 = dx - ax, dy - ay, dz - az
    x23, y23, z23 = cx - bx, cy - by, cz - bz
    x24, y24, z24 = dx - bx, dy - by, dz - bz
    n13 = math.sqrt(x13 * x13 + y13 * y13 + z13 * z13)
    n14 = math.sqrt(x14 * x14 + y14 * y14 + z14 * z14)
    n23 = math.sqrt(x23 * x23 + y23 * y23 + z23 * z23)
    n24 = math.sqrt(x24 * x24 + y24 * y24 + z24 * z24)
    d13_14 = x13 * x14 + y13 * y14 + z13 * z14
    d13_24 = x13 * x24 + y13 * y24 + z13 * z24
    d14_24 = x14 * x24 + y14 * y24 + z14 * z24
    d13_23 = x13 * x23 + y13 * y23 + z13 * z23
    d24_23 = x24 * x23 + y24 * y23 + z24 * z23
    num1 = x13 * (y14 * z24 - z14 * y24) + y13 * (z14 * x24 - x14 * z24) + z13 * (x14 * y24 - y14 * x24)
    num2 = x13 * (y24 * z23 - z24 * y23) + y13 * (z24 * x23 - x24 * z23) + z13 * (x24 * y23 - y24 * x23)
    den1 = n13 * n14 * n24 + d13_14 * n24 + d13_24 * n14 + d14_24 * n13
    den2 = n13 * n24 * n23 + d13_24 * n23 + d13_23 * n24 + d24_23 * n13
    return -(math.atan2(num1, den1) + math.atan2(num2, den2)) / _TWO_PI


@njit(cache=True, inline="always")
def _clip01(x):
    if x < 0.0:
        return 0.0
    if x > 1.0:
        return 1.0
    return x


@njit(cache=True, inline="always")
def _dist2(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz):
    # squared distance between segments [a, b] and [c, d]
    d1x, d1y, d1z = bx - ax, by - ay, bz - az
    d2x, d2y, d2z = dx - cx, dy - cy, dz - cz
    rx, ry, rz = ax - cx, ay - cy, az - cz
    aa = d1x * d1x + d1y * d1y + d1z * d1z
    ee = d2x * d2x + d2y * d2y + d2z * d2z
    ff = d2x * rx + d2y * ry + d2z * rz
    cc = d1x * rx + d1y * ry + d1z * rz
    bb = d1x * d2x + d1y * d2y + d1z * d2z
    denom = aa * ee - bb * bb
    s = 0.0
    if denom > 1e-14 * aa * ee:
        s = _clip01((bb * ff - cc * ee) / denom)
    t = (bb * s + ff) / ee
    if t < 0.0:
        t = 0.0
        s = _clip01(-cc / aa)
    elif t > 1.0:
        t = 1.0
        s = _clip01((bb - cc) / aa)
    px = rx + s * d1x - t * d2x
    py = ry + s * d1y - t * d2y
    pz = rz + s * d1z - t * d2z
    return px * px + py * py + pz * pz


@njit(cache=True, inline="always")
def _touch2(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz):
    # squared distance between the closest pair of endpoints
    best = (ax - cx) ** 2 + (ay - cy) ** 2 + (az - cz) ** 2
    best = min(best, (ax - dx) ** 2 + (ay - dy) ** 2 + (az - dz) ** 2)
    best = min(best, (bx - cx) ** 2 + (by - cy) ** 2 + (bz - cz) ** 2)
    best = min(best, (bx - dx) ** 2 + (by - dy) ** 2 + (bz - dz) ** 2)
    return best


@njit(cache=True, nogil=True)
def writhe_batch(verts, closed, eps):
    n_samples, n_verts, _ = verts.shape
    n = n_verts if closed else n_verts - 1
    out = np.zeros(n_samples)
    bad = np.zeros(n_samples, dtype=np.bool_)
    eps2 = eps * eps
    for k in range(n_samples):
        v = verts[k]
        total = 0.0
        for i in range(n):
            i1 = (i + 1) % n_verts
            ax, ay, az = v[i, 0], v[i, 1], v[i, 2]
            bx, by, bz = v[i1, 0], v[i1, 1], v[i1, 2]
            for j in range(i + 2, n):
                if closed and i == 0 and j == n - 1:
                    continue
                j1 = (j + 1) % n_verts
                cx, cy, cz = v[j, 0], v[j, 1], v[j, 2]
                dx, dy, dz = v[j1, 0], v[j1, 1], v[j1, 2]
                if _dist2(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz) < eps2:
                    bad[k] = True
                total += _pair(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz)
        out[k] = 2.0 * total
    return out, bad


@njit(cache=True, nogil=True)
def linking_batch(verts_a, closed_a, verts_b, closed_b, eps):
    """Linking of verts_a[k] with verts_b[k], or with verts_b[0] when
    verts_b holds a single chain. Pairs sharing an endpoint add 0."""
    n_samples, na_verts, _ = verts_a.shape
    nb_samples, nb_verts, _ = verts_b.shape
    na = na_verts if closed_a else na_verts - 1
    nb = nb_verts if closed_b else nb_verts - 1
    out = np.zeros(n_samples)
    bad = np.zeros(n_samples, dtype=np.bool_)
    eps2 = eps * eps
    for k in range(n_samples):
        va = verts_a[k]
        vb = verts_b[k if nb_samples > 1 else 0]
        total = 0.0
        for i in range(na):
            i1 = (i + 1) % na_verts
            ax, ay, az = va[i, 0], va[i, 1], va[i, 2]
            bx, by, bz = va[i1, 0], va[i1, 1], va[i1, 2]
            for j in range(nb):
                j1 = (j + 1) % nb_verts
                cx, cy, cz = vb[j, 0], vb[j, 1], vb[j, 2]
                dx, dy, dz = vb[j1, 0], vb[j1, 1], vb[j1, 2]
                if _touch2(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz) < eps2:
                    continue
                if _dist2(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz) < eps2:
                    bad[k] = True
                total += _pair(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz)
        out[k] = total
    return out, bad


@njit(cache=True, nogil=True)
def torsion_batch(verts, closed, eps):
    """Sum of signed binormal angles; parallel turns contribute 0."""
    n_samples, n_verts, _ = verts.shape
    n = n_verts if closed else n_verts - 1
    n_angles = n if closed else n - 2
    out = np.zeros(n_samples)
    for k in range(n_samples):
        v = verts[k]
        total = 0.0
        for i in range(max(n_angles, 0)):
            p0 = v[i]
            p1 = v[(i + 1) % n_verts]
            p2 = v[(i + 2) % n_verts]
            p3 = v[(i + 3) % n_verts]
            e1x, e1y, e1z = p1[0] - p0[0], p1[1] - p0[1], p1[2] - p0[2]
            e2x, e2y, e2z = p2[0] - p1[0], p2[1] - p1[1], p2[2] - p1[2]
            e3x, e3y, e3z = p3[0] - p2[0], p3[1] - p2[1], p3[2] - p2[2]
            b1x = e1y * e2z - e1z * e2y
            b1y = e1z * e2x - e1x * e2z
            b1z = e1x * e2y - e1y * e2x
            b2x = e2y * e3z - e2z * e3y
            b2y = e2z * e3x - e2x * e3z
            b2z = e2x * e3y - e2y * e3x
            n1 = math.sqrt(e1x * e1x + e1y * e1y + e1z * e1z)
            n2 = math.sqrt(e2x * e2x + e2y * e2y + e2z * e2z)
            n3 = math.sqrt(e3x * e3x + e3y * e3y + e3z * e3z)
            nb1 = math.sqrt(b1x * b1x + b1y * b1y + b1z * b1z)
            nb2 = math.sqrt(b2x * b2x + b2y * b2y + b2z * b2z)
            if nb1 <= eps * n1 * n2 or nb2 <= eps * n2 * n3:
                continue
            cx = b1y * b2z - b1z * b2y
            cy = b1z * b2x - b1x * b2z
            cz = b1x * b2y - b1y * b2x
            y = (cx * e2x + cy * e2y + cz * e2z) / n2
            x = b1x * b2x + b1y * b2y + b1z * b2z
            total += math.atan2(y, x)
        out[k] = total
    return out
