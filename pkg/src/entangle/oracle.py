"""Slow, independent estimators that certify the exact kernel.

Projection sampling averages diagram crossing sums over random directions;
``seg_pair_quadrature`` integrates the Gauss integrand numerically. Neither
touches the closed-form solid-angle code.
"""

import numpy as np

from ._validation import check_positive_int, check_segment
from .chains import as_generator, unit_vectors
from .errors import QuadratureFailure
from .geometry import crossing_signs, shares_endpoint
from .measures import _check_chain, nonadjacent_pairs


def _diagram_sums(a0, a1, b0, b1, ndirs, rng, chunk):
    """Per-direction signed and unsigned crossing sums over the given pairs.

    Directions whose projection is not in general position are redrawn.
    """
    gen = as_generator(rng)
    signed = np.empty(ndirs)
    unsigned = np.empty(ndirs)
    done = 0
    redrawn = 0
    while done < ndirs:
        m = min(chunk, ndirs - done)
        dirs = unit_vectors(m, gen)
        while True:
            xi = dirs[:, None, :]
            signs, degenerate = crossing_signs(a0[None], a1[None], b0[None], b1[None], xi)
            bad = degenerate.any(axis=1)
            if not bad.any():
                break
            redrawn += int(bad.sum())
            dirs[bad] = unit_vectors(int(bad.sum()), gen)
        signed[done : done + m] = signs.sum(axis=1, dtype=np.int64)
        unsigned[done : done + m] = np.abs(signs).sum(axis=1, dtype=np.int64)
        done += m
    return signed, unsigned, redrawn


def _mean_stderr(values):
    if len(values) < 2:
        return float(np.mean(values)), 0.0
    return float(np.mean(values)), float(np.std(values, ddof=1) / np.sqrt(len(values)))


def _self_pairs(c):
    i, j = nonadjacent_pairs(c.n_edges, c.closed)
    s, e = c.starts, c.ends
    return s[i], e[i], s[j], e[j]


def _chunk_for(npairs):
    return max(1, min(100_000, 2_000_000 // max(npairs, 1)))


def writhe_by_projection(c, ndirs, rng):
    """Mean diagram writhe over ``ndirs`` uniform directions, with its
    standard error."""
    _check_chain(c)
    check_positive_int(ndirs, "ndirs", 2)
    pairs = _self_pairs(c)
    signed, _, _ = _diagram_sums(*pairs, ndirs, rng, _chunk_for(len(pairs[0])))
    return _mean_stderr(signed)


def acn_by_projection(c, ndirs, rng):
    """Mean unsigned crossing count over ``ndirs`` uniform directions."""
    _check_chain(c)
    check_positive_int(ndirs, "ndirs", 2)
    pairs = _self_pairs(c)
    _, unsigned, _ = _diagram_sums(*pairs, ndirs, rng, _chunk_for(len(pairs[0])))
    return _mean_stderr(unsigned)


def linking_by_projection(a, b, ndirs, rng):
    """Half the algebraic crossing count between ``a`` and ``b``, averaged
    over uniform directions. Edge pairs sharing an endpoint are skipped."""
    _check_chain(a, "a")
    _check_chain(b, "b")
    check_positive_int(ndirs, "ndirs", 2)
    i, j = np.meshgrid(np.arange(a.n_edges), np.arange(b.n_edges), indexing="ij")
    i, j = i.ravel(), j.ravel()
    a0, a1, b0, b1 = a.starts[i], a.ends[i], b.starts[j], b.ends[j]
    keep = ~shares_endpoint(a0, a1, b0, b1)
    pairs = (a0[keep], a1[keep], b0[keep], b1[keep])
    signed, _, _ = _diagram_sums(*pairs, ndirs, rng, _chunk_for(len(pairs[0])))
    return _mean_stderr(0.5 * signed)


def _gauss_integrand(a0, da, b0, db, t, s):
    diff = (a0 + t[..., None] * da) - (b0 + s[..., None] * db)
    triple = diff @ np.cross(da, db)
    dist = np.sqrt(np.einsum("...i,...i->...", diff, diff))
    return triple / dist**3 / (4.0 * np.pi)


def seg_pair_quadrature(a, b, tol=1e-9, order=8, max_depth=40, max_panels=2_000_000):
    """Adaptive tensor Gauss-Legendre integral of the Gauss linking integrand.

    Panels of the (t, s) unit square are split in four until the children
    agree with their parent to ``tol`` times the panel area.
    """
    a = check_segment(a, "a")
    b = check_segment(b, "b")
    a0, da = a[0], a[1] - a[0]
    b0, db = b[0], b[1] - b[0]
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes = 0.5 * (nodes + 1.0)
    weights = 0.5 * weights
    w2 = np.outer(weights, weights).ravel()
    nt, ns = np.meshgrid(nodes, nodes, indexing="ij")
    nt, ns = nt.ravel(), ns.ravel()

    def integrate(t0, s0, h):
        # panels [t0, t0+h] x [s0, s0+h]; returns one estimate per panel
        t = t0[:, None] + h[:, None] * nt[None, :]
        s = s0[:, None] + h[:, None] * ns[None, :]
        vals = _gauss_integrand(a0, da, b0, db, t, s)
        return (vals @ w2) * h * h

    t0 = np.zeros(1)
    s0 = np.zeros(1)
    h = np.ones(1)
    coarse = integrate(t0, s0, h)
    total = 0.0
    panels = 1
    for _ in range(max_depth):
        half = 0.5 * h
        ct = np.concatenate([t0, t0 + half, t0, t0 + half])
        cs = np.concatenate([s0, s0, s0 + half, s0 + half])
        ch = np.concatenate([half, half, half, half])
        fine_each = integrate(ct, cs, ch)
        k = len(t0)
        fine = fine_each[:k] + fine_each[k : 2 * k] + fine_each[2 * k : 3 * k] + fine_each[3 * k :]
        ok = np.abs(fine - coarse) <= tol * h * h
        total += float(np.sum(fine[ok]))
        if ok.all():
            return total
        refine = np.flatnonzero(~ok)
        idx = np.concatenate([refine + q * k for q in range(4)])
        t0, s0, h, coarse = ct[idx], cs[idx], ch[idx], fine_each[idx]
        panels += len(idx)
        if panels > max_panels:
            break
    raise QuadratureFailure(f"tolerance {tol} not reached after {panels} panels")
