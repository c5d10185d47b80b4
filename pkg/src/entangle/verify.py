"""Oracle cross-checks run by ``entangle verify``."""

import numpy as np

from ._kernels import writhe_batch
from ._validation import EPS_GEOM
from .chains import Chain, RngStream, fixed_trefoil, gen_uniform_polygon
from .measures import linking_number, self_linking, writhe
from .oracle import seg_pair_quadrature, writhe_by_projection
from .geometry import seg_pair_linking

HOPF_A = Chain(np.array([(0, -1, -1), (0, 1, -1), (0, 1, 1), (0, -1, 1)], dtype=float), closed=True)
HOPF_B = Chain(np.array([(-1, 0, 0), (1, 0, 0), (1, 2, 0), (-1, 2, 0)], dtype=float), closed=True)


def check_quadrature(pairs, seed, tol=1e-9, bound=1e-8):
    gen = RngStream(seed, ("verify", "quadrature")).generator()
    worst = 0.0
    for _ in range(pairs):
        p = gen.random((4, 3))
        worst = max(worst, abs(seg_pair_quadrature(p[:2], p[2:], tol) - seg_pair_linking(p[:2], p[2:])))
    return worst <= bound, f"max |exact - quadrature| = {worst:.2e} over {pairs} pairs (bound {bound:g})"


def check_projection(ndirs, seed):
    trefoil = fixed_trefoil()
    exact = writhe(trefoil)
    est, se = writhe_by_projection(trefoil, ndirs, RngStream(seed, ("verify", "projection")))
    z = abs(exact - est) / se
    return z <= 3.0, f"trefoil writhe {exact:.6f} vs projection {est:.6f} +/- {se:.6f} ({z:.2f} sigma)"


def check_hopf():
    lk = linking_number(HOPF_A, HOPF_B)
    return abs(abs(lk) - 1.0) <= 1e-9, f"Hopf squares linking = {lk:.12f}"


def check_integrality(count, seed, n=10):
    worst = 0.0
    for k in range(count):
        c = gen_uniform_polygon(n, RngStream(seed, ("verify", "sl", k)))
        sl = self_linking(c)
        worst = max(worst, abs(sl - round(sl)))
    return worst <= 1e-6, f"max distance of closed self-linking from an integer = {worst:.2e} over {count} polygons"


def check_kernels(count, seed, n=20):
    gen = RngStream(seed, ("verify", "kernels")).generator()
    verts = gen.random((count, n + 1, 3))
    fast, _ = writhe_batch(verts, False, EPS_GEOM)
    slow = np.array([writhe(Chain(v)) for v in verts])
    worst = float(np.max(np.abs(fast - slow)))
    return worst <= 1e-10, f"compiled vs numpy writhe max difference = {worst:.2e}"


def run_checks(ndirs=100_000, pairs=1000, seed=0):
    """Run every check; returns a list of (name, passed, detail)."""
    checks = [
        ("quadrature", lambda: check_quadrature(pairs, seed)),
        ("projection", lambda: check_projection(ndirs, seed)),
        ("hopf", check_hopf),
        ("self-linking integrality", lambda: check_integrality(200, seed)),
        ("compiled kernels", lambda: check_kernels(50, seed)),
    ]
    out = []
    for name, run in checks:
        passed, detail = run()
        out.append((name, bool(passed), detail))
    return out
