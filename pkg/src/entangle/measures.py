"""Chain-level entanglement measures built on the segment kernel."""

from functools import lru_cache

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import EPS_GEOM
from .chains import Chain
from .errors import DegeneratePair
from .geometry import binormal_angles, pair_linking, segment_distance, shares_endpoint

MEASURES = ("writhe", "linking", "torsion", "self_linking", "acn")


def _check_chain(c, name="chain"):
    if not isinstance(c, Chain):
        raise TypeError(f"{name} must be a Chain, got {type(c).__name__}")
    return c


@lru_cache(maxsize=256)
def nonadjacent_pairs(n_edges, closed):
    """Index arrays (i, j), i < j, of edge pairs that do not share a vertex.

    Adjacency wraps for closed chains; for open chains the first and last
    edges count as non-adjacent.
    """
    i, j = np.triu_indices(n_edges, k=2)
    if closed:
        keep = ~((i == 0) & (j == n_edges - 1))
        i, j = i[keep], j[keep]
    i.setflags(write=False)
    j.setflags(write=False)
    return i, j


def _raise_if_degenerate(a0, a1, b0, b1, i, j, what):
    bad = segment_distance(a0, a1, b0, b1) < EPS_GEOM
    if np.any(bad):
        pairs = list(zip(np.asarray(i)[bad].tolist(), np.asarray(j)[bad].tolist()))
        raise DegeneratePair(f"{what}: degenerate edge pairs {pairs[:5]}", pairs)


def _writhe_terms(c):
    i, j = nonadjacent_pairs(c.n_edges, c.closed)
    s, e = c.starts, c.ends
    a0, a1, b0, b1 = s[i], e[i], s[j], e[j]
    _raise_if_degenerate(a0, a1, b0, b1, i, j, "writhe")
    return pair_linking(a0, a1, b0, b1)


def writhe(c):
    """Writhe: twice the sum of pair linking over non-adjacent edge pairs."""
    _check_chain(c)
    return float(2.0 * np.sum(_writhe_terms(c)))


def linking_number(a, b):
    """Gauss linking number of two chains.

    Edge pairs that share an endpoint (e.g. walks started from a common
    point) are coplanar and contribute exactly 0.
    """
    _check_chain(a, "a")
    _check_chain(b, "b")
    i, j = np.meshgrid(np.arange(a.n_edges), np.arange(b.n_edges), indexing="ij")
    i, j = i.ravel(), j.ravel()
    a0, a1 = a.starts[i], a.ends[i]
    b0, b1 = b.starts[j], b.ends[j]
    touching = shares_endpoint(a0, a1, b0, b1)
    keep = ~touching
    a0, a1, b0, b1, i, j = a0[keep], a1[keep], b0[keep], b1[keep], i[keep], j[keep]
    _raise_if_degenerate(a0, a1, b0, b1, i, j, "linking")
    return float(np.sum(pair_linking(a0, a1, b0, b1)))


def torsion_angles(c):
    """Signed binormal angles: n for closed chains, n - 2 for open ones."""
    _check_chain(c)
    e = c.edge_vectors
    if c.closed:
        e1, e2, e3 = e, np.roll(e, -1, axis=0), np.roll(e, -2, axis=0)
    else:
        e1, e2, e3 = e[:-2], e[1:-1], e[2:]
    angles, _ = binormal_angles(e1, e2, e3)
    return angles


def total_torsion(c):
    return float(np.sum(torsion_angles(c)))


def self_linking(c):
    """Writhe plus total torsion over 2 pi; an integer for closed chains."""
    return writhe(c) + total_torsion(c) / (2.0 * np.pi)


def acn(c):
    """Average crossing number.

    For two straight edges the triple product in the Gauss integrand is
    constant over the whole parameter square, so the integral of its absolute
    value is the absolute value of the pair linking. No quadrature needed.
    """
    _check_chain(c)
    return float(2.0 * np.sum(np.abs(_writhe_terms(c))))


def all_measures(c):
    w = writhe(c)
    tau = total_torsion(c)
    return {
        "writhe": w,
        "torsion": tau,
        "self_linking": w + tau / (2.0 * np.pi),
        "acn": acn(c),
    }


class EntanglementFeatures(TransformerMixin, BaseEstimator):
    """Map a sequence of chains to a feature matrix of measures.

    Stateless; ``fit`` only records the feature names. With a ``partner``
    chain, ``"linking"`` is the linking number against that chain.
    """

    def __init__(self, measures=("writhe", "torsion", "self_linking", "acn"), partner=None):
        self.measures = measures
        self.partner = partner

    def fit(self, X, y=None):
        measures = tuple(self.measures)
        unknown = [m for m in measures if m not in MEASURES]
        if unknown:
            raise ValueError(f"unknown measures {unknown}")
        if "linking" in measures and self.partner is None:
            raise ValueError("the linking feature needs a partner chain")
        self.feature_names_out_ = np.array(measures, dtype=object)
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        if not hasattr(self, "feature_names_out_"):
            self.fit(X)
        rows = []
        for c in X:
            _check_chain(c)
            row = []
            for m in self.feature_names_out_:
                if m == "writhe":
                    row.append(writhe(c))
                elif m == "torsion":
                    row.append(total_torsion(c))
                elif m == "self_linking":
                    row.append(self_linking(c))
                elif m == "acn":
                    row.append(acn(c))
                else:
                    row.append(linking_number(c, self.partner))
            rows.append(row)
        return np.array(rows, dtype=np.float64).reshape(len(rows), len(self.feature_names_out_))

    def get_feature_names_out(self, input_features=None):
        return self.feature_names_out_
