"""Polygonal chains: the Chain type, random and fixed constructions, rigid
transforms, and the plain-text chain file format."""

import zlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._validation import EPS_GEOM, check_points, check_positive_int, check_vector
from .errors import ConcatMismatch

MODELS = ("uniform_walk", "uniform_polygon", "equilateral_walk", "fixed_square", "fixed_trefoil")

SQUARE_VERTICES = ((0.1, 0.1, 0.5), (0.9, 0.1, 0.5), (0.9, 0.9, 0.5), (0.1, 0.9, 0.5))
TREFOIL_VERTICES = (
    (0.9, 0.5, 0.5),
    (0.1, 0.5, 0.4),
    (0.5, 0.3, 0.9),
    (0.6, 0.3, 0.1),
    (0.2, 0.9, 0.6),
    (0.5, 0.2, 0.5),
)


@dataclass(frozen=True, eq=False)
class Chain:
    """An oriented polygonal chain.

    ``vertices`` has shape (k, 3). A closed chain does not repeat its first
    vertex; its last edge joins the last vertex back to the first.
    """

    vertices: np.ndarray
    closed: bool = False

    def __post_init__(self):
        min_points = 3 if self.closed else 2
        verts = check_points(self.vertices, min_points, "vertices").copy()
        steps = np.diff(verts, axis=0)
        if self.closed:
            steps = np.vstack([steps, verts[:1] - verts[-1:]])
        if np.any(np.linalg.norm(steps, axis=1) <= 0.0):
            raise ValueError("consecutive vertices must be distinct")
        verts.setflags(write=False)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "closed", bool(self.closed))

    @property
    def n_edges(self):
        return len(self.vertices) if self.closed else len(self.vertices) - 1

    @property
    def starts(self):
        return self.vertices[: self.n_edges]

    @property
    def ends(self):
        if self.closed:
            return np.roll(self.vertices, -1, axis=0)
        return self.vertices[1:]

    @property
    def edge_vectors(self):
        return self.ends - self.starts

    def __len__(self):
        return self.n_edges

    def __repr__(self):
        kind = "closed" if self.closed else "open"
        return f"Chain({kind}, n_edges={self.n_edges})"

    def equals(self, other, atol=0.0):
        return (
            isinstance(other, Chain)
            and self.closed == other.closed
            and self.vertices.shape == other.vertices.shape
            and np.allclose(self.vertices, other.vertices, rtol=0.0, atol=atol)
        )

    def reversed(self):
        verts = self.vertices[::-1]
        if self.closed:
            # keep the same starting vertex so reverse is an involution on the array
            verts = np.roll(verts, 1, axis=0)
        return Chain(verts, self.closed)

    def translated(self, v):
        return Chain(self.vertices + check_vector(v, "v"), self.closed)

    def scaled(self, s):
        if not s > 0:
            raise ValueError("scale factor must be positive")
        return Chain(self.vertices * float(s), self.closed)

    def rotated(self, matrix):
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.shape != (3, 3):
            raise ValueError("rotation must be a 3x3 matrix")
        return Chain(self.vertices @ matrix.T, self.closed)

    def mirrored(self, axis=2, offset=0.0):
        """Reflect in the plane {x[axis] = offset}."""
        verts = self.vertices.copy()
        verts[:, axis] = 2.0 * offset - verts[:, axis]
        return Chain(verts, self.closed)


# -- keyed random streams ---------------------------------------------------


def _key_word(part):
    if isinstance(part, (int, np.integer)):
        if part < 0:
            raise ValueError("stream key integers must be non-negative")
        return int(part)
    return zlib.crc32(str(part).encode("utf-8"))


@dataclass(frozen=True)
class RngStream:
    """A reproducible random substream identified by ``(seed, key)``.

    The same seed and key always give the same generator, so samples can be
    produced in any order or on any thread.
    """

    seed: int
    key: tuple = ()

    def child(self, *parts):
        return RngStream(self.seed, tuple(self.key) + parts)

    def generator(self):
        words = tuple(_key_word(p) for p in self.key)
        return np.random.default_rng(np.random.SeedSequence(int(self.seed), spawn_key=words))


def as_generator(rng):
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


# -- generators -------------------------------------------------------------


def _uniform_points(count, gen):
    pts = gen.random((count, 3))
    # exact repeats of consecutive vertices have probability zero; redraw once
    # per offending vertex so the generator stays total
    for _ in range(8):
        same = np.flatnonzero(np.all(pts[1:] == pts[:-1], axis=1)) + 1
        if same.size == 0:
            break
        pts[same] = gen.random((same.size, 3))
    return pts


def gen_uniform_walk(n, rng):
    """Open walk of ``n`` edges with i.i.d. uniform vertices in the unit cube."""
    n = check_positive_int(n, "n", 1)
    return Chain(_uniform_points(n + 1, as_generator(rng)), closed=False)


def gen_uniform_polygon(n, rng):
    """Closed polygon of ``n`` edges with i.i.d. uniform vertices in the unit cube."""
    n = check_positive_int(n, "n", 3)
    gen = as_generator(rng)
    pts = _uniform_points(n, gen)
    while np.all(pts[0] == pts[-1]):
        pts[-1] = gen.random(3)
    return Chain(pts, closed=True)


def unit_vectors(count, gen):
    """``count`` directions uniform on the sphere (normalized Gaussians)."""
    v = gen.standard_normal((count, 3))
    norms = np.linalg.norm(v, axis=1)
    while np.any(norms < 1e-300):
        bad = norms < 1e-300
        v[bad] = gen.standard_normal((int(bad.sum()), 3))
        norms = np.linalg.norm(v, axis=1)
    return v / norms[:, None]


def gen_equilateral_walk(n, rng):
    """Open walk from the origin with ``n`` unit steps uniform on the sphere."""
    n = check_positive_int(n, "n", 1)
    steps = unit_vectors(n, as_generator(rng))
    verts = np.zeros((n + 1, 3))
    np.cumsum(steps, axis=0, out=verts[1:])
    return Chain(verts, closed=False)


def fixed_square():
    return Chain(np.array(SQUARE_VERTICES), closed=True)


def fixed_trefoil():
    return Chain(np.array(TREFOIL_VERTICES), closed=True)


_GENERATORS = {
    "uniform_walk": gen_uniform_walk,
    "uniform_polygon": gen_uniform_polygon,
    "equilateral_walk": gen_equilateral_walk,
}


@dataclass(frozen=True)
class ChainSpec:
    model: str
    n: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown chain model {self.model!r}; choose from {MODELS}")
        if self.model in _GENERATORS:
            minimum = 3 if self.model == "uniform_polygon" else 1
            check_positive_int(self.n, "n", minimum)

    def sample(self, rng=None):
        if self.model == "fixed_square":
            return fixed_square()
        if self.model == "fixed_trefoil":
            return fixed_trefoil()
        return _GENERATORS[self.model](self.n, rng)


def concat_at_origin(x, y):
    """Join open chains X and Y that share a start point.

    The result runs (Y_n, ..., Y_1, X_0, X_1, ..., X_n); the shared vertex
    appears once.
    """
    if x.closed or y.closed:
        raise ConcatMismatch("both chains must be open")
    if np.linalg.norm(x.vertices[0] - y.vertices[0]) > EPS_GEOM:
        raise ConcatMismatch("chains do not share a start point")
    return Chain(np.vstack([y.vertices[:0:-1], x.vertices]), closed=False)


def transform(c, op, arg=None):
    """Apply a named transform: reverse, translate, mirror, scale, rotate or
    concat_at_origin (``arg`` is the other chain)."""
    if op == "reverse":
        return c.reversed()
    if op == "translate":
        return c.translated(arg)
    if op == "mirror":
        return c.mirrored(2 if arg is None else arg)
    if op == "scale":
        return c.scaled(arg)
    if op == "rotate":
        return c.rotated(arg)
    if op == "concat_at_origin":
        return concat_at_origin(c, arg)
    raise ValueError(f"unknown transform {op!r}")


# -- chain files ------------------------------------------------------------


def format_chain(c):
    lines = [f"# chain closed={'true' if c.closed else 'false'} n={c.n_edges}"]
    lines.extend(" ".join(repr(float(x)) for x in row) for row in c.vertices)
    return "\n".join(lines) + "\n"


def parse_chain(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("# chain"):
        raise ValueError("missing '# chain closed=<true|false> n=<edges>' header")
    fields = dict(tok.split("=", 1) for tok in lines[0][len("# chain") :].split())
    if fields.get("closed") not in ("true", "false"):
        raise ValueError("header must set closed=true or closed=false")
    closed = fields["closed"] == "true"
    rows = [[float(tok) for tok in ln.split()] for ln in lines[1:] if not ln.startswith("#")]
    chain = Chain(np.array(rows, dtype=np.float64).reshape(-1, 3), closed)
    if "n" in fields and int(fields["n"]) != chain.n_edges:
        raise ValueError(f"header says n={fields['n']} but file has {chain.n_edges} edges")
    return chain


def write_chain(path, c):
    Path(path).write_text(format_chain(c))


def read_chain(path):
    return parse_chain(Path(path).read_text())
