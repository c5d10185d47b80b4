import numpy as np
import pytest

from entangle.chains import (
    SQUARE_VERTICES,
    TREFOIL_VERTICES,
    Chain,
    ChainSpec,
    RngStream,
    concat_at_origin,
    fixed_square,
    fixed_trefoil,
    format_chain,
    gen_equilateral_walk,
    gen_uniform_polygon,
    gen_uniform_walk,
    parse_chain,
    read_chain,
    transform,
    write_chain,
)
from entangle.errors import ConcatMismatch
from entangle.measures import writhe

from conftest import stream


def test_same_key_same_chain():
    for gen in (gen_uniform_walk, gen_uniform_polygon, gen_equilateral_walk):
        a = gen(20, RngStream(3, ("x", 1)))
        b = gen(20, RngStream(3, ("x", 1)))
        c = gen(20, RngStream(3, ("x", 2)))
        assert a.equals(b)
        assert not a.equals(c)


def test_uniform_vertices_fill_the_cube():
    pts = np.vstack([gen_uniform_walk(99, stream("cube", k)).vertices for k in range(1000)])
    assert len(pts) == 100_000
    assert pts.min() >= 0.0 and pts.max() < 1.0
    se = pts.std(axis=0, ddof=1) / np.sqrt(len(pts))
    assert np.all(np.abs(pts.mean(axis=0) - 0.5) <= 3 * se)


def test_polygon_shape():
    c = gen_uniform_polygon(10, stream("poly"))
    assert c.closed and c.n_edges == 10 and len(c.vertices) == 10


def test_equilateral_steps():
    walks = [gen_equilateral_walk(100, stream("eq", k)) for k in range(10_000)]
    steps = np.concatenate([np.diff(w.vertices, axis=0) for w in walks])
    np.testing.assert_allclose(np.linalg.norm(steps, axis=1), 1.0, atol=1e-12)
    assert all(np.all(w.vertices[0] == 0) for w in walks[:10])
    se = steps.std(axis=0, ddof=1) / np.sqrt(len(steps))
    assert np.all(np.abs(steps.mean(axis=0)) <= 3 * se)
    r2 = np.array([np.sum(w.vertices[-1] ** 2) for w in walks])
    assert abs(r2.mean() - 100) <= 3 * r2.std(ddof=1) / np.sqrt(len(r2))


def test_fixed_curves():
    np.testing.assert_array_equal(fixed_square().vertices, np.array(SQUARE_VERTICES))
    np.testing.assert_array_equal(fixed_trefoil().vertices, np.array(TREFOIL_VERTICES))
    assert fixed_square().closed and fixed_trefoil().closed
    assert writhe(fixed_square()) == 0.0


def test_file_round_trip(tmp_path):
    for c in (gen_uniform_walk(7, stream("f")), fixed_trefoil()):
        path = tmp_path / "c.chain"
        write_chain(path, c)
        back = read_chain(path)
        assert back.closed == c.closed
        np.testing.assert_array_equal(back.vertices, c.vertices)


def test_file_format_errors():
    with pytest.raises(ValueError):
        parse_chain("0 0 0\n1 1 1\n")
    with pytest.raises(ValueError):
        parse_chain("# chain closed=false n=3\n0 0 0\n1 1 1\n")
    text = format_chain(fixed_square()).replace("\n", "\n# comment\n", 1)
    assert parse_chain(text).equals(fixed_square())


def test_reverse_involution():
    for c in (gen_uniform_walk(6, stream("r")), gen_uniform_polygon(6, stream("rp"))):
        assert c.reversed().reversed().equals(c)
    p = gen_uniform_polygon(5, stream("rp"))
    assert np.all(p.reversed().vertices[0] == p.vertices[0])


def test_concat():
    x = gen_equilateral_walk(6, stream("cx"))
    y = gen_equilateral_walk(6, stream("cy"))
    z = concat_at_origin(x, y)
    assert len(z.vertices) == 13
    np.testing.assert_array_equal(z.vertices[0], y.vertices[-1])
    np.testing.assert_array_equal(z.vertices[-1], x.vertices[-1])
    with pytest.raises(ConcatMismatch):
        concat_at_origin(x, y.translated((1, 0, 0)))
    with pytest.raises(ConcatMismatch):
        concat_at_origin(x, fixed_square())


def test_transforms():
    c = gen_uniform_walk(10, stream("t"))
    assert writhe(transform(c, "translate", (3, -1, 2))) == pytest.approx(writhe(c), abs=1e-10)
    assert writhe(transform(c, "mirror")) == pytest.approx(-writhe(c), abs=1e-12)
    with pytest.raises(ValueError):
        transform(c, "shear")


def test_invalid_chains():
    with pytest.raises(ValueError):
        Chain(np.array([(0, 0, 0), (0, 0, 0), (1, 0, 0)]))
    with pytest.raises(ValueError):
        Chain(np.array([(0, 0, 0), (np.nan, 0, 0)]))
    with pytest.raises(ValueError):
        ChainSpec("uniform_polygon", 2)
    with pytest.raises(ValueError):
        ChainSpec("lattice_walk", 10)
