import numpy as np
import pytest

from entangle.ensemble import (
    EnsembleSpec,
    estimate_edge_pair_moments,
    reproduce_all,
    run_experiment,
    sample_subcollection,
    tables_from_csv,
    tables_to_csv,
    torsion_angle_magnitude,
)
from entangle.errors import SpecInvalid
from entangle.fitting import fit


def spec(**kw):
    d = dict(models=("uniform_polygon",), measure="writhe", statistic="mean", lengths=(10, 20), samples_per_subcollection=50, subcollections=4, seed=1)
    d.update(kw)
    return EnsembleSpec(**d)


@pytest.mark.parametrize(
    "bad",
    [
        dict(models=("lattice",)),
        dict(measure="knot_type"),
        dict(statistic="median"),
        dict(lengths=(20, 10)),
        dict(lengths=()),
        dict(lengths=(2, 10)),
        dict(measure="linking"),
        dict(measure="linking", models=("uniform_walk", "uniform_walk"), partner="square"),
        dict(partner="square"),
        dict(samples_per_subcollection=0),
        dict(seed=-1),
        dict(models=("uniform_walk", "uniform_walk", "uniform_walk")),
    ],
)
def test_invalid_specs(bad):
    with pytest.raises(SpecInvalid):
        spec(**bad)


def test_spec_round_trips():
    s = spec(measure="linking", models=("uniform_walk",), partner="trefoil", name="x")
    assert EnsembleSpec.from_dict(s.to_dict()) == s
    assert EnsembleSpec.from_text(s.to_text()) == s
    with pytest.raises(SpecInvalid):
        EnsembleSpec.from_dict(dict(s.to_dict(), colour="red"))


def test_mean_writhe_is_zero():
    t = run_experiment(spec(lengths=(10, 30), samples_per_subcollection=200, subcollections=10))
    for r in t.rows:
        assert abs(r.mean) <= 3 * r.stderr
        assert r.samples == 2000


def test_thread_count_does_not_change_results():
    s = spec(measure="linking", models=("uniform_walk", "uniform_walk"), statistic="mean_abs")
    one = tables_to_csv([run_experiment(s, threads=1)])
    four = tables_to_csv([run_experiment(s, threads=4)])
    assert one == four


def test_samples_depend_on_key_not_order():
    a, _ = sample_subcollection(("uniform_walk",), "none", ("writhe",), 10, 3, 20, seed=5)
    b, _ = sample_subcollection(("uniform_walk",), "none", ("writhe",), 10, 3, 40, seed=5)
    np.testing.assert_array_equal(a["writhe"], b["writhe"][:20])


def test_stderr_shrinks_with_subcollection_size():
    small = run_experiment(spec(statistic="mean_squared", lengths=(20,), samples_per_subcollection=50, subcollections=20))
    large = run_experiment(spec(statistic="mean_squared", lengths=(20,), samples_per_subcollection=800, subcollections=20))
    ratio = large.rows[0].stderr / small.rows[0].stderr
    assert 0.12 <= ratio <= 0.45


def test_single_subcollection_has_zero_stderr():
    t = run_experiment(spec(subcollections=1, lengths=(10,)))
    assert t.rows[0].stderr == 0.0


def test_msq_writhe_at_n10_near_quadratic_law():
    t = run_experiment(spec(statistic="mean_squared", lengths=(10,), samples_per_subcollection=500, subcollections=10))
    r = t.rows[0]
    # roughly 0.033 n^2 with a small negative intercept
    assert 1.5 <= r.mean <= 3.5


def test_csv_round_trip():
    t = run_experiment(spec())
    back = tables_from_csv(tables_to_csv([t]))[t.series]
    assert back.rows == t.rows


def test_edge_pair_moments():
    m = estimate_edge_pair_moments(1_000_000, rng=2)
    assert abs(m.mean_sign) <= 3 * m.mean_sign_stderr
    assert 0 < m.p < 0.5
    assert abs(m.q - 0.0338) <= 3 * m.q_stderr + 0.024
    assert m.q_prime > 3 * m.q_prime_stderr
    assert m.warnings == []


def test_torsion_angle_magnitude():
    mean, se = torsion_angle_magnitude(50, 2000, seed=3)
    assert abs(mean - np.pi / 2) <= 4 * se + 0.01


def test_reproduce_subset_matches_run_experiment():
    rep = reproduce_all("desk", seed=4, series=["msq_writhe_walk", "abs_sl_walk"], lengths=(10, 20, 30), samples=30, subcollections=3)
    assert list(rep.tables) == ["msq_writhe_walk", "abs_sl_walk"]
    direct = run_experiment(
        EnsembleSpec(("uniform_walk",), "writhe", "mean_squared", (10, 20, 30), 30, 3, seed=4, name="msq_writhe_walk")
    )
    assert rep.tables["msq_writhe_walk"].rows == direct.rows
    t = rep.tables["abs_sl_walk"]
    assert rep.fits["abs_sl_walk"] == fit(t.ns, t.means, "a_plus_b_n")
