"""Monte Carlo experiments over random chain ensembles.

Every statistic follows the subcollection protocol: the statistic is averaged
within each subcollection, the subcollection averages are averaged, and the
standard error is their sample standard deviation over sqrt(subcollections).
Each sample draws from its own keyed random stream, so a table depends only
on the experiment spec and seed, never on thread count or scheduling.
"""

import datetime as _dt
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from ._kernels import linking_batch, torsion_batch, writhe_batch
from ._validation import EPS_GEOM, check_direction, check_positive_int
from .chains import RngStream, as_generator, fixed_square, fixed_trefoil, gen_equilateral_walk, gen_uniform_polygon, gen_uniform_walk
from .errors import ExcessiveDegeneracy, SpecInvalid
from .fitting import FIT_CSV_HEADER, compare_conjecture, fit
from .geometry import binormal_angles, crossing_signs

STATISTICS = ("mean", "mean_squared", "mean_abs")
ENSEMBLE_MEASURES = ("writhe", "linking", "self_linking", "torsion")
RANDOM_MODELS = ("uniform_walk", "uniform_polygon", "equilateral_walk")
PARTNERS = ("none", "square", "trefoil")
MAX_DEGENERATE_RATE = 0.01

_GENERATE = {
    "uniform_walk": gen_uniform_walk,
    "uniform_polygon": gen_uniform_polygon,
    "equilateral_walk": gen_equilateral_walk,
}
_CLOSED = {"uniform_walk": False, "uniform_polygon": True, "equilateral_walk": False}
_PARTNER_CHAINS = {"square": fixed_square, "trefoil": fixed_trefoil}


@dataclass(frozen=True)
class EnsembleSpec:
    """One experiment: which chains, which measure and statistic, which lengths."""

    models: tuple
    measure: str
    statistic: str
    lengths: tuple
    samples_per_subcollection: int = 200
    subcollections: int = 10
    seed: int = 0
    partner: str = "none"
    name: str = ""

    def __post_init__(self):
        models = (self.models,) if isinstance(self.models, str) else tuple(self.models)
        object.__setattr__(self, "models", models)
        try:
            lengths = tuple(int(n) for n in self.lengths)
        except (TypeError, ValueError) as exc:
            raise SpecInvalid(f"lengths must be integers: {self.lengths!r}") from exc
        object.__setattr__(self, "lengths", lengths)
        self._validate()

    def _validate(self):
        if not 1 <= len(self.models) <= 2:
            raise SpecInvalid("give one or two chain models")
        for m in self.models:
            if m not in RANDOM_MODELS:
                raise SpecInvalid(f"unknown chain model {m!r}; choose from {RANDOM_MODELS}")
        if self.measure not in ENSEMBLE_MEASURES:
            raise SpecInvalid(f"unknown measure {self.measure!r}; choose from {ENSEMBLE_MEASURES}")
        if self.statistic not in STATISTICS:
            raise SpecInvalid(f"unknown statistic {self.statistic!r}; choose from {STATISTICS}")
        if self.partner not in PARTNERS:
            raise SpecInvalid(f"unknown partner {self.partner!r}; choose from {PARTNERS}")
        if self.measure == "linking":
            if len(self.models) == 1 and self.partner == "none":
                raise SpecInvalid("linking needs a second model or a fixed partner")
            if len(self.models) == 2 and self.partner != "none":
                raise SpecInvalid("linking takes either a second model or a partner, not both")
        elif len(self.models) != 1 or self.partner != "none":
            raise SpecInvalid(f"{self.measure} is a single-chain measure")
        if not self.lengths:
            raise SpecInvalid("lengths must be nonempty")
        if any(b <= a for a, b in zip(self.lengths, self.lengths[1:])):
            raise SpecInvalid("lengths must be strictly ascending")
        for m in self.models:
            minimum = 3 if m == "uniform_polygon" else 1
            if self.lengths[0] < minimum:
                raise SpecInvalid(f"{m} needs n >= {minimum}")
        for key in ("samples_per_subcollection", "subcollections"):
            val = getattr(self, key)
            if isinstance(val, bool) or not isinstance(val, (int, np.integer)) or val < 1:
                raise SpecInvalid(f"{key} must be a positive integer")
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise SpecInvalid("seed must be a non-negative integer")

    @property
    def series(self):
        return self.name or default_series_name(self)

    def to_dict(self):
        d = asdict(self)
        d["models"] = list(self.models)
        d["lengths"] = list(self.lengths)
        return d

    @classmethod
    def from_dict(cls, d):
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise SpecInvalid(f"unknown spec keys {sorted(unknown)}")
        return cls(**d)

    def to_text(self):
        d = self.to_dict()
        lines = []
        for key, val in d.items():
            if isinstance(val, list):
                val = ",".join(str(v) for v in val)
            lines.append(f"{key}={val}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text, **overrides):
        """Parse the flat ``key=value`` format; ``overrides`` win over the file."""
        d = parse_spec_text(text)
        d.update({k: v for k, v in overrides.items() if v is not None})
        return cls.from_dict(d)


def parse_spec_text(text):
    d = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecInvalid(f"line {lineno}: expected key=value, got {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if key in ("models", "lengths"):
            items = [v.strip() for v in val.split(",") if v.strip()]
            d[key] = tuple(int(v) for v in items) if key == "lengths" else tuple(items)
        elif key in ("samples_per_subcollection", "subcollections", "seed"):
            try:
                d[key] = int(val)
            except ValueError as exc:
                raise SpecInvalid(f"line {lineno}: {key} must be an integer") from exc
        else:
            d[key] = val
    return d


def default_series_name(spec):
    stat = {"mean": "mean", "mean_squared": "msq", "mean_abs": "abs"}[spec.statistic]
    measure = {"writhe": "writhe", "linking": "lk", "self_linking": "sl", "torsion": "torsion"}[spec.measure]
    model = spec.models[0].replace("uniform_", "").replace("_walk", "")
    parts = [stat, measure]
    if spec.partner != "none":
        parts.append(spec.partner)
    parts.append(model)
    return "_".join(parts)


@dataclass(frozen=True)
class StatRow:
    n: int
    mean: float
    stderr: float
    samples: int
    degenerate_resamples: int = 0


@dataclass
class StatTable:
    series: str
    rows: list
    spec: EnsembleSpec = None

    @property
    def ns(self):
        return np.array([r.n for r in self.rows])

    @property
    def means(self):
        return np.array([r.mean for r in self.rows])

    @property
    def stderrs(self):
        return np.array([r.stderr for r in self.rows])

    def to_dict(self):
        return {
            "series": self.series,
            "rows": [asdict(r) for r in self.rows],
            "spec": None if self.spec is None else self.spec.to_dict(),
        }


# -- sampling ---------------------------------------------------------------


def _stack(model, n, streams):
    gen = _GENERATE[model]
    return np.ascontiguousarray(np.stack([gen(n, s).vertices for s in streams]))


def _evaluate(models, partner, measures, n, streams):
    """Measure values for one chain (or chain pair) per stream, plus a mask
    of samples containing a degenerate edge pair."""
    out = {}
    bad = np.zeros(len(streams), dtype=bool)
    if "linking" in measures:
        va = _stack(models[0], n, [s.child("a") for s in streams])
        if partner != "none":
            vb = np.ascontiguousarray(_PARTNER_CHAINS[partner]().vertices[None])
            closed_b = True
        else:
            vb = _stack(models[-1], n, [s.child("b") for s in streams])
            closed_b = _CLOSED[models[-1]]
        vals, deg = linking_batch(va, _CLOSED[models[0]], vb, closed_b, EPS_GEOM)
        out["linking"] = vals
        bad |= deg
    single = [m for m in measures if m != "linking"]
    if single:
        v = _stack(models[0], n, [s.child("a") for s in streams])
        closed = _CLOSED[models[0]]
        if "writhe" in single or "self_linking" in single:
            w, deg = writhe_batch(v, closed, EPS_GEOM)
            bad |= deg
            out["writhe"] = w
        if "torsion" in single or "self_linking" in single:
            out["torsion"] = torsion_batch(v, closed, EPS_GEOM)
        if "self_linking" in single:
            out["self_linking"] = out["writhe"] + out["torsion"] / (2.0 * np.pi)
    return {m: out[m] for m in measures}, bad


def _experiment_key(models, partner):
    return "+".join(models) + "/" + partner


def sample_subcollection(models, partner, measures, n, subcollection, count, seed, max_attempts=20):
    """Per-sample values of ``measures`` for one subcollection.

    Samples hitting a degenerate pair are redrawn from a fresh sub-key; the
    number of redraws is returned alongside the values.
    """
    base = RngStream(seed, (_experiment_key(models, partner), n, subcollection))
    streams = [base.child(k, 0) for k in range(count)]
    values, bad = _evaluate(models, partner, measures, n, streams)
    resamples = 0
    attempt = 0
    while bad.any():
        attempt += 1
        if attempt > max_attempts:
            raise ExcessiveDegeneracy(f"n={n}: samples still degenerate after {max_attempts} redraws")
        idx = np.flatnonzero(bad)
        resamples += len(idx)
        redo = [base.child(int(k), attempt) for k in idx]
        new_vals, new_bad = _evaluate(models, partner, measures, n, redo)
        for m in measures:
            values[m][idx] = new_vals[m]
        bad = np.zeros_like(bad)
        bad[idx] = new_bad
    return values, resamples


def _apply_statistic(values, statistic):
    if statistic == "mean":
        return values
    if statistic == "mean_squared":
        return values * values
    return np.abs(values)


def _default_threads():
    return os.cpu_count() or 1


def _collect(models, partner, measures, lengths, samples, subcollections, seed, threads):
    """Values shaped (len(lengths), subcollections, samples) per measure and
    resample counts shaped (len(lengths), subcollections)."""
    tasks = [(i, n, c) for i, n in enumerate(lengths) for c in range(subcollections)]

    def work(task):
        _, n, c = task
        return sample_subcollection(models, partner, measures, n, c, samples, seed)

    threads = _default_threads() if threads is None else max(1, int(threads))
    if threads == 1:
        results = [work(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, tasks))

    values = {m: np.empty((len(lengths), subcollections, samples)) for m in measures}
    resamples = np.zeros((len(lengths), subcollections), dtype=np.int64)
    for (i, _, c), (vals, redo) in zip(tasks, results):
        for m in measures:
            values[m][i, c] = vals[m]
        resamples[i, c] = redo
    for i, n in enumerate(lengths):
        rate = resamples[i].sum() / (samples * subcollections)
        if rate > MAX_DEGENERATE_RATE:
            raise ExcessiveDegeneracy(f"n={n}: resample rate {rate:.3%} exceeds {MAX_DEGENERATE_RATE:.0%}")
    return values, resamples


def _table(series, values, resamples, spec):
    stat = _apply_statistic(values, spec.statistic)
    sub_means = stat.mean(axis=2)
    rows = []
    for i, n in enumerate(spec.lengths):
        means = sub_means[i]
        stderr = float(np.std(means, ddof=1) / np.sqrt(len(means))) if len(means) > 1 else 0.0
        rows.append(StatRow(n, float(means.mean()), stderr, int(stat.shape[1] * stat.shape[2]), int(resamples[i].sum())))
    return StatTable(series, rows, spec)


def run_experiment(spec, threads=None):
    """Run one experiment and return its per-length StatTable."""
    if not isinstance(spec, EnsembleSpec):
        raise SpecInvalid("run_experiment expects an EnsembleSpec")
    values, resamples = _collect(
        spec.models,
        spec.partner,
        (spec.measure,),
        spec.lengths,
        spec.samples_per_subcollection,
        spec.subcollections,
        spec.seed,
        threads,
    )
    return _table(spec.series, values[spec.measure], resamples, spec)


# -- edge-pair crossing moments ---------------------------------------------


@dataclass(frozen=True)
class EdgePairMoments:
    """Crossing-sign moments of random edges in the unit cube.

    p: P(positive crossing) = E[eps^2] / 2 for independent edges.
    u: two edges sharing a vertex, each against a common third edge.
    v: two consecutive edges against two other consecutive edges.
    w: edges i, i+2 against i+1, i+3 along a 4-edge path.
    """

    p: float
    u: float
    v: float
    w: float
    p_stderr: float
    u_stderr: float
    v_stderr: float
    w_stderr: float
    mean_sign: float
    mean_sign_stderr: float
    samples: int
    redrawn: int = 0

    @property
    def q(self):
        return self.p + 2.0 * (self.u + self.v)

    @property
    def q_stderr(self):
        return float(np.sqrt(self.p_stderr**2 + 4.0 * (self.u_stderr**2 + self.v_stderr**2)))

    @property
    def q_prime(self):
        return 3.0 * self.p + 2.0 * (2.0 * self.u + self.v + self.w)

    @property
    def q_prime_stderr(self):
        return float(np.sqrt(9.0 * self.p_stderr**2 + 16.0 * self.u_stderr**2 + 4.0 * self.v_stderr**2 + 4.0 * self.w_stderr**2))

    @property
    def warnings(self):
        notes = []
        if not 0.0 <= self.p <= 0.5:
            notes.append(f"p={self.p} outside [0, 1/2]")
        if self.q <= 0:
            notes.append(f"q={self.q} is not positive")
        if self.q_prime <= 0:
            notes.append(f"q'={self.q_prime} is not positive")
        return notes

    def to_dict(self):
        d = asdict(self)
        d.update(q=self.q, q_stderr=self.q_stderr, q_prime=self.q_prime, q_prime_stderr=self.q_prime_stderr)
        return d


def _config_products(kind, pts, xi):
    # pts: (m, k, 3) uniform points; returns (product, degenerate) per row
    def eps(i, j, k, l):
        return crossing_signs(pts[:, i], pts[:, j], pts[:, k], pts[:, l], xi)

    if kind == "p":
        s, d = eps(0, 1, 2, 3)
        return s.astype(np.float64), d
    if kind == "u":
        s1, d1 = eps(0, 1, 2, 3)
        s2, d2 = eps(0, 1, 3, 4)
    elif kind == "v":
        s1, d1 = eps(0, 1, 3, 4)
        s2, d2 = eps(1, 2, 4, 5)
    else:
        s1, d1 = eps(0, 1, 2, 3)
        s2, d2 = eps(1, 2, 3, 4)
    return s1.astype(np.float64) * s2, d1 | d2


_CONFIG_POINTS = {"p": 4, "u": 5, "v": 6, "w": 5}


def estimate_edge_pair_moments(samples, xi=(0.0, 0.0, 1.0), rng=0, chunk=200_000):
    """Monte Carlo estimates of p, u, v, w for projections along ``xi``.

    Each configuration is drawn ``samples`` times from independent uniform
    points in the unit cube; rows whose projection is degenerate are redrawn.
    """
    samples = check_positive_int(samples, "samples", 2)
    xi = check_direction(xi)
    gen = as_generator(rng)
    sums = {}
    redrawn = 0
    for kind, k in _CONFIG_POINTS.items():
        acc = []
        done = 0
        while done < samples:
            m = min(chunk, samples - done)
            pts = gen.random((m, k, 3))
            vals, bad = _config_products(kind, pts, xi)
            while bad.any():
                redrawn += int(bad.sum())
                pts[bad] = gen.random((int(bad.sum()), k, 3))
                vals, bad = _config_products(kind, pts, xi)
            acc.append(vals)
            done += m
        sums[kind] = np.concatenate(acc)

    def mean_se(x):
        return float(x.mean()), float(x.std(ddof=1) / np.sqrt(len(x)))

    sign_mean, sign_se = mean_se(sums["p"])
    p, p_se = mean_se(0.5 * sums["p"] ** 2)
    u, u_se = mean_se(sums["u"])
    v, v_se = mean_se(sums["v"])
    w, w_se = mean_se(sums["w"])
    return EdgePairMoments(p, u, v, w, p_se, u_se, v_se, w_se, sign_mean, sign_se, samples, redrawn)


def torsion_angle_magnitude(n, count, seed=0, model="equilateral_walk"):
    """Mean |binormal angle| per turn over ``count`` open chains of n edges.

    Returns (mean, stderr); the stderr treats each chain's per-turn average
    as one independent observation.
    """
    n = check_positive_int(n, "n", 3)
    count = check_positive_int(count, "count", 2)
    base = RngStream(seed, ("torsion-angles", model, n))
    verts = _stack(model, n, [base.child(k) for k in range(count)])
    e = np.diff(verts, axis=1)
    angles, _ = binormal_angles(e[:, :-2], e[:, 1:-1], e[:, 2:])
    per_chain = np.abs(angles).mean(axis=1)
    return float(per_chain.mean()), float(per_chain.std(ddof=1) / np.sqrt(count))


# -- full reproduction ------------------------------------------------------

SCALES = {
    "desk": {"samples": 200, "subcollections": 10, "lengths": tuple(range(10, 61, 10))},
    "paper": {"samples": 500, "subcollections": 10, "lengths": tuple(range(10, 101, 10))},
}

# series name, models, partner, measure, statistic, fit model
SERIES = (
    ("msq_writhe_walk", ("uniform_walk",), "none", "writhe", "mean_squared", "a_plus_b_n2"),
    ("msq_writhe_polygon", ("uniform_polygon",), "none", "writhe", "mean_squared", "a_plus_b_n2"),
    ("abs_writhe_walk", ("uniform_walk",), "none", "writhe", "mean_abs", "a_plus_b_n"),
    ("abs_writhe_polygon", ("uniform_polygon",), "none", "writhe", "mean_abs", "a_plus_b_n"),
    ("msq_sl_walk", ("uniform_walk",), "none", "self_linking", "mean_squared", "a_plus_b_n2"),
    ("msq_sl_polygon", ("uniform_polygon",), "none", "self_linking", "mean_squared", "a_plus_b_n2"),
    ("abs_sl_walk", ("uniform_walk",), "none", "self_linking", "mean_abs", "a_plus_b_n"),
    ("abs_sl_polygon", ("uniform_polygon",), "none", "self_linking", "mean_abs", "a_plus_b_n"),
    ("msq_lk_walk", ("uniform_walk", "uniform_walk"), "none", "linking", "mean_squared", "a_plus_b_n2"),
    ("msq_lk_polygon", ("uniform_polygon", "uniform_polygon"), "none", "linking", "mean_squared", "a_plus_b_n2"),
    ("abs_lk_walk", ("uniform_walk", "uniform_walk"), "none", "linking", "mean_abs", "a_plus_b_n"),
    ("abs_lk_polygon", ("uniform_polygon", "uniform_polygon"), "none", "linking", "mean_abs", "a_plus_b_n"),
    ("abs_lk_square_walk", ("uniform_walk",), "square", "linking", "mean_abs", "a_plus_b_sqrt_n"),
    ("abs_lk_square_polygon", ("uniform_polygon",), "square", "linking", "mean_abs", "a_plus_b_sqrt_n"),
    ("abs_lk_trefoil_walk", ("uniform_walk",), "trefoil", "linking", "mean_abs", "a_plus_b_sqrt_n"),
    ("abs_lk_trefoil_polygon", ("uniform_polygon",), "trefoil", "linking", "mean_abs", "a_plus_b_sqrt_n"),
    ("abs_sl_equilateral", ("equilateral_walk",), "none", "self_linking", "mean_abs", "a_plus_b_sqrt_n"),
    ("abs_lk_equilateral", ("equilateral_walk", "equilateral_walk"), "none", "linking", "mean_abs", "a_plus_b_sqrt_n"),
)

CONJECTURE_PAIRS = (
    ("writhe_walk", "msq_writhe_walk", "abs_writhe_walk"),
    ("writhe_polygon", "msq_writhe_polygon", "abs_writhe_polygon"),
    ("sl_walk", "msq_sl_walk", "abs_sl_walk"),
    ("sl_polygon", "msq_sl_polygon", "abs_sl_polygon"),
    ("lk_walk", "msq_lk_walk", "abs_lk_walk"),
    ("lk_polygon", "msq_lk_polygon", "abs_lk_polygon"),
)


@dataclass
class Reproduction:
    tables: dict
    fits: dict
    conjectures: dict
    metadata: dict = field(default_factory=dict)


def series_specs(scale="desk", seed=0, lengths=None, samples=None, subcollections=None):
    """EnsembleSpecs for every reproduced series, keyed by series name."""
    if scale not in SCALES:
        raise SpecInvalid(f"unknown scale {scale!r}; choose from {tuple(SCALES)}")
    cfg = SCALES[scale]
    specs = {}
    for name, models, partner, measure, statistic, _ in SERIES:
        specs[name] = EnsembleSpec(
            models=models,
            measure=measure,
            statistic=statistic,
            lengths=cfg["lengths"] if lengths is None else lengths,
            samples_per_subcollection=cfg["samples"] if samples is None else samples,
            subcollections=cfg["subcollections"] if subcollections is None else subcollections,
            seed=seed,
            partner=partner,
            name=name,
        )
    return specs


def reproduce_all(scale="desk", seed=0, threads=None, series=None, **overrides):
    """Run every reproduced series and fit its scaling model.

    Series over the same chain ensemble share their samples (e.g. writhe and
    self-linking of uniform walks), exactly as separate ``run_experiment``
    calls with the same seed would produce.
    """
    specs = series_specs(scale, seed, **overrides)
    wanted = [s for s in SERIES if series is None or s[0] in series]
    groups = {}
    for name, models, partner, measure, _, _ in wanted:
        groups.setdefault((models, partner), []).append((name, measure))

    tables = {}
    for (models, partner), members in groups.items():
        measures = tuple(dict.fromkeys(m for _, m in members))
        first = specs[members[0][0]]
        values, resamples = _collect(
            models,
            partner,
            measures,
            first.lengths,
            first.samples_per_subcollection,
            first.subcollections,
            seed,
            threads,
        )
        for name, measure in members:
            tables[name] = _table(name, values[measure], resamples, specs[name])

    fits = {}
    for name, *_, model in wanted:
        if len(tables[name].rows) >= 3:
            fits[name] = fit(tables[name].ns, tables[name].means, model)
    conjectures = {}
    for label, sq, ab in CONJECTURE_PAIRS:
        if sq in tables and ab in tables:
            conjectures[label] = compare_conjecture(tables[sq], tables[ab])
    ordered = {s[0]: tables[s[0]] for s in wanted}
    metadata = run_metadata(scale, seed)
    return Reproduction(ordered, fits, conjectures, metadata)


def run_metadata(scale, seed, **extra):
    meta = {
        "seed": int(seed),
        "scale": scale,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "version": f"v{__version__}",
    }
    meta.update(extra)
    return meta


# -- serialization ----------------------------------------------------------

TABLE_CSV_HEADER = "series,n,mean,stderr,samples,degenerate_resamples"


def tables_to_csv(tables):
    buf = io.StringIO()
    buf.write(TABLE_CSV_HEADER + "\n")
    for table in tables:
        for r in table.rows:
            buf.write(f"{table.series},{r.n},{r.mean!r},{r.stderr!r},{r.samples},{r.degenerate_resamples}\n")
    return buf.getvalue()


def tables_from_csv(text):
    """Parse table CSV into {series: StatTable} (specs are not recoverable)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != TABLE_CSV_HEADER:
        raise ValueError(f"expected CSV header {TABLE_CSV_HEADER!r}")
    tables = {}
    for ln in lines[1:]:
        series, n, mean, stderr, samples, redo = ln.split(",")
        row = StatRow(int(n), float(mean), float(stderr), int(samples), int(redo))
        tables.setdefault(series, StatTable(series, [])).rows.append(row)
    return tables


def fits_to_csv(fits):
    lines = [FIT_CSV_HEADER]
    lines.extend(result.csv_row(series) for series, result in fits.items())
    return "\n".join(lines) + "\n"


def results_document(tables, fits=None, conjectures=None, metadata=None):
    return {
        "metadata": metadata or {},
        "tables": [t.to_dict() for t in tables],
        "fits": {k: v.to_dict() for k, v in (fits or {}).items()},
        "conjectures": {k: v.to_dict() for k, v in (conjectures or {}).items()},
    }


def dumps_document(doc):
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
