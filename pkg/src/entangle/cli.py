"""Command-line front end.

Exit status: 0 on success, 1 on usage or input errors, 2 on numerical or
degeneracy failures.
"""

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .chains import MODELS, ChainSpec, RngStream, format_chain, read_chain
from .ensemble import (
    SCALES,
    SERIES,
    EnsembleSpec,
    dumps_document,
    fits_to_csv,
    parse_spec_text,
    reproduce_all,
    results_document,
    run_experiment,
    run_metadata,
    tables_from_csv,
    tables_to_csv,
)
from .errors import EntangleError, NumericalError
from .fitting import FIT_CSV_HEADER, FIT_MODELS, fit
from .measures import all_measures, linking_number
from .verify import run_checks

SEED_ENV = "ENTANGLE_SEED"
_SERIES_MODEL = {name: model for name, *_, model in SERIES}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _seed(args):
    return _default_seed() if args.seed is None else args.seed


def _write_or_print(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)


# -- subcommands ------------------------------------------------------------


def cmd_gen(args):
    seed = _seed(args)
    spec = ChainSpec(args.model, args.n if args.model not in ("fixed_square", "fixed_trefoil") else 0)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        stream = RngStream(seed, ("gen", args.model, spec.n, i))
        chain = spec.sample(stream)
        body = format_chain(chain)
        header, rest = body.split("\n", 1)
        provenance = f"# source model={args.model} n={spec.n} seed={seed} index={i}"
        path = out / f"{args.model}_n{spec.n}_{i:04d}.chain"
        path.write_text(f"{header}\n{provenance}\n{rest}")
        print(path)
    return 0


def cmd_measure(args):
    chains = [(str(p), read_chain(p)) for p in args.files]
    doc = {"chains": [], "linking": []}
    for name, c in chains:
        entry = {"file": name, "closed": c.closed, "n_edges": c.n_edges}
        entry.update(all_measures(c))
        doc["chains"].append(entry)
    for i in range(len(chains)):
        for j in range(i + 1, len(chains)):
            value = linking_number(chains[i][1], chains[j][1])
            doc["linking"].append({"a": chains[i][0], "b": chains[j][0], "linking": value})
    _write_or_print(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def _load_spec(path):
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        try:
            return doc["metadata"]["spec"]
        except (KeyError, TypeError):
            raise UsageError(f"{path}: JSON results carry no metadata.spec") from None
    return parse_spec_text(text)


def cmd_experiment(args):
    d = _load_spec(args.spec) if args.spec else {}
    flags = {
        "models": tuple(args.models.split(",")) if args.models else None,
        "measure": args.measure,
        "statistic": args.statistic,
        "lengths": tuple(int(x) for x in args.lengths.split(",")) if args.lengths else None,
        "samples_per_subcollection": args.samples,
        "subcollections": args.subcollections,
        "seed": args.seed,
        "partner": args.partner,
        "name": args.name,
    }
    d.update({k: v for k, v in flags.items() if v is not None})
    d.setdefault("seed", _default_seed())
    missing = [k for k in ("models", "measure", "statistic", "lengths") if k not in d]
    if missing:
        raise UsageError(f"experiment needs {', '.join(missing)} (from --spec or flags)")
    spec = EnsembleSpec.from_dict(d)
    table = run_experiment(spec, threads=args.threads)
    csv_text = tables_to_csv([table])
    meta = run_metadata(
        "custom",
        spec.seed,
        spec=spec.to_dict(),
        subcollections=spec.subcollections,
        samples_per_subcollection=spec.samples_per_subcollection,
    )
    doc = results_document([table], metadata=meta)
    _write_or_print(csv_text, args.csv)
    if args.json:
        _write_or_print(dumps_document(doc), args.json)
    return 0


def cmd_fit(args):
    tables = tables_from_csv(Path(args.csv).read_text())
    if args.series:
        if args.series not in tables:
            raise UsageError(f"series {args.series!r} not in {args.csv}")
        tables = {args.series: tables[args.series]}
    lines = [FIT_CSV_HEADER]
    for name, table in tables.items():
        model = args.model or _SERIES_MODEL.get(name)
        if model is None:
            raise UsageError(f"no default model for series {name!r}; pass --model")
        weights = None
        if args.weighted:
            se = table.stderrs
            if np.any(se <= 0):
                raise UsageError("weighted fit needs positive standard errors")
            weights = 1.0 / se**2
        lines.append(fit(table.ns, table.means, model, weights=weights).csv_row(name))
    _write_or_print("\n".join(lines) + "\n", args.out)
    return 0


_GNUPLOT_FORMS = {
    "a_plus_b_n": "{a} + {b}*x",
    "a_plus_b_n2": "{a} + {b}*x**2",
    "a_plus_b_sqrt_n": "{a} + {b}*sqrt(x)",
}


def gnuplot_script(fits):
    lines = ["# gnuplot script: one PNG per series", "set datafile separator ','", "set terminal pngcairo size 640,480", "set key left top"]
    for name, f in fits.items():
        expr = _GNUPLOT_FORMS[f.model].format(a=repr(f.a), b=repr(f.b))
        lines += [
            f"set output '{name}.png'",
            f"set title '{name}'",
            "set xlabel 'n'",
            f"plot 'series/{name}.csv' using 2:3:4 skip 1 with yerrorbars title 'data', {expr} title 'fit R^2={f.r_squared:.4f}'",
        ]
    return "\n".join(lines) + "\n"


def cmd_reproduce(args):
    seed = _seed(args)
    result = reproduce_all(args.scale, seed=seed, threads=args.threads)
    out = Path(args.out)
    (out / "series").mkdir(parents=True, exist_ok=True)
    tables = list(result.tables.values())
    (out / "tables.csv").write_text(tables_to_csv(tables))
    (out / "fits.csv").write_text(fits_to_csv(result.fits))
    for t in tables:
        (out / "series" / f"{t.series}.csv").write_text(tables_to_csv([t]))
    (out / "plot.gp").write_text(gnuplot_script(result.fits))
    meta = dict(result.metadata, command=f"reproduce --scale {args.scale} --seed {seed}")
    doc = results_document(tables, result.fits, result.conjectures, meta)
    (out / "results.json").write_text(dumps_document(doc))
    for name, f in result.fits.items():
        print(f"{name:26s} {f.model:16s} a={f.a: .4f} b={f.b: .5f} (+/-{f.stderr_b:.5f}) R2={f.r_squared:.4f}")
    return 0


def cmd_verify(args):
    results = run_checks(ndirs=args.ndirs, pairs=args.pairs, seed=_seed(args))
    ok = True
    for name, passed, detail in results:
        ok &= passed
        print(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
    return 0 if ok else 2


# -- parser -----------------------------------------------------------------


def build_parser():
    parser = _Parser(prog="entangle", description="Entanglement measures of polygonal chains and their Monte Carlo scaling laws.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("gen", help="generate chain files")
    p.add_argument("--model", required=True, choices=MODELS)
    p.add_argument("--n", type=int, default=10, help="edge count (ignored by fixed curves)")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("measure", help="writhe, torsion, self-linking, ACN and pairwise linking of chain files")
    p.add_argument("files", nargs="+")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("experiment", help="run one Monte Carlo experiment")
    p.add_argument("--spec", help="key=value spec file, or a JSON results document to rerun")
    p.add_argument("--models", help="one or two comma-separated chain models")
    p.add_argument("--measure", choices=("writhe", "linking", "self_linking", "torsion"))
    p.add_argument("--statistic", choices=("mean", "mean_squared", "mean_abs"))
    p.add_argument("--lengths", help="comma-separated edge counts, ascending")
    p.add_argument("--samples", type=int, help="samples per subcollection")
    p.add_argument("--subcollections", type=int)
    p.add_argument("--partner", choices=("none", "square", "trefoil"))
    p.add_argument("--name", help="series label")
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--csv", help="write the table CSV here instead of stdout")
    p.add_argument("--json", help="also write a JSON document with run metadata")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("fit", help="least-squares scaling fits of a table CSV")
    p.add_argument("csv")
    p.add_argument("--model", choices=tuple(FIT_MODELS))
    p.add_argument("--series")
    p.add_argument("--weighted", action="store_true", help="weight points by 1/stderr^2")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("reproduce", help="run every reproduced series and fit it")
    p.add_argument("--scale", choices=tuple(SCALES), default="desk")
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--out", default="results")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("verify", help="check the exact kernel against the oracles")
    p.add_argument("--ndirs", type=int, default=100_000)
    p.add_argument("--pairs", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"entangle: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (UsageError, EntangleError, ValueError, OSError) as exc:
        print(f"entangle: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
