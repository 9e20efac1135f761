"""Command-line interface.

Every subcommand emits one JSON artifact (or a dataset file for ``synth``)
with the resolved configuration, seed, and package version embedded, and
nothing time- or host-dependent, so rerunning a command reproduces the
output byte for byte.  ``compare`` additionally prints its plain-text table
to stderr, keeping stdout pure JSON.  Runtime failures print a JSON error
object to stderr and exit with status 1.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .datasets import (
    load_arff,
    load_csv,
    prepare,
    reassign_class,
    save_arff,
    save_csv,
    synth_duplicate,
    synth_planted,
    synth_xor,
)
from .harness import CLASSIFIER_NAMES, FoldPlan, MethodConfig, compare, curve, run_method

_METHODS = ("rcdfs", "mim", "mrmr", "cmim", "fcbf", "relieff")


def resolve_seed(flag_value: int | None) -> int:
    """Seed precedence: --seed flag, then RCDFS_SEED, then 0."""
    if flag_value is not None:
        return flag_value
    env = os.environ.get("RCDFS_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"RCDFS_SEED must be an integer, got {env!r}") from None
    return 0


def _detect_format(args) -> str:
    if args.format:
        return args.format
    if args.input.lower().endswith(".arff"):
        return "arff"
    return "csv"


def _load_prepared(args):
    fmt = _detect_format(args)
    if fmt == "arff":
        raw = load_arff(args.input)
        if args.class_column is not None:
            raw = reassign_class(raw, args.class_column)
    else:
        raw = load_csv(args.input, class_column=args.class_column)
    return prepare(raw, discretize=not args.no_discretize), fmt


def _emit(obj: dict, output: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _method_config(name: str, args, seed: int, n_features=None) -> MethodConfig:
    return MethodConfig(
        method=name,
        n_features=n_features,
        fcbf_threshold=args.gamma,
        relieff_neighbors=args.relieff_neighbors,
        relieff_sample_size=args.relieff_sample,
        seed=seed,
    )


def _input_config(args, fmt: str, seed: int) -> dict:
    return {
        "input": args.input,
        "format": fmt,
        "class": args.class_column,
        "discretize": not args.no_discretize,
        "seed": seed,
    }


def _cmd_select(args) -> int:
    seed = resolve_seed(args.seed)
    prepared, fmt = _load_prepared(args)
    config = _method_config(args.method, args, seed, n_features=args.delta)
    trace = run_method(config, prepared.X, prepared.y)
    out = trace.to_dict()
    out["selected_names"] = [prepared.feature_names[i] for i in trace.selected]
    out["config"] = {
        "command": "select",
        "method": args.method,
        "delta": args.delta,
        "gamma": args.gamma,
        "relieff_neighbors": args.relieff_neighbors,
        "relieff_sample": args.relieff_sample,
        **_input_config(args, fmt, seed),
    }
    _emit(out, args.output)
    return 0


def _cmd_curve(args) -> int:
    seed = resolve_seed(args.seed)
    prepared, fmt = _load_prepared(args)
    config = _method_config(args.method, args, seed)
    plan = FoldPlan(
        prepared.X.shape[0],
        prepared.y,
        n_folds=args.folds,
        n_repeats=args.repeats,
        seed=seed,
    )
    result = curve(
        prepared.X,
        prepared.y,
        config,
        m=args.m,
        plan=plan,
        classifiers=CLASSIFIER_NAMES,
        arities=prepared.arities,
    )
    out = result.to_dict()
    out["config"] = {
        "command": "curve",
        "method": args.method,
        "m": args.m,
        "folds": args.folds,
        "repeats": args.repeats,
        "gamma": args.gamma,
        "relieff_neighbors": args.relieff_neighbors,
        "relieff_sample": args.relieff_sample,
        **_input_config(args, fmt, seed),
    }
    _emit(out, args.output)
    return 0


def _parse_methods(values: list[str]) -> list[str]:
    names = []
    for v in values:
        names += [tok.strip() for tok in v.split(",") if tok.strip()]
    if len(names) < 2:
        raise ValueError("compare needs at least two methods (repeat --method or use a comma list)")
    for name in names:
        if name not in _METHODS:
            raise ValueError(f"unknown method {name!r}; choose from {', '.join(_METHODS)}")
    return names


def _cmd_compare(args) -> int:
    seed = resolve_seed(args.seed)
    prepared, fmt = _load_prepared(args)
    names = _parse_methods(args.method)
    configs = [_method_config(name, args, seed) for name in names]
    plan = FoldPlan(
        prepared.X.shape[0],
        prepared.y,
        n_folds=args.folds,
        n_repeats=args.repeats,
        seed=seed,
    )
    report = compare(
        prepared.X,
        prepared.y,
        configs,
        plan=plan,
        classifiers=CLASSIFIER_NAMES,
        k_max=args.m,
        arities=prepared.arities,
    )
    sys.stderr.write(report.to_text())
    out = report.to_dict()
    out["config"] = {
        "command": "compare",
        "methods": names,
        "m": args.m,
        "folds": args.folds,
        "repeats": args.repeats,
        "gamma": args.gamma,
        "relieff_neighbors": args.relieff_neighbors,
        "relieff_sample": args.relieff_sample,
        **_input_config(args, fmt, seed),
    }
    _emit(out, args.output)
    return 0


def _cmd_discretize(args) -> int:
    seed = resolve_seed(args.seed)
    if args.no_discretize:
        raise ValueError("--no-discretize makes no sense for the discretize command")
    prepared, fmt = _load_prepared(args)
    out = prepared.model.to_dict()
    out["arities"] = [int(a) for a in prepared.arities]
    out["n_imputed"] = prepared.n_imputed
    out["config"] = {"command": "discretize", **_input_config(args, fmt, seed)}
    _emit(out, args.output)
    return 0


def _cmd_synth(args) -> int:
    seed = resolve_seed(args.seed)
    if args.name == "xor":
        dataset = synth_xor(seed=seed)
    elif args.name == "duplicate":
        dataset = synth_duplicate()
    else:
        dataset = synth_planted(seed=seed)
    writer = save_arff if args.format == "arff" else save_csv
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            writer(dataset, fh)
    else:
        writer(dataset, sys.stdout)
    return 0


def _add_input_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="dataset file to read")
    p.add_argument("--format", choices=("csv", "arff"), default=None,
                   help="input format (default: by file extension)")
    p.add_argument("--class", dest="class_column", default=None, metavar="NAME|INDEX",
                   help="class column, by name or zero-based index "
                        "(default: last column / last ARFF attribute)")
    p.add_argument("--no-discretize", action="store_true",
                   help="treat numeric features as already-discrete integer codes")


def _add_method_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gamma", type=float, default=0.0,
                   help="FCBF relevance threshold (default 0)")
    p.add_argument("--relieff-neighbors", type=int, default=5,
                   help="ReliefF neighbors per class (default 5)")
    p.add_argument("--relieff-sample", type=int, default=30,
                   help="ReliefF sampled rows (default 30)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rcdfs",
        description="Feature selection with dispersion-adjusted redundancy, "
                    "baseline selectors, and a CV benchmark harness.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("select", help="run one selector and print its trace")
    _add_input_options(p)
    p.add_argument("--method", choices=_METHODS, default="rcdfs")
    p.add_argument("--delta", type=int, default=10,
                   help="number of features to select (FCBF ignores this)")
    _add_method_options(p)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", default=None, help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_select)

    p = sub.add_parser("curve", help="cross-validated error against subset size")
    _add_input_options(p)
    p.add_argument("--method", choices=_METHODS, default="rcdfs")
    p.add_argument("--m", type=int, default=None,
                   help="largest subset size (default min(50, features/2))")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--repeats", type=int, default=1)
    _add_method_options(p)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("compare", help="benchmark several selectors head to head")
    _add_input_options(p)
    p.add_argument("--method", action="append", required=True, metavar="NAME[,NAME...]",
                   help="method to include; repeat the flag or give a comma list")
    p.add_argument("--m", type=int, default=None,
                   help="largest subset size scanned (default min(50, features))")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--repeats", type=int, default=10)
    _add_method_options(p)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("discretize", help="fit MDL cut points and print the model")
    _add_input_options(p)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_discretize)

    p = sub.add_parser("synth", help="generate a synthetic benchmark dataset")
    p.add_argument("name", choices=("xor", "duplicate", "planted"))
    p.add_argument("--format", choices=("csv", "arff"), default="csv")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", default=None, help="write the dataset here instead of stdout")
    p.set_defaults(func=_cmd_synth)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        raise
    except Exception as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        sys.stderr.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
