"""Cross-validated benchmark harness.

Selection always runs on the training split of each fold only; the test
split enters selection code nowhere, and the fold loop asserts the two index
sets are disjoint.  Classifier evaluation reuses one pass per fold: both
classifiers score every prefix of the selection order, so scanning k = 1..m
costs little more than evaluating the largest k.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .baselines import cmim_select, fcbf_select, mim_rank, mrmr_select, relieff_rank
from .selection import SelectionTrace, rcdfs_fast
from .stats import friedman_test, wilcoxon_rank_sum
from .validation import check_X_y

__all__ = [
    "MethodConfig",
    "register_method",
    "run_method",
    "FoldPlan",
    "CurveResult",
    "BenchmarkReport",
    "curve",
    "compare",
    "CLASSIFIER_NAMES",
]

CLASSIFIER_NAMES = ("nbc", "knn1")


@dataclass
class MethodConfig:
    """Selector choice plus every knob needed to reproduce a run."""

    method: str
    n_features: int | None = None
    fcbf_threshold: float = 0.0
    relieff_neighbors: int = 5
    relieff_sample_size: int = 30
    seed: int = 0

    def __post_init__(self):
        if self.n_features is not None and self.n_features < 1:
            raise ValueError("n_features must be at least 1 when given")
        if self.fcbf_threshold < 0:
            raise ValueError("fcbf_threshold must be non-negative")
        if self.relieff_neighbors < 1 or self.relieff_sample_size < 1:
            raise ValueError("ReliefF parameters must be at least 1")

    def to_dict(self) -> dict:
        return asdict(self)


def _require_n(config: MethodConfig, default_n: int | None) -> int:
    n = config.n_features if config.n_features is not None else default_n
    if n is None:
        raise ValueError(f"method {config.method!r} needs n_features")
    return n


_RUNNERS = {
    "rcdfs": lambda X, y, c, d: rcdfs_fast(X, y, _require_n(c, d)),
    "mim": lambda X, y, c, d: mim_rank(X, y, _require_n(c, d)),
    "mrmr": lambda X, y, c, d: mrmr_select(X, y, _require_n(c, d)),
    "cmim": lambda X, y, c, d: cmim_select(X, y, _require_n(c, d)),
    "fcbf": lambda X, y, c, d: fcbf_select(X, y, threshold=c.fcbf_threshold),
    "relieff": lambda X, y, c, d: relieff_rank(
        X,
        y,
        _require_n(c, d),
        n_neighbors=c.relieff_neighbors,
        sample_size=c.relieff_sample_size,
        random_state=c.seed,
    ),
}


def register_method(name: str, runner) -> None:
    """Register a selector runner(X, y, config, default_n) -> SelectionTrace."""
    _RUNNERS[name] = runner


def run_method(config: MethodConfig, X, y, default_n: int | None = None) -> SelectionTrace:
    """Run the configured selector on (X, y)."""
    if config.method not in _RUNNERS:
        raise ValueError(f"unknown method {config.method!r}")
    return _RUNNERS[config.method](X, y, config, default_n)


class FoldPlan:
    """Seeded, stratified fold assignments for repeated k-fold CV.

    Every row lands in exactly one test fold per repeat and fold sizes differ
    by at most one.  With ``y`` given, rows are dealt class by class from a
    seeded permutation so each fold keeps near-proportional class counts.
    """

    def __init__(self, n_rows: int, y=None, n_folds: int = 10, n_repeats: int = 10, seed: int = 0):
        if n_folds < 2:
            raise ValueError("n_folds must be at least 2")
        if n_folds > n_rows:
            raise ValueError("n_folds cannot exceed the number of rows")
        if n_repeats < 1:
            raise ValueError("n_repeats must be at least 1")
        self.n_rows = int(n_rows)
        self.n_folds = int(n_folds)
        self.n_repeats = int(n_repeats)
        self.seed = int(seed)
        self.stratified = y is not None

        rng = np.random.default_rng(seed)
        self.assignments = np.empty((self.n_repeats, self.n_rows), dtype=np.intp)
        for r in range(self.n_repeats):
            fold_of = np.empty(self.n_rows, dtype=np.intp)
            counter = 0
            if y is None:
                for row in rng.permutation(self.n_rows):
                    fold_of[row] = counter % self.n_folds
                    counter += 1
            else:
                yy = np.asarray(y)
                if yy.shape[0] != self.n_rows:
                    raise ValueError("y length disagrees with n_rows")
                for c in np.unique(yy):
                    members = np.flatnonzero(yy == c)
                    for row in rng.permutation(members):
                        fold_of[row] = counter % self.n_folds
                        counter += 1
            self.assignments[r] = fold_of

    def folds(self, repeat: int):
        """Yield (train_indices, test_indices) pairs, both ascending."""
        fold_of = self.assignments[repeat]
        for f in range(self.n_folds):
            test = np.flatnonzero(fold_of == f)
            train = np.flatnonzero(fold_of != f)
            yield train, test

    def to_dict(self) -> dict:
        return {
            "n_rows": self.n_rows,
            "n_folds": self.n_folds,
            "n_repeats": self.n_repeats,
            "seed": self.seed,
            "stratified": self.stratified,
        }


def _nbc_prefix_errors(X_tr, y_tr, X_te, y_te, order, arities):
    classes, counts = np.unique(y_tr, return_counts=True)
    log_prior = np.log(counts / y_tr.shape[0])
    n_te, n_cls, length = X_te.shape[0], classes.size, len(order)
    contrib = np.empty((n_te, n_cls, length))
    for pos, f in enumerate(order):
        arity = int(arities[f])
        table = np.empty((n_cls, arity))
        for ci, c in enumerate(classes):
            cc = np.bincount(X_tr[y_tr == c, f], minlength=arity)
            table[ci] = np.log((cc + 1) / (counts[ci] + arity))
        contrib[:, :, pos] = table[:, X_te[:, f]].T
    cum = contrib.cumsum(axis=2)
    errs = np.empty(length)
    for ell in range(length):
        pred = classes[np.argmax(log_prior + cum[:, :, ell], axis=1)]
        errs[ell] = float(np.mean(pred != y_te))
    return errs


def _knn1_prefix_errors(X_tr, y_tr, X_te, y_te, order):
    diffs = X_te[:, None, order] != X_tr[None, :, order]
    cum = diffs.cumsum(axis=2, dtype=np.int32)
    length = len(order)
    errs = np.empty(length)
    for ell in range(length):
        idx = np.argmin(cum[:, :, ell], axis=1)
        errs[ell] = float(np.mean(y_tr[idx] != y_te))
    return errs


def _prefix_errors(X_tr, y_tr, X_te, y_te, order, classifiers, arities):
    """Error of each classifier on every prefix of the selection order."""
    out = np.empty((len(order), len(classifiers)))
    for ci, name in enumerate(classifiers):
        if name == "nbc":
            out[:, ci] = _nbc_prefix_errors(X_tr, y_tr, X_te, y_te, order, arities)
        elif name == "knn1":
            out[:, ci] = _knn1_prefix_errors(X_tr, y_tr, X_te, y_te, order)
        else:
            raise ValueError(f"unknown classifier {name!r}")
    return out


def _method_fold_errors(X, y, config, plan, k_list, classifiers, arities):
    """Per-fold error tensor (repeats, folds, len(k_list), classifiers).

    A fold where the selector returns fewer than k features is evaluated at
    its native size for the larger k values (padding); native sizes are
    returned alongside.
    """
    errs = np.empty((plan.n_repeats, plan.n_folds, len(k_list), len(classifiers)))
    native = np.empty((plan.n_repeats, plan.n_folds), dtype=int)
    default_n = max(k_list)
    for r in range(plan.n_repeats):
        for fi, (train, test) in enumerate(plan.folds(r)):
            assert np.intersect1d(train, test).size == 0, "fold leakage"
            trace = run_method(config, X[train], y[train], default_n=default_n)
            order = trace.selected
            if not order:
                raise ValueError(f"method {config.method!r} selected no features")
            native[r, fi] = len(order)
            prefix = _prefix_errors(X[train], y[train], X[test], y[test], order, classifiers, arities)
            for ki, k in enumerate(k_list):
                errs[r, fi, ki] = prefix[min(k, len(order)) - 1]
    return errs, native


@dataclass
class CurveResult:
    """Mean error against the number of selected features."""

    method: str
    config: dict
    ks: list[int]
    mean_error: list[float]
    per_classifier: dict
    truncated: bool
    native_sizes: list[int]
    classifiers: list[str]
    fold_plan: dict

    def to_dict(self) -> dict:
        from . import __version__

        d = asdict(self)
        d["artifact"] = "error_curve"
        d["version"] = __version__
        return d

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True) + "\n"


def curve(
    X,
    y,
    config: MethodConfig,
    m: int | None = None,
    plan: FoldPlan | None = None,
    classifiers=CLASSIFIER_NAMES,
    arities=None,
) -> CurveResult:
    """Cross-validated error curve for one selector over k = 1..m.

    ``m`` defaults to min(50, floor(|F|/2)).  If the selector's native output
    is smaller than m on some fold, the emitted curve is truncated at the
    smallest native size and flagged.
    """
    X, y = check_X_y(X, y)
    n_features = X.shape[1]
    if m is None:
        m = min(50, n_features // 2)
    if not 1 <= m <= n_features:
        raise ValueError(f"m must be in 1..{n_features}")
    if plan is None:
        plan = FoldPlan(X.shape[0], y, n_folds=10, n_repeats=1, seed=config.seed)
    if arities is None:
        arities = X.max(axis=0) + 1
    classifiers = list(classifiers)

    k_list = list(range(1, m + 1))
    errs, native = _method_fold_errors(X, y, config, plan, k_list, classifiers, arities)
    limit = int(min(m, native.min()))
    truncated = limit < m

    mean_overall = errs.mean(axis=(0, 1, 3))[:limit]
    per_classifier = {
        name: [float(v) for v in errs.mean(axis=(0, 1))[:limit, ci]]
        for ci, name in enumerate(classifiers)
    }
    return CurveResult(
        method=config.method,
        config=config.to_dict(),
        ks=k_list[:limit],
        mean_error=[float(v) for v in mean_overall],
        per_classifier=per_classifier,
        truncated=truncated,
        native_sizes=[int(v) for v in native.ravel()],
        classifiers=classifiers,
        fold_plan=plan.to_dict(),
    )


@dataclass
class BenchmarkReport:
    """Head-to-head comparison of selectors at their best k.

    Per method: the scanned error curve, the best k by mean error, the
    per-repeat (or per-fold) samples at that k, the Wilcoxon rank-sum
    p-value against the reference method's samples, and a marker: "worse"
    when significantly above the reference's error, "better" when below,
    empty otherwise.  Friedman rows test the methods jointly over blocks of
    CV repeats for each k-range.
    """

    reference: str
    sample_mode: str
    alpha: float
    k_max: int
    classifiers: list[str]
    fold_plan: dict
    methods: list[dict]
    friedman: list[dict]
    friedman_blocks: str = "repeats"

    def to_dict(self) -> dict:
        from . import __version__

        d = asdict(self)
        d["artifact"] = "benchmark_report"
        d["version"] = __version__
        return d

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True) + "\n"

    def to_text(self) -> str:
        marker_sym = {"worse": "∘", "better": "•", "": " "}
        lines = [
            f"reference: {self.reference}   samples: {self.sample_mode}   alpha: {self.alpha}",
            f"{'method':<10} {'best k':>6} {'err%':>8} {'p-value':>12}  sig",
        ]
        for row in self.methods:
            p = row["wilcoxon_p"]
            p_str = "-" if p is None else f"{p:.4g}"
            lines.append(
                f"{row['method']:<10} {row['best_k']:>6} {100 * row['mean_error']:>8.2f} "
                f"{p_str:>12}  {marker_sym[row['marker']]}"
            )
        if self.friedman:
            lines.append("")
            header = f"{'k-range':<10}" + "".join(f"{r['k_range']:>10}" for r in self.friedman)
            stat = f"{'chi2':<10}" + "".join(f"{r['statistic']:>10.3f}" for r in self.friedman)
            pv = f"{'p':<10}" + "".join(f"{r['p_value']:>10.2g}" for r in self.friedman)
            sn = f"{'S/N':<10}" + "".join(
                f"{'S' if r['significant'] else 'N':>10}" for r in self.friedman
            )
            lines += [header, stat, pv, sn]
        return "\n".join(lines) + "\n"


def compare(
    X,
    y,
    configs,
    plan: FoldPlan | None = None,
    classifiers=CLASSIFIER_NAMES,
    k_max: int | None = None,
    sample_mode: str = "repeat",
    reference: str | None = None,
    alpha: float = 0.05,
    arities=None,
) -> BenchmarkReport:
    """Compare two or more selectors under a shared fold plan.

    Each method's error is scanned over k = 1..k_max (default min(50, |F|));
    best k minimizes the mean error, ties toward the smaller k.  Wilcoxon
    uses repeat-level samples by default ("fold" gives fold-level samples).
    """
    X, y = check_X_y(X, y)
    configs = list(configs)
    if len(configs) < 2:
        raise ValueError("compare needs at least two methods")
    names = [c.method for c in configs]
    if len(set(names)) != len(names):
        raise ValueError("method names must be unique")
    if sample_mode not in ("repeat", "fold"):
        raise ValueError("sample_mode must be 'repeat' or 'fold'")
    n_features = X.shape[1]
    if k_max is None:
        k_max = min(50, n_features)
    if not 1 <= k_max <= n_features:
        raise ValueError(f"k_max must be in 1..{n_features}")
    if plan is None:
        plan = FoldPlan(X.shape[0], y, n_folds=10, n_repeats=10, seed=configs[0].seed)
    if arities is None:
        arities = X.max(axis=0) + 1
    classifiers = list(classifiers)
    if reference is None:
        reference = "rcdfs" if "rcdfs" in names else names[0]
    if reference not in names:
        raise ValueError(f"reference method {reference!r} is not among the methods")

    k_list = list(range(1, k_max + 1))
    per_method = {}
    for config in configs:
        errs, native = _method_fold_errors(X, y, config, plan, k_list, classifiers, arities)
        curve_mean = errs.mean(axis=(0, 1, 3))
        best_ki = int(np.argmin(curve_mean))
        if sample_mode == "repeat":
            samples = errs[:, :, best_ki, :].mean(axis=(1, 2))
        else:
            samples = errs[:, :, best_ki, :].mean(axis=2).ravel()
        per_method[config.method] = {
            "config": config,
            "curve": curve_mean,
            "errs": errs,
            "best_k": best_ki + 1,
            "mean_error": float(curve_mean[best_ki]),
            "samples": samples,
            "native": native,
        }

    ref_entry = per_method[reference]
    rows = []
    for config in configs:
        entry = per_method[config.method]
        stat, p = wilcoxon_rank_sum(entry["samples"], ref_entry["samples"])
        marker = ""
        if config.method != reference and p < alpha:
            marker = "worse" if entry["mean_error"] > ref_entry["mean_error"] else "better"
        native = entry["native"]
        rows.append(
            {
                "method": config.method,
                "config": config.to_dict(),
                "best_k": entry["best_k"],
                "mean_error": entry["mean_error"],
                "errors_by_k": [float(v) for v in entry["curve"]],
                "samples": [float(v) for v in entry["samples"]],
                "wilcoxon_statistic": float(stat),
                "wilcoxon_p": float(p),
                "marker": marker,
                "native_size_min": int(native.min()),
                "native_size_max": int(native.max()),
            }
        )

    friedman_rows = []
    if plan.n_repeats >= 2:
        for k_range in range(5, k_max + 1, 5):
            block = np.stack(
                [
                    per_method[name]["errs"][:, :, :k_range, :].mean(axis=(1, 2, 3))
                    for name in names
                ]
            )
            stat, p = friedman_test(block)
            friedman_rows.append(
                {
                    "k_range": k_range,
                    "statistic": float(stat),
                    "p_value": float(p),
                    "significant": bool(p < alpha),
                }
            )

    return BenchmarkReport(
        reference=reference,
        sample_mode=sample_mode,
        alpha=alpha,
        k_max=k_max,
        classifiers=classifiers,
        fold_plan=plan.to_dict(),
        methods=rows,
        friedman=friedman_rows,
    )
