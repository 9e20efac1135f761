"""Greedy feature selection scored by relevance minus dispersion-adjusted
pairwise redundancy.

Each candidate feature F is scored against the selected set S as

    J(F) = I(F;C) - phi * Pair_Cor(F;S)

where Pair_Cor sums cor(F;F_s) = I(F;F_s) - I(F;F_s|C) over the selected
features.  Positive cor terms flag class-relevant redundancy, negative terms
flag complementariness.  phi = 1 + sigma when Pair_Cor >= 0 and 1 - sigma
otherwise, with sigma the population standard deviation of the cor terms, so
an inconsistent mix of redundancy and complementariness is penalized while a
consistently complementary candidate is rewarded.

Two implementations are provided: a reference algorithm that re-scores every
candidate against the full selected set each round, and a fast algorithm that
maintains per-candidate running sums of cor and cor^2 (one new cor term per
round, so O(delta * |F|) information computations overall).  Both produce
identical selection orders.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .info import conditional_mutual_information, mutual_information
from .validation import check_X_y

__all__ = [
    "pairwise_cor",
    "cor_dispersion",
    "dispersion_coefficient",
    "dispersion_adjusted_score",
    "SelectionTrace",
    "rcdfs_reference",
    "rcdfs_fast",
    "RCDFS",
]


def pairwise_cor(x, x_selected, y) -> float:
    """Class-relevant association cor(F;F_s) = I(F;F_s) - I(F;F_s|C).

    Positive when knowing the class explains away association between the two
    features (redundancy); negative when conditioning on the class creates
    association (complementariness).  Equals I(F;C) - I(F;C|F_s), so it also
    reads as the part of F's relevance already delivered by F_s.
    """
    return mutual_information(x, x_selected) - conditional_mutual_information(
        x, x_selected, y
    )


def cor_dispersion(cor_values) -> float:
    """Population standard deviation of the cor terms; 0 for empty input."""
    arr = np.asarray(cor_values, dtype=float)
    if arr.ndim != 1:
        raise ValueError("cor_values must be 1-D")
    if arr.size == 0:
        return 0.0
    mu = arr.mean()
    return float(math.sqrt(((arr - mu) ** 2).mean()))


def dispersion_coefficient(pair_cor: float, sigma: float) -> float:
    """phi = 1 + sigma on the non-negative Pair_Cor branch, 1 - sigma below.

    No floor is applied: sigma > 1 with negative Pair_Cor gives phi < 0.
    """
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    return 1.0 + sigma if pair_cor >= 0 else 1.0 - sigma


def dispersion_adjusted_score(relevance: float, pair_cor: float, sigma: float) -> float:
    """J(F) = relevance - phi(Pair_Cor, sigma) * Pair_Cor."""
    return relevance - dispersion_coefficient(pair_cor, sigma) * pair_cor


@dataclass
class SelectionTrace:
    """Ordered selection result with per-round diagnostics.

    ``iterations`` holds one record per pick with keys ``feature``, ``score``,
    ``relevance``, ``pair_cor``, ``sigma`` and ``phi`` (the latter three are
    None for methods without a dispersion term).  ``candidate_scores`` is a
    debugging extra populated on request only and never serialized: one dict
    per round mapping each remaining candidate to its diagnostics.
    """

    method: str
    selected: list[int]
    iterations: list[dict]
    requested: int | None = None
    params: dict = field(default_factory=dict)
    candidate_scores: list[dict] | None = None

    def __post_init__(self):
        if len(self.selected) != len(set(self.selected)):
            raise ValueError("selected features repeat")
        if len(self.iterations) != len(self.selected):
            raise ValueError("iterations and selected disagree in length")

    @property
    def native_size(self) -> int:
        return len(self.selected)

    def to_dict(self) -> dict:
        from . import __version__

        return {
            "artifact": "selection_trace",
            "version": __version__,
            "method": self.method,
            "requested": self.requested,
            "selected": [int(f) for f in self.selected],
            "iterations": self.iterations,
            "params": self.params,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "SelectionTrace":
        return cls(
            method=d["method"],
            selected=list(d["selected"]),
            iterations=list(d["iterations"]),
            requested=d.get("requested"),
            params=dict(d.get("params", {})),
        )

    @classmethod
    def from_json(cls, text: str) -> "SelectionTrace":
        return cls.from_dict(json.loads(text))


def _check_n_select(n_select: int, n_features: int) -> int:
    n_select = int(n_select)
    if n_select < 1:
        raise ValueError("n_select must be at least 1")
    if n_select > n_features:
        raise ValueError(f"n_select={n_select} exceeds the {n_features} available features")
    return n_select


def _relevances(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.array([mutual_information(X[:, j], y) for j in range(X.shape[1])])


def rcdfs_reference(X, y, n_select, keep_candidate_scores: bool = False) -> SelectionTrace:
    """Reference selection: re-score all candidates against all of S each round.

    The first pick maximizes relevance, which the uniform scoring loop already
    yields (empty S gives Pair_Cor = 0, sigma = 0, J = relevance).  Ties on J
    go to the lowest feature index.
    """
    X, y = check_X_y(X, y)
    n_select = _check_n_select(n_select, X.shape[1])
    rel = _relevances(X, y)

    selected: list[int] = []
    iterations: list[dict] = []
    per_round: list[dict] = []
    remaining = list(range(X.shape[1]))

    while len(selected) < n_select:
        best = None
        round_scores: dict[int, dict] = {}
        for f in remaining:
            cors = [pairwise_cor(X[:, f], X[:, s], y) for s in selected]
            pair_cor = sum(cors, 0.0)
            sigma = cor_dispersion(cors)
            phi = dispersion_coefficient(pair_cor, sigma)
            score = float(dispersion_adjusted_score(rel[f], pair_cor, sigma))
            record = {
                "feature": f,
                "score": score,
                "relevance": float(rel[f]),
                "pair_cor": pair_cor,
                "sigma": sigma,
                "phi": phi,
            }
            if keep_candidate_scores:
                round_scores[f] = record
            if best is None or score > best["score"]:
                best = record
        selected.append(best["feature"])
        remaining.remove(best["feature"])
        iterations.append(best)
        if keep_candidate_scores:
            per_round.append(round_scores)

    return SelectionTrace(
        method="rcdfs",
        selected=selected,
        iterations=iterations,
        requested=n_select,
        params={"algorithm": "reference"},
        candidate_scores=per_round if keep_candidate_scores else None,
    )


def rcdfs_fast(X, y, n_select, keep_candidate_scores: bool = False) -> SelectionTrace:
    """Fast selection via per-candidate accumulators.

    For each remaining candidate the running sum Q of cor terms and running
    sum P of squared cor terms are updated with the single new term against
    the latest pick; sigma is recovered as sqrt((P - Q^2/|S|)/|S|), clamped
    at zero before the square root.  cor terms are accumulated in selection
    order, matching the reference algorithm's summation order exactly.
    """
    X, y = check_X_y(X, y)
    n_select = _check_n_select(n_select, X.shape[1])
    rel = _relevances(X, y)

    first = int(np.argmax(rel))
    selected = [first]
    iterations = [
        {
            "feature": first,
            "score": float(rel[first]),
            "relevance": float(rel[first]),
            "pair_cor": 0.0,
            "sigma": 0.0,
            "phi": 1.0,
        }
    ]
    per_round: list[dict] = [{first: dict(iterations[0])}] if keep_candidate_scores else []

    n_features = X.shape[1]
    remaining = [f for f in range(n_features) if f != first]
    sum_cor = np.zeros(n_features)
    sum_cor_sq = np.zeros(n_features)

    while len(selected) < n_select:
        newest = selected[-1]
        k = len(selected)
        best = None
        round_scores: dict[int, dict] = {}
        for f in remaining:
            cor = pairwise_cor(X[:, f], X[:, newest], y)
            sum_cor[f] += cor
            sum_cor_sq[f] += cor * cor
            pair_cor = float(sum_cor[f])
            sigma = math.sqrt(max(0.0, (sum_cor_sq[f] - pair_cor * pair_cor / k) / k))
            phi = dispersion_coefficient(pair_cor, sigma)
            score = float(dispersion_adjusted_score(rel[f], pair_cor, sigma))
            record = {
                "feature": f,
                "score": score,
                "relevance": float(rel[f]),
                "pair_cor": pair_cor,
                "sigma": sigma,
                "phi": phi,
            }
            if keep_candidate_scores:
                round_scores[f] = record
            if best is None or score > best["score"]:
                best = record
        selected.append(best["feature"])
        remaining.remove(best["feature"])
        iterations.append(best)
        if keep_candidate_scores:
            per_round.append(round_scores)

    return SelectionTrace(
        method="rcdfs",
        selected=selected,
        iterations=iterations,
        requested=n_select,
        params={"algorithm": "fast"},
        candidate_scores=per_round if keep_candidate_scores else None,
    )


class _BaseSelector(BaseEstimator, TransformerMixin):
    """Shared fit/transform/get_support plumbing for the selector estimators."""

    def _fit_trace(self, X, y) -> SelectionTrace:  # pragma: no cover - abstract
        raise NotImplementedError

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        self.trace_ = self._fit_trace(X, y)
        self.selected_ = list(self.trace_.selected)
        self.n_features_in_ = X.shape[1]
        return self

    def _check_fitted(self):
        if not hasattr(self, "selected_"):
            raise RuntimeError(f"{type(self).__name__} is not fitted")

    def get_support(self, indices: bool = False):
        self._check_fitted()
        if indices:
            return np.array(self.selected_, dtype=np.intp)
        mask = np.zeros(self.n_features_in_, dtype=bool)
        mask[self.selected_] = True
        return mask

    def transform(self, X):
        self._check_fitted()
        X = np.asarray(X)
        if X.ndim != 2 or X.shape[1] != self.n_features_in_:
            raise ValueError(f"X must have {self.n_features_in_} columns")
        return X[:, self.selected_]


class RCDFS(_BaseSelector):
    """Dispersion-adjusted redundancy/complementariness feature selector.

    Parameters
    ----------
    n_features_to_select : int, default 10
    algorithm : {"fast", "reference"}, default "fast"
        Both give identical selection orders; "fast" costs O(delta * |F|)
        information computations instead of O(delta^2 * |F|).
    """

    def __init__(self, n_features_to_select: int = 10, algorithm: str = "fast"):
        self.n_features_to_select = n_features_to_select
        self.algorithm = algorithm

    def _fit_trace(self, X, y) -> SelectionTrace:
        if self.algorithm == "fast":
            return rcdfs_fast(X, y, self.n_features_to_select)
        if self.algorithm == "reference":
            return rcdfs_reference(X, y, self.n_features_to_select)
        raise ValueError(f"unknown algorithm {self.algorithm!r}")
