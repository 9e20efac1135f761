"""Significance tests used by the benchmark harness.

The Wilcoxon rank-sum test returns the exact two-sided p-value (by dynamic
programming over the null rank-sum distribution) for small tie-free samples
and a tie-corrected normal approximation with continuity correction
otherwise.  The Friedman test uses midranks within each block and the
classic chi-square statistic without a tie correction term.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy.stats import chi2, rankdata

__all__ = ["TestResult", "wilcoxon_rank_sum", "friedman_test"]

_EXACT_LIMIT = 20


class TestResult(NamedTuple):
    statistic: float
    p_value: float


def _rank_sum_tail_counts(n_total: int, n_a: int) -> np.ndarray:
    """Null distribution counts of the rank sum of n_a ranks out of 1..n_total."""
    max_sum = n_total * (n_total + 1) // 2
    ways = np.zeros((n_a + 1, max_sum + 1))
    ways[0, 0] = 1.0
    for r in range(1, n_total + 1):
        for j in range(min(r, n_a), 0, -1):
            ways[j, r:] += ways[j - 1, :-r]
    return ways[n_a]


def wilcoxon_rank_sum(a, b) -> TestResult:
    """Two-sided Wilcoxon rank-sum test.

    Returns the rank sum of the first sample (midranks on ties) and a
    two-sided p-value: exact when the pooled size is at most 20 with no tied
    values, otherwise a normal approximation with tie and continuity
    corrections.  Two identical samples give p = 1.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be non-empty")
    if np.isnan(a).any() or np.isnan(b).any():
        raise ValueError("samples contain NaN")
    n_a, n_b = a.size, b.size
    n = n_a + n_b
    pooled = np.concatenate([a, b])
    ranks = rankdata(pooled)
    w = float(ranks[:n_a].sum())

    _, tie_counts = np.unique(pooled, return_counts=True)
    has_ties = bool((tie_counts > 1).any())

    if n <= _EXACT_LIMIT and not has_ties:
        dist = _rank_sum_tail_counts(n, n_a)
        total = dist.sum()
        wi = int(round(w))
        p_le = dist[: wi + 1].sum() / total
        p_ge = dist[wi:].sum() / total
        p = min(1.0, 2.0 * min(p_le, p_ge))
        return TestResult(w, float(p))

    mean = n_a * (n + 1) / 2.0
    tie_term = float(((tie_counts**3 - tie_counts).sum())) / ((n) * (n - 1))
    var = n_a * n_b / 12.0 * ((n + 1) - tie_term)
    if var <= 0:
        return TestResult(w, 1.0)
    z = (abs(w - mean) - 0.5) / math.sqrt(var)
    if z < 0:
        z = 0.0
    p = min(1.0, math.erfc(z / math.sqrt(2.0)))
    return TestResult(w, float(p))


def friedman_test(errors) -> TestResult:
    """Friedman test across methods (rows) over blocks (columns).

    Within each block the methods are ranked with midranks; the statistic is
    12/(n*k*(k+1)) * sum_j (R_j - n(k+1)/2)^2 on k-1 degrees of freedom,
    with k methods and n blocks.
    """
    m = np.asarray(errors, dtype=float)
    if m.ndim != 2:
        raise ValueError("errors must be a methods x blocks matrix")
    k, n = m.shape
    if k < 2 or n < 2:
        raise ValueError("need at least two methods and two blocks")
    if np.isnan(m).any():
        raise ValueError("errors contain NaN")
    ranks = np.empty_like(m)
    for j in range(n):
        ranks[:, j] = rankdata(m[:, j])
    r = ranks.sum(axis=1)
    stat = 12.0 / (n * k * (k + 1)) * float(((r - n * (k + 1) / 2.0) ** 2).sum())
    p = float(chi2.sf(stat, k - 1))
    return TestResult(float(stat), p)
