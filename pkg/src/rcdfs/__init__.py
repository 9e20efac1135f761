"""Feature selection with dispersion-adjusted pairwise redundancy.

The selection criterion scores a candidate feature by its relevance to the
class minus its accumulated pairwise interaction with the already-selected
features, scaled by a coefficient that grows with the dispersion of those
interaction values.  Alongside it: the discrete information-theory substrate,
five baseline selectors, MDL discretization, and a cross-validated benchmark
harness with rank-based significance tests.
"""

__version__ = "0.1.0"

from .baselines import (
    CMIM,
    FCBF,
    MIM,
    MRMR,
    ReliefF,
    cmim_select,
    fcbf_select,
    mim_rank,
    mrmr_select,
    relieff_rank,
)
from .classifiers import DiscreteNaiveBayes, OneNearestNeighbor, nearest_neighbor_predict
from .datasets import (
    Column,
    Prepared,
    RawDataset,
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
from .discretize import DiscretizationModel, MDLPDiscretizer, apply_cuts, fit_cuts
from .harness import (
    CLASSIFIER_NAMES,
    BenchmarkReport,
    CurveResult,
    FoldPlan,
    MethodConfig,
    compare,
    curve,
    register_method,
    run_method,
)
from .info import (
    conditional_mutual_information,
    entropy,
    entropy_from_counts,
    joint_counts,
    mutual_information,
    symmetrical_uncertainty,
)
from .selection import (
    RCDFS,
    SelectionTrace,
    cor_dispersion,
    dispersion_adjusted_score,
    dispersion_coefficient,
    pairwise_cor,
    rcdfs_fast,
    rcdfs_reference,
)
from .stats import TestResult, friedman_test, wilcoxon_rank_sum

__all__ = [
    "__version__",
    "entropy",
    "entropy_from_counts",
    "joint_counts",
    "mutual_information",
    "conditional_mutual_information",
    "symmetrical_uncertainty",
    "fit_cuts",
    "apply_cuts",
    "DiscretizationModel",
    "MDLPDiscretizer",
    "pairwise_cor",
    "cor_dispersion",
    "dispersion_coefficient",
    "dispersion_adjusted_score",
    "rcdfs_reference",
    "rcdfs_fast",
    "SelectionTrace",
    "RCDFS",
    "mim_rank",
    "mrmr_select",
    "cmim_select",
    "fcbf_select",
    "relieff_rank",
    "MIM",
    "MRMR",
    "CMIM",
    "FCBF",
    "ReliefF",
    "DiscreteNaiveBayes",
    "OneNearestNeighbor",
    "nearest_neighbor_predict",
    "wilcoxon_rank_sum",
    "friedman_test",
    "TestResult",
    "MethodConfig",
    "CLASSIFIER_NAMES",
    "FoldPlan",
    "CurveResult",
    "BenchmarkReport",
    "curve",
    "compare",
    "register_method",
    "run_method",
    "Column",
    "RawDataset",
    "Prepared",
    "load_csv",
    "load_arff",
    "save_csv",
    "save_arff",
    "reassign_class",
    "prepare",
    "synth_xor",
    "synth_duplicate",
    "synth_planted",
]
