import numpy as np
import pytest

from conftest import random_table, validate_artifact
from rcdfs import (
    CLASSIFIER_NAMES,
    DiscreteNaiveBayes,
    FoldPlan,
    MethodConfig,
    compare,
    curve,
    nearest_neighbor_predict,
    prepare,
    register_method,
    run_method,
    synth_planted,
    synth_xor,
)
from rcdfs.harness import _RUNNERS, _method_fold_errors, _prefix_errors


def xor_data():
    prep = prepare(synth_xor())
    return prep.X, prep.y, prep.arities


@pytest.fixture(scope="module")
def xor_report():
    # knn1 only: naive Bayes is blind to pure parity structure, the nearest
    # neighbor classifier is what separates the selectors here
    prep = prepare(synth_xor())
    plan = FoldPlan(prep.X.shape[0], prep.y, n_folds=5, n_repeats=5, seed=0)
    return compare(
        prep.X,
        prep.y,
        [MethodConfig("rcdfs"), MethodConfig("mim")],
        plan=plan,
        k_max=6,
        classifiers=["knn1"],
        arities=prep.arities,
    )


def planted_data():
    prep = prepare(synth_planted())
    return prep.X, prep.y, prep.arities


class TestMethodConfig:
    def test_round_trip(self):
        cfg = MethodConfig("rcdfs", n_features=5, seed=3)
        assert MethodConfig(**cfg.to_dict()) == cfg

    def test_invalid_values_rejected(self):
        with pytest.raises(ValueError):
            MethodConfig("rcdfs", n_features=0)
        with pytest.raises(ValueError):
            MethodConfig("fcbf", fcbf_threshold=-0.1)
        with pytest.raises(ValueError):
            MethodConfig("relieff", relieff_neighbors=0)

    def test_unknown_method_rejected_at_run(self):
        X, y, _ = xor_data()
        with pytest.raises(ValueError, match="unknown method"):
            run_method(MethodConfig("nope"), X, y, default_n=2)

    def test_missing_n_features_rejected(self):
        X, y, _ = xor_data()
        with pytest.raises(ValueError, match="n_features"):
            run_method(MethodConfig("mim"), X, y)


class TestFoldPlan:
    def test_each_row_tested_once_per_repeat(self):
        plan = FoldPlan(23, n_folds=4, n_repeats=3, seed=1)
        for r in range(3):
            seen = np.concatenate([test for _, test in plan.folds(r)])
            assert sorted(seen.tolist()) == list(range(23))

    def test_train_test_partition_rows(self):
        plan = FoldPlan(17, n_folds=5, seed=2)
        for train, test in plan.folds(0):
            assert np.intersect1d(train, test).size == 0
            assert len(train) + len(test) == 17
            assert np.all(np.diff(train) > 0) and np.all(np.diff(test) > 0)

    def test_fold_sizes_within_one(self):
        plan = FoldPlan(23, n_folds=4, seed=0)
        sizes = [len(test) for _, test in plan.folds(0)]
        assert max(sizes) - min(sizes) <= 1

    def test_stratified_class_counts_within_one(self):
        y = np.array([0] * 30 + [1] * 12)
        plan = FoldPlan(42, y=y, n_folds=6, seed=0)
        for _, test in plan.folds(0):
            counts = np.bincount(y[test], minlength=2)
            assert counts[0] == 5
            assert counts[1] == 2

    def test_seed_determinism(self):
        a = FoldPlan(40, n_folds=5, n_repeats=2, seed=7)
        b = FoldPlan(40, n_folds=5, n_repeats=2, seed=7)
        c = FoldPlan(40, n_folds=5, n_repeats=2, seed=8)
        assert np.array_equal(a.assignments, b.assignments)
        assert not np.array_equal(a.assignments, c.assignments)

    def test_repeats_reshuffle(self):
        plan = FoldPlan(60, n_folds=5, n_repeats=2, seed=0)
        assert not np.array_equal(plan.assignments[0], plan.assignments[1])

    def test_validation(self):
        with pytest.raises(ValueError):
            FoldPlan(10, n_folds=1)
        with pytest.raises(ValueError):
            FoldPlan(5, n_folds=6)
        with pytest.raises(ValueError):
            FoldPlan(10, n_repeats=0)
        with pytest.raises(ValueError):
            FoldPlan(10, y=np.zeros(9), n_folds=2)

    def test_to_dict(self):
        plan = FoldPlan(30, y=np.arange(30) % 2, n_folds=3, n_repeats=2, seed=5)
        assert plan.to_dict() == {
            "n_rows": 30,
            "n_folds": 3,
            "n_repeats": 2,
            "seed": 5,
            "stratified": True,
        }


class TestPrefixErrors:
    def test_matches_direct_classifier_runs(self, rng):
        # the cumulative prefix evaluation must agree with refitting each
        # classifier on the prefix feature set from scratch
        for _ in range(5):
            X, y = random_table(rng, n_features=5, rows=(40, 80))
            arities = X.max(axis=0) + 1
            split = X.shape[0] // 2
            X_tr, y_tr, X_te, y_te = X[:split], y[:split], X[split:], y[split:]
            order = list(rng.permutation(5))
            got = _prefix_errors(X_tr, y_tr, X_te, y_te, order, list(CLASSIFIER_NAMES), arities)
            for ell in range(1, 6):
                sub = order[:ell]
                nbc = DiscreteNaiveBayes(n_categories=arities[sub]).fit(X_tr[:, sub], y_tr)
                nbc_err = float(np.mean(nbc.predict(X_te[:, sub]) != y_te))
                knn_pred = nearest_neighbor_predict(X_tr[:, sub], y_tr, X_te[:, sub])
                knn_err = float(np.mean(knn_pred != y_te))
                assert got[ell - 1, 0] == pytest.approx(nbc_err, abs=1e-12)
                assert got[ell - 1, 1] == pytest.approx(knn_err, abs=1e-12)

    def test_unknown_classifier_rejected(self, rng):
        X, y = random_table(rng, n_features=3)
        with pytest.raises(ValueError, match="unknown classifier"):
            _prefix_errors(X, y, X, y, [0], ["svm"], X.max(axis=0) + 1)


class TestFoldErrors:
    def test_padding_beyond_native_size(self):
        X, y, arities = xor_data()
        plan = FoldPlan(X.shape[0], y, n_folds=4, n_repeats=1, seed=0)
        cfg = MethodConfig("fcbf")
        errs, native = _method_fold_errors(X, y, cfg, plan, [1, 2, 3, 8, 9], list(CLASSIFIER_NAMES), arities)
        assert native.max() < 9
        # columns past the native size repeat the native-size error
        for fi in range(4):
            assert np.array_equal(errs[0, fi, 3], errs[0, fi, 4])

    def test_empty_selection_raises(self):
        X, y, arities = xor_data()
        plan = FoldPlan(X.shape[0], y, n_folds=4, n_repeats=1, seed=0)
        cfg = MethodConfig("fcbf", fcbf_threshold=1.5)  # SU never exceeds 1
        with pytest.raises(ValueError, match="selected no features"):
            _method_fold_errors(X, y, cfg, plan, [1], list(CLASSIFIER_NAMES), arities)

    def test_selector_sees_only_training_rows(self):
        X, y, arities = xor_data()
        plan = FoldPlan(X.shape[0], y, n_folds=4, n_repeats=1, seed=0)
        sizes = []

        def spy(Xs, ys, config, default_n):
            sizes.append(Xs.shape[0])
            return run_method(MethodConfig("mim", n_features=2), Xs, ys)

        register_method("spy", spy)
        try:
            _method_fold_errors(X, y, MethodConfig("spy"), plan, [1, 2], list(CLASSIFIER_NAMES), arities)
        finally:
            del _RUNNERS["spy"]
        assert len(sizes) == 4
        assert all(s < X.shape[0] for s in sizes)
        assert sum(X.shape[0] - s for s in sizes) == X.shape[0]


class TestCurve:
    def test_full_feature_curve_matches_direct_cv(self):
        # at k = |F| the prefix machinery reduces to plain cross-validation
        # with every feature, which we can compute directly
        X, y, arities = planted_data()
        X, y, arities = X[:120, :6], y[:120], arities[:6]
        plan = FoldPlan(120, y, n_folds=5, n_repeats=1, seed=0)
        res = curve(X, y, MethodConfig("mim"), m=6, plan=plan, classifiers=["nbc"], arities=arities)
        direct = []
        for train, test in plan.folds(0):
            clf = DiscreteNaiveBayes(n_categories=arities).fit(X[train], y[train])
            direct.append(float(np.mean(clf.predict(X[test]) != y[test])))
        assert res.mean_error[-1] == pytest.approx(np.mean(direct), abs=1e-12)

    def test_planted_curve_improves_through_the_signal(self):
        X, y, arities = planted_data()
        plan = FoldPlan(X.shape[0], y, n_folds=5, n_repeats=1, seed=0)
        res = curve(X, y, MethodConfig("rcdfs"), m=5, plan=plan, arities=arities)
        assert res.mean_error[2] < res.mean_error[0]

    def test_default_m_is_half_the_features(self):
        X, y, arities = xor_data()
        plan = FoldPlan(X.shape[0], y, n_folds=4, n_repeats=1, seed=0)
        res = curve(X, y, MethodConfig("mim"), plan=plan, arities=arities)
        assert res.ks == list(range(1, 6))
        assert not res.truncated

    def test_fcbf_truncates_at_native_size(self):
        X, y, arities = xor_data()
        plan = FoldPlan(X.shape[0], y, n_folds=4, n_repeats=1, seed=0)
        res = curve(X, y, MethodConfig("fcbf"), m=5, plan=plan, arities=arities)
        assert res.truncated
        assert res.ks == list(range(1, min(res.native_sizes) + 1))
        assert len(res.mean_error) == len(res.ks)

    def test_mean_error_averages_per_classifier(self):
        X, y, arities = xor_data()
        plan = FoldPlan(X.shape[0], y, n_folds=4, n_repeats=1, seed=0)
        res = curve(X, y, MethodConfig("rcdfs"), m=3, plan=plan, arities=arities)
        for ki in range(3):
            both = [res.per_classifier[name][ki] for name in res.classifiers]
            assert res.mean_error[ki] == pytest.approx(np.mean(both), abs=1e-12)

    def test_artifact_schema_and_reproducibility(self):
        X, y, arities = xor_data()
        plan = FoldPlan(X.shape[0], y, n_folds=4, n_repeats=1, seed=0)
        res = curve(X, y, MethodConfig("rcdfs"), m=3, plan=plan, arities=arities)
        validate_artifact(res.to_dict(), "error_curve")
        res2 = curve(X, y, MethodConfig("rcdfs"), m=3, plan=plan, arities=arities)
        assert res.to_json() == res2.to_json()

    def test_m_out_of_range_rejected(self):
        X, y, arities = xor_data()
        with pytest.raises(ValueError, match="m must be"):
            curve(X, y, MethodConfig("mim"), m=11, arities=arities)


class TestCompare:
    def test_reference_defaults_to_rcdfs(self, xor_report):
        assert xor_report.reference == "rcdfs"

    def test_best_k_consistent_with_curve(self, xor_report):
        for row in xor_report.methods:
            curve_vals = row["errors_by_k"]
            assert row["mean_error"] == curve_vals[row["best_k"] - 1]
            assert row["mean_error"] == min(curve_vals)
            # ties resolve to the smallest k
            first = next(i for i, v in enumerate(curve_vals) if v == row["mean_error"])
            assert row["best_k"] == first + 1

    def test_mim_marked_worse_on_parity_data(self, xor_report):
        rows = {r["method"]: r for r in xor_report.methods}
        assert rows["rcdfs"]["mean_error"] < 0.05
        assert rows["mim"]["marker"] == "worse"
        assert rows["rcdfs"]["marker"] == ""
        assert rows["rcdfs"]["wilcoxon_p"] == 1.0  # reference against itself

    def test_sample_counts_by_mode(self, xor_report):
        assert all(len(r["samples"]) == 5 for r in xor_report.methods)

    def test_friedman_rows_cover_k_ranges(self, xor_report):
        assert [r["k_range"] for r in xor_report.friedman] == [5]
        for r in xor_report.friedman:
            assert r["significant"] == (r["p_value"] < xor_report.alpha)

    def test_artifact_schema(self, xor_report):
        validate_artifact(xor_report.to_dict(), "benchmark_report")

    def test_text_table_mentions_methods_and_marker(self, xor_report):
        text = xor_report.to_text()
        assert "rcdfs" in text and "mim" in text
        assert "∘" in text
        assert "k-range" in text

    def test_fold_sample_mode(self):
        X, y, arities = xor_data()
        plan = FoldPlan(X.shape[0], y, n_folds=4, n_repeats=2, seed=0)
        report = compare(
            X, y,
            [MethodConfig("rcdfs"), MethodConfig("mim")],
            plan=plan, k_max=3, sample_mode="fold", arities=arities,
        )
        assert all(len(r["samples"]) == 8 for r in report.methods)

    def test_single_repeat_skips_friedman(self):
        X, y, arities = xor_data()
        plan = FoldPlan(X.shape[0], y, n_folds=4, n_repeats=1, seed=0)
        report = compare(
            X, y,
            [MethodConfig("rcdfs"), MethodConfig("mim")],
            plan=plan, k_max=5, arities=arities,
        )
        assert report.friedman == []

    def test_reproducible_json(self):
        X, y, arities = xor_data()
        plan = FoldPlan(X.shape[0], y, n_folds=4, n_repeats=2, seed=0)
        args = ([MethodConfig("rcdfs"), MethodConfig("cmim")],)
        kwargs = dict(plan=plan, k_max=3, arities=arities)
        a = compare(X, y, *args, **kwargs).to_json()
        b = compare(X, y, *args, **kwargs).to_json()
        assert a == b

    def test_validation(self):
        X, y, arities = xor_data()
        with pytest.raises(ValueError, match="at least two"):
            compare(X, y, [MethodConfig("rcdfs")], arities=arities)
        with pytest.raises(ValueError, match="unique"):
            compare(X, y, [MethodConfig("mim"), MethodConfig("mim")], arities=arities)
        with pytest.raises(ValueError, match="sample_mode"):
            compare(
                X, y,
                [MethodConfig("rcdfs"), MethodConfig("mim")],
                sample_mode="row", arities=arities,
            )
        with pytest.raises(ValueError, match="reference"):
            compare(
                X, y,
                [MethodConfig("rcdfs"), MethodConfig("mim")],
                reference="cmim", arities=arities,
            )
