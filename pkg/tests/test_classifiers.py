import math
from collections import Counter

import numpy as np
import pytest

from rcdfs import DiscreteNaiveBayes, OneNearestNeighbor, nearest_neighbor_predict

from conftest import random_table


def nbc_log_posterior_oracle(train_X, train_y, row, klass, arities):
    """Plain-loop add-one smoothed log posterior (up to the shared evidence)."""
    n = len(train_y)
    n_c = sum(1 for v in train_y if v == klass)
    total = math.log(n_c / n)
    for j, code in enumerate(row):
        matches = sum(
            1 for i in range(n) if train_y[i] == klass and train_X[i][j] == code
        )
        total += math.log((matches + 1) / (n_c + arities[j]))
    return total


class TestDiscreteNaiveBayes:
    def test_matches_hand_posterior_on_random_tables(self, rng):
        for _ in range(5):
            X, y = random_table(rng, n_features=3, rows=(20, 60))
            arities = [int(X[:, j].max()) + 1 for j in range(3)]
            model = DiscreteNaiveBayes().fit(X, y)
            test_X, _ = random_table(rng, n_features=3, rows=(10, 15), codes=(2, 2))
            preds = model.predict(test_X)
            for i, row in enumerate(test_X):
                scores = {
                    int(c): nbc_log_posterior_oracle(X, y, row, int(c), arities)
                    for c in model.classes_
                }
                best = min(scores, key=lambda c: (-scores[c], c))
                assert preds[i] == best

    def test_priors_dominate_uninformative_features(self):
        # 3:1 priors, feature carries nothing: posterior reduces to the prior
        X = np.zeros((8, 1), dtype=int)
        y = np.array([0, 0, 0, 0, 0, 0, 1, 1])
        model = DiscreteNaiveBayes().fit(X, y)
        assert model.predict(np.zeros((4, 1), dtype=int)).tolist() == [0, 0, 0, 0]

    def test_single_class_training(self):
        X = np.array([[0], [1], [2]])
        y = np.array([3, 3, 3])
        model = DiscreteNaiveBayes().fit(X, y)
        assert model.predict([[5]]).tolist() == [3]

    def test_posterior_tie_breaks_to_lowest_class(self):
        X = np.array([[0], [1], [0], [1]])
        y = np.array([0, 0, 1, 1])
        model = DiscreteNaiveBayes().fit(X, y)
        # both classes see the same feature distribution and equal priors
        assert model.predict([[0], [1]]).tolist() == [0, 0]

    def test_perfect_feature_recovers_label(self):
        X = np.array([[0, 1], [1, 0], [0, 0], [1, 1]] * 5)
        y = X[:, 0]
        model = DiscreteNaiveBayes().fit(X, y)
        assert np.array_equal(model.predict(X), y)

    def test_unseen_code_gets_smoothing_floor(self):
        X = np.array([[0], [0], [1], [1]])
        y = np.array([0, 0, 1, 1])
        model = DiscreteNaiveBayes(n_categories=[2]).fit(X, y)
        # code 7 is outside the arity: likelihood floor 1/(n_c + arity) for
        # both classes, so the prediction falls back to the prior tie rule
        assert model.predict([[7]]).tolist() == [0]

    def test_declared_arities_too_small_rejected(self):
        with pytest.raises(ValueError):
            DiscreteNaiveBayes(n_categories=[2]).fit(np.array([[3], [0]]), [0, 1])

    def test_predict_before_fit_rejected(self):
        with pytest.raises(RuntimeError):
            DiscreteNaiveBayes().predict([[0]])


class TestNearestNeighbor:
    def test_exact_match_wins(self, rng):
        X, y = random_table(rng, n_features=4, rows=(20, 40))
        # ensure the queried row is unique so the match is unambiguous
        row = X[0]
        unique = not any(np.array_equal(row, r) for r in X[1:])
        if unique:
            assert nearest_neighbor_predict(X, y, row[None, :])[0] == y[0]

    def test_single_training_row(self):
        pred = nearest_neighbor_predict([[0, 0]], [7], [[5, 9]])
        assert pred.tolist() == [7]

    def test_distance_tie_takes_lower_row_index(self):
        train_X = np.array([[0, 0], [1, 1]])
        train_y = np.array([5, 6])
        # query [0, 1] is at Hamming distance 1 from both rows
        assert nearest_neighbor_predict(train_X, train_y, [[0, 1]]).tolist() == [5]

    def test_matches_plain_loop_oracle(self, rng):
        X, y = random_table(rng, n_features=3, rows=(30, 60), codes=(2, 3))
        test_X, _ = random_table(rng, n_features=3, rows=(10, 20), codes=(2, 3))
        preds = nearest_neighbor_predict(X, y, test_X)
        for i, row in enumerate(test_X):
            ranked = sorted(
                range(X.shape[0]),
                key=lambda r: (int(np.sum(X[r] != row)), r),
            )
            assert preds[i] == y[ranked[0]]

    def test_feature_count_mismatch_rejected(self):
        with pytest.raises(ValueError):
            nearest_neighbor_predict([[0, 1]], [0], [[0]])


class TestEstimatorWrappers:
    def test_both_classifiers_nail_a_copied_class_feature(self, rng):
        X, y = random_table(rng, n_features=3)
        X[:, 0] = y
        assert np.array_equal(DiscreteNaiveBayes().fit(X, y).predict(X), y)
        assert np.array_equal(OneNearestNeighbor().fit(X, y).predict(X), y)

    def test_knn_predict_before_fit_rejected(self):
        with pytest.raises(RuntimeError):
            OneNearestNeighbor().predict([[0]])
