"""Evaluation classifiers for discrete feature codes.

Both classifiers are deliberately plain: a multinomial naive Bayes with
Laplace add-one smoothing and a single nearest neighbor under Hamming
distance.  Prediction ties break toward the lowest class code, and distance
ties toward the lowest training row index, so repeated runs are identical.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from .validation import as_code_matrix, check_X_y

__all__ = ["DiscreteNaiveBayes", "OneNearestNeighbor", "nearest_neighbor_predict"]


class DiscreteNaiveBayes(BaseEstimator, ClassifierMixin):
    """Multinomial naive Bayes over integer codes with add-one smoothing.

    Parameters
    ----------
    n_categories : array-like of int or None
        Arity per feature.  When None, inferred from the training data; test
        codes beyond the inferred arity fall back to the smoothing floor.
    """

    def __init__(self, n_categories=None):
        self.n_categories = n_categories

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        self.classes_, counts = np.unique(y, return_counts=True)
        self.class_count_ = counts
        self.class_log_prior_ = np.log(counts / y.shape[0])
        if self.n_categories is None:
            arities = X.max(axis=0) + 1
        else:
            arities = np.asarray(self.n_categories, dtype=np.intp)
            if arities.shape != (X.shape[1],):
                raise ValueError("n_categories must give one arity per feature")
            if (X.max(axis=0) >= arities).any():
                raise ValueError("training codes exceed the stated arities")
        self.arities_ = arities
        self.feature_log_prob_ = []
        for j in range(X.shape[1]):
            table = np.empty((self.classes_.size, arities[j]))
            for ci, c in enumerate(self.classes_):
                cc = np.bincount(X[y == c, j], minlength=arities[j])
                table[ci] = np.log((cc + 1) / (counts[ci] + arities[j]))
            self.feature_log_prob_.append(table)
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        if not hasattr(self, "classes_"):
            raise RuntimeError("DiscreteNaiveBayes is not fitted")
        X = as_code_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X must have {self.n_features_in_} columns")
        log_post = np.tile(self.class_log_prior_, (X.shape[0], 1))
        for j, table in enumerate(self.feature_log_prob_):
            codes = X[:, j]
            arity = self.arities_[j]
            # unseen codes get the smoothing floor 1 / (class count + arity)
            floor = -np.log(self.class_count_ + arity)
            safe = np.minimum(codes, arity - 1)
            contrib = table[:, safe].T
            unseen = codes >= arity
            if unseen.any():
                contrib = np.where(unseen[:, None], floor[None, :], contrib)
            log_post += contrib
        return self.classes_[np.argmax(log_post, axis=1)]


def nearest_neighbor_predict(train_X, train_y, X) -> np.ndarray:
    """Predict by the single nearest training row under Hamming distance."""
    train_X, train_y = check_X_y(train_X, train_y)
    X = as_code_matrix(X)
    if X.shape[1] != train_X.shape[1]:
        raise ValueError("test rows disagree with training rows on feature count")
    out = np.empty(X.shape[0], dtype=train_y.dtype)
    for i in range(X.shape[0]):
        dist = (train_X != X[i]).sum(axis=1)
        out[i] = train_y[int(np.argmin(dist))]
    return out


class OneNearestNeighbor(BaseEstimator, ClassifierMixin):
    """Single nearest neighbor over integer codes with Hamming distance."""

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        self.train_X_ = X
        self.train_y_ = y
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        if not hasattr(self, "train_X_"):
            raise RuntimeError("OneNearestNeighbor is not fitted")
        return nearest_neighbor_predict(self.train_X_, self.train_y_, X)
