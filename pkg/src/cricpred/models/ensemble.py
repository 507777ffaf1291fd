"""Random forest and gradient-boosted trees on the shared tree builder."""

from __future__ import annotations

import math

import numpy as np

from .tree import (
    fit_classification_tree,
    fit_regression_tree,
    tree_predict_matrix,
)


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def train_random_forest(X, y, hp, seed):
    n, d = X.shape
    n_trees = hp["n_trees"]
    min_leaf = hp["min_leaf"]
    max_depth = hp["max_depth"]
    max_features = min(d, math.ceil(math.sqrt(d)))
    trees = []
    for t in range(n_trees):
        rng = np.random.default_rng([seed, t])
        if hp["bootstrap"]:
            sample = rng.integers(0, n, size=n)
        else:
            sample = np.arange(n)
        trees.append(fit_classification_tree(
            X[sample], y[sample], min_leaf=min_leaf, max_depth=max_depth,
            rng=rng, max_features=max_features))
    return {"trees": trees}


def predict_random_forest(params, X):
    X = np.asarray(X, dtype=np.float64)
    votes = np.zeros(X.shape[0])
    for tree in params["trees"]:
        votes += tree_predict_matrix(tree, X)
    return votes / len(params["trees"])


def train_gradient_boosting(X, y, hp, seed):
    n_rounds = hp["n_rounds"]
    shrinkage = hp["shrinkage"]
    max_depth = hp["max_depth"]
    base_rate = float(np.clip(y.mean(), 1e-12, 1 - 1e-12))
    f0 = math.log(base_rate / (1.0 - base_rate))
    f = np.full(X.shape[0], f0)
    trees = []
    for _ in range(n_rounds):
        p = _sigmoid(f)
        grad = y - p          # negative gradient of logistic loss
        hess = p * (1.0 - p)
        tree = fit_regression_tree(X, grad, hess, max_depth=max_depth)
        f = f + shrinkage * tree_predict_matrix(tree, X)
        trees.append(tree)
    return {"base_score": f0, "shrinkage": shrinkage, "trees": trees}


def predict_gradient_boosting(params, X):
    X = np.asarray(X, dtype=np.float64)
    f = np.full(X.shape[0], params["base_score"])
    for tree in params["trees"]:
        f = f + params["shrinkage"] * tree_predict_matrix(tree, X)
    return _sigmoid(f)
