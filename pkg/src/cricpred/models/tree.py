"""Binary decision trees built on the split-search kernels.

Trees are represented as nested dicts (JSON-friendly): internal nodes carry
``feature``/``threshold``/``left``/``right``, leaves carry ``value``.
"""

from __future__ import annotations

import numpy as np

from ..kernels import best_split_gini, best_split_sse

_INF = float("inf")


def _best_split(X, idx, criterion_values, min_leaf, features, kernel, maximize):
    """Best (feature, split index, sort order) over the candidate features."""
    best_score = -_INF if maximize else _INF
    best = None
    for f in features:
        col = X[idx, f]
        order = np.argsort(col, kind="stable")
        values = np.ascontiguousarray(col[order])
        crit = np.ascontiguousarray(criterion_values[idx][order])
        i, score = kernel(values, crit, min_leaf)
        if i < 0:
            continue
        if (score > best_score) if maximize else (score < best_score):
            best_score = score
            best = (f, i, order, values)
    return best


def _grow(X, idx, criterion_values, leaf_value, min_leaf, max_depth, depth,
          rng, max_features, kernel, maximize):
    n_features = X.shape[1]
    crit = criterion_values[idx]
    done = ((max_depth is not None and depth >= max_depth)
            or idx.size < 2 * min_leaf
            or bool(np.all(crit == crit[0])))
    if not done:
        if max_features is not None and max_features < n_features:
            chosen = rng.choice(n_features, size=max_features, replace=False)
            features = np.sort(chosen)
        else:
            features = np.arange(n_features)
        split = _best_split(X, idx, criterion_values, min_leaf, features,
                            kernel, maximize)
        done = split is None
    if done:
        return {"value": leaf_value(idx)}
    f, i, order, values = split
    threshold = (values[i - 1] + values[i]) / 2.0
    left_idx = idx[order[:i]]
    right_idx = idx[order[i:]]
    return {
        "feature": int(f),
        "threshold": float(threshold),
        "left": _grow(X, left_idx, criterion_values, leaf_value, min_leaf,
                      max_depth, depth + 1, rng, max_features, kernel, maximize),
        "right": _grow(X, right_idx, criterion_values, leaf_value, min_leaf,
                       max_depth, depth + 1, rng, max_features, kernel, maximize),
    }


def fit_classification_tree(X, y, min_leaf=1, max_depth=None, rng=None,
                            max_features=None):
    """Gini tree; leaves store the class-1 proportion."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    idx = np.arange(X.shape[0])

    def leaf_value(node_idx):
        return float(y[node_idx].mean())

    return _grow(X, idx, y, leaf_value, min_leaf, max_depth, 0, rng,
                 max_features, best_split_gini, maximize=False)


def fit_regression_tree(X, grad, hess, min_leaf=1, max_depth=3):
    """Variance-reduction tree on gradients; leaves store the Newton step
    ``sum(grad) / sum(hess)`` for boosted logistic loss."""
    X = np.asarray(X, dtype=np.float64)
    grad = np.asarray(grad, dtype=np.float64)
    hess = np.asarray(hess, dtype=np.float64)
    idx = np.arange(X.shape[0])

    def leaf_value(node_idx):
        denom = float(hess[node_idx].sum())
        return float(grad[node_idx].sum()) / (denom + 1e-12)

    return _grow(X, idx, grad, leaf_value, min_leaf, max_depth, 0, None,
                 None, best_split_sse, maximize=True)


def tree_predict(node, row):
    while "value" not in node:
        node = node["left"] if row[node["feature"]] < node["threshold"] else node["right"]
    return node["value"]


def tree_predict_matrix(node, X):
    return np.array([tree_predict(node, row) for row in X], dtype=np.float64)
