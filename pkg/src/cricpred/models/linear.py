"""Logistic regression and linear SVM with Platt-calibrated probabilities."""

from __future__ import annotations

import numpy as np

from ..errors import NonConvergence


def sigmoid(z):
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[np.logical_not(pos)])
    out[np.logical_not(pos)] = ez / (1.0 + ez)
    return out


def _bce_loss(z, y):
    # mean binary cross entropy from logits: softplus(z) - y*z
    return float(np.mean(np.logaddexp(0.0, z) - y * z))


def fit_logistic(X, y, lam=1e-4, lr=0.1, max_iter=2000, tol=1e-8):
    """Full-batch gradient descent on L2-regularized logistic loss.

    The learning rate halves whenever a step would increase the loss; the
    bias is not regularized. Deterministic for a given input.
    """
    n, d = X.shape
    w = np.zeros(d)
    b = 0.0
    z = X @ w + b
    loss = _bce_loss(z, y) + 0.5 * lam * float(w @ w)
    for _ in range(max_iter):
        p = sigmoid(z)
        grad_w = X.T @ (p - y) / n + lam * w
        grad_b = float(np.mean(p - y))
        while True:
            w_new = w - lr * grad_w
            b_new = b - lr * grad_b
            z_new = X @ w_new + b_new
            loss_new = _bce_loss(z_new, y) + 0.5 * lam * float(w_new @ w_new)
            if loss_new <= loss or lr < 1e-14:
                break
            lr *= 0.5
        converged = abs(loss - loss_new) < tol * max(1.0, abs(loss))
        w, b, z, loss = w_new, b_new, z_new, loss_new
        if converged or lr < 1e-14:
            break
    if not np.isfinite(loss):
        raise NonConvergence(f"logistic loss diverged: final loss {loss}")
    return w, b


def train_logistic(X, y, hp, seed):
    w, b = fit_logistic(X, y, lam=hp["l2"], lr=hp["learning_rate"],
                        max_iter=hp["max_iter"], tol=hp["tol"])
    return {"weights": w, "bias": b}


def predict_logistic(params, X):
    X = np.asarray(X, dtype=np.float64)
    return sigmoid(X @ np.asarray(params["weights"]) + params["bias"])


def _fit_platt(scores, y, max_iter=100):
    """Platt scaling: fit p = sigmoid(-(A*s + B)) by Newton's method.

    Uses the standard smoothed targets so the calibrator is well defined
    even on perfectly separated scores.
    """
    n_pos = float(np.sum(y == 1))
    n_neg = float(len(y) - n_pos)
    hi = (n_pos + 1.0) / (n_pos + 2.0)
    lo = 1.0 / (n_neg + 2.0)
    t = np.where(y == 1, hi, lo)
    A, B = 0.0, np.log((n_neg + 1.0) / (n_pos + 1.0))
    for _ in range(max_iter):
        z = A * scores + B
        p = sigmoid(-z)
        # gradient of sum(t*z + log(1+exp(-z)))
        d1 = t - p
        g_a = float(np.sum(d1 * scores))
        g_b = float(np.sum(d1))
        w = p * (1.0 - p)
        h_aa = float(np.sum(w * scores * scores)) + 1e-12
        h_ab = float(np.sum(w * scores))
        h_bb = float(np.sum(w)) + 1e-12
        det = h_aa * h_bb - h_ab * h_ab
        if abs(det) < 1e-18:
            break
        dA = (h_bb * g_a - h_ab * g_b) / det
        dB = (h_aa * g_b - h_ab * g_a) / det
        A -= dA
        B -= dB
        if abs(dA) < 1e-12 and abs(dB) < 1e-12:
            break
    return A, B


def train_linear_svm(X, y, hp, seed):
    """Pegasos-style stochastic subgradient descent on the hinge loss."""
    n, d = X.shape
    lam = hp["l2"]
    epochs = hp["epochs"]
    ypm = np.where(y == 1, 1.0, -1.0)
    rng = np.random.default_rng(seed)
    w = np.zeros(d)
    b = 0.0
    t = 0
    for _ in range(epochs):
        for i in rng.permutation(n):
            t += 1
            eta = 1.0 / (lam * t)
            margin = ypm[i] * (float(X[i] @ w) + b)
            w *= 1.0 - eta * lam
            if margin < 1.0:
                w += eta * ypm[i] * X[i]
                b += eta * ypm[i]
    scores = X @ w + b
    A, B = _fit_platt(scores, y)
    return {"weights": w, "bias": b, "platt_a": A, "platt_b": B}


def predict_linear_svm(params, X):
    X = np.asarray(X, dtype=np.float64)
    scores = X @ np.asarray(params["weights"]) + params["bias"]
    return sigmoid(-(params["platt_a"] * scores + params["platt_b"]))
