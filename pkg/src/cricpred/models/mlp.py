"""Three-hidden-layer perceptron (10-10-10, ReLU, sigmoid output) trained
with Adam on L2-regularized binary cross entropy."""

from __future__ import annotations

import numpy as np

from ..errors import NonConvergence
from .linear import sigmoid

HIDDEN_UNITS = (10, 10, 10)
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


def init_params(n_inputs, seed):
    """He-scaled Gaussian weights, zero biases, from a seeded generator."""
    rng = np.random.default_rng(seed)
    sizes = [n_inputs, *HIDDEN_UNITS, 1]
    params = []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        W = rng.standard_normal((fan_in, fan_out)) * np.sqrt(2.0 / fan_in)
        params.append([W, np.zeros(fan_out)])
    return params


def _forward(params, X):
    activations = [X]
    z = None
    for i, (W, b) in enumerate(params):
        z = activations[-1] @ W + b
        if i < len(params) - 1:
            activations.append(np.maximum(z, 0.0))
    return activations, z  # z is the final logit column


def mlp_loss_and_gradient(params, X, y, lam):
    """Mean binary cross entropy plus (lam/2)*sum of squared weights.

    Biases are excluded from the penalty. Returns the loss and gradients in
    the same nested structure as ``params``. Pure function.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64).reshape(-1, 1)
    n = X.shape[0]
    activations, logits = _forward(params, X)
    loss = float(np.mean(np.logaddexp(0.0, logits) - y * logits))
    loss += 0.5 * lam * sum(float(np.sum(W * W)) for W, _ in params)
    grads = [None] * len(params)
    delta = (sigmoid(logits) - y) / n
    for i in range(len(params) - 1, -1, -1):
        W, _ = params[i]
        grads[i] = [activations[i].T @ delta + lam * W, delta.sum(axis=0)]
        if i > 0:
            delta = (delta @ W.T) * (activations[i] > 0.0)
    return loss, grads


def _full_loss(params, X, y, lam):
    logits = _forward(params, X)[1]
    y = y.reshape(-1, 1)
    loss = float(np.mean(np.logaddexp(0.0, logits) - y * logits))
    return loss + 0.5 * lam * sum(float(np.sum(W * W)) for W, _ in params)


def train_mlp(X, y, hp, seed):
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    lam = hp["l2"]
    lr = hp["learning_rate"]
    epochs = hp["epochs"]
    batch_size = hp["batch_size"]
    patience = hp["patience"]

    params = init_params(X.shape[1], seed)
    m_state = [[np.zeros_like(W), np.zeros_like(b)] for W, b in params]
    v_state = [[np.zeros_like(W), np.zeros_like(b)] for W, b in params]
    step = 0
    rng = np.random.default_rng([seed, 1])
    n = X.shape[0]
    history = []
    best_loss = np.inf
    best_params = [[W.copy(), b.copy()] for W, b in params]
    stale = 0

    for _ in range(epochs):
        order = rng.permutation(n)
        for start in range(0, n, batch_size):
            batch = order[start:start + batch_size]
            _, grads = mlp_loss_and_gradient(params, X[batch], y[batch], lam)
            step += 1
            correction = (np.sqrt(1.0 - ADAM_BETA2 ** step)
                          / (1.0 - ADAM_BETA1 ** step))
            for layer, grad in zip(range(len(params)), grads):
                for slot in (0, 1):
                    g = grad[slot]
                    m = m_state[layer][slot]
                    v = v_state[layer][slot]
                    m *= ADAM_BETA1
                    m += (1.0 - ADAM_BETA1) * g
                    v *= ADAM_BETA2
                    v += (1.0 - ADAM_BETA2) * g * g
                    params[layer][slot] -= (lr * correction) * m / (np.sqrt(v) + ADAM_EPS)
        epoch_loss = _full_loss(params, X, y, lam)
        history.append(epoch_loss)
        if not np.isfinite(epoch_loss):
            raise NonConvergence(
                f"training loss diverged; last epochs: {history[-5:]}")
        if epoch_loss < best_loss - 1e-12:
            best_loss = epoch_loss
            best_params = [[W.copy(), b.copy()] for W, b in params]
            stale = 0
        else:
            stale += 1
            if stale >= patience:
                break
    return {"layers": best_params}


def predict_mlp(params, X):
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    layers = [[np.asarray(W, dtype=np.float64), np.asarray(b, dtype=np.float64)]
              for W, b in params["layers"]]
    logits = _forward(layers, X)[1]
    return sigmoid(logits).ravel()


def flatten(params):
    """Concatenate all parameter arrays into one vector (for diagnostics)."""
    return np.concatenate([a.ravel() for pair in params for a in pair])


def unflatten(vector, template):
    out = []
    pos = 0
    for W, b in template:
        new = []
        for a in (W, b):
            new.append(vector[pos:pos + a.size].reshape(a.shape).copy())
            pos += a.size
        out.append(new)
    return out
