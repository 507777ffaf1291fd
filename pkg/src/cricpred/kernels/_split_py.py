"""Pure-numpy split-search kernels, bit-compatible with the compiled ones.

Both backends evaluate the same arithmetic expressions in the same order so
that trained trees are identical regardless of which backend is active.
"""

import numpy as np

_INF = float("inf")


def best_split_gini(values, labels, min_leaf):
    """Best binary-Gini split of a sorted feature column.

    ``values`` must be ascending; ``labels`` float64 zeros/ones in the same
    order. Returns ``(i, impurity)`` where the left child is ``[0, i)``, or
    ``(-1, inf)`` when no valid split exists. Impurity is the unnormalized
    weighted Gini ``n_l*g_l + n_r*g_r``.
    """
    n = values.shape[0]
    if n < 2 * min_leaf or n < 2:
        return -1, _INF
    c1 = np.cumsum(labels)
    total1 = c1[-1]
    nl = np.arange(1, n, dtype=np.float64)
    nr = n - nl
    c1l = c1[:-1]
    c0l = nl - c1l
    c1r = total1 - c1l
    c0r = nr - c1r
    imp = (nl - (c0l * c0l + c1l * c1l) / nl) + (nr - (c0r * c0r + c1r * c1r) / nr)
    valid = (values[1:] > values[:-1]) & (nl >= min_leaf) & (nr >= min_leaf)
    imp = np.where(valid, imp, _INF)
    j = int(np.argmin(imp))
    if imp[j] == _INF:
        return -1, _INF
    return j + 1, float(imp[j])


def best_split_sse(values, targets, min_leaf):
    """Best variance-reduction split of a sorted feature column.

    Returns ``(i, proxy)`` maximizing ``s_l^2/n_l + s_r^2/n_r`` (equivalent
    to minimizing the squared error of per-child means), or ``(-1, -inf)``.
    """
    n = values.shape[0]
    if n < 2 * min_leaf or n < 2:
        return -1, -_INF
    s = np.cumsum(targets)
    total = s[-1]
    nl = np.arange(1, n, dtype=np.float64)
    nr = n - nl
    sl = s[:-1]
    sr = total - sl
    proxy = sl * sl / nl + sr * sr / nr
    valid = (values[1:] > values[:-1]) & (nl >= min_leaf) & (nr >= min_leaf)
    proxy = np.where(valid, proxy, -_INF)
    j = int(np.argmax(proxy))
    if proxy[j] == -_INF:
        return -1, -_INF
    return j + 1, float(proxy[j])
