# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled split-search kernels for decision-tree induction.

The arithmetic mirrors ``_split_py`` expression for expression so both
backends produce bit-identical trees.
"""

import numpy as np


cdef double INF = float("inf")


def best_split_gini(double[::1] values, double[::1] labels, long min_leaf):
    cdef long n = values.shape[0]
    if n < 2 * min_leaf or n < 2:
        return -1, INF
    cdef double total1 = 0.0
    cdef long i
    for i in range(n):
        total1 = total1 + labels[i]
    cdef double c1l = 0.0, c0l, c1r, c0r, nl, nr, imp
    cdef double best = INF
    cdef long best_i = -1
    for i in range(1, n):
        c1l = c1l + labels[i - 1]
        if values[i] <= values[i - 1]:
            continue
        nl = <double> i
        nr = <double> (n - i)
        if nl < min_leaf or nr < min_leaf:
            continue
        c0l = nl - c1l
        c1r = total1 - c1l
        c0r = nr - c1r
        imp = (nl - (c0l * c0l + c1l * c1l) / nl) + (nr - (c0r * c0r + c1r * c1r) / nr)
        if imp < best:
            best = imp
            best_i = i
    if best_i == -1:
        return -1, INF
    return best_i, best


def best_split_sse(double[::1] values, double[::1] targets, long min_leaf):
    cdef long n = values.shape[0]
    if n < 2 * min_leaf or n < 2:
        return -1, -INF
    cdef double total = 0.0
    cdef long i
    for i in range(n):
        total = total + targets[i]
    cdef double sl = 0.0, sr, nl, nr, proxy
    cdef double best = -INF
    cdef long best_i = -1
    for i in range(1, n):
        sl = sl + targets[i - 1]
        if values[i] <= values[i - 1]:
            continue
        nl = <double> i
        nr = <double> (n - i)
        if nl < min_leaf or nr < min_leaf:
            continue
        sr = total - sl
        proxy = sl * sl / nl + sr * sr / nr
        if proxy > best:
            best = proxy
            best_i = i
    if best_i == -1:
        return -1, -INF
    return best_i, best
