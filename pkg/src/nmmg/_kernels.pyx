# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; see ``_kernels_py`` for the contract."""

import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY

cnp.import_array()


def min_norm_simplex(G_in, double tol, double rel, double floor, Py_ssize_t max_iter):
    cdef double[:, ::1] G = np.ascontiguousarray(G_in, dtype=np.float64)
    cdef Py_ssize_t m = G.shape[0]
    lam_arr = np.zeros(m)
    grad_arr = np.empty(m)
    cdef double[::1] lam = lam_arr
    cdef double[::1] grad = grad_arr
    cdef Py_ssize_t i, j, s, a, it = 0
    cdef double quad, gap = INFINITY, gap_away, slope, curv, step, step_max, total, best

    s = 0
    for i in range(1, m):
        if G[i, i] < G[s, s]:
            s = i
    lam[s] = 1.0

    while True:
        quad = 0.0
        for i in range(m):
            total = 0.0
            for j in range(m):
                total += G[i, j] * lam[j]
            grad[i] = total
        for i in range(m):
            quad += lam[i] * grad[i]
        s = 0
        for i in range(1, m):
            if grad[i] < grad[s]:
                s = i
        gap = quad - grad[s]
        if (gap <= tol and (gap <= rel * quad or gap <= floor)) or it >= max_iter:
            break
        a = -1
        best = -INFINITY
        for i in range(m):
            if lam[i] > 0.0 and grad[i] > best:
                best = grad[i]
                a = i
        gap_away = grad[a] - quad
        if gap >= gap_away:
            slope = grad[s] - quad
            curv = G[s, s] - 2.0 * grad[s] + quad
            step_max = 1.0
            if curv > 0.0:
                step = -slope / curv
                if step > step_max:
                    step = step_max
            else:
                step = step_max
            for i in range(m):
                lam[i] *= 1.0 - step
            lam[s] += step
        else:
            slope = quad - grad[a]
            curv = G[a, a] - 2.0 * grad[a] + quad
            step_max = lam[a] / (1.0 - lam[a])
            if curv > 0.0:
                step = -slope / curv
                if step > step_max:
                    step = step_max
            else:
                step = step_max
            for i in range(m):
                lam[i] *= 1.0 + step
            lam[a] -= step
            if step >= step_max:
                lam[a] = 0.0
        total = 0.0
        for i in range(m):
            if lam[i] < 0.0:
                lam[i] = 0.0
            total += lam[i]
        for i in range(m):
            lam[i] /= total
        it += 1
    return lam_arr, it, gap


def nondominated_mask(P_in):
    cdef double[:, ::1] P = np.ascontiguousarray(P_in, dtype=np.float64)
    cdef Py_ssize_t K = P.shape[0], m = P.shape[1]
    keep_arr = np.ones(K, dtype=np.bool_)
    cdef cnp.npy_bool[::1] keep = keep_arr
    cdef Py_ssize_t i, j, c
    cdef bint le, lt
    for i in range(K):
        for j in range(K):
            if j == i:
                continue
            le = True
            lt = False
            for c in range(m):
                if P[j, c] > P[i, c]:
                    le = False
                    break
                if P[j, c] < P[i, c]:
                    lt = True
            if le and lt:
                keep[i] = False
                break
    return keep_arr
