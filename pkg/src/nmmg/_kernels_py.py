"""Pure-Python versions of the hot kernels.

Same algorithms, same iteration order and same return contracts as the
compiled ``_kernels`` module. Used when the extension is not built or when
``NMMG_PURE_PYTHON`` is set.
"""

import numpy as np


def min_norm_simplex(G, tol, rel, floor, max_iter):
    """Minimize ``0.5 * lam @ G @ lam`` over the unit simplex.

    Frank-Wolfe with away steps and exact line search, operating on the Gram
    matrix ``G = J @ J.T``. Stops when ``gap <= tol`` and additionally either
    ``gap <= rel * lam @ G @ lam`` or ``gap <= floor``, or after ``max_iter``
    steps.

    Returns
    -------
    lam : ndarray, shape (m,)
    iters : int
        Number of Frank-Wolfe/away steps taken.
    gap : float
        Frank-Wolfe duality gap at ``lam``; upper bound on suboptimality.
        Callers compare it against ``tol`` to detect hitting ``max_iter``.
    """
    G = np.asarray(G, dtype=float)
    m = G.shape[0]
    lam = np.zeros(m)
    lam[int(np.argmin(np.diag(G)))] = 1.0
    gap = np.inf
    it = 0
    while True:
        grad = G @ lam
        quad = float(lam @ grad)
        s = int(np.argmin(grad))
        gap = quad - grad[s]
        if (gap <= tol and (gap <= rel * quad or gap <= floor)) or it >= max_iter:
            break
        support = lam > 0.0
        a = int(np.flatnonzero(support)[np.argmax(grad[support])])
        gap_away = grad[a] - quad
        if gap >= gap_away:
            # toward vertex s
            slope = grad[s] - quad
            curv = G[s, s] - 2.0 * grad[s] + quad
            step_max = 1.0
            if curv > 0.0:
                step = min(-slope / curv, step_max)
            else:
                step = step_max
            lam *= 1.0 - step
            lam[s] += step
        else:
            # away from vertex a
            slope = quad - grad[a]
            curv = G[a, a] - 2.0 * grad[a] + quad
            step_max = lam[a] / (1.0 - lam[a])
            if curv > 0.0:
                step = min(-slope / curv, step_max)
            else:
                step = step_max
            lam *= 1.0 + step
            lam[a] -= step
            if step >= step_max:
                lam[a] = 0.0
        np.maximum(lam, 0.0, out=lam)
        lam /= lam.sum()
        it += 1
    return lam, it, float(gap)


def nondominated_mask(P):
    """Boolean mask of rows of ``P`` not dominated by any other row.

    Row ``u`` dominates ``w`` when ``u <= w`` componentwise and ``u != w``.
    """
    P = np.asarray(P, dtype=float)
    K = P.shape[0]
    keep = np.ones(K, dtype=bool)
    for i in range(K):
        le = np.all(P <= P[i], axis=1)
        lt = np.any(P < P[i], axis=1)
        if np.any(le & lt):
            keep[i] = False
    return keep
