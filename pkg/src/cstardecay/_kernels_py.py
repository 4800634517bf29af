"""NumPy versions of the compiled kernels, used when the extension is absent."""

import numpy as np


def quat_matmul(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape[1] != b.shape[0] or a.shape[2] != 4 or b.shape[2] != 4:
        raise ValueError("shape mismatch in quaternion matmul")
    a0, a1, a2, a3 = (a[..., q] for q in range(4))
    b0, b1, b2, b3 = (b[..., q] for q in range(4))
    out = np.empty((a.shape[0], b.shape[1], 4))
    out[..., 0] = a0 @ b0 - a1 @ b1 - a2 @ b2 - a3 @ b3
    out[..., 1] = a0 @ b1 + a1 @ b0 + a2 @ b3 - a3 @ b2
    out[..., 2] = a0 @ b2 - a1 @ b3 + a2 @ b0 + a3 @ b1
    out[..., 3] = a0 @ b3 + a1 @ b2 - a2 @ b1 + a3 @ b0
    return out


def bfs_distances(pattern):
    # level-synchronous BFS from every source at once
    adj = np.asarray(pattern, dtype=bool).astype(np.int64)
    n = adj.shape[0]
    dist = np.full((n, n), np.inf)
    visited = np.eye(n, dtype=bool)
    frontier = visited.copy()
    np.fill_diagonal(dist, 0.0)
    level = 0
    while frontier.any():
        level += 1
        reached = (frontier.astype(np.int64) @ adj) > 0
        frontier = reached & ~visited
        dist[frontier] = level
        visited |= frontier
    return dist


SUPPORT_REL = 1e-9


def power_iteration(B, shift, tol, maxiter, symmetric=False):
    B = np.asarray(B, dtype=np.float64)
    n = B.shape[0]
    x = np.full(n, 1.0 / np.sqrt(n))
    upper, prev, stall = 0.0, -1.0, 0
    for it in range(1, maxiter + 1):
        bx = B @ x
        pos = x > 0.0
        ratios = bx[pos] / x[pos]
        upper = float(np.max(ratios, initial=0.0))
        live = x[pos] > SUPPORT_REL * x.max()
        lower = float(np.min(ratios[live], initial=np.inf))
        if symmetric:
            lower = max(lower, float(x @ bx) / float(x @ x))
        y = bx + shift * x
        nrm = np.linalg.norm(y)
        if nrm == 0.0:
            return x, 0.0, it, True
        if upper - lower <= tol * upper:
            return x, upper, it, True
        stall = stall + 1 if prev >= 0.0 and abs(upper - prev) <= tol * upper else 0
        if stall > n + 10:
            return x, upper, it, True
        prev = upper
        x = y / nrm
    return x, upper, maxiter, False
