"""Non-centered maximal operator on grid functions.

Discrete model: an interval is a window of consecutive nodes ``a..b``; its
measure is ``(b-a+1)*dx`` and its integral is ``dx * sum |f|`` over the
window, so the interval average is the plain arithmetic mean of |f| on the
window (the singleton window then dominates the point value, matching the
continuum ``Mf >= |f|``).  Windows are confined to ``[-L, L]``: outside the
domain the function is modeled as zero, which only lowers averages.

Two routes are provided.  ``oracle`` enumerates the means of all O(n^2)
windows with a prefix-sum scan.  ``fast`` is a divide-and-conquer over the
prefix-sum graph: the best window containing a node is the steepest chord
of the prefix sums across the node, so windows crossing the midpoint are
resolved by tangent queries against convex hulls of the prefix points.
Both routes must agree to 1e-12; the oracle defines correctness.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .grid import Grid, GridFunction, random_mixture
from .spaces import SpaceNorm, space_norm

_BASE_SIZE = 1


def _oracle_scan(av: np.ndarray) -> np.ndarray:
    n = av.size
    S = np.concatenate(([0.0], np.cumsum(av)))
    out = np.zeros(n)
    for a in range(n):
        means = (S[a + 1:] - S[a]) / np.arange(1, n - a + 1)
        # suffix max over the right endpoint: best window [a..b] with b >= j
        suff = np.maximum.accumulate(means[::-1])[::-1]
        np.maximum(out[a:], suff, out=out[a:])
    return out


def _upper_hull(xs: np.ndarray, ys: np.ndarray):
    hx, hy = [], []
    for x, y in zip(xs, ys):
        while len(hx) >= 2 and (
            (hy[-1] - hy[-2]) * (x - hx[-1]) <= (y - hy[-1]) * (hx[-1] - hx[-2])
        ):
            hx.pop()
            hy.pop()
        hx.append(x)
        hy.append(y)
    return np.asarray(hx), np.asarray(hy)


def _lower_hull(xs: np.ndarray, ys: np.ndarray):
    hx, hy = [], []
    for x, y in zip(xs, ys):
        while len(hx) >= 2 and (
            (hy[-1] - hy[-2]) * (x - hx[-1]) >= (y - hy[-1]) * (hx[-1] - hx[-2])
        ):
            hx.pop()
            hy.pop()
        hx.append(x)
        hy.append(y)
    return np.asarray(hx), np.asarray(hy)


def _steepest_to_upper(pxs, pys, hx, hy):
    """Max slope from each left point to a concave chain on its right.

    The slope along the chain is unimodal in the vertex index, so a
    vectorized binary search finds the tangent vertex per query point.
    """
    m = hx.size
    lo = np.zeros(pxs.size, dtype=np.int64)
    hi = np.full(pxs.size, m - 1, dtype=np.int64)
    while True:
        active = lo < hi
        if not active.any():
            break
        mid = (lo + hi) // 2
        nxt = np.minimum(mid + 1, m - 1)
        s1 = (hy[mid] - pys) * (hx[nxt] - pxs)
        s2 = (hy[nxt] - pys) * (hx[mid] - pxs)
        move = active & (s1 < s2)
        lo = np.where(move, mid + 1, lo)
        hi = np.where(active & ~move, mid, hi)
    return (hy[lo] - pys) / (hx[lo] - pxs)


def _steepest_from_lower(qxs, qys, hx, hy):
    """Max slope from a convex chain on the left to each right point."""
    m = hx.size
    lo = np.zeros(qxs.size, dtype=np.int64)
    hi = np.full(qxs.size, m - 1, dtype=np.int64)
    while True:
        active = lo < hi
        if not active.any():
            break
        mid = (lo + hi) // 2
        nxt = np.minimum(mid + 1, m - 1)
        s1 = (qys - hy[mid]) * (qxs - hx[nxt])
        s2 = (qys - hy[nxt]) * (qxs - hx[mid])
        move = active & (s1 < s2)
        lo = np.where(move, mid + 1, lo)
        hi = np.where(active & ~move, mid, hi)
    return (qys - hy[lo]) / (qxs - hx[lo])


def _fast_scan(av: np.ndarray) -> np.ndarray:
    n = av.size
    S = np.concatenate(([0.0], np.cumsum(av)))
    idx = np.arange(n + 1, dtype=float)
    out = np.zeros(n)

    def solve(lo: int, hi: int) -> None:
        if hi - lo + 1 <= _BASE_SIZE:
            out[lo] = max(out[lo], av[lo])
            return
        mid = (lo + hi) // 2
        solve(lo, mid)
        solve(mid + 1, hi)
        # windows [a..b] with a <= mid < b: means are chord slopes of the
        # prefix sums from p = a to q = b + 1
        ps = np.arange(lo, mid + 1)
        qs = np.arange(mid + 2, hi + 2)
        rx, ry = _upper_hull(idx[qs], S[qs])
        best_p = _steepest_to_upper(idx[ps], S[ps], rx, ry)
        np.maximum(out[lo:mid + 1], np.maximum.accumulate(best_p),
                   out=out[lo:mid + 1])
        lx, ly = _lower_hull(idx[ps], S[ps])
        best_q = _steepest_from_lower(idx[qs], S[qs], lx, ly)
        suff = np.maximum.accumulate(best_q[::-1])[::-1]
        np.maximum(out[mid + 1:hi + 1], suff, out=out[mid + 1:hi + 1])

    solve(0, n - 1)
    return out


def maximal_function(f: GridFunction, mode: str = "fast") -> GridFunction:
    """Maximal function of |f| over node windows, per the discrete model."""
    if mode not in ("fast", "oracle"):
        raise ValueError(f"mode must be 'fast' or 'oracle', got {mode!r}")
    av = np.abs(f.values)
    vals = _fast_scan(av) if mode == "fast" else _oracle_scan(av)
    return GridFunction(f.grid, vals)


def maximal_norm_estimate(
    space: SpaceNorm,
    trials: int,
    seed: int,
    grid: Optional[Grid] = None,
) -> float:
    """Lower bound for the operator norm of the maximal operator.

    Maximizes ``|Mf| / |f|`` over random nonzero probes.  This is a lower
    bound only; certified upper bounds are out of scope.  Unsupported at
    the endpoint exponents, where the operator is unbounded (p = 1) or the
    estimate is trivial (p = inf).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if math.isinf(space.p) or not space.p > 1.0:
        raise ValueError("maximal norm estimate requires 1 < p < inf")
    from .spaces import DEFAULT_GRID

    grid = grid or DEFAULT_GRID
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(trials):
        f = random_mixture(grid, rng)
        nf = space_norm(space, f)
        if nf == 0.0:
            continue
        best = max(best, space_norm(space, maximal_function(f)) / nf)
    return best
