"""Coherent closure by 2-dimensional Weisfeiler-Leman stabilization."""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .ccstruct import CoherenceError, ColorGraph, check_rainbow


def prepare(color: np.ndarray) -> np.ndarray:
    """Separate the diagonal and make the coloring closed under transposition.

    Every coherent configuration refining ``color`` also refines the result,
    so this never overshoots the closure.
    """
    color = np.asarray(color, dtype=np.int64)
    n = color.shape[0]
    diag = np.eye(n, dtype=np.int64)
    key = np.stack([diag, color, color.T], axis=-1).reshape(n * n, 3)
    _, lab = np.unique(key, axis=0, return_inverse=True)
    return lab.reshape(n, n)


def refine(color: np.ndarray) -> np.ndarray:
    """Stable 2-WL coloring with isomorphism-invariant labels.

    Each round replaces the color of (a, b) by the rank of its signature
    (old color, sorted multiset of (old(a, g), old(g, b))) among all
    signatures present, so labels depend only on the structure; ties are
    resolved by comparing full signatures, never hashes.
    """
    color = np.asarray(color, dtype=np.int64)
    n = color.shape[0]
    if n == 0:
        return color
    _, cur = np.unique(color, return_inverse=True)
    cur = cur.reshape(n, n)
    k = int(cur.max()) + 1
    while True:
        walks = cur[:, None, :] * k + cur.T[None, :, :]
        walks.sort(axis=2)
        sig = np.concatenate([cur[:, :, None], walks], axis=2).reshape(n * n, n + 1)
        _, new = np.unique(sig, axis=0, return_inverse=True)
        new = new.reshape(n, n)
        k_new = int(new.max()) + 1
        if k_new == k:
            return new
        cur, k = new, k_new


def wl_close(init) -> ColorGraph:
    mat = init.color if isinstance(init, ColorGraph) else np.asarray(init)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 1:
        raise CoherenceError("initial coloring must be a nonempty square matrix")
    return ColorGraph(refine(prepare(mat)))


def graph_matrix(edges: Iterable[tuple[int, int]], n: int) -> np.ndarray:
    """Initial coloring 0 diagonal / 1 edge / 2 non-edge of a simple graph."""
    mat = np.full((n, n), 2, dtype=np.int64)
    np.fill_diagonal(mat, 0)
    seen = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise CoherenceError(f"edge ({u},{v}) out of range")
        if u == v:
            raise CoherenceError(f"loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise CoherenceError(f"duplicate edge {key}")
        seen.add(key)
        mat[u, v] = mat[v, u] = 1
    return mat


def wl_close_graph(edges, n: int) -> ColorGraph:
    return wl_close(graph_matrix(edges, n))


def wl_close_rainbow(x: ColorGraph) -> ColorGraph:
    rep = check_rainbow(x)
    if not rep:
        raise CoherenceError(f"not a rainbow: {rep.axiom} {rep.message}")
    return wl_close(x)
