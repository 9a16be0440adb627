"""Automorphisms, color isomorphisms and algebraic automorphisms.

Combinatorial searches use individualization-refinement with full 2-WL as the
refiner. Refined labels are isomorphism invariant, so two search nodes can
only be isomorphic if their label histograms agree; that is the only pruning
used besides orbit pruning in the automorphism search.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .ccstruct import ColorGraph, color_orbits, tensor
from .perm import Perm, PermGroup, inv
from .wl import prepare, refine


class SearchBoundError(RuntimeError):
    pass


def max_n(default: int = 128) -> int:
    return int(os.environ.get("CC_MAX_N", default))


def _individualize(mat: np.ndarray, v: int) -> np.ndarray:
    out = mat.copy()
    out[v, v] = mat.max() + 1
    return refine(out)


def _target_cell(mat: np.ndarray) -> np.ndarray | None:
    diag = np.diag(mat)
    labels, counts = np.unique(diag, return_counts=True)
    multi = counts > 1
    if not multi.any():
        return None
    cand = labels[multi]
    best = cand[np.argmin(counts[multi])]
    return np.flatnonzero(diag == best)


def _histogram(mat: np.ndarray) -> bytes:
    return np.bincount(mat.ravel()).tobytes()


class _Tree:
    """First path of the search tree for a colored matrix."""

    def __init__(self, mat: np.ndarray):
        self.levels = []  # (refined matrix, target cell, chosen vertex)
        self.hist = []
        cur = refine(mat)
        while True:
            self.hist.append(_histogram(cur))
            cell = _target_cell(cur)
            if cell is None:
                break
            v = int(cell[0])
            self.levels.append((cur, cell, v))
            cur = _individualize(cur, v)
        self.leaf = cur
        # vertex carrying each diagonal label at the reference leaf
        self.leaf_order = np.argsort(np.diag(cur))


def _leaf_map(tree: _Tree, leaf: np.ndarray) -> np.ndarray:
    """f with f[a] = vertex of ``leaf`` whose diagonal label equals that of a in the reference."""
    f = np.empty(len(leaf), dtype=np.int64)
    f[tree.leaf_order] = np.argsort(np.diag(leaf))
    return f


def _search(tree: _Tree, mat: np.ndarray, depth: int, accept) -> np.ndarray | None:
    if _histogram(mat) != tree.hist[depth]:
        return None
    cell = _target_cell(mat)
    if cell is None:
        if depth != len(tree.levels):
            return None
        f = _leaf_map(tree, mat)
        return f if accept(f) else None
    if depth >= len(tree.levels):
        return None
    for u in cell:
        res = _search(tree, _individualize(mat, int(u)), depth + 1, accept)
        if res is not None:
            return res
    return None


@dataclass
class AutResult:
    group: PermGroup
    order: int
    base: list[int]
    orbit_sizes: list[int]


def _orbit(point: int, gens: list[np.ndarray], n: int) -> set[int]:
    seen, stack = {point}, [point]
    while stack:
        a = stack.pop()
        for g in gens:
            b = int(g[a])
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return seen


def automorphisms(x: ColorGraph) -> AutResult:
    """Generators of Aut(x) (colors fixed setwise-by-id) with its order."""
    n = x.n
    if n > max_n():
        raise SearchBoundError(f"n={n} exceeds the search bound {max_n()} (set CC_MAX_N)")
    color = x.color
    tree = _Tree(prepare(color))

    def accept(f):
        return np.array_equal(color[np.ix_(f, f)], color)

    gens: list[np.ndarray] = []
    orbit_sizes = []
    for depth in range(len(tree.levels) - 1, -1, -1):
        mat, cell, v = tree.levels[depth]
        orb = _orbit(v, gens, n)
        rejected: set[int] = set()
        for w in cell:
            w = int(w)
            if w in orb or w in rejected:
                continue
            f = _search(tree, _individualize(mat, w), depth + 1, accept)
            if f is None:
                rejected |= _orbit(w, gens, n)
            else:
                gens.append(f)
                orb = _orbit(v, gens, n)
        orbit_sizes.append(len(orb))
    orbit_sizes.reverse()
    order = int(np.prod(orbit_sizes, dtype=object)) if orbit_sizes else 1
    group = PermGroup(n, tuple(Perm(tuple(int(a) for a in g)) for g in gens))
    return AutResult(group, order, [lvl[2] for lvl in tree.levels], orbit_sizes)


def aut_group(x: ColorGraph) -> PermGroup:
    return automorphisms(x).group


def is_schurian(x: ColorGraph) -> bool:
    return inv(aut_group(x)).rank == x.rank


# ----------------------------------------------------------------------
# algebraic automorphisms


@dataclass(frozen=True)
class AlgebraicAut:
    sigma: tuple[int, ...]

    def __call__(self, s: int) -> int:
        return self.sigma[s]


def _base_signature(x: ColorGraph) -> list[tuple]:
    t = tensor(x)
    conv = x.converse
    fibers = x.fiber_of
    fsize = [len(f) for f in x.fibers]
    return [(int(s in x.reflexive_colors), int(t.valency[s]), int(t.valency[conv[s]]),
             fsize[fibers[s][0]], fsize[fibers[s][1]], int(conv[s] == s)) for s in range(x.rank)]


def _joint_classes(xs: list[ColorGraph]) -> list[np.ndarray]:
    """Invariant partition of the colors of several configurations, refined by tensor statistics.

    Class labels are shared, so an algebraic isomorphism between two of them
    can only map a color to a color of the same class.
    """
    sigs = [_base_signature(x) for x in xs]
    keys = sorted({s for sig in sigs for s in sig})
    cls = [np.array([keys.index(s) for s in sig]) for sig in sigs]
    m = len(keys)
    while True:
        sigs = []
        for x, cl in zip(xs, cls):
            c = tensor(x).c
            conv = x.converse
            sig = []
            for r in range(x.rank):
                feats = []
                for arr in (c[r], c[:, r, :], c[:, :, r]):
                    idx = np.nonzero(arr)
                    feats.append(tuple(sorted(zip(arr[idx].tolist(), cl[idx[0]].tolist(),
                                                  cl[idx[1]].tolist()))))
                sig.append((int(cl[r]), int(cl[conv[r]]), tuple(feats)))
            sigs.append(sig)
        keys = sorted({s for sig in sigs for s in sig})
        cls = [np.array([keys.index(s) for s in sig]) for sig in sigs]
        if len(keys) == m:
            return cls
        m = len(keys)


def algebraic_isomorphisms(x: ColorGraph, y: ColorGraph, max_rank: int = 80):
    """Yield every color bijection sigma: S(x) -> S(y) preserving intersection numbers."""
    if x.rank != y.rank or x.n != y.n:
        return
    if x.rank > max_rank:
        raise SearchBoundError(f"rank {x.rank} exceeds the algebraic-isomorphism bound {max_rank}")
    cx, cy = tensor(x).c, tensor(y).c
    k = x.rank
    convx, convy = x.converse, y.converse
    clx, cly = _joint_classes([x, y])
    if sorted(clx.tolist()) != sorted(cly.tolist()):
        return
    order = sorted(range(k), key=lambda s: (np.sum(clx == clx[s]), s))
    sigma = np.full(k, -1, dtype=np.int64)
    used = np.zeros(k, dtype=bool)

    def consistent(assigned: list[int]) -> bool:
        a = np.array(assigned)
        img = sigma[a]
        return np.array_equal(cx[np.ix_(a, a, a)], cy[np.ix_(img, img, img)])

    def assign(pos: int, assigned: list[int]):
        while pos < k and sigma[order[pos]] >= 0:
            pos += 1
        if pos == k:
            yield tuple(int(v) for v in sigma)
            return
        r = order[pos]
        rs = int(convx[r])
        for b in np.flatnonzero((cly == clx[r]) & ~used):
            b = int(b)
            bs = int(convy[b])
            if (rs == r) != (bs == b) or (rs != r and used[bs]):
                continue
            new = [r] if rs == r else [r, rs]
            sigma[r], used[b] = b, True
            if rs != r:
                sigma[rs], used[bs] = bs, True
            if consistent(assigned + new):
                yield from assign(pos + 1, assigned + new)
            sigma[r], used[b] = -1, False
            if rs != r:
                sigma[rs], used[bs] = -1, False

    yield from assign(0, [])


def algebraic_aut_group(x: ColorGraph, max_rank: int = 80, limit: int = 1_000_000) -> list[AlgebraicAut]:
    """All algebraic automorphisms of x, identity first, then in lexicographic order."""
    found = []
    for sigma in algebraic_isomorphisms(x, x, max_rank):
        if len(found) >= limit:
            raise SearchBoundError(f"more than {limit} algebraic automorphisms")
        found.append(AlgebraicAut(sigma))
    ident = tuple(range(x.rank))
    found.sort(key=lambda a: (a.sigma != ident, a.sigma))
    return found


def isomorphism(x: np.ndarray, y: np.ndarray) -> np.ndarray | None:
    """Vertex bijection f with y[f[a], f[b]] == x[a, b] for colorings with identical names."""
    if x.shape != y.shape:
        return None
    tree = _Tree(prepare(x))

    def accept(f):
        return np.array_equal(y[np.ix_(f, f)], x)

    return _search(tree, refine(prepare(y)), 0, accept)


def color_isomorphic(x: ColorGraph, y: ColorGraph) -> np.ndarray | None:
    """A bijection f with {s^f} = S(y), colors renamed freely; None if none exists.

    A color isomorphism induces an algebraic isomorphism, so we run through
    those and look for a plain isomorphism after renaming the colors of y.
    """
    if x.n != y.n or x.rank != y.rank:
        return None
    if max(x.n, y.n) > max_n():
        raise SearchBoundError(f"n={x.n} exceeds the search bound {max_n()} (set CC_MAX_N)")
    for sigma in algebraic_isomorphisms(x, y, max_rank=max(80, x.rank)):
        back = np.argsort(np.array(sigma))
        f = isomorphism(x.color, back[y.color])
        if f is not None:
            return f
    return None


def induced_color_map(x: ColorGraph, f) -> np.ndarray:
    """Color permutation s -> s^f induced by an automorphism f of x."""
    f = np.asarray(f.images if isinstance(f, Perm) else f)
    img = np.full(x.rank, -1, dtype=np.int64)
    fx = x.color[np.ix_(np.argsort(f), np.argsort(f))]
    img[x.color.ravel()] = fx.ravel()
    return img


def algebraic_fusion_by(x: ColorGraph, auts: list[AlgebraicAut]) -> np.ndarray:
    return color_orbits(x.rank, [a.sigma for a in auts])
