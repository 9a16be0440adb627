"""Candidate edge relations for polyhedral graphs with a given coherent closure.

A graph X on the points of a configuration x with WL(X) = x has its edge set
E in S^u, the unions of basis relations. We enumerate symmetric,
irreflexive unions, cut them down with planar edge bounds, keep one
representative per orbit of the algebraic automorphism group, keep those
whose coherent closure is x again, and finally test each for being the
graph of a convex polyhedron.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .ccstruct import ColorGraph, same_partition
from .isomorph import AlgebraicAut, algebraic_aut_group
from .planar import SimpleGraph, is_polyhedral
from .wl import wl_close_graph

MAX_NODES = 10**8


class CandidateError(RuntimeError):
    pass


@dataclass(frozen=True)
class Bounds:
    """Edge bounds used to prune the enumeration.

    ``fiber``: edges inside a fiber D are at most 3|D| - 6, applied to fibers
    with at least ``fiber_min_size`` points. ``pair``: edges between fibers D
    and G are at most 3 min(|D|, |G|) - 6.
    """

    total: bool = True
    fiber: bool = True
    fiber_min_size: int = 7
    pair: bool = False


@dataclass
class CandidateSet:
    base: ColorGraph
    symmetric_units: list[tuple[int, ...]]
    candidates: list[int]
    stage_counts: dict[str, int] = field(default_factory=dict)
    bounds: Bounds = Bounds()

    def colors(self, mask: int) -> list[int]:
        return [s for i, u in enumerate(self.symmetric_units) if mask >> i & 1 for s in u]

    def edges(self, mask: int) -> list[tuple[int, int]]:
        sel = np.zeros(self.base.rank, dtype=bool)
        sel[self.colors(mask)] = True
        a, b = np.nonzero(np.triu(sel[self.base.color], 1))
        return list(zip(a.tolist(), b.tolist()))

    def graph(self, mask: int) -> SimpleGraph:
        return SimpleGraph(self.base.n, tuple(self.edges(mask)))

    def _with(self, cands: list[int], stage: str) -> "CandidateSet":
        counts = dict(self.stage_counts)
        counts[stage] = len(cands)
        return replace(self, candidates=cands, stage_counts=counts)


def symmetric_units(x: ColorGraph) -> list[tuple[int, ...]]:
    """Minimal symmetric non-reflexive unions s | s*, sorted by (fiber pair, color)."""
    conv = x.converse
    units = {tuple(sorted({s, int(conv[s])})) for s in range(x.rank) if s not in x.reflexive_colors}
    fo = x.fiber_of

    def key(u):
        a, b = fo[u[0]]
        return (min(a, b), max(a, b), u)

    return sorted(units, key=key)


def _block_table(x: ColorGraph, units) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Edges contributed by each unit to each unordered fiber pair."""
    nf = len(x.fibers)
    blocks = [(a, b) for a in range(nf) for b in range(a, nf)]
    index = {p: i for i, p in enumerate(blocks)}
    table = np.zeros((len(units), len(blocks)), dtype=np.int64)
    for i, u in enumerate(units):
        a, b = x.fiber_of[u[0]]
        # a symmetric unit holds each edge as two arcs
        table[i, index[(min(a, b), max(a, b))]] = sum(int(x.sizes[s]) for s in u) // 2
    return table, blocks


def _limits(x: ColorGraph, blocks, bounds: Bounds) -> np.ndarray:
    sz = [len(f) for f in x.fibers]
    big = np.iinfo(np.int64).max
    lim = np.full(len(blocks), big, dtype=np.int64)
    for i, (a, b) in enumerate(blocks):
        if a == b and bounds.fiber and sz[a] >= bounds.fiber_min_size:
            lim[i] = max(3 * sz[a] - 6, 0)
        if a != b and bounds.pair:
            lim[i] = max(3 * min(sz[a], sz[b]) - 6, 0)
    return lim


def enumerate_candidates(base: ColorGraph, bounds: Bounds = Bounds(), max_nodes: int = MAX_NODES) -> CandidateSet:
    """All unions of symmetric units (the empty one included) obeying the edge bounds."""
    units = symmetric_units(base)
    table, blocks = _block_table(base, units)
    lim = _limits(base, blocks, bounds)
    total_lim = 3 * base.n - 6 if bounds.total else np.iinfo(np.int64).max
    unit_total = table.sum(axis=1)
    k = len(units)
    out: list[int] = []
    nodes = 0
    load = np.zeros(len(blocks), dtype=np.int64)

    def dfs(i: int, mask: int, total: int):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise CandidateError(f"enumeration exceeds {max_nodes} nodes; split the search per fiber")
        if i == k:
            out.append(mask)
            return
        dfs(i + 1, mask, total)
        t = total + int(unit_total[i])
        if t > total_lim:
            return
        load[:] += table[i]
        if (load <= lim).all():
            dfs(i + 1, mask | (1 << i), t)
        load[:] -= table[i]

    dfs(0, 0, 0)
    out.sort()
    counts = {"raw": 1 << k, "edge_bounded": len(out)}
    return CandidateSet(base, units, out, counts, bounds)


def unit_permutation(cs: CandidateSet, aut: AlgebraicAut) -> list[int]:
    """The permutation of symmetric units induced by a color permutation."""
    where = {u: i for i, u in enumerate(cs.symmetric_units)}
    return [where[tuple(sorted(aut.sigma[s] for s in u))] for u in cs.symmetric_units]


def _apply(perm: list[int], mask: int) -> int:
    out = 0
    for i, j in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << j
    return out


def phi_reduce(cs: CandidateSet, phi: list[AlgebraicAut] | None = None) -> CandidateSet:
    """Keep the numerically least mask in each orbit of the algebraic automorphism group."""
    if phi is None:
        phi = algebraic_aut_group(cs.base)
    perms = [unit_permutation(cs, a) for a in phi]
    keep = [m for m in cs.candidates if all(_apply(p, m) >= m for p in perms)]
    return cs._with(keep, "phi_reduced")


def wl_exact(cs: CandidateSet, mask: int) -> bool:
    closure = wl_close_graph(cs.edges(mask), cs.base.n)
    return closure.rank == cs.base.rank and same_partition(closure, cs.base)


def wl_filter(cs: CandidateSet) -> CandidateSet:
    return cs._with([m for m in cs.candidates if wl_exact(cs, m)], "wl_exact")


@dataclass
class Witness:
    mask: int
    colors: list[int]
    edges: list[tuple[int, int]]


def polyhedral_screen(cs: CandidateSet) -> tuple[CandidateSet, list[Witness]]:
    found = []
    for m in cs.candidates:
        g = cs.graph(m)
        if is_polyhedral(g):
            found.append(Witness(m, cs.colors(m), list(g.edges)))
    return cs._with([w.mask for w in found], "polyhedral"), found


@dataclass
class SearchResult:
    candidates: CandidateSet
    witnesses: list[Witness]

    @property
    def counts(self) -> dict[str, int]:
        return self.candidates.stage_counts


def search(base: ColorGraph, bounds: Bounds = Bounds(), reduce: bool = True, wl: bool = True) -> SearchResult:
    """Run the whole pipeline; stages can be switched off for the alternative readings."""
    cs = enumerate_candidates(base, bounds)
    if reduce:
        cs = phi_reduce(cs)
    if wl:
        cs = wl_filter(cs)
    cs, found = polyhedral_screen(cs)
    return SearchResult(cs, found)
