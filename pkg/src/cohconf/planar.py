"""Planarity, vertex connectivity and the polyhedral predicate.

Planarity is decided by networkx's left-right test. Its answers are
independently checkable: a planar verdict comes with a rotation system
whose traced faces must satisfy Euler's formula, and a nonplanar verdict
with a subgraph that must smooth down to K5 or K3,3.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

import networkx as nx
import numpy as np


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, n: int, edges) -> "SimpleGraph":
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range")
            seen.add((min(u, v), max(u, v)))
        return cls(n, tuple(sorted(seen)))

    @classmethod
    def from_adjacency(cls, adj) -> "SimpleGraph":
        adj = np.asarray(adj, dtype=bool)
        if (adj != adj.T).any() or adj.diagonal().any():
            raise GraphError("adjacency must be symmetric without loops")
        return cls(len(adj), tuple((int(u), int(v)) for u, v in zip(*np.nonzero(np.triu(adj)))))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self) -> list[list[int]]:
        nb = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return nb

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return d

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


@dataclass
class PlanarityResult:
    planar: bool
    rotation: dict[int, list[int]] | None = None  # cyclic neighbor order per vertex
    kuratowski: list[tuple[int, int]] | None = None

    def __bool__(self):
        return self.planar


def is_planar(g: SimpleGraph, witness: bool = False) -> PlanarityResult:
    if g.n >= 3 and g.m > 3 * g.n - 6 and not witness:
        return PlanarityResult(False)
    ok, cert = nx.check_planarity(g.to_networkx(), counterexample=witness)
    if ok:
        rot = {v: list(cert.neighbors_cw_order(v)) for v in range(g.n)}
        return PlanarityResult(True, rotation=rot)
    kur = sorted((min(u, v), max(u, v)) for u, v in cert.edges()) if witness else None
    return PlanarityResult(False, kuratowski=kur)


def _components(n: int, nb: list[list[int]]) -> list[list[int]]:
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            a = queue.popleft()
            for b in nb[a]:
                if not seen[b]:
                    seen[b] = True
                    comp.append(b)
                    queue.append(b)
        comps.append(comp)
    return comps


def count_faces(g: SimpleGraph, rotation: dict[int, list[int]]) -> int:
    """Faces of the embedding given by a rotation system (isolated vertices count one each)."""
    pos = {}
    for v, order in rotation.items():
        if sorted(order) != sorted(g.neighbors()[v]):
            raise GraphError(f"rotation at {v} does not list its neighbors")
        for i, w in enumerate(order):
            pos[(v, w)] = i
    seen = set()
    faces = 0
    for u, v in g.edges:
        for dart in ((u, v), (v, u)):
            if dart in seen:
                continue
            faces += 1
            a, b = dart
            while (a, b) not in seen:
                seen.add((a, b))
                order = rotation[b]
                c = order[(pos[(b, a)] + 1) % len(order)]
                a, b = b, c
    return faces + sum(1 for v in range(g.n) if not rotation[v])


def verify_embedding(g: SimpleGraph, rotation: dict[int, list[int]]) -> bool:
    """Euler's formula, V - E + F = 2 per component (faces are traced per component)."""
    comps = _components(g.n, g.neighbors())
    return g.n - g.m + count_faces(g, rotation) == 2 * len(comps)


def verify_kuratowski(g: SimpleGraph, sub: list[tuple[int, int]]) -> str | None:
    """'K5' or 'K3,3' if sub is a subdivision of that graph inside g, else None."""
    have = set(g.edges)
    sub = sorted({(min(u, v), max(u, v)) for u, v in sub})
    if not set(sub) <= have:
        return None
    nb: dict[int, list[int]] = {}
    for u, v in sub:
        nb.setdefault(u, []).append(v)
        nb.setdefault(v, []).append(u)
    if any(len(x) < 2 for x in nb.values()):
        return None
    branch = sorted(v for v, x in nb.items() if len(x) > 2)
    links = []
    used = set()
    interior = set()
    for b in branch:
        for w in nb[b]:
            if (b, w) in used:
                continue
            prev, cur = b, w
            while len(nb[cur]) == 2:
                interior.add(cur)
                nxt = nb[cur][0] if nb[cur][0] != prev else nb[cur][1]
                prev, cur = cur, nxt
            used.add((b, w))
            used.add((cur, prev))
            links.append((min(b, cur), max(b, cur)))
    if len(links) != len(set(links)) or any(a == b for a, b in links):
        return None
    if interior != {v for v, x in nb.items() if len(x) == 2}:
        return None  # cycles that avoid every branch vertex
    links = set(links)
    if len(branch) == 5 and links == set(combinations(branch, 2)):
        return "K5"
    if len(branch) == 6 and len(links) == 9:
        h = nx.Graph(list(links))
        if nx.is_bipartite(h):
            left, right = nx.bipartite.sets(h)
            if len(left) == 3 and all(h.degree(v) == 3 for v in h):
                return "K3,3"
    return None


def _local_connectivity(n: int, nb: list[list[int]], s: int, t: int, cap: int) -> int:
    """Number of internally disjoint s-t paths, stopping at cap (unit max-flow on split vertices)."""
    # node 2v is v_in, 2v+1 is v_out; v_in -> v_out has capacity 1 except at s and t
    big = n + 1
    res: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = [[] for _ in range(2 * n)]

    def arc(a, b, c):
        if (a, b) not in res:
            adj[a].append(b)
            adj[b].append(a)
            res.setdefault((b, a), 0)
        res[(a, b)] = res.get((a, b), 0) + c

    for v in range(n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
        for w in nb[v]:
            arc(2 * v + 1, 2 * w, big)
    src, dst = 2 * s + 1, 2 * t
    flow = 0
    while flow < cap:
        parent = {src: None}
        queue = deque([src])
        while queue and dst not in parent:
            a = queue.popleft()
            for b in adj[a]:
                if b not in parent and res[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if dst not in parent:
            break
        b = dst
        while parent[b] is not None:
            a = parent[b]
            res[(a, b)] -= 1
            res[(b, a)] += 1
            b = a
        flow += 1
    return flow


def vertex_connectivity(g: SimpleGraph) -> int:
    """Exact vertex connectivity (K_n has n - 1) via Menger and unit max-flow."""
    if g.n < 2:
        raise GraphError("vertex connectivity needs at least two vertices")
    nb = g.neighbors()
    adjset = [set(x) for x in nb]
    best = g.n - 1
    # some vertex among the first best + 1 lies outside a minimum cut
    i = 0
    while i <= best and i < g.n:
        for j in range(i + 1, g.n):
            if j not in adjset[i]:
                best = min(best, _local_connectivity(g.n, nb, i, j, best))
        i += 1
    return best


def is_polyhedral(g: SimpleGraph) -> bool:
    if g.n < 4:
        return False
    if g.m > 3 * g.n - 6 or int(g.degrees().min()) < 3:
        return False
    return is_planar(g).planar and vertex_connectivity(g) >= 3
