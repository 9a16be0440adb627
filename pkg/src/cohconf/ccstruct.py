"""Coherent configurations stored as color matrices, and their algebra."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components


class CoherenceError(ValueError):
    pass


def canonical_labels(mat: np.ndarray) -> np.ndarray:
    """Renumber the entries of ``mat`` by first appearance in row-major order."""
    mat = np.asarray(mat)
    flat = mat.ravel()
    _, first, inverse = np.unique(flat, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first)] = np.arange(len(first))
    return rank[inverse.ravel()].reshape(mat.shape)


class ColorGraph:
    """A partition of Omega^2 given by an n x n matrix of color ids.

    The same type holds rainbows and coherent configurations; derived data
    that only makes sense for the latter (fibers, tensor) is computed on
    demand and checked.
    """

    def __init__(self, color, canonical: bool = True):
        mat = np.asarray(color, dtype=np.int64)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise CoherenceError("color matrix must be square")
        if mat.size and mat.min() < 0:
            raise CoherenceError("color ids must be nonnegative")
        if canonical:
            mat = canonical_labels(mat)
        elif mat.size and len(np.unique(mat)) != mat.max() + 1:
            raise CoherenceError("color ids must be 0..rank-1")
        mat.setflags(write=False)
        self.color = mat

    @property
    def n(self) -> int:
        return self.color.shape[0]

    @cached_property
    def rank(self) -> int:
        return int(self.color.max()) + 1 if self.color.size else 0

    def __eq__(self, other):
        return isinstance(other, ColorGraph) and np.array_equal(self.color, other.color)

    def __hash__(self):
        return hash(self.color.tobytes())

    def __repr__(self):
        return f"ColorGraph(n={self.n}, rank={self.rank})"

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.color.ravel(), minlength=self.rank)

    @cached_property
    def reflexive_colors(self) -> frozenset[int]:
        return frozenset(int(c) for c in np.diag(self.color))

    @cached_property
    def converse(self) -> np.ndarray:
        """converse[s] = color of the transposed pairs; -1 where (C2) fails."""
        conv = np.full(self.rank, -1, dtype=np.int64)
        a, b = self.color.ravel(), self.color.T.ravel()
        pairs = np.unique(np.stack([a, b], axis=1), axis=0)
        s, t = pairs[:, 0], pairs[:, 1]
        counts = np.bincount(s, minlength=self.rank)
        ok = counts[s] == 1
        conv[s[ok]] = t[ok]
        return conv

    def adjacency(self, s) -> np.ndarray:
        if np.ndim(s) == 0:
            return (self.color == s).astype(np.int64)
        return np.isin(self.color, list(s)).astype(np.int64)

    @cached_property
    def fibers(self) -> list[list[int]]:
        diag = np.diag(self.color)
        return [sorted(np.flatnonzero(diag == c).tolist()) for c in sorted(set(diag.tolist()))]

    @cached_property
    def point_fiber(self) -> np.ndarray:
        pf = np.empty(self.n, dtype=np.int64)
        for i, f in enumerate(self.fibers):
            pf[f] = i
        return pf

    @cached_property
    def fiber_of(self) -> dict[int, tuple[int, int]]:
        """color -> (source fiber, target fiber); raises if a color straddles fibers."""
        pf = self.point_fiber
        src = pf[:, None].repeat(self.n, 1)
        dst = pf[None, :].repeat(self.n, 0)
        trip = np.unique(np.stack([self.color.ravel(), src.ravel(), dst.ravel()], 1), axis=0)
        if len(trip) != self.rank:
            raise CoherenceError("some color is not contained in a single fiber product")
        return {int(c): (int(u), int(v)) for c, u, v in trip}

    def to_json(self) -> dict:
        return {"n": self.n, "colors": self.color.ravel().tolist()}

    @classmethod
    def from_json(cls, d: dict) -> "ColorGraph":
        n = int(d["n"])
        return cls(np.asarray(d["colors"], dtype=np.int64).reshape(n, n))

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def permuted(self, f) -> "ColorGraph":
        """Image under the vertex bijection a -> f[a]; colors keep their ids."""
        f = np.asarray(f)
        out = np.empty_like(self.color)
        out[np.ix_(f, f)] = self.color
        return ColorGraph(out, canonical=False)


def same_partition(x: ColorGraph, y: ColorGraph) -> bool:
    return x.n == y.n and np.array_equal(canonical_labels(x.color), canonical_labels(y.color))


def is_refinement(fine: ColorGraph, coarse: ColorGraph) -> bool:
    """True iff every color of ``fine`` lies inside a single color of ``coarse``."""
    pairs = np.unique(np.stack([fine.color.ravel(), coarse.color.ravel()], 1), axis=0)
    return len(pairs) == fine.rank


# ----------------------------------------------------------------------
# validation and intersection numbers


@dataclass
class ValidationReport:
    ok: bool
    axiom: str | None = None
    message: str = ""
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def check_rainbow(x: ColorGraph) -> ValidationReport:
    diag = np.diag(x.color)
    off = x.color[~np.eye(x.n, dtype=bool)]
    shared = np.intersect1d(diag, off)
    if len(shared):
        s = int(shared[0])
        a, b = np.argwhere((x.color == s) & ~np.eye(x.n, dtype=bool))[0]
        return ValidationReport(False, "C1", f"color {s} meets both the diagonal and its complement",
                                (int(a), int(b)))
    conv = x.converse
    bad = np.flatnonzero(conv < 0)
    if len(bad):
        s = int(bad[0])
        pts = np.argwhere(x.color == s)
        back = x.color.T[x.color == s]
        j = int(np.argmax(back != back[0]))
        return ValidationReport(False, "C2", f"the transposes of color {s} do not form one color",
                                (tuple(map(int, pts[0])), tuple(map(int, pts[j]))))
    return ValidationReport(True)


@dataclass
class IntersectionTensor:
    """Dense array ``c[r, s, t]`` of intersection numbers plus valencies."""
    c: np.ndarray
    valency: np.ndarray

    @property
    def rank(self) -> int:
        return self.c.shape[0]

    def entries(self):
        for r, s, t in zip(*np.nonzero(self.c)):
            yield (int(r), int(s), int(t)), int(self.c[r, s, t])

    def union(self, rs: Sequence[Sequence[int]], ss: Sequence[Sequence[int]]) -> np.ndarray:
        """c^t for unions: ``out[i, j, t] = sum over r in rs[i], s in ss[j] of c[r, s, t]``."""
        k = self.rank
        R = np.zeros((len(rs), k))
        S = np.zeros((len(ss), k))
        for i, grp in enumerate(rs):
            R[i, list(grp)] = 1
        for j, grp in enumerate(ss):
            S[j, list(grp)] = 1
        return np.einsum("ir,js,rst->ijt", R, S, self.c).round().astype(np.int64)

    def to_tsv(self) -> str:
        lines = ["r\ts\tt\tc"]
        lines += [f"{r}\t{s}\t{t}\t{v}" for (r, s, t), v in self.entries()]
        return "\n".join(lines) + "\n"


def _products(x: ColorGraph):
    """Yield (r, M) with M[s, a, b] = |{g : (a,g) in r, (g,b) in s}|."""
    k = x.rank
    onehot = np.zeros((k, x.n, x.n))
    onehot[x.color, np.arange(x.n)[:, None], np.arange(x.n)[None, :]] = 1.0
    for r in range(k):
        yield r, np.matmul(onehot[r][None], onehot)


def _tensor_or_report(x: ColorGraph):
    k = x.rank
    rep = np.zeros((k, 2), dtype=np.int64)
    flat = x.color.ravel()
    first = np.unique(flat, return_index=True)[1]
    rep[:, 0], rep[:, 1] = first // x.n, first % x.n
    c = np.zeros((k, k, k), dtype=np.int64)
    ra, rb = rep[x.color, 0], rep[x.color, 1]
    for r, M in _products(x):
        cr = M[:, rep[:, 0], rep[:, 1]]
        diff = M != M[:, ra, rb]
        if diff.any():
            s, a, b = np.argwhere(diff)[0]
            t = int(x.color[a, b])
            return None, ValidationReport(
                False, "C3",
                f"c[{r},{s},{t}] differs between pairs {tuple(map(int, rep[t]))} and {(int(a), int(b))}",
                (int(r), int(s), t, tuple(map(int, rep[t])), (int(a), int(b))))
        c[r] = cr.round().astype(np.int64)
    return c, ValidationReport(True)


def validate(x: ColorGraph) -> ValidationReport:
    rep = check_rainbow(x)
    if not rep:
        return rep
    return _tensor_or_report(x)[1]


def tensor(x: ColorGraph) -> IntersectionTensor:
    cached = x.__dict__.get("_tensor")
    if cached is not None:
        return cached
    rep = check_rainbow(x)
    if not rep:
        raise CoherenceError(rep.message)
    c, rep = _tensor_or_report(x)
    if c is None:
        raise CoherenceError(rep.message)
    conv = x.converse
    valency = np.zeros(x.rank, dtype=np.int64)
    diag = np.diag(x.color)
    for s in range(x.rank):
        a = int(np.argwhere(x.color == s)[0][0])
        valency[s] = c[s, conv[s], diag[a]]
    out = IntersectionTensor(c, valency)
    x.__dict__["_tensor"] = out
    return out


def is_thin(x: ColorGraph, s: int) -> bool:
    val = tensor(x).valency
    return bool(val[s] == 1 and val[x.converse[s]] == 1)


def is_semiregular(x: ColorGraph) -> bool:
    return bool((tensor(x).valency == 1).all())


def is_quasi_thin(x: ColorGraph) -> bool:
    return bool((tensor(x).valency <= 2).all())


def thin_colors(x: ColorGraph) -> list[int]:
    return [s for s in range(x.rank) if is_thin(x, s)]


# ----------------------------------------------------------------------
# parabolics, quotients, restrictions


@dataclass(frozen=True)
class Parabolic:
    colors: frozenset[int]
    classes: tuple[tuple[int, ...], ...]

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def class_index(self, n: int) -> np.ndarray:
        pi = np.full(n, -1, dtype=np.int64)
        for i, cls in enumerate(self.classes):
            pi[list(cls)] = i
        return pi


PARABOLIC_RANK_CUTOFF = 40


def _closure(comp: np.ndarray, mask: np.ndarray) -> np.ndarray:
    mask = mask.copy()
    while True:
        new = (comp & mask[:, None, None] & mask[None, :, None]).any(axis=(0, 1)) | mask
        if (new == mask).all():
            return mask
        mask = new


def _classes(x: ColorGraph, mask: np.ndarray) -> tuple[tuple[int, ...], ...]:
    rel = mask[x.color]
    ncomp, labels = connected_components(csr_matrix(rel), directed=True, connection="strong")
    groups: dict[int, list[int]] = {}
    for a, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(a)
    return tuple(sorted(tuple(g) for g in groups.values()))


def _as_parabolic(x: ColorGraph, mask: np.ndarray) -> Parabolic:
    return Parabolic(frozenset(np.flatnonzero(mask).tolist()), _classes(x, mask))


def generated_parabolic(x: ColorGraph, colors) -> Parabolic:
    """Smallest parabolic containing the given colors."""
    comp = tensor(x).c > 0
    mask = np.zeros(x.rank, dtype=bool)
    mask[list(x.reflexive_colors)] = True
    for s in colors:
        mask[s] = True
        mask[x.converse[s]] = True
    return _as_parabolic(x, _closure(comp, mask))


def is_parabolic(x: ColorGraph, colors) -> bool:
    mask = np.zeros(x.rank, dtype=bool)
    mask[list(colors)] = True
    if not all(mask[c] for c in x.reflexive_colors):
        return False
    if not all(mask[x.converse[s]] for s in np.flatnonzero(mask)):
        return False
    return bool((_closure(tensor(x).c > 0, mask) == mask).all())


def parabolics(x: ColorGraph, max_rank: int = PARABOLIC_RANK_CUTOFF,
               single_color_only: bool = False) -> list[Parabolic]:
    """All parabolics of ``x``, ordered by (number of colors, colors).

    Every parabolic is a join of parabolics generated by single colors, so the
    lattice is enumerated by closing that generating set under joins. Above
    ``max_rank`` only 1_Omega and the single-color parabolics are returned.
    """
    comp = tensor(x).c > 0
    base = np.zeros(x.rank, dtype=bool)
    base[list(x.reflexive_colors)] = True
    gens = {}
    for s in range(x.rank):
        if s in x.reflexive_colors:
            continue
        m = base.copy()
        m[s] = m[x.converse[s]] = True
        m = _closure(comp, m)
        gens[m.tobytes()] = m
    found = {base.tobytes(): base}
    found.update(gens)
    if not single_color_only and x.rank <= max_rank:
        frontier = list(found.values())
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens.values():
                    j = _closure(comp, p | g)
                    key = j.tobytes()
                    if key not in found:
                        found[key] = j
                        nxt.append(j)
            frontier = nxt
    masks = sorted(found.values(), key=lambda m: (int(m.sum()), tuple(np.flatnonzero(m))))
    return [_as_parabolic(x, m) for m in masks]


@dataclass
class QuotientMap:
    pi: np.ndarray
    quotient: ColorGraph
    color_map: dict[int, int]


def quotient(x: ColorGraph, e: Parabolic) -> QuotientMap:
    if not is_parabolic(x, e.colors):
        raise CoherenceError("not a parabolic")
    pi = e.class_index(x.n)
    m, k = len(e.classes), x.rank
    present = np.zeros((m, m, k), dtype=bool)
    present[pi[:, None], pi[None, :], x.color] = True
    _, labels = np.unique(present.reshape(m * m, k), axis=0, return_inverse=True)
    q = ColorGraph(labels.reshape(m, m))
    cmap = {}
    qc = q.color[pi[:, None], pi[None, :]]
    for s in range(k):
        vals = np.unique(qc[x.color == s])
        if len(vals) != 1:
            raise CoherenceError(f"color {s} maps onto several quotient colors")
        cmap[s] = int(vals[0])
    rep = validate(q)
    if not rep:
        raise CoherenceError(f"quotient is not coherent: {rep.message}")
    return QuotientMap(pi, q, cmap)


def _is_parabolic_class(x: ColorGraph, delta: list[int]) -> bool:
    colors = set(np.unique(x.color[np.ix_(delta, delta)]).tolist())
    e = generated_parabolic(x, colors)
    return tuple(delta) in e.classes


def restriction(x: ColorGraph, delta) -> ColorGraph:
    """Restriction to a homogeneity set or to a class of a parabolic.

    Points of the result are ``sorted(delta)`` in that order.
    """
    delta = sorted(set(int(d) for d in delta))
    if not delta:
        raise CoherenceError("empty restriction")
    pf = x.point_fiber
    fibers_hit = set(pf[delta].tolist())
    is_homog = sum(len(x.fibers[f]) for f in fibers_hit) == len(delta)
    if not is_homog and not _is_parabolic_class(x, delta):
        raise CoherenceError("delta is neither a homogeneity set nor a parabolic class")
    return ColorGraph(x.color[np.ix_(delta, delta)])


def find_complement(x: ColorGraph, e: Parabolic, delta) -> Parabolic | None:
    """A two-class parabolic of x restricted to ``delta`` meeting every e-class once.

    Returned classes are in the original point labels; colors refer to the
    restriction ``restriction(x, delta)``.
    """
    delta = sorted(set(int(d) for d in delta))
    if not is_parabolic(x, e.colors):
        raise CoherenceError("e is not a parabolic")
    dset = set(delta)
    inside = [c for c in e.classes if set(c) & dset]
    for c in e.classes:
        if set(c) & dset and not set(c) <= dset:
            raise CoherenceError("delta is not a union of e-classes")
        if not set(c) & dset and len(c) != 1:
            raise CoherenceError("e is not trivial outside delta")
    if len({len(c) for c in inside}) != 1:
        raise CoherenceError("e-classes inside delta have different sizes")
    if len(inside[0]) != 2:
        return None
    xd = restriction(x, delta)
    for p in parabolics(xd):
        if p.num_classes != 2:
            continue
        classes = tuple(tuple(delta[i] for i in cls) for cls in p.classes)
        if all(len(set(cls) & set(ec)) == 1 for cls in classes for ec in inside):
            return Parabolic(p.colors, classes)
    return None


# ----------------------------------------------------------------------
# algebraic automorphisms and fusions


def is_algebraic_automorphism(x: ColorGraph, sigma) -> tuple[bool, tuple | None]:
    sigma = np.asarray(sigma, dtype=np.int64)
    k = x.rank
    if sorted(sigma.tolist()) != list(range(k)):
        return False, None
    c = tensor(x).c
    diff = c[np.ix_(sigma, sigma, sigma)] != c
    if diff.any():
        return False, tuple(int(v) for v in np.argwhere(diff)[0])
    return True, None


def color_orbits(k: int, perms) -> np.ndarray:
    """Orbit id (least member) of each color under the group generated by ``perms``."""
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p in perms:
        for s, t in enumerate(p):
            a, b = find(s), find(int(t))
            if a != b:
                parent[max(a, b)] = min(a, b)
    return np.array([find(i) for i in range(k)])


def algebraic_fusion(x: ColorGraph, phi_group) -> ColorGraph:
    phis = [np.asarray(p, dtype=np.int64) for p in phi_group]
    for p in phis:
        ok, where = is_algebraic_automorphism(x, p)
        if not ok:
            raise CoherenceError(f"not an algebraic automorphism; violated (r,s,t)={where}")
    orb = color_orbits(x.rank, phis)
    fused = ColorGraph(orb[x.color])
    rep = validate(fused)
    if not rep:
        raise CoherenceError(f"fusion is not coherent: {rep.message}")
    return fused


def trivial_configuration(n: int) -> ColorGraph:
    return ColorGraph(1 - np.eye(n, dtype=np.int64))
