"""Spherical (S_2) representations from rank-3 eigenprojections.

A graph matrix M (Laplacian or adjacency) with an eigenvalue of multiplicity
three gives an orthogonal projection P onto that eigenspace. Normalizing the
columns of P places the vertices on the unit sphere in that 3-space; the Gram
matrix of these unit vectors is D P D with D = diag(P)^(-1/2).

The numerics are always checked against the combinatorics: P and the Gram
matrix must be constant on every color of the configuration.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ccstruct import ColorGraph, CoherenceError, Parabolic, check_rainbow, generated_parabolic
from .wl import wl_close

EIG_REL_TOL = 1e-7
GRAM_TOL = 1e-6
CONSTANCY_TOL = 1e-7


class SpectralError(ValueError):
    pass


def adjacency_matrix(edges, n: int) -> np.ndarray:
    a = np.zeros((n, n))
    for u, v in edges:
        a[u, v] = a[v, u] = 1.0
    return a


def graph_operator(adj: np.ndarray, matrix: str = "L") -> np.ndarray:
    adj = np.asarray(adj, dtype=float)
    if matrix == "A":
        return adj
    if matrix == "L":
        return np.diag(adj.sum(axis=1)) - adj
    raise SpectralError(f"matrix kind must be 'L' or 'A', got {matrix!r}")


@dataclass
class Eigenspace:
    value: float
    vectors: np.ndarray  # n x multiplicity, orthonormal columns

    @property
    def multiplicity(self) -> int:
        return self.vectors.shape[1]


def eigenspaces(m: np.ndarray) -> list[Eigenspace]:
    """Eigenspaces of a symmetric matrix, in increasing order of eigenvalue."""
    vals, vecs = np.linalg.eigh(m)
    tol = EIG_REL_TOL * max(1.0, float(np.linalg.norm(m, 2)))
    out, start = [], 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > tol:
            out.append(Eigenspace(float(vals[start:i].mean()), vecs[:, start:i]))
            start = i
    return out


def _pick(spaces: list[Eigenspace], matrix: str, eigenvalue) -> Eigenspace:
    triples = [e for e in spaces if e.multiplicity == 3]
    if isinstance(eigenvalue, str) and eigenvalue in ("auto", "fiedler"):
        # second smallest for L, second largest for A
        fied = spaces[1] if matrix == "L" else spaces[-2]
        if eigenvalue == "fiedler" or fied.multiplicity == 3:
            if fied.multiplicity != 3:
                raise SpectralError(f"Fiedler eigenvalue {fied.value:.9g} has multiplicity "
                                    f"{fied.multiplicity}, not 3")
            return fied
        if not triples:
            raise SpectralError("no eigenvalue of multiplicity 3")
        return triples[0]
    lam = float(eigenvalue)
    near = [e for e in spaces if abs(e.value - lam) <= 1e-6]
    if not near:
        raise SpectralError(f"{lam} is not an eigenvalue (spectrum: "
                            f"{', '.join(f'{e.value:.6g}^{e.multiplicity}' for e in spaces)})")
    if near[0].multiplicity != 3:
        raise SpectralError(f"eigenvalue {lam} has multiplicity {near[0].multiplicity}, not 3")
    return near[0]


def multiplicity3_eigenvalues(adj: np.ndarray, matrix: str = "L") -> list[float]:
    """Eigenvalues of multiplicity exactly 3, Fiedler value first, then increasing."""
    spaces = eigenspaces(graph_operator(adj, matrix))
    triples = [e.value for e in spaces if e.multiplicity == 3]
    fied = spaces[1] if matrix == "L" else spaces[-2]
    if fied.multiplicity == 3:
        triples.remove(fied.value)
        triples.insert(0, fied.value)
    return triples


def _color_spread(x: ColorGraph, mat: np.ndarray) -> np.ndarray:
    """Per-color (max - min) of mat over the color class."""
    flat, vals = x.color.ravel(), mat.ravel()
    hi = np.full(x.rank, -np.inf)
    lo = np.full(x.rank, np.inf)
    np.maximum.at(hi, flat, vals)
    np.minimum.at(lo, flat, vals)
    return hi - lo


def _color_means(x: ColorGraph, mat: np.ndarray) -> np.ndarray:
    return np.bincount(x.color.ravel(), weights=mat.ravel()) / x.sizes


@dataclass
class Projection:
    P: np.ndarray
    basis: np.ndarray  # n x 3 orthonormal basis of the eigenspace
    matrix: str
    eigenvalue: float


def projection(x: ColorGraph, adj: np.ndarray, matrix: str = "L", eigenvalue="auto") -> Projection:
    """Orthogonal projection onto a multiplicity-3 eigenspace of L or A."""
    n = x.n
    if n < 3:
        raise SpectralError("a rank-3 projection needs at least 3 points")
    adj = np.asarray(adj, dtype=float)
    if adj.shape != (n, n):
        raise SpectralError(f"adjacency is {adj.shape}, configuration has {n} points")
    space = _pick(eigenspaces(graph_operator(adj, matrix)), matrix, eigenvalue)
    v = space.vectors
    p = v @ v.T
    if np.abs(p @ p - p).max() > 1e-9 or np.abs(p - p.T).max() > 1e-9:
        raise SpectralError("projection is not idempotent and symmetric within 1e-9")
    if np.linalg.matrix_rank(p, tol=1e-8) != 3:
        raise SpectralError("projection does not have rank 3")
    if np.diag(p).min() < 1e-9:
        raise SpectralError(f"projection has a zero column at vertex {int(np.argmin(np.diag(p)))}; "
                            "vertices cannot be placed on the sphere")
    spread = _color_spread(x, p)
    if spread.max() > CONSTANCY_TOL:
        s = int(np.argmax(spread))
        raise SpectralError(f"projection is not constant on color {s} (spread {spread[s]:.3g}); "
                            "it is not in the adjacency algebra of this configuration")
    return Projection(p, v, matrix, space.value)


@dataclass
class SphericalRep:
    points: np.ndarray  # n x 3 unit vectors
    gram: np.ndarray
    W: list[float]
    w_of_color: np.ndarray  # color -> index into W
    antipodal: Parabolic | None  # None when the map is not injective
    color: np.ndarray  # color matrix of the configuration
    matrix: str
    eigenvalue: float
    dim: int = 2
    antipodal_colors: frozenset[int] = field(default_factory=frozenset)
    injective: bool = True

    @property
    def w_matrix(self) -> np.ndarray:
        """Index into W of every Gram entry."""
        return self.w_of_color[self.color]

    def s(self, w_index: int) -> list[int]:
        """Colors whose Gram value is W[w_index]."""
        return np.flatnonzero(self.w_of_color == w_index).tolist()

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix,
            "eigenvalue": self.eigenvalue,
            "points": self.points.round(12).tolist(),
            "W": self.W,
            "w_of_color": self.w_of_color.tolist(),
            "injective": self.injective,
            "antipodal_colors": sorted(self.antipodal_colors),
            "antipodal_classes": [list(c) for c in self.antipodal.classes] if self.antipodal else None,
        }


def _cluster(values: np.ndarray, tol: float) -> tuple[list[float], np.ndarray]:
    order = np.argsort(values)
    sv = values[order]
    labels = np.zeros(len(values), dtype=np.int64)
    groups = [[sv[0]]]
    for i in range(1, len(sv)):
        gap = sv[i] - sv[i - 1]
        if gap > tol:
            if gap < 10 * tol:
                raise SpectralError(f"Gram values {sv[i - 1]:.9g} and {sv[i]:.9g} are too close "
                                    "to separate reliably")
            groups.append([])
        groups[-1].append(sv[i])
        labels[order[i]] = len(groups) - 1
    return [float(np.mean(g)) for g in groups], labels


def build_rep(x: ColorGraph, proj: Projection, require_injective: bool = True) -> SphericalRep:
    """Normalize the columns of P; with ``require_injective=False`` coinciding points are allowed
    (the result is then not a representation, but its Gram classes can still be studied)."""
    p = proj.P
    d = 1.0 / np.sqrt(np.diag(p))
    gram = d[:, None] * p * d[None, :]
    points = proj.basis * d[:, None]
    spread = _color_spread(x, gram)
    if spread.max() > CONSTANCY_TOL:
        raise SpectralError(f"Gram matrix not constant on color {int(np.argmax(spread))}")
    W, w_of_color = _cluster(_color_means(x, gram), GRAM_TOL)
    one = int(np.argmin(np.abs(np.array(W) - 1.0)))
    if abs(W[one] - 1.0) > GRAM_TOL:
        raise SpectralError("no Gram value equal to 1")
    off = [s for s in range(x.rank) if s not in x.reflexive_colors]
    bad = [s for s in off if w_of_color[s] == one]
    if bad and require_injective:
        a, b = np.argwhere(x.color == bad[0])[0]
        raise SpectralError(f"representation is not injective: points {a} and {b} coincide")
    anti = {s for s in range(x.rank) if abs(W[w_of_color[s]]) > 1.0 - GRAM_TOL}
    e = None
    if not bad:
        e = generated_parabolic(x, anti)
        if set(e.colors) != anti:
            raise SpectralError("colors with Gram value +-1 do not form a parabolic")
    return SphericalRep(points, gram, W, w_of_color, e, x.color, proj.matrix, proj.eigenvalue,
                        antipodal_colors=frozenset(anti), injective=not bad)


def fiber_class_count(x: ColorGraph, rep: SphericalRep) -> int:
    """Number of nonempty sets s(w) & (D x Omega) over Gram values w and fibers D.

    Equals |W| for homogeneous configurations.
    """
    wm = rep.w_matrix
    rows = np.repeat(x.point_fiber, x.n)
    return len(set(zip(wm.ravel().tolist(), rows.tolist())))


def rainbow_rho(x: ColorGraph, rep: SphericalRep) -> ColorGraph:
    """The rainbow whose classes are the Gram-value classes s(w)."""
    gram_ok = np.abs(rep.gram - np.array(rep.W)[rep.w_of_color[x.color]]).max()
    if gram_ok > GRAM_TOL:
        raise SpectralError("a color straddles two Gram clusters")
    rb = gram_classes(rep)
    rep_check = check_rainbow(rb)
    if not rep_check:
        raise CoherenceError(f"Gram classes violate {rep_check.axiom}: {rep_check.message}")
    return rb


def is_faithful(x: ColorGraph, rb: ColorGraph) -> bool:
    """True iff the coherent closure of rb is x; x refines rb, so ranks decide.

    Also accepts the Gram classes of a non-injective map, whose diagonal is
    not a union of classes; the closure separates it first.
    """
    return wl_close(rb).rank == x.rank


def gram_classes(rep: SphericalRep) -> ColorGraph:
    """Gram-value classes without the rainbow check (used for non-injective maps)."""
    return ColorGraph(rep.w_matrix, canonical=False)


def representation(x: ColorGraph, adj: np.ndarray, matrix: str = "L", eigenvalue="auto") -> SphericalRep:
    return build_rep(x, projection(x, adj, matrix, eigenvalue))
