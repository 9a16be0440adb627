"""Regenerate the static edge-list assets for the catalog solids.

Vertices come from the usual coordinate constructions; edges are read off
the convex hull (coplanar facets merged). Catalan solids are built as face
adjacency graphs of their Archimedean duals.

    python3 scripts/build_catalog.py
"""
from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np
from scipy.spatial import ConvexHull

PHI = (1 + 5 ** 0.5) / 2
OUT = Path(__file__).resolve().parents[1] / "src" / "cohconf" / "data" / "graphs"


def signs(v):
    out = set()
    for s in itertools.product((1, -1), repeat=3):
        out.add(tuple(a * b for a, b in zip(v, s)))
    return out


def all_perms(v):
    out = set()
    for p in itertools.permutations(v):
        out |= signs(p)
    return out


def even_perms(v):
    out = set()
    for k in range(3):
        out |= signs(v[k:] + v[:k])
    return out


def cyclic(vs):
    out = set()
    for v in vs:
        out |= even_perms(tuple(v))
    return out


def hull_faces(points):
    """Return (edges, faces) of the convex hull; faces are sets of vertex ids."""
    pts = np.asarray(sorted(points), dtype=float)
    hull = ConvexHull(pts)
    planes = {}
    for simplex, eq in zip(hull.simplices, hull.equations):
        key = tuple(np.round(eq, 6))
        planes.setdefault(key, set()).update(int(i) for i in simplex)
    faces = [frozenset(f) for f in planes.values()]
    edges = set()
    for a, b in itertools.combinations(range(len(faces)), 2):
        common = faces[a] & faces[b]
        if len(common) == 2:
            edges.add(tuple(sorted(common)))
    return pts, sorted(edges), faces


def polyhedron(points):
    pts, edges, _ = hull_faces(points)
    return len(pts), edges


def dual(points):
    _, _, faces = hull_faces(points)
    edges = []
    for a, b in itertools.combinations(range(len(faces)), 2):
        if len(faces[a] & faces[b]) == 2:
            edges.append((a, b))
    return len(faces), edges


def mobius_kantor():
    edges = []
    for i in range(8):
        edges.append((i, (i + 1) % 8))
        edges.append((i, 8 + i))
        edges.append((8 + i, 8 + (i + 3) % 8))
    return 16, sorted(tuple(sorted(e)) for e in edges)


def solids():
    p = PHI
    tetra = {(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)}
    octa = all_perms((1, 0, 0))
    cube = signs((1, 1, 1))
    icosa = cyclic([(0, 1, p)])
    dodeca = signs((1, 1, 1)) | cyclic([(0, 1 / p, p)])
    cubocta = all_perms((1, 1, 0))
    trunc_tetra = {v for v in all_perms((3, 1, 1)) if sum(x < 0 for x in v) % 2 == 0}
    icosidodeca = cyclic([(0, 0, p), (0.5, p / 2, p * p / 2)])
    srco = all_perms((1, 1, 1 + 2 ** 0.5))
    trunc_octa = all_perms((0, 1, 2))
    trunc_cubocta = all_perms((1, 1 + 2 ** 0.5, 1 + 2 * 2 ** 0.5))
    srid = cyclic([(1, 1, p ** 3), (p * p, p, 2 * p), (2 + p, 0, p * p)])
    trunc_icosidodeca = cyclic([
        (1 / p, 1 / p, 3 + p), (2 / p, p, 1 + 2 * p), (1 / p, p * p, -1 + 3 * p),
        (2 * p - 1, 2, 2 + p), (p, 3, 2 * p),
    ])
    return {
        "tetrahedron": polyhedron(tetra),
        "octahedron": polyhedron(octa),
        "cube": polyhedron(cube),
        "icosahedron": polyhedron(icosa),
        "dodecahedron": polyhedron(dodeca),
        "cuboctahedron": polyhedron(cubocta),
        "truncated_tetrahedron": polyhedron(trunc_tetra),
        "icosidodecahedron": polyhedron(icosidodeca),
        "rhombic_dodecahedron": dual(cubocta),
        "small_rhombicuboctahedron": polyhedron(srco),
        "truncated_octahedron": polyhedron(trunc_octa),
        "rhombic_triacontahedron": dual(icosidodeca),
        "disdyakis_dodecahedron": dual(trunc_cubocta),
        "small_rhombicosidodecahedron": polyhedron(srid),
        "disdyakis_triacontahedron": dual(trunc_icosidodeca),
        "mobius_kantor": mobius_kantor(),
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, (n, edges) in solids().items():
        deg = np.bincount(np.array(edges).ravel(), minlength=n)
        hist = dict(sorted(zip(*np.unique(deg, return_counts=True))))
        print(f"{name:32s} n={n:3d} m={len(edges):4d} degrees={hist}")
        lines = [f"{n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
        (OUT / f"{name}.edges").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
