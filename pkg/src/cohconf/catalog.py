"""Built-in catalog: the named polyhedral graphs and the spherical groups.

Graphs are static edge lists under ``data/graphs``. Groups are stored as
generators of one faithful action per abstract group; each orbit type is the
coset action on a listed point stabilizer, given by generator words.

Group names look like ``alt5/orbits=30+20+12`` or ``sym4xC2/orbits=24I+8``;
``D2nxC2`` takes a parameter: ``D2nxC2[n=4]/orbits=8I+8II``.
"""
from __future__ import annotations

import ast
import json
import math
import operator
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .io import parse_edge_list
from .perm import Perm, PermGroup, coset_action, disjoint_union


class CatalogError(KeyError):
    pass


_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv, ast.USub: operator.neg, ast.Pow: operator.pow}


def eval_surd(expr: str) -> float:
    """Evaluate arithmetic with ``sqrt``, e.g. ``(7-sqrt(17))/2``."""
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.operand))
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id == "sqrt" and len(node.args) == 1):
            return math.sqrt(ev(node.args[0]))
        raise ValueError(f"unsupported expression {expr!r}")
    return ev(ast.parse(expr, mode="eval"))


@dataclass(frozen=True)
class Hints:
    matrix: str
    eigenvalue: str
    rank: int
    rho_classes: int
    group: str

    @property
    def eigenvalue_value(self) -> float:
        return eval_surd(self.eigenvalue)


# name: (|S|, |S_rho|, matrix, lambda, group of the configuration)
SOLIDS: dict[str, Hints] = {
    name: Hints(m, lam, r, rr, grp) for name, (r, rr, m, lam, grp) in {
        "tetrahedron": (2, 2, "L", "4", "sym4I/orbits=4"),
        "octahedron": (3, 3, "L", "4", "sym4xC2/orbits=6"),
        "cube": (4, 4, "L", "2", "sym4xC2/orbits=8"),
        "icosahedron": (4, 4, "L", "5-sqrt(5)", "alt5xC2/orbits=12"),
        "cuboctahedron": (5, 5, "L", "2", "sym4xC2/orbits=12"),
        "dodecahedron": (6, 6, "L", "3-sqrt(5)", "alt5xC2/orbits=20"),
        "truncated_tetrahedron": (7, 6, "L", "1", "sym4I/orbits=12"),
        "icosidodecahedron": (10, 9, "L", "3-sqrt(5)", "alt5xC2/orbits=30"),
        "rhombic_dodecahedron": (11, 11, "L", "(7-sqrt(17))/2", "sym4xC2/orbits=8+6"),
        "small_rhombicuboctahedron": (14, 12, "L", "1", "sym4xC2/orbits=24I"),
        "truncated_octahedron": (16, 11, "L", "4-sqrt(2)", "sym4xC2/orbits=24II"),
        "rhombic_triacontahedron": (18, 18, "L", "3-sqrt(5)", "alt5xC2/orbits=20+12"),
        "disdyakis_dodecahedron": (28, 25, "A", "4", "sym4xC2/orbits=12+8+6"),
        "small_rhombicosidodecahedron": (32, 22, "L", "(3-sqrt(5))/2", "alt5xC2/orbits=60"),
        "disdyakis_triacontahedron": (52, 49, "A", "sqrt(5)", "alt5xC2/orbits=30+20+12"),
    }.items()
}

# vertex-degree distributions, e.g. 30[4]+20[6]+12[10] -> {4: 30, 6: 20, 10: 12}
DEGREES: dict[str, dict[int, int]] = {
    "tetrahedron": {3: 4}, "octahedron": {4: 6}, "cube": {3: 8}, "icosahedron": {5: 12},
    "cuboctahedron": {4: 12}, "dodecahedron": {3: 20}, "truncated_tetrahedron": {3: 12},
    "icosidodecahedron": {4: 30}, "rhombic_dodecahedron": {3: 8, 4: 6},
    "small_rhombicuboctahedron": {4: 24}, "truncated_octahedron": {3: 24},
    "rhombic_triacontahedron": {3: 20, 5: 12}, "disdyakis_dodecahedron": {4: 12, 6: 8, 8: 6},
    "small_rhombicosidodecahedron": {4: 60},
    "disdyakis_triacontahedron": {4: 30, 6: 20, 10: 12},
    "mobius_kantor": {3: 16},
}


def graph_names() -> list[str]:
    root = resources.files("cohconf") / "data" / "graphs"
    return sorted(p.name[:-6] for p in root.iterdir() if p.name.endswith(".edges"))


@lru_cache(maxsize=None)
def load_graph(name: str) -> tuple[int, tuple[tuple[int, int], ...]]:
    path = resources.files("cohconf") / "data" / "graphs" / f"{name}.edges"
    if not path.is_file():
        raise CatalogError(f"unknown graph {name!r}; known: {', '.join(graph_names())}")
    n, edges = parse_edge_list(path.read_text())
    return n, tuple(edges)


@dataclass
class GroupEntry:
    name: str
    base: PermGroup
    orbit_stabilizers: dict[str, list[list[str]]] = field(default_factory=dict)

    def action(self, token: str) -> PermGroup:
        if token not in self.orbit_stabilizers:
            raise CatalogError(f"{self.name} has no orbit type {token!r}; "
                               f"known: {', '.join(self.orbit_stabilizers)}")
        return coset_action(self.base, self.orbit_stabilizers[token])


@lru_cache(maxsize=None)
def _group_data() -> dict:
    path = resources.files("cohconf") / "data" / "groups.json"
    return json.loads(path.read_text())


def dihedral_x_c2(n: int) -> GroupEntry:
    """D_2n x C_2 = <t1, t2, t3> with t3 central, acting faithfully on 2n + 2 points."""
    if n < 2:
        raise CatalogError("D2nxC2 needs n >= 2")
    deg = 2 * n + 2

    def pt(i, eps):
        return (i % n) + n * eps

    t1 = [0] * deg
    t2 = [0] * deg
    for i in range(n):
        for eps in (0, 1):
            t1[pt(i, eps)] = pt(-i, 1 - eps)
            t2[pt(i, eps)] = pt(1 - i, 1 - eps)
    t1[2 * n], t1[2 * n + 1] = 2 * n, 2 * n + 1
    t2[2 * n], t2[2 * n + 1] = 2 * n, 2 * n + 1
    t3 = list(range(2 * n)) + [2 * n + 1, 2 * n]
    base = PermGroup(deg, (Perm(tuple(t1)), Perm(tuple(t2)), Perm(tuple(t3))), ("t1", "t2", "t3"))
    big, small = 2 * n, n
    stabs = {
        f"{big}I": [["t1"]], f"{big}II": [["t2"]], f"{big}III": [["t3"]],
        f"{small}I": [["t2"], ["t3"]], f"{small}II": [["t1"], ["t3"]], "2": [["t1"], ["t2"]],
    }
    return GroupEntry(f"D2nxC2[n={n}]", base, stabs)


def group_entry(kind: str) -> GroupEntry:
    m = re.fullmatch(r"D2nxC2\[n=(\d+)\]", kind)
    if m:
        return dihedral_x_c2(int(m.group(1)))
    data = _group_data()
    if kind not in data:
        raise CatalogError(f"unknown group {kind!r}; known: {', '.join(data)}, D2nxC2[n=..]")
    d = data[kind]
    base = PermGroup(d["degree"], tuple(Perm(tuple(g)) for g in d["generators"]),
                     tuple(d["generator_names"]), kind)
    return GroupEntry(kind, base, d["orbits"])


def load_group(name: str) -> PermGroup:
    """Resolve ``kind/orbits=a+b+...`` to the permutation group on the union of orbits."""
    m = re.fullmatch(r"([^/]+)/orbits=([\w+]+)", name)
    if not m:
        raise CatalogError(f"group name {name!r} must look like 'alt5/orbits=30+20'")
    entry = group_entry(m.group(1))
    actions = [entry.action(tok) for tok in m.group(2).split("+")]
    return disjoint_union(actions, name)


def group_names() -> list[str]:
    return sorted(_group_data()) + ["D2nxC2[n=...]"]
