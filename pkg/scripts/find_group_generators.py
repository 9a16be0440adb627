"""Search concrete permutation groups for generators satisfying short
relator presentations and write them to src/cohconf/data/groups.json.

Each abstract group is realised faithfully on a handful of points
(sym(4) on 4, alt(5) on 5, direct products with C2 on two extra points).
The first generator tuple in a fixed enumeration order that satisfies the
relations and generates a group of the right order is stored.

    python3 scripts/find_group_generators.py
"""
from __future__ import annotations

import itertools
import json
from pathlib import Path

from cohconf.perm import Perm, PermGroup

OUT = Path(__file__).resolve().parents[1] / "src" / "cohconf" / "data" / "groups.json"


def sym(n):
    return [Perm(p) for p in itertools.permutations(range(n))]


def parity(p: Perm) -> int:
    seen, sign = set(), 0
    for a in range(p.degree):
        if a in seen:
            continue
        b, length = a, 0
        while b not in seen:
            seen.add(b)
            b = p.images[b]
            length += 1
        sign += length - 1
    return sign % 2


def with_c2(elems, degree):
    """Elements of G x C2 acting on degree + 2 points."""
    out = []
    for p in elems:
        for z in (False, True):
            tail = (degree + 1, degree) if z else (degree, degree + 1)
            out.append(Perm(p.images + tail))
    return out


def word_order(gens, word):
    p = Perm.identity(gens[0].degree)
    for i in word:
        p = p * gens[i]
    return p.order()


def search(elems, k, orders, relations, group_order, names):
    """orders[i] = order of generator i; relations = list of (word, order)."""
    for combo in itertools.product(elems, repeat=k):
        if any(combo[i].order() != orders[i] for i in range(k)):
            continue
        if any(word_order(combo, w) != o for w, o in relations):
            continue
        g = PermGroup(combo[0].degree, combo, names)
        if g.order() == group_order:
            return g
    raise RuntimeError("no generators found")


def commutes(a, b):
    return (a * b).images == (b * a).images


def main():
    s4, s5 = sym(4), sym(5)
    a4 = [p for p in s4 if parity(p) == 0]
    a5 = [p for p in s5 if parity(p) == 0]
    out = {}

    g = search(a4, 2, [3, 3], [((0, 1), 2)], 12, ("r1", "r2"))
    out["alt4"] = {"gens": g, "orbits": {"6": [["r1", "r2"]], "4": [["r1"]]}}

    g = search(s4, 3, [2, 2, 2], [((0, 2), 3), ((0, 1), 3), ((1, 2), 2)], 24, ("t1", "t2", "t3"))
    out["sym4I"] = {"gens": g, "orbits": {"12": [["t1"]], "6": [["t2"], ["t3"]], "4": [["t1"], ["t2"]]}}

    g = search(s4, 2, [3, 4], [((0, 1), 2)], 24, ("r1", "r2"))
    out["sym4II"] = {"gens": g, "orbits": {"12": [["r1", "r2"]], "8": [["r1"]], "6": [["r2"]]}}

    g = search(a5, 2, [3, 5], [((0, 1), 2)], 60, ("r1", "r2"))
    out["alt5"] = {"gens": g, "orbits": {"30": [["r1", "r2"]], "20": [["r1"]], "12": [["r2"]]}}

    # alt(4) x C2 = <r, t, z>: z central of order 2
    a4c2 = with_c2(a4, 4)
    z = Perm((0, 1, 2, 3, 5, 4))
    base = search(a4c2, 2, [3, 2], [((0, 1), 3)], 12, ("r", "t"))
    g = PermGroup(6, base.generators + (z,), ("r", "t", "z"))
    assert g.order() == 24 and all(commutes(z, p) for p in base.generators)
    out["alt4xC2"] = {"gens": g, "orbits": {"12": [["z"]], "8": [["r"]], "6": [["z"], ["t"]]}}

    s4c2 = [p for p in with_c2(s4, 4) if p.order() == 2]
    g = search(s4c2, 3, [2, 2, 2], [((0, 1), 4), ((0, 2), 3), ((1, 2), 2)], 48, ("t1", "t2", "t3"))
    out["sym4xC2"] = {"gens": g, "orbits": {
        "24I": [["t1"]], "24II": [["t2"]], "12": [["t2"], ["t3"]], "8": [["t1"], ["t3"]], "6": [["t1"], ["t2"]]}}

    a5c2 = [p for p in with_c2(a5, 5) if p.order() == 2]
    g = search(a5c2, 3, [2, 2, 2], [((0, 1), 5), ((1, 2), 2), ((0, 2), 3)], 120, ("t1", "t2", "t3"))
    out["alt5xC2"] = {"gens": g, "orbits": {
        "60": [["t1"]], "30": [["t2"], ["t3"]], "20": [["t1"], ["t3"]], "12": [["t1"], ["t2"]]}}

    data = {}
    for name, entry in out.items():
        g = entry["gens"]
        data[name] = {
            "degree": g.degree,
            "generator_names": list(g.names),
            "generators": [list(p.images) for p in g.generators],
            "order": g.order(),
            "orbits": entry["orbits"],
        }
        print(name, g.order(), [p for p in g.generators])
    OUT.write_text(json.dumps(data, indent=1) + "\n")


if __name__ == "__main__":
    main()
