"""Finite permutation groups given by generators.

Points are ``0..degree-1``. Permutations act on the right: the image of a
point ``a`` under ``g`` is ``g.images[a]`` and ``g * h`` applies ``g`` first.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .ccstruct import ColorGraph


class PermError(ValueError):
    pass


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise PermError(f"not a permutation: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        img = list(range(degree))
        for cyc in cycles:
            for i, a in enumerate(cyc):
                img[a] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Perm") -> "Perm":
        o = other.images
        return Perm(tuple(o[a] for a in self.images))

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        out = Perm.identity(self.degree)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for a, b in enumerate(self.images):
            inv[b] = a
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(a == b for a, b in enumerate(self.images))

    def order(self) -> int:
        k, p = 1, self
        while not p.is_identity():
            p = p * self
            k += 1
        return k

    def __call__(self, a: int) -> int:
        return self.images[a]

    def __repr__(self):
        seen, cycles = set(), []
        for a in range(self.degree):
            if a in seen or self.images[a] == a:
                continue
            cyc, b = [a], self.images[a]
            seen.add(a)
            while b != a:
                cyc.append(b)
                seen.add(b)
                b = self.images[b]
            cycles.append("(" + " ".join(map(str, cyc)) + ")")
        return "Perm(" + ("".join(cycles) or "()") + ")"


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Perm, ...] = ()
    names: tuple[str, ...] = ()
    name: str | None = None

    def __post_init__(self):
        gens = tuple(g if isinstance(g, Perm) else Perm(tuple(g)) for g in self.generators)
        for g in gens:
            if g.degree != self.degree:
                raise PermError(f"generator of degree {g.degree} in a group of degree {self.degree}")
        object.__setattr__(self, "generators", gens)
        if self.names and len(self.names) != len(gens):
            raise PermError("generator names do not match generators")

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def elements(self, limit: int = 100_000) -> list[Perm]:
        """All group elements by closure; ``limit`` guards against large groups."""
        e = self.identity()
        seen = {e.images: e}
        queue = deque([e])
        while queue:
            p = queue.popleft()
            for g in self.generators:
                q = p * g
                if q.images not in seen:
                    seen[q.images] = q
                    queue.append(q)
                    if len(seen) > limit:
                        raise PermError(f"group order exceeds {limit}")
        return list(seen.values())

    def order(self) -> int:
        return len(self.elements())

    def evaluate(self, word) -> Perm:
        """Evaluate a word: a sequence of generator names or indices.

        A trailing ``^-1`` on a name (or a negative index ``-(i+1)``) inverts
        that letter.
        """
        if isinstance(word, str):
            word = word.split()
        out = self.identity()
        for letter in word:
            out = out * self._letter(letter)
        return out

    def _letter(self, letter) -> Perm:
        if isinstance(letter, (int, np.integer)):
            i = int(letter)
            if i >= 0:
                if i >= len(self.generators):
                    raise PermError(f"no generator {i}")
                return self.generators[i]
            j = -i - 1
            if j >= len(self.generators):
                raise PermError(f"no generator {j}")
            return self.generators[j].inverse()
        inverse = letter.endswith("^-1")
        key = letter[:-3] if inverse else letter
        if key not in self.names:
            raise PermError(f"malformed word: unknown generator {letter!r}")
        g = self.generators[self.names.index(key)]
        return g.inverse() if inverse else g

    def as_json(self) -> dict:
        d = {"degree": self.degree, "generators": [list(g.images) for g in self.generators]}
        if self.name:
            d["name"] = self.name
        if self.names:
            d["generator_names"] = list(self.names)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "PermGroup":
        return cls(
            int(d["degree"]),
            tuple(Perm(tuple(g)) for g in d.get("generators", [])),
            tuple(d.get("generator_names", ())),
            d.get("name"),
        )


@dataclass
class OrbitDecomposition:
    orbit_id: list[int]
    orbits: list[list[int]] = field(default_factory=list)

    def orbit_of(self, point: int) -> list[int]:
        return self.orbits[self.orbit_id[point]]


def orbits(g: PermGroup) -> OrbitDecomposition:
    orbit_id = [-1] * g.degree
    out = []
    for start in range(g.degree):
        if orbit_id[start] >= 0:
            continue
        orb, queue = [start], deque([start])
        orbit_id[start] = len(out)
        while queue:
            a = queue.popleft()
            for p in g.generators:
                b = p.images[a]
                if orbit_id[b] < 0:
                    orbit_id[b] = len(out)
                    orb.append(b)
                    queue.append(b)
        out.append(sorted(orb))
    return OrbitDecomposition(orbit_id, out)


def inv(g: PermGroup) -> ColorGraph:
    """The coherent configuration of 2-orbits of ``g``."""
    n = g.degree
    if n < 1:
        raise PermError("degree must be positive")
    parent = np.arange(n * n)

    def find(i):
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    pairs = np.arange(n * n)
    a, b = pairs // n, pairs % n
    for p in g.generators:
        img = np.asarray(p.images)
        target = img[a] * n + img[b]
        for i, j in zip(pairs, target):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    roots = np.array([find(i) for i in range(n * n)])
    return ColorGraph(roots.reshape(n, n))


def coset_action(g: PermGroup, subgroup_words) -> PermGroup:
    """Action of ``g`` on the right cosets of the subgroup generated by the words.

    The subgroup itself is point 0; other cosets are numbered in order of
    discovery by breadth-first search over the generators.
    """
    sub_gens = [g.evaluate(w) for w in subgroup_words]
    h = PermGroup(g.degree, tuple(sub_gens))
    h_elems = frozenset(p.images for p in h.elements())

    def key(x: Perm):
        # canonical representative of the coset Hx: least image tuple
        xi = x.images
        return min(tuple(xi[a] for a in he) for he in h_elems)

    e = g.identity()
    index = {key(e): 0}
    reps = [e]
    queue = deque([0])
    images = [dict() for _ in g.generators]
    while queue:
        i = queue.popleft()
        x = reps[i]
        for gi, p in enumerate(g.generators):
            y = x * p
            k = key(y)
            if k not in index:
                index[k] = len(reps)
                reps.append(y)
                queue.append(index[k])
            images[gi][i] = index[k]
    m = len(reps)
    gens = tuple(Perm(tuple(images[gi][i] for i in range(m))) for gi in range(len(g.generators)))
    return PermGroup(m, gens, g.names)


def disjoint_union(actions: Sequence[PermGroup], name: str | None = None) -> PermGroup:
    """Simultaneous action of several actions of the same abstract group."""
    if not actions:
        raise PermError("no actions given")
    ngen = len(actions[0].generators)
    if any(len(a.generators) != ngen for a in actions):
        raise PermError("actions have different generator counts")
    gens, offset = [[] for _ in range(ngen)], 0
    for act in actions:
        for gi, p in enumerate(act.generators):
            gens[gi].extend(offset + x for x in p.images)
        offset += act.degree
    return PermGroup(offset, tuple(Perm(tuple(x)) for x in gens), actions[0].names, name)


def _check_orbit(dec: OrbitDecomposition, pts) -> int:
    pts = sorted(int(p) for p in pts)
    if not pts:
        raise PermError("empty point set is not an orbit")
    oid = dec.orbit_id[pts[0]]
    if dec.orbits[oid] != pts:
        raise PermError(f"{pts} is not an orbit")
    return oid


def dominates(g: PermGroup, gamma, delta, x: ColorGraph | None = None) -> bool:
    """True iff some 2-orbit s in gamma x delta has exactly one out-neighbour per point."""
    dec = orbits(g)
    _check_orbit(dec, gamma)
    _check_orbit(dec, delta)
    x = inv(g) if x is None else x
    gamma, delta = sorted(gamma), sorted(delta)
    c0 = gamma[0]
    block = x.color[c0, delta]
    return bool((np.bincount(block) == 1).any())


def is_domination_free(g: PermGroup) -> bool:
    dec = orbits(g)
    x = inv(g)
    for i, gamma in enumerate(dec.orbits):
        for j, delta in enumerate(dec.orbits):
            if i != j and dominates(g, gamma, delta, x):
                return False
    return True


def mutually_dominating(g: PermGroup, delta, gamma) -> bool:
    x = inv(g)
    return dominates(g, delta, gamma, x) and dominates(g, gamma, delta, x)
