"""Rigid point sets of spherical representations.

A point set D is closed when no outside point g can be added by the growth
rule: there are distinct a, b in D with r(a, b) non-antipodal such that, for
u = w(r(a, g)) and v = w(r(b, g)), every color t in S(D; a, b) satisfies
c^t_{s(u), s(v)} = 2. A set is rigid when its closure is all points.

S(D; a, b) is {r(a, b)} for |D| = 2 and otherwise the set of colors t with
c^t_{s(u_d), s(v_d)} >= 1 for every d in D - {a, b}, where u_d = w(r(a, d)) and
v_d = w(r(d, b)): t lies in the composition of two Gram classes exactly
when the union-extended intersection number is positive.

By default S(D; a, b) is further cut down to colors with the same Gram value
as r(a, b) (``same_gram=True``). The pair (a, b) lies in D, so its Gram class
is visible from D, and any color that an algebraic isomorphism can send to
the color of a matching pair has that Gram value. Without the cut the
reflexive colors sneak into S(D; a, b) for |D| >= 3 and stall the closure.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .ccstruct import ColorGraph, tensor
from .spectral import SpectralError, SphericalRep, build_rep, is_faithful, \
    multiplicity3_eigenvalues, projection, rainbow_rho


class RigidityError(ValueError):
    pass


def union_tensor(x: ColorGraph, rep: SphericalRep) -> np.ndarray:
    """cw[u, v, t] = c^t_{s(u), s(v)} for Gram-value indices u, v."""
    groups = [rep.s(i) for i in range(len(rep.W))]
    return tensor(x).union(groups, groups)


def antipodal_bound_violations(x: ColorGraph, rep: SphericalRep, cw=None) -> list[tuple[int, int, int]]:
    """Triples (u, v, t), t non-antipodal, with c^t_{s(u), s(v)} > 2 (there should be none)."""
    cw = union_tensor(x, rep) if cw is None else cw
    bad = []
    for t in range(x.rank):
        if t in rep.antipodal_colors:
            continue
        for u, v in np.argwhere(cw[:, :, t] > 2):
            bad.append((int(u), int(v), t))
    return bad


def _gram_mask(x: ColorGraph, rep: SphericalRep, a: int, b: int) -> np.ndarray:
    return rep.w_of_color == rep.w_of_color[x.color[a, b]]


def s_delta(x: ColorGraph, rep: SphericalRep, delta, alpha: int, beta: int, cw=None,
            same_gram: bool = True) -> set[int]:
    if alpha == beta:
        raise RigidityError("S(D; a, b) needs distinct a and b")
    delta = set(int(d) for d in delta)
    if alpha not in delta or beta not in delta:
        raise RigidityError("a and b must lie in D")
    if len(delta) == 2:
        return {int(x.color[alpha, beta])}
    cw = union_tensor(x, rep) if cw is None else cw
    wm = rep.w_matrix
    ok = _gram_mask(x, rep, alpha, beta) if same_gram else np.ones(x.rank, dtype=bool)
    for d in delta - {alpha, beta}:
        ok &= cw[wm[alpha, d], wm[d, beta]] >= 1
    return set(np.flatnonzero(ok).tolist())


def s_delta_direct(x: ColorGraph, rep: SphericalRep, delta, alpha: int, beta: int,
                   same_gram: bool = True) -> set[int]:
    """S(D; a, b) by composing the Gram-class relations as 0/1 matrices."""
    if alpha == beta:
        raise RigidityError("S(D; a, b) needs distinct a and b")
    delta = set(int(d) for d in delta)
    if len(delta) == 2:
        return {int(x.color[alpha, beta])}
    wm = rep.w_matrix
    inter = np.ones((x.n, x.n), dtype=bool)
    for d in delta - {alpha, beta}:
        left = (wm == wm[alpha, d]).astype(np.int64)
        right = (wm == wm[d, beta]).astype(np.int64)
        inter &= (left @ right) > 0
    if same_gram:
        inter &= wm == wm[alpha, beta]
    return {t for t in range(x.rank) if inter[x.color == t].all()}


@dataclass
class Step:
    point: int
    witness: tuple[int, int]
    values: tuple[float, float]


@dataclass
class RigidityCertificate:
    seed: list[int]
    seed_color: int | None
    trace: list[Step] = field(default_factory=list)
    final: list[int] = field(default_factory=list)
    n: int = 0
    same_gram: bool = True

    @property
    def seed_pair(self) -> tuple[int, int] | None:
        return tuple(self.seed) if len(self.seed) == 2 else None

    @property
    def rigid(self) -> bool:
        return len(self.final) == self.n

    @property
    def result(self) -> str:
        return "rigid" if self.rigid else "not_rigid"

    @property
    def final_set_size(self) -> int:
        return len(self.final)

    def to_json(self) -> dict:
        d = asdict(self)
        d["result"] = self.result
        return d


class _Closure:
    """Incremental state: the set D and the mask S[a, b, t] for a, b in D."""

    def __init__(self, x: ColorGraph, rep: SphericalRep, cw: np.ndarray, seed, same_gram: bool):
        self.x, self.rep, self.cw = x, rep, cw
        self.same_gram = same_gram
        self.wm = rep.w_matrix
        n, k = x.n, x.rank
        self.members: list[int] = []
        self.inside = np.zeros(n, dtype=bool)
        self.S = np.zeros((n, n, k), dtype=bool)
        anti = np.zeros(k, dtype=bool)
        anti[list(rep.antipodal_colors)] = True
        self.nonanti = ~anti[x.color]
        for a in sorted(set(int(s) for s in seed)):
            self._add(a)

    def _full(self, a: int, b: int) -> np.ndarray:
        if self.same_gram:
            out = _gram_mask(self.x, self.rep, a, b)
        else:
            out = np.ones(self.x.rank, dtype=bool)
        for d in self.members:
            if d != a and d != b:
                out &= self.cw[self.wm[a, d], self.wm[d, b]] >= 1
        return out

    def _add(self, g: int):
        self.members.append(g)
        self.inside[g] = True
        m = self.members
        if len(m) < 2:
            return
        if len(m) == 2:
            a, b = m
            for p, q in ((a, b), (b, a)):
                self.S[p, q] = False
                self.S[p, q, self.x.color[p, q]] = True
        elif len(m) == 3:
            for p in m:
                for q in m:
                    if p != q:
                        self.S[p, q] = self._full(p, q)
        else:
            old = np.array(m[:-1])
            # pairs inside the old set gain one more constraint, through g
            self.S[np.ix_(old, old)] &= (self.cw[self.wm[np.ix_(old, [g])],
                                                 self.wm[np.ix_([g], old)]] >= 1)
            for p in m[:-1]:
                self.S[p, g] = self._full(p, g)
                self.S[g, p] = self._full(g, p)

    def witness(self, g: int) -> tuple[int, int] | None:
        """Lexicographically first pair (a, b) in D that lets g in, or None."""
        m = np.array(self.members)
        if len(m) < 2:
            return None
        u = self.wm[m, g]
        block = self.cw[u[:, None], u[None, :]]  # (d, d, k): c^t_{s(u_a), s(u_b)}
        S = self.S[np.ix_(m, m)]
        ok = ((block == 2) | ~S).all(axis=2)
        ok &= self.nonanti[np.ix_(m, m)]
        np.fill_diagonal(ok, False)
        hits = np.argwhere(ok)
        if len(hits) == 0:
            return None
        pairs = sorted((int(m[i]), int(m[j])) for i, j in hits)
        return pairs[0]


def rho_closure(x: ColorGraph, rep: SphericalRep, seed, cw=None,
                same_gram: bool = True) -> RigidityCertificate:
    """Smallest closed superset of seed; points are added smallest first."""
    seed = sorted(set(int(s) for s in seed))
    if len(seed) < 2:
        raise RigidityError("the seed needs at least two points")
    cw = union_tensor(x, rep) if cw is None else cw
    st = _Closure(x, rep, cw, seed, same_gram)
    seed_color = int(x.color[seed[0], seed[1]]) if len(seed) == 2 else None
    cert = RigidityCertificate(seed, seed_color, n=x.n, same_gram=same_gram)
    while True:
        for g in range(x.n):
            if st.inside[g]:
                continue
            w = st.witness(g)
            if w is not None:
                a, b = w
                cert.trace.append(Step(g, w, (rep.W[rep.w_matrix[a, g]], rep.W[rep.w_matrix[b, g]])))
                st._add(g)
                break
        else:
            break
    cert.final = sorted(st.members)
    return cert


def _rule_holds(x, rep, cw, delta: set[int], g: int, a: int, b: int, same_gram: bool) -> bool:
    if a == b or a not in delta or b not in delta or g in delta:
        return False
    if int(x.color[a, b]) in rep.antipodal_colors:
        return False
    wm = rep.w_matrix
    u, v = wm[a, g], wm[b, g]
    return all(cw[u, v, t] == 2 for t in s_delta_direct(x, rep, delta, a, b, same_gram))


def replay(x: ColorGraph, rep: SphericalRep, cert: RigidityCertificate) -> bool:
    """Check every step from scratch, that the end set is closed, and that it matches."""
    cw = union_tensor(x, rep)
    delta = set(cert.seed)
    wm = rep.w_matrix
    for step in cert.trace:
        a, b = step.witness
        if not _rule_holds(x, rep, cw, delta, step.point, a, b, cert.same_gram):
            return False
        if step.values != (rep.W[wm[a, step.point]], rep.W[wm[b, step.point]]):
            return False
        delta.add(step.point)
    if sorted(delta) != list(cert.final):
        return False
    for g in range(x.n):
        if g in delta:
            continue
        for a in delta:
            for b in delta:
                if _rule_holds(x, rep, cw, delta, g, a, b, cert.same_gram):
                    return False
    return True


@dataclass
class RigidSearch:
    color: int | None
    certificate: RigidityCertificate | None
    tried: list[tuple[int, int]]  # (color, closure size)


def find_rigid_color(x: ColorGraph, rep: SphericalRep, same_gram: bool = True) -> RigidSearch:
    """First non-reflexive, non-antipodal color whose first pair is rigid."""
    cw = union_tensor(x, rep)
    bad = antipodal_bound_violations(x, rep, cw)
    if bad:
        raise RigidityError(f"intersection bound fails for (u, v, t) = {bad[0]}")
    tried = []
    flat = x.color.ravel()
    first = np.unique(flat, return_index=True)[1]
    for s in range(x.rank):
        if s in x.reflexive_colors or s in rep.antipodal_colors:
            continue
        a, b = divmod(int(first[s]), x.n)
        cert = rho_closure(x, rep, [a, b], cw, same_gram)
        tried.append((s, cert.final_set_size))
        if cert.rigid:
            return RigidSearch(s, cert, tried)
    return RigidSearch(None, None, tried)


def pair_is_rigid(x: ColorGraph, rep: SphericalRep, a: int, b: int, cw=None,
                  same_gram: bool = True) -> bool:
    return rho_closure(x, rep, [a, b], cw, same_gram).rigid


@dataclass
class AutoChoice:
    rep: SphericalRep
    faithful: bool
    rigid: RigidSearch
    tried: list[tuple[float, str]]


def auto_representation(x: ColorGraph, adj, matrix: str = "L") -> AutoChoice:
    """First multiplicity-3 eigenvalue (Fiedler first) giving an injective, faithful, rigid rep."""
    tried = []
    for lam in multiplicity3_eigenvalues(adj, matrix):
        try:
            rep = build_rep(x, projection(x, adj, matrix, lam))
        except SpectralError as exc:
            tried.append((lam, str(exc)))
            continue
        if not is_faithful(x, rainbow_rho(x, rep)):
            tried.append((lam, "not faithful"))
            continue
        try:
            rs = find_rigid_color(x, rep)
        except RigidityError as exc:
            tried.append((lam, str(exc)))
            continue
        if rs.color is None:
            tried.append((lam, "no rigid color"))
            continue
        tried.append((lam, "ok"))
        return AutoChoice(rep, True, rs, tried)
    raise SpectralError(f"no suitable eigenvalue for {matrix}: "
                        + "; ".join(f"{lam:.6g}: {why}" for lam, why in tried))


__all__ = [
    "RigidityError", "RigidityCertificate", "Step", "RigidSearch", "AutoChoice",
    "union_tensor", "antipodal_bound_violations", "s_delta", "s_delta_direct",
    "rho_closure", "replay", "find_rigid_color", "pair_is_rigid", "auto_representation",
]
