import itertools

import numpy as np
import pytest
from hypothesis import given

from cohconf import catalog
from cohconf.catalog import load_group
from cohconf.ccstruct import CoherenceError, ColorGraph, Parabolic, algebraic_fusion, find_complement, \
    generated_parabolic, is_algebraic_automorphism, is_parabolic, is_quasi_thin, is_semiregular, \
    is_thin, parabolics, quotient, restriction, same_partition, tensor, thin_colors, \
    trivial_configuration, validate
from cohconf.isomorph import algebraic_aut_group, aut_group, color_isomorphic, induced_color_map
from cohconf.perm import Perm, PermGroup, inv
from cohconf.wl import wl_close_graph

import oracles
from strategies import graphs


def cyclic(n: int) -> ColorGraph:
    return inv(PermGroup(n, (Perm(tuple((i + 1) % n for i in range(n))),)))


def distance_scheme(n, edges) -> ColorGraph:
    return ColorGraph(oracles.distances(n, edges))


CYCLE5 = [(i, (i + 1) % 5) for i in range(5)]


def test_validate_examples():
    assert validate(trivial_configuration(5))
    bad = np.array([[0, 1, 1], [2, 0, 1], [1, 2, 0]])
    rep = validate(ColorGraph(bad))
    assert not rep and rep.axiom == "C2"
    loops = np.array([[0, 0], [1, 0]])
    assert validate(ColorGraph(loops)).axiom == "C1"
    path = ColorGraph(oracles.graph_init(4, [(0, 1), (1, 2), (2, 3)]))
    rep = validate(path)
    assert not rep and rep.axiom == "C3"
    with pytest.raises(CoherenceError):
        tensor(path)


@given(graphs(max_n=9))
def test_wl_closure_validates(g):
    assert validate(wl_close_graph(g[1], g[0]))


def test_pentagon_intersection_number():
    x = distance_scheme(5, CYCLE5)
    # colors: 0 diagonal, 1 distance one, 2 distance two
    assert tensor(x).c[1, 1, 2] == oracles.intersection_number(x.color, 1, 1, 2) == 1


def test_tensor_matches_brute_force_counts(solids):
    for name in ("cube", "truncated_tetrahedron", "rhombic_dodecahedron"):
        x = solids[name][2]
        c = tensor(x).c
        for r, s, t in itertools.product(range(x.rank), repeat=3):
            assert c[r, s, t] == oracles.intersection_number(x.color, r, s, t)


def test_reflexive_target_forces_converse():
    for x in (distance_scheme(5, CYCLE5), inv(load_group("alt4/orbits=6+4"))):
        c = tensor(x).c
        for t in x.reflexive_colors:
            for r in range(x.rank):
                for s in range(x.rank):
                    if s != x.converse[r]:
                        assert c[r, s, t] == 0


def test_cube_valencies():
    n, edges = catalog.load_graph("cube")
    x = distance_scheme(n, edges)
    assert tensor(x).valency.tolist() == [1, 3, 3, 1]


def test_thinness():
    c5 = cyclic(5)
    assert thin_colors(c5) == list(range(5)) and is_semiregular(c5)
    d10 = inv(PermGroup(5, (Perm((1, 2, 3, 4, 0)), Perm((0, 4, 3, 2, 1)))))
    assert sorted(tensor(d10).valency.tolist()) == [1, 2, 2]
    assert is_quasi_thin(d10) and not is_semiregular(d10)
    assert not is_thin(d10, 1)
    n, edges = catalog.load_graph("octahedron")
    assert not is_quasi_thin(wl_close_graph(edges, n))


def test_parabolics_examples(solids):
    assert len(parabolics(trivial_configuration(4))) == 2
    for name, classes in (("icosahedron", 6), ("cube", 4)):
        x = solids[name][2]
        found = [p for p in parabolics(x) if p.num_classes == classes
                 and all(len(c) == 2 for c in p.classes)]
        assert found
        # the brute-force antipodal partition: pairs at maximal distance
        n, edges = solids[name][:2]
        d = oracles.distances(n, edges)
        anti = {tuple(sorted((a, int(np.argmax(d[a]))))) for a in range(n)}
        assert set(found[0].classes) == anti


def test_parabolic_contains_diagonal_and_one_class():
    x = inv(load_group("sym4I/orbits=12"))
    ps = parabolics(x)
    assert ps[0].num_classes == x.n and ps[-1].num_classes == 1
    assert all(is_parabolic(x, p.colors) for p in ps)


def test_quotient_examples(solids):
    x = solids["cube"][2]
    ident = generated_parabolic(x, [])
    q = quotient(x, ident).quotient
    assert color_isomorphic(q, x) is not None
    anti = [p for p in parabolics(x) if p.num_classes == 4][0]
    q = quotient(x, anti)
    assert q.quotient.n == 4 and q.quotient.rank == 2
    whole = parabolics(x)[-1]
    assert quotient(x, whole).quotient.n == 1
    with pytest.raises(CoherenceError):
        quotient(x, Parabolic(frozenset({0, 1}), ()))


def test_restriction_examples():
    x = inv(load_group("sym4I/orbits=12+6"))
    assert restriction(x, range(x.n)) == x
    six = x.fibers[1]
    assert len(six) == 6
    assert restriction(x, six).rank == inv(load_group("sym4I/orbits=6")).rank
    c6 = cyclic(6)
    assert is_semiregular(restriction(c6, range(6)))
    with pytest.raises(CoherenceError):
        restriction(x, [0, 1])


def test_complement_exists_for_central_involution():
    g = load_group("D2nxC2[n=4]/orbits=8I+8II+4I")
    x = inv(g)
    sigma = g.evaluate(["t3"]).images
    moved = [a for a in range(g.degree) if sigma[a] != a]
    assert len(moved) == 16
    colors = {int(x.color[a, sigma[a]]) for a in moved}
    e = generated_parabolic(x, colors)
    assert {tuple(sorted((a, sigma[a]))) for a in moved} <= set(e.classes)
    comp = find_complement(x, e, moved)
    assert comp is not None and comp.num_classes == 2
    for cls in comp.classes:
        for ec in e.classes:
            if len(ec) == 2:
                assert len(set(cls) & set(ec)) == 1


def _brute_complement(x: ColorGraph, e: Parabolic) -> bool:
    n = x.n
    for bits in itertools.product((0, 1), repeat=n - 1):
        side = np.array((0,) + bits)
        if side.all() or not side.any():
            continue
        rel = side[:, None] == side[None, :]
        colors_in = set(np.unique(x.color[rel]).tolist())
        colors_out = set(np.unique(x.color[~rel]).tolist())
        if colors_in & colors_out:
            continue
        if all(len({side[a] for a in ec}) == len(ec) for ec in e.classes):
            return True
    return False


def test_complement_missing_matches_exhaustive_scan():
    x = cyclic(4)
    e = generated_parabolic(x, [int(x.color[0, 2])])
    assert e.classes == ((0, 2), (1, 3))
    assert find_complement(x, e, range(4)) is None
    assert _brute_complement(x, e) is False
    y = cyclic(6)
    e = generated_parabolic(y, [int(y.color[0, 3])])
    assert (find_complement(y, e, range(6)) is not None) == _brute_complement(y, e) is True


def test_complement_of_identity_is_none():
    x = cyclic(4)
    assert find_complement(x, generated_parabolic(x, []), range(4)) is None


def test_fusion_examples():
    c3 = cyclic(3)
    assert algebraic_fusion(c3, []) == c3
    conv = c3.converse.tolist()
    assert algebraic_fusion(c3, [conv]).rank == 2
    bad = list(range(c3.rank))
    bad[0], bad[1] = 1, 0
    with pytest.raises(CoherenceError):
        algebraic_fusion(c3, [bad])


@pytest.mark.parametrize("n", [4, 6, 8])
def test_fusion_swapping_two_faithful_dihedral_orbits(n):
    # D_2n on the vertices and on the edges of an n-gon: two faithful, non-equivariant orbits
    rot = Perm(tuple((i + 1) % n for i in range(n)) + tuple(n + (i + 1) % n for i in range(n)))
    ref = Perm(tuple(-i % n for i in range(n)) + tuple(n + (-i - 1) % n for i in range(n)))
    x = inv(PermGroup(2 * n, (rot, ref)))
    assert [len(f) for f in x.fibers] == [n, n]
    d0 = int(x.color[0, 0])
    cross = [s for s in range(x.rank) if x.fiber_of[s][0] != x.fiber_of[s][1]]
    phis = [a.sigma for a in algebraic_aut_group(x)
            if a.sigma[d0] != d0 and all(a.sigma[s] == x.converse[s] for s in cross)]
    assert phis
    phi = phis[0]
    assert all(phi[phi[s]] == s for s in range(x.rank))
    fused = algebraic_fusion(x, [phi])
    assert len(fused.fibers) == 1 and is_quasi_thin(fused)
    # one thin relation besides the diagonal: the half-turn
    assert len([s for s in thin_colors(fused) if s not in fused.reflexive_colors]) == 1


@given(graphs(max_n=8))
def test_counting_identities(g):
    x = wl_close_graph(g[1], g[0])
    t = tensor(x)
    fsize = {i: len(f) for i, f in enumerate(x.fibers)}
    for s in range(x.rank):
        a, b = x.fiber_of[s]
        assert x.sizes[s] == t.valency[s] * fsize[a] == t.valency[x.converse[s]] * fsize[b]
    for r, s in itertools.product(range(x.rank), repeat=2):
        if x.fiber_of[r][1] != x.fiber_of[s][0]:
            assert not t.c[r, s].any()
            continue
        assert (t.c[r, s] * x.sizes).sum() == x.sizes[r] * t.valency[s]


@given(graphs(max_n=6))
def test_quotients_of_all_parabolics_are_coherent(g):
    x = wl_close_graph(g[1], g[0])
    for e in parabolics(x):
        q = quotient(x, e)
        assert validate(q.quotient)
        # each color lands inside its image color
        for s, img in q.color_map.items():
            a, b = np.argwhere(x.color == s).T
            assert (q.quotient.color[q.pi[a], q.pi[b]] == img).all()


@given(graphs(max_n=8))
def test_fusion_never_increases_rank(g):
    x = wl_close_graph(g[1], g[0])
    maps = [induced_color_map(x, f) for f in aut_group(x).generators]
    for m in maps:
        assert is_algebraic_automorphism(x, m)[0]
    fused = algebraic_fusion(x, maps)
    assert fused.rank <= x.rank
    assert same_partition(algebraic_fusion(x, []), x)


def test_json_roundtrip(solids):
    x = solids["cuboctahedron"][2]
    assert ColorGraph.from_json(x.to_json()) == x
    f = np.random.default_rng(0).permutation(x.n)
    assert validate(x.permuted(f))
