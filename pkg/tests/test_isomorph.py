import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cohconf import catalog
from cohconf.catalog import load_group
from cohconf.ccstruct import ColorGraph, is_algebraic_automorphism, same_partition, tensor, \
    trivial_configuration
from cohconf.isomorph import SearchBoundError, algebraic_aut_group, algebraic_isomorphisms, \
    aut_group, automorphisms, color_isomorphic, induced_color_map, is_schurian, isomorphism
from cohconf.perm import Perm, PermGroup, inv
from cohconf.spectral import adjacency_matrix, build_rep, projection
from cohconf.wl import wl_close_graph

import oracles
from strategies import graphs


def shrikhande():
    steps = {(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)}
    return [(a, b) for a in range(16) for b in range(a + 1, 16)
            if ((b // 4 - a // 4) % 4, (b % 4 - a % 4) % 4) in steps]


def rook4x4():
    return [(a, b) for a in range(16) for b in range(a + 1, 16) if a // 4 == b // 4 or a % 4 == b % 4]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_trivial_configuration_has_full_symmetric_group(n):
    x = trivial_configuration(n) if n > 1 else ColorGraph(np.zeros((1, 1), dtype=np.int64))
    assert automorphisms(x).order == math.factorial(n)


@pytest.mark.parametrize("name,order", [("alt4/orbits=6", 24), ("alt5/orbits=20", 60),
                                        ("alt5/orbits=12", 120)])
def test_aut_orders_of_group_configurations(name, order):
    assert automorphisms(inv(load_group(name))).order == order


@given(graphs(max_n=7))
def test_aut_order_matches_exhaustive_search(g):
    n, edges = g
    x = wl_close_graph(edges, n)
    res = automorphisms(x)
    brute = oracles.color_automorphisms(x.color)
    assert res.order == len(brute)
    assert set(oracles.group_elements([p.images for p in res.group.generators], n)) == set(brute)


def test_search_bound(monkeypatch):
    monkeypatch.setenv("CC_MAX_N", "5")
    with pytest.raises(SearchBoundError):
        automorphisms(trivial_configuration(6))


def test_schurity_examples(solids):
    assert is_schurian(solids["dodecahedron"][2])
    # WL rank 3 but the stabilizer of order 12 cannot be transitive on 9 non-neighbours;
    # confirmed by exhaustive automorphism enumeration (192 automorphisms, 4 pair orbits)
    assert is_schurian(wl_close_graph(shrikhande(), 16)) is False


def test_color_isomorphic_relabeled(solids):
    rng = np.random.default_rng(3)
    x = solids["rhombic_dodecahedron"][2]
    f = rng.permutation(x.n)
    sigma = rng.permutation(x.rank)
    y = ColorGraph(sigma[x.permuted(f).color], canonical=False)
    g = color_isomorphic(x, y)
    assert g is not None
    assert same_partition(x, ColorGraph(y.color[np.ix_(g, g)]))


def test_color_isomorphic_negative_cases():
    assert color_isomorphic(trivial_configuration(5), trivial_configuration(6)) is None
    # two strongly regular graphs with the same parameters
    a, b = wl_close_graph(shrikhande(), 16), wl_close_graph(rook4x4(), 16)
    assert a.rank == b.rank == 3
    assert next(algebraic_isomorphisms(a, b), None) is not None
    assert color_isomorphic(a, b) is None


def test_icosahedron_matches_group_configuration(solids):
    x = solids["icosahedron"][2]
    assert color_isomorphic(x, inv(load_group("alt5xC2/orbits=12"))) is not None


@given(graphs(max_n=7), st.randoms())
def test_isomorphic_implies_same_valencies(g, rnd):
    n, edges = g
    x = wl_close_graph(edges, n)
    f = list(range(n))
    rnd.shuffle(f)
    y = wl_close_graph([(f[a], f[b]) for a, b in edges], n)
    assert color_isomorphic(x, y) is not None
    assert sorted(tensor(x).valency.tolist()) == sorted(tensor(y).valency.tolist())


def test_algebraic_automorphism_examples():
    assert [a.sigma for a in algebraic_aut_group(trivial_configuration(4))] == [(0, 1)]
    c4 = inv(PermGroup(4, (Perm((1, 2, 3, 0)),)))
    swap = tuple(int(c4.converse[s]) for s in range(c4.rank))
    assert swap != tuple(range(c4.rank))
    found = {a.sigma for a in algebraic_aut_group(c4)}
    assert swap in found
    # exhaustive scan over all color permutations
    brute = oracles.algebraic_automorphisms(tensor(c4).c, [list(range(c4.rank))])
    assert found == set(brute)


def test_algebraic_group_alt4_two_orbits():
    x = inv(load_group("alt4/orbits=6+4"))
    t = tensor(x)
    classes = {}
    for s in range(x.rank):
        key = (s in x.reflexive_colors, int(t.valency[s]), int(t.valency[x.converse[s]]), x.fiber_of[s])
        classes.setdefault(key, []).append(s)
    brute = oracles.algebraic_automorphisms(t.c, classes.values())
    auts = algebraic_aut_group(x)
    assert len(auts) == len(brute) == 4
    assert {a.sigma for a in auts} == set(brute)
    assert auts[0].sigma == tuple(range(x.rank))


def test_automorphisms_induce_algebraic_automorphisms(solids):
    for name in ("cube", "truncated_octahedron", "rhombic_triacontahedron"):
        x = solids[name][2]
        for f in aut_group(x).generators:
            m = induced_color_map(x, f)
            assert is_algebraic_automorphism(x, m)[0]
            assert (m == np.arange(x.rank)).all()  # schurian: automorphisms fix every color


@pytest.mark.parametrize("name", ["icosahedron", "dodecahedron", "rhombic_triacontahedron"])
def test_induced_algebraic_automorphisms_preserve_gram_data(name, solids):
    n, edges, x = solids[name]
    h = catalog.SOLIDS[name]
    rep = build_rep(x, projection(x, adjacency_matrix(edges, n), h.matrix, h.eigenvalue_value))
    val = np.array(rep.W)[rep.w_of_color]
    a = val[x.color]
    nontrivial = [p.sigma for p in algebraic_aut_group(x)[1:]]
    assert nontrivial
    for sigma in nontrivial:
        sigma = np.array(sigma)
        f = isomorphism(sigma[x.color], x.color)
        assert f is not None, "algebraic automorphism not induced by a bijection"
        b = val[sigma[x.color]]
        assert set(np.round(a, 9).ravel()) == set(np.round(b, 9).ravel())
        assert np.allclose(b, b.T)
        assert np.allclose(np.linalg.eigvalsh(a), np.linalg.eigvalsh(b), atol=1e-8)
        same_a = np.all(np.isclose(a[:, :, None], a[:, None, :]), axis=0)
        same_b = np.all(np.isclose(b[:, :, None], b[:, None, :]), axis=0)
        assert np.array_equal(same_a, same_b)
