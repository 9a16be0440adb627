from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from cohconf import catalog
from cohconf.planar import GraphError, SimpleGraph, is_planar, is_polyhedral, verify_embedding, \
    verify_kuratowski, vertex_connectivity

import oracles
from strategies import graphs


def complete(n):
    return SimpleGraph.from_edges(n, combinations(range(n), 2))


def cycle(n):
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


K33 = SimpleGraph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)])


def test_kuratowski_witnesses():
    r = is_planar(complete(5), witness=True)
    assert not r and verify_kuratowski(complete(5), r.kuratowski) == "K5"
    r = is_planar(K33, witness=True)
    assert not r and verify_kuratowski(K33, r.kuratowski) == "K3,3"
    petersen = SimpleGraph.from_edges(10, nx.petersen_graph().edges())
    r = is_planar(petersen, witness=True)
    assert verify_kuratowski(petersen, r.kuratowski) in ("K5", "K3,3")
    # a planar subgraph is no witness
    assert verify_kuratowski(complete(5), [(0, 1), (1, 2), (2, 0)]) is None


@pytest.mark.parametrize("name", list(catalog.SOLIDS))
def test_solids_are_polyhedral_with_euler_embeddings(name, solids):
    n, edges, _ = solids[name]
    g = SimpleGraph.from_edges(n, edges)
    r = is_planar(g)
    assert r.planar and verify_embedding(g, r.rotation)
    assert is_polyhedral(g)
    degs = g.degrees()
    assert vertex_connectivity(g) >= 3
    assert vertex_connectivity(g) <= int(degs.min())


@pytest.mark.parametrize("name,kappa", [("tetrahedron", 3), ("octahedron", 4), ("cube", 3),
                                        ("icosahedron", 5), ("dodecahedron", 3)])
def test_connectivity_of_platonic_solids(name, kappa, solids):
    n, edges, _ = solids[name]
    assert vertex_connectivity(SimpleGraph.from_edges(n, edges)) == kappa


def test_connectivity_small_families():
    assert vertex_connectivity(SimpleGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])) == 1
    for n in range(3, 9):
        assert vertex_connectivity(cycle(n)) == 2
        assert vertex_connectivity(complete(n)) == n - 1
    assert vertex_connectivity(SimpleGraph.from_edges(4, [(0, 1), (2, 3)])) == 0
    with pytest.raises(GraphError):
        vertex_connectivity(SimpleGraph(1, ()))


def test_polyhedral_examples():
    octa = SimpleGraph.from_edges(6, [(a, b) for a, b in combinations(range(6), 2) if b - a != 3])
    assert is_polyhedral(octa)
    k4_minus_e = SimpleGraph.from_edges(4, [e for e in combinations(range(4), 2) if e != (0, 1)])
    assert not is_polyhedral(k4_minus_e)
    assert not is_polyhedral(complete(5))
    assert not is_polyhedral(K33)  # 3-connected but not planar
    assert not is_polyhedral(cycle(6))


def test_graph_validation():
    with pytest.raises(GraphError):
        SimpleGraph.from_edges(3, [(0, 0)])
    with pytest.raises(GraphError):
        SimpleGraph.from_edges(3, [(0, 3)])
    with pytest.raises(GraphError):
        SimpleGraph.from_adjacency(np.array([[0, 1], [0, 0]]))
    assert SimpleGraph.from_edges(3, [(1, 0), (0, 1)]).edges == ((0, 1),)


@given(graphs(min_n=2, max_n=8))
def test_connectivity_matches_brute_force(g):
    n, edges = g
    sg = SimpleGraph.from_edges(n, edges)
    k = vertex_connectivity(sg)
    assert k == oracles.brute_connectivity(n, edges)
    assert k <= int(sg.degrees().min())


def test_random_graphs_against_networkx():
    rng = np.random.default_rng(8)
    for _ in range(60):
        n = int(rng.integers(4, 13))
        edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.35]
        g = SimpleGraph.from_edges(n, edges)
        h = g.to_networkx()
        r = is_planar(g, witness=True)
        assert r.planar == nx.is_planar(h)
        if r.planar:
            assert verify_embedding(g, r.rotation)
        else:
            assert verify_kuratowski(g, r.kuratowski) is not None
        assert vertex_connectivity(g) == nx.node_connectivity(h)
