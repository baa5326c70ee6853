from math import sqrt

import numpy as np
import pytest

from bosegraph.fock import enumerate_basis
from bosegraph.graphs import RootedGraph, enumerate_rooted_graphs, invariants
from bosegraph.hamiltonian import build, build_hopping, build_interaction, parity_operator

TRIANGLE = RootedGraph(3, ((0, 1), (0, 2), (1, 2)))
PATH3 = RootedGraph(3, ((0, 1), (1, 2)))
ALL_GRAPHS = [g for n in (2, 3, 4) for g in enumerate_rooted_graphs(n)]


def test_pure_interaction_diagonal_l3():
    b = enumerate_basis(3, 3)
    for g in enumerate_rooted_graphs(3):
        h = build(g, 1.0, 0.0, b).matrix
        assert np.count_nonzero(h - np.diag(np.diag(h))) == 0
        assert h[b.index_of((1, 1, 1))] [b.index_of((1, 1, 1))] == 3
        assert h[b.index_of((3, 0, 0)), b.index_of((3, 0, 0))] == 9


def test_pure_interaction_diagonal_l4():
    b = enumerate_basis(4, 4)
    for g in enumerate_rooted_graphs(4):
        h = build(g, 1.0, 0.0, b).matrix
        assert h[b.index_of((1, 1, 1, 1)), b.index_of((1, 1, 1, 1))] == 4
        assert h[b.index_of((4, 0, 0, 0)), b.index_of((4, 0, 0, 0))] == 16


def test_two_site_hop_element():
    b = enumerate_basis(2, 2)
    h = build(RootedGraph(2, ((0, 1),)), 0.0, 1.0, b).matrix
    assert h[b.index_of((2, 0)), b.index_of((1, 1))] == pytest.approx(sqrt(2), abs=1e-15)


def test_triangle_row_of_uniform_state():
    b = enumerate_basis(3, 3)
    h = build_hopping(TRIANGLE, 1.0, b).matrix
    row = h[b.index_of((1, 1, 1))]
    # oracle: every ordered edge direction moves one particle to a distinct state
    images = set()
    for i, j in TRIANGLE.edges:
        for a, c in ((i, j), (j, i)):
            s = [1, 1, 1]
            s[c] -= 1
            s[a] += 1
            images.add(tuple(s))
    assert len(images) == 2 * invariants(TRIANGLE).k == 6
    assert {b.states[k] for k in np.flatnonzero(row)} == images


def test_hopping_has_zero_diagonal():
    b = enumerate_basis(3, 3)
    h = build_hopping(PATH3, 1.0, b).matrix
    assert h[b.index_of((1, 1, 1)), b.index_of((1, 1, 1))] == 0


def test_zero_tau_is_zero_matrix():
    b = enumerate_basis(4, 4)
    for g in enumerate_rooted_graphs(4):
        assert not build_hopping(g, 0.0, b).matrix.any()


@pytest.mark.parametrize("g", ALL_GRAPHS, ids=lambda g: str(g.edges))
def test_exact_symmetry_and_diagonal(g):
    n = g.n_sites
    b = enumerate_basis(n, n)
    h = build(g, 0.73, 1.3, b).matrix
    assert np.array_equal(h, h.T)
    occ = b.occupations()
    np.testing.assert_array_equal(np.diag(h), 0.73 * (occ ** 2).sum(axis=1))


def test_sum_of_parts():
    b = enumerate_basis(4, 4)
    g = enumerate_rooted_graphs(4)[5]
    full = build(g, -2.0, 0.5, b).matrix
    parts = build_interaction(g, -2.0, b).matrix + build_hopping(g, 0.5, b).matrix
    np.testing.assert_allclose(full, parts, atol=0)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        build(TRIANGLE, 1.0, 1.0, enumerate_basis(4, 4))


def test_single_particle_is_adjacency():
    # N=1: the hopping matrix in the basis (1,0,..),(0,1,..).. is tau * adjacency
    for g in enumerate_rooted_graphs(4):
        b = enumerate_basis(1, 4)
        h = build_hopping(g, 2.0, b).matrix
        adj = np.zeros((4, 4))
        for i, j in g.edges:
            adj[i, j] = adj[j, i] = 2.0
        np.testing.assert_array_equal(h, adj)


def test_parity_examples():
    b = enumerate_basis(3, 3)
    signs = parity_operator({1}, b)
    assert signs[b.index_of((1, 1, 1))] == -1
    assert signs[b.index_of((3, 0, 0))] == 1
    np.testing.assert_array_equal(signs * signs, np.ones(10))


def test_parity_requires_bipartition():
    with pytest.raises(ValueError):
        parity_operator(invariants(TRIANGLE).bipartition, enumerate_basis(3, 3))


@pytest.mark.parametrize("g", [g for g in ALL_GRAPHS if invariants(g).bipartite], ids=lambda g: str(g.edges))
@pytest.mark.parametrize("side", [0, 1])
def test_bipartite_sign_flip(g, side):
    n = g.n_sites
    b = enumerate_basis(n, n)
    inv = invariants(g)
    p = np.diag(parity_operator(inv.bipartition[side], b))
    h_tau = build_hopping(g, 1.0, b).matrix
    assert np.array_equal(p @ h_tau @ p, -h_tau)
    for eps in (0.5, 3.0, 17.0):
        np.testing.assert_array_equal(build(g, -eps, 1.0, b).matrix,
                                      -p @ build(g, eps, 1.0, b).matrix @ p.T)
    psi = b.basis_vector((1,) * n).real
    assert psi @ h_tau @ h_tau @ h_tau @ psi == 0


@pytest.mark.parametrize("g", [g for g in ALL_GRAPHS if not invariants(g).bipartite], ids=lambda g: str(g.edges))
def test_non_bipartite_uniform_cube(g):
    n = g.n_sites
    b = enumerate_basis(n, n)
    inv = invariants(g)
    h_tau = build_hopping(g, 1.0, b).matrix
    psi = b.basis_vector((1,) * n).real
    image = h_tau @ psi
    q = np.count_nonzero(image)
    assert q == 2 * inv.k
    # <I|H|I> = <psi|H^3|psi> / <psi|H^2|psi>; each triangle contributes 18 to the numerator scale
    bright_energy = (psi @ h_tau @ h_tau @ h_tau @ psi) / (image @ image)
    assert bright_energy == pytest.approx(18 * inv.l3 / q, abs=1e-12)
