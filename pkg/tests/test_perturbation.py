from dataclasses import replace

import numpy as np
import pytest

from bosegraph.entanglement import reduced_distribution
from bosegraph.fock import enumerate_basis
from bosegraph.graphs import RootedGraph, enumerate_rooted_graphs, invariants
from bosegraph.perturbation import (
    TwoLevelParams,
    bright_state,
    ep_surrogate,
    localized_distribution_closed_form,
    pmax_closed_form_localized,
    pmax_closed_form_uniform,
    predict,
    rabi_pmax,
    surrogate_state,
    two_level,
    uniform_distribution_closed_form,
)

B3 = enumerate_basis(3, 3)
TRIANGLE = RootedGraph(3, ((0, 1), (0, 2), (1, 2)))
STAR3 = RootedGraph(3, ((0, 1), (0, 2)))
GRAPHS = [g for n in (2, 3, 4) for g in enumerate_rooted_graphs(n)]


def _support(vec):
    return {B3.states[k]: vec[k] for k in np.flatnonzero(np.abs(vec) > 1e-14)}


def test_bright_state_uniform_star():
    sup = _support(bright_state(STAR3, (1, 1, 1)))
    assert set(sup) == {(0, 2, 1), (0, 1, 2), (2, 0, 1), (2, 1, 0)}
    np.testing.assert_allclose(list(sup.values()), 0.5, atol=1e-15)


def test_bright_state_localized_star():
    sup = _support(bright_state(STAR3, (3, 0, 0)))
    assert set(sup) == {(2, 0, 1), (2, 1, 0)}
    np.testing.assert_allclose(list(sup.values()), 1 / np.sqrt(2), atol=1e-15)


def test_bright_state_rejects_empty_state():
    with pytest.raises(ValueError):
        bright_state(STAR3, (0, 0, 0))


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: str(g.edges))
def test_uniform_support_size(g):
    n = g.n_sites
    assert two_level(g, (1,) * n, 0.0).q == 2 * invariants(g).k


@pytest.mark.parametrize("eps", [-7.0, 0.0, 2.5])
def test_triangle_detunings(eps):
    u = two_level(TRIANGLE, (1, 1, 1), eps)
    assert u.E1 - u.E2 == pytest.approx(-(2 * eps + 3), abs=1e-12)
    loc = two_level(TRIANGLE, (3, 0, 0), eps)
    assert loc.E1 - loc.E2 == pytest.approx(4 * eps - 1, abs=1e-12)


@pytest.mark.parametrize("g", [g for g in GRAPHS if invariants(g).bipartite], ids=lambda g: str(g.edges))
def test_bright_state_has_no_self_hopping_on_bipartite(g):
    n = g.n_sites
    for psi in ((1,) * n, (n,) + (0,) * (n - 1)):
        assert abs(two_level(g, psi, 0.0).E2) < 1e-14


def test_rabi_edge_cases():
    assert rabi_pmax(TwoLevelParams(1.0, 1.0, 0.0, 0)) == 0.0
    assert rabi_pmax(TwoLevelParams(2.0, 2.0, 0.3, 2)) == 1.0
    assert rabi_pmax(TwoLevelParams(0.0, 1.0, 0.5, 2)) == pytest.approx(0.5)


def test_attractive_side_transfers_more_on_triangle():
    assert rabi_pmax(two_level(TRIANGLE, (1, 1, 1), -10.0)) > rabi_pmax(two_level(TRIANGLE, (1, 1, 1), 10.0))


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: str(g.edges))
@pytest.mark.parametrize("eps", [-12.0, 0.5, 15.0])
def test_surrogate_distributions_match_closed_form(g, eps):
    n = g.n_sites
    inv = invariants(g)
    basis = enumerate_basis(n, n)
    uni = (1,) * n
    p = rabi_pmax(two_level(g, uni, eps))
    np.testing.assert_allclose(reduced_distribution(surrogate_state(g, uni, eps), basis),
                               uniform_distribution_closed_form(inv, p, n), atol=1e-12)
    loc = (n,) + (0,) * (n - 1)
    p = rabi_pmax(two_level(g, loc, eps))
    np.testing.assert_allclose(reduced_distribution(surrogate_state(g, loc, eps), basis),
                               localized_distribution_closed_form(p, n), atol=1e-12)


def test_no_transfer_means_no_entanglement():
    inv = invariants(TRIANGLE)
    assert uniform_distribution_closed_form(inv, 0.0, 3).tolist() == [0, 1, 0, 0]
    assert localized_distribution_closed_form(0.0, 3).tolist() == [0, 0, 0, 1]


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: str(g.edges))
@pytest.mark.parametrize("tau", [1.0, 0.5])
def test_closed_forms_match_matrix_elements(g, tau):
    n = g.n_sites
    inv = invariants(g)
    for eps in np.arange(-20.0, 20.01, 2.5):
        got = rabi_pmax(two_level(g, (1,) * n, eps, tau))
        assert got == pytest.approx(pmax_closed_form_uniform(inv, eps, tau), abs=1e-9)
        got = rabi_pmax(two_level(g, (n,) + (0,) * (n - 1), eps, tau))
        assert got == pytest.approx(pmax_closed_form_localized(inv, eps, tau, n), abs=1e-9)


@pytest.mark.parametrize("g", [g for g in GRAPHS if invariants(g).bipartite], ids=lambda g: str(g.edges))
def test_closed_forms_even_on_bipartite(g):
    inv = invariants(g)
    n = g.n_sites
    for eps in (0.5, 4.0, 19.0):
        assert pmax_closed_form_uniform(inv, eps) == pmax_closed_form_uniform(inv, -eps)
        assert pmax_closed_form_localized(inv, eps, 1.0, n) == pmax_closed_form_localized(inv, -eps, 1.0, n)


def test_transfer_grows_with_root_degree():
    # rootings of the 4-path: end (k0=1) vs interior (k0=2)
    path = ((0, 1), (1, 2), (2, 3))
    end = RootedGraph.from_edges(4, path, root=0)
    mid = RootedGraph.from_edges(4, path, root=1)
    assert (invariants(end).k0, invariants(mid).k0) == (1, 2)
    for eps in (5.0, 10.0, 20.0):
        assert rabi_pmax(two_level(mid, (4, 0, 0, 0), eps)) > rabi_pmax(two_level(end, (4, 0, 0, 0), eps))
        assert ep_surrogate(mid, (4, 0, 0, 0), eps) > ep_surrogate(end, (4, 0, 0, 0), eps)


@pytest.mark.parametrize("eps", [5.0, 10.0, 20.0])
def test_surrogate_sign_asymmetry_on_triangle(eps):
    assert ep_surrogate(TRIANGLE, (1, 1, 1), -eps) > ep_surrogate(TRIANGLE, (1, 1, 1), eps)
    assert ep_surrogate(TRIANGLE, (3, 0, 0), eps) > ep_surrogate(TRIANGLE, (3, 0, 0), -eps)


def test_predict_bundles_both_numbers():
    pred = predict(TRIANGLE, (3, 0, 0), 10.0)
    assert 0 < pred.p_max < 1 and 0 < pred.ep_estimate < 1
    assert pred.ep_estimate == ep_surrogate(TRIANGLE, (3, 0, 0), 10.0)


def test_isolated_root_closed_forms_raise():
    inv = replace(invariants(TRIANGLE), k0=0)
    with pytest.raises(ValueError):
        pmax_closed_form_localized(inv, 1.0, 1.0, 3)
