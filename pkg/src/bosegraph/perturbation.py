"""Two-level (Rabi) description of the strong self-interaction regime.

For |eps| >> tau the initial Fock state couples at first order only to the
normalized image of itself under hopping, the bright state |I>. Truncating to
span{|psi_in>, |I>} gives a Rabi problem whose maximal transfer probability
predicts the entangling power.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entanglement import entropy, max_entropy, reduced_distribution, system
from .fock import FockBasis
from .graphs import GraphInvariants, RootedGraph


@dataclass(frozen=True)
class TwoLevelParams:
    E1: float
    E2: float
    W: float
    q: int


@dataclass(frozen=True)
class RabiPrediction:
    p_max: float
    ep_estimate: float


def _parts(graph, psi_in, tau, basis):
    psi_in = tuple(int(x) for x in psi_in)
    n_particles = sum(psi_in)
    if basis is not None and (basis.n_particles, basis.n_sites) != (n_particles, graph.n_sites):
        raise ValueError("basis does not match graph and initial state")
    basis, hop, diag = system(graph, n_particles, float(tau))
    psi = basis.basis_vector(psi_in).real
    return basis, hop, diag, psi


def bright_state(graph: RootedGraph, psi_in, basis: FockBasis | None = None,
                 tau: float = 1.0) -> np.ndarray:
    """Normalized H_tau |psi_in>; its support is the first-order coupled set."""
    _, hop, _, psi = _parts(graph, psi_in, tau, basis)
    image = hop @ psi
    norm = np.linalg.norm(image)
    if norm == 0:
        raise ValueError(f"hopping annihilates {tuple(psi_in)}; the root is isolated")
    return image / norm


def two_level(graph: RootedGraph, psi_in, eps: float, tau: float = 1.0,
              basis: FockBasis | None = None) -> TwoLevelParams:
    """E1, E2, W from direct matrix elements in the Fock basis."""
    _, hop, diag, psi = _parts(graph, psi_in, tau, basis)
    bright = bright_state(graph, psi_in, basis, tau)
    h_eps = eps * diag
    return TwoLevelParams(
        E1=float(psi @ (h_eps * psi)),
        E2=float(bright @ (h_eps * bright) + bright @ hop @ bright),
        W=float(bright @ hop @ psi),
        q=int(np.count_nonzero(hop @ psi)),
    )


def rabi_pmax(p: TwoLevelParams) -> float:
    """4 W^2 / (4 W^2 + (E1 - E2)^2); zero when there is no coupling."""
    coupling = 4.0 * p.W * p.W
    if coupling == 0.0:
        return 0.0
    return coupling / (coupling + (p.E1 - p.E2) ** 2)


def surrogate_state(graph: RootedGraph, psi_in, eps: float, tau: float = 1.0) -> np.ndarray:
    """sqrt(1 - P) |psi_in> + sqrt(P) |I> with P the maximal Rabi transfer."""
    _, _, _, psi = _parts(graph, psi_in, tau, None)
    p = rabi_pmax(two_level(graph, psi_in, eps, tau))
    return np.sqrt(1.0 - p) * psi + np.sqrt(p) * bright_state(graph, psi_in, None, tau)


def predict(graph: RootedGraph, psi_in, eps: float, tau: float = 1.0) -> RabiPrediction:
    basis, _, _, _ = _parts(graph, psi_in, tau, None)
    p = rabi_pmax(two_level(graph, psi_in, eps, tau))
    phi = surrogate_state(graph, psi_in, eps, tau)
    ep = entropy(reduced_distribution(phi, basis)) / max_entropy(basis.n_particles)
    return RabiPrediction(p, float(ep))


def ep_surrogate(graph: RootedGraph, psi_in, eps: float, tau: float = 1.0) -> float:
    """Normalized root-mode entropy of the two-level surrogate state."""
    return predict(graph, psi_in, eps, tau).ep_estimate


def pmax_closed_form_uniform(inv: GraphInvariants, eps: float, tau: float = 1.0) -> float:
    """Maximal transfer for one particle per site, from edge and triangle counts."""
    if inv.k == 0:
        raise ValueError("graph has no edges")
    coupling = 16.0 * tau * tau * inv.k
    detuning = 2.0 * eps + tau * 18.0 * inv.l3 / (2.0 * inv.k)
    return coupling / (coupling + detuning * detuning)


def pmax_closed_form_localized(inv: GraphInvariants, eps: float, tau: float,
                               n_particles: int) -> float:
    """Maximal transfer for all particles on the root, from root degree and root triangles."""
    if inv.k0 == 0:
        raise ValueError("root has no neighbours")
    coupling = 4.0 * tau * tau * inv.k0 * n_particles
    detuning = 2.0 * (n_particles - 1) * eps - 2.0 * tau * inv.l3_root / inv.k0
    return coupling / (coupling + detuning * detuning)


def uniform_distribution_closed_form(inv: GraphInvariants, p: float, n_particles: int) -> np.ndarray:
    """Root distribution of the surrogate state for one particle per site."""
    dist = np.zeros(n_particles + 1)
    dist[1] = 1.0 - p * inv.k0 / inv.k
    dist[0] = dist[2] = p * inv.k0 / (2.0 * inv.k)
    return dist


def localized_distribution_closed_form(p: float, n_particles: int) -> np.ndarray:
    """Root distribution of the surrogate state for all particles on the root."""
    dist = np.zeros(n_particles + 1)
    dist[n_particles] = 1.0 - p
    dist[n_particles - 1] = p
    return dist
