"""Root-mode entanglement and the entangling-power functional.

At fixed particle number the reduced density matrix of site 0 is diagonal in
its occupation basis, so its von Neumann entropy is the Shannon entropy of
the distribution of n_0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar

from .dynamics import decompose, evolve, evolve_many, sample_times
from .fock import FockBasis, enumerate_basis
from .graphs import RootedGraph
from .hamiltonian import build_hopping, interaction_diagonal

DEFAULT_HORIZON = 15.0
DEFAULT_DT_SAMPLE = 0.01
PROB_FLOOR = 1e-15


@dataclass(frozen=True)
class EPResult:
    ep: float
    t_star: float
    times: np.ndarray
    trace: np.ndarray  # root-mode entropy in bits at each sample


def reduced_distribution(psi, basis: FockBasis) -> np.ndarray:
    """Probabilities rho_j that the root mode holds j particles, j = 0..N.

    Accepts a single state ``(dim,)`` or a stack of states ``(..., dim)``.
    """
    probs = np.abs(np.asarray(psi)) ** 2
    n0 = basis.occupations()[:, 0]
    out = np.zeros(probs.shape[:-1] + (basis.n_particles + 1,))
    for j in range(basis.n_particles + 1):
        out[..., j] = probs[..., n0 == j].sum(axis=-1)
    return out


def entropy(dist) -> np.ndarray | float:
    """Shannon entropy in bits along the last axis; entries below 1e-15 are dropped."""
    p = np.asarray(dist, dtype=np.float64)
    mask = p >= PROB_FLOOR
    safe = np.where(mask, p, 1.0)
    h = -np.sum(np.where(mask, p * np.log2(safe), 0.0), axis=-1)
    # -0.0 -> 0.0
    return h + 0.0 if np.ndim(h) else float(h) + 0.0


def max_entropy(n_particles: int) -> float:
    return float(np.log2(n_particles + 1))


@lru_cache(maxsize=64)
def system(graph: RootedGraph, n_particles: int, tau: float):
    """Cached (basis, hopping matrix, interaction diagonal) for one graph."""
    basis = enumerate_basis(n_particles, graph.n_sites)
    hop = build_hopping(graph, tau, basis).matrix
    hop.setflags(write=False)
    diag = interaction_diagonal(basis)
    diag.setflags(write=False)
    return basis, hop, diag


def initial_state(basis: FockBasis, psi_in) -> np.ndarray:
    psi_in = tuple(int(x) for x in psi_in)
    if len(psi_in) != basis.n_sites:
        raise ValueError(f"initial state {psi_in} has {len(psi_in)} sites, graph has {basis.n_sites}")
    return basis.basis_vector(psi_in)


def _prepare(graph, eps, tau, psi_in):
    n_particles = int(sum(psi_in))
    if n_particles < 1:
        raise ValueError("initial state must hold at least one particle")
    basis, hop, diag = system(graph, n_particles, float(tau))
    psi0 = initial_state(basis, psi_in)
    decomp = decompose(hop + np.diag(eps * diag))
    return basis, decomp, psi0


def entropy_trace(graph: RootedGraph, eps: float, tau: float, psi_in,
                  horizon: float = DEFAULT_HORIZON, dt_sample: float = DEFAULT_DT_SAMPLE):
    """Times, root distributions, entropies and norms along one evolution."""
    basis, decomp, psi0 = _prepare(graph, eps, tau, psi_in)
    traj = evolve_many(decomp, psi0, sample_times(horizon, dt_sample))
    dists = reduced_distribution(traj.states, basis)
    return traj.times, dists, entropy(dists), traj.norms()


def entangling_power(graph: RootedGraph, eps: float, tau: float, psi_in,
                     horizon: float = DEFAULT_HORIZON, dt_sample: float = DEFAULT_DT_SAMPLE,
                     refine: bool = False) -> EPResult:
    """Maximum root-mode entropy over [0, T], normalized by log2(N+1).

    The maximum is taken over the sample grid. With ``refine`` a bounded
    scalar search around the best sample may raise it further.
    """
    basis, decomp, psi0 = _prepare(graph, eps, tau, psi_in)
    times = sample_times(horizon, dt_sample)
    traj = evolve_many(decomp, psi0, times)
    trace = entropy(reduced_distribution(traj.states, basis))
    k = int(np.argmax(trace))
    best, t_star = float(trace[k]), float(times[k])
    if refine:
        lo, hi = max(0.0, t_star - dt_sample), min(times[-1], t_star + dt_sample)

        def neg_entropy(t):
            return -entropy(reduced_distribution(evolve(decomp, psi0, t), basis))

        res = minimize_scalar(neg_entropy, bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-8})
        if -res.fun > best:
            best, t_star = float(-res.fun), float(res.x)
    return EPResult(best / max_entropy(basis.n_particles), t_star, times, trace)


def horizon_drift(graph: RootedGraph, eps: float, tau: float, psi_in,
                  horizon: float = DEFAULT_HORIZON, dt_sample: float = DEFAULT_DT_SAMPLE) -> float:
    """EP(2T) - EP(T); small values mean the horizon is long enough."""
    short = entangling_power(graph, eps, tau, psi_in, horizon, dt_sample).ep
    long = entangling_power(graph, eps, tau, psi_in, 2 * horizon, dt_sample).ep
    return long - short
