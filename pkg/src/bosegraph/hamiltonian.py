"""Bose-Hubbard matrices in the Fock basis.

    H = eps * sum_i n_i^2 + tau * sum_{(i,j) in E} (c_i^dag c_j + c_j^dag c_i)

The constant chemical-potential term only adds a global phase at fixed N and
is left out.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import FockBasis, hop_matrix_element
from .graphs import RootedGraph


@dataclass(frozen=True)
class HamiltonianMatrix:
    matrix: np.ndarray
    graph: RootedGraph
    eps: float
    tau: float
    n_particles: int
    n_sites: int

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _check(graph: RootedGraph, basis: FockBasis):
    if graph.n_sites != basis.n_sites:
        raise ValueError(
            f"graph has L={graph.n_sites} sites but basis was built for L={basis.n_sites}"
        )


def interaction_diagonal(basis: FockBasis) -> np.ndarray:
    """sum_i n_i^2 for every basis state."""
    occ = basis.occupations()
    return (occ * occ).sum(axis=1).astype(np.float64)


def _hopping_matrix(graph: RootedGraph, tau: float, basis: FockBasis) -> np.ndarray:
    dim = len(basis)
    h = np.zeros((dim, dim))
    if tau == 0:
        return h
    for col, state in enumerate(basis.states):
        for i, j in graph.edges:
            image, amp = hop_matrix_element(state, i, j)
            if amp:
                row = basis.index[image]
                # fill both triangles from the same float so H is exactly symmetric
                h[row, col] += tau * amp
                h[col, row] += tau * amp
    return h


def build_hopping(graph: RootedGraph, tau: float, basis: FockBasis) -> HamiltonianMatrix:
    _check(graph, basis)
    return HamiltonianMatrix(
        _hopping_matrix(graph, tau, basis), graph, 0.0, tau, basis.n_particles, basis.n_sites
    )


def build_interaction(graph: RootedGraph, eps: float, basis: FockBasis) -> HamiltonianMatrix:
    _check(graph, basis)
    return HamiltonianMatrix(
        np.diag(eps * interaction_diagonal(basis)), graph, eps, 0.0,
        basis.n_particles, basis.n_sites,
    )


def build(graph: RootedGraph, eps: float, tau: float, basis: FockBasis) -> HamiltonianMatrix:
    """Full Hamiltonian at self-interaction ``eps`` and hopping ``tau``."""
    _check(graph, basis)
    h = _hopping_matrix(graph, tau, basis)
    h[np.diag_indices_from(h)] += eps * interaction_diagonal(basis)
    return HamiltonianMatrix(h, graph, eps, tau, basis.n_particles, basis.n_sites)


def parity_operator(side, basis: FockBasis) -> np.ndarray:
    """Diagonal of exp(-i pi sum_{j in side} n_j), i.e. (-1)^(particles on ``side``).

    ``side`` is one color class of a bipartition; ``None`` (no bipartition)
    is rejected.
    """
    if side is None:
        raise ValueError("graph is not bipartite; no parity operator exists")
    side = sorted(side)
    if any(not 0 <= v < basis.n_sites for v in side):
        raise ValueError(f"vertex set {side} out of range for L={basis.n_sites}")
    occ = basis.occupations()
    counts = occ[:, side].sum(axis=1) if side else np.zeros(len(basis), dtype=np.int64)
    return np.where(counts % 2 == 0, 1.0, -1.0)
