"""Fixed-particle-number Fock basis for N bosons on L sites."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, sqrt

import numpy as np

FockState = tuple[int, ...]


def _compositions(n: int, parts: int):
    # lexicographically descending: (n,0,..,0) first, (0,..,0,n) last
    if parts == 1:
        yield (n,)
        return
    for head in range(n, -1, -1):
        for tail in _compositions(n - head, parts - 1):
            yield (head,) + tail


@dataclass(frozen=True)
class FockBasis:
    """Ordered list of occupation vectors with a reverse index.

    Immutable; safe to share between worker processes.
    """

    n_particles: int
    n_sites: int
    states: tuple[FockState, ...]
    index: dict[FockState, int] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.states)

    def index_of(self, state) -> int:
        key = tuple(int(x) for x in state)
        try:
            return self.index[key]
        except KeyError:
            raise ValueError(
                f"state {key} is not in the N={self.n_particles}, L={self.n_sites} basis"
            ) from None

    def occupations(self) -> np.ndarray:
        """(dim, L) integer array of occupation numbers."""
        return np.array(self.states, dtype=np.int64).reshape(len(self), self.n_sites)

    def basis_vector(self, state) -> np.ndarray:
        """Complex unit vector for a single Fock state."""
        psi = np.zeros(len(self), dtype=np.complex128)
        psi[self.index_of(state)] = 1.0
        return psi


def enumerate_basis(n_particles: int, n_sites: int) -> FockBasis:
    """All compositions of ``n_particles`` into ``n_sites`` parts.

    Size is C(N+L-1, N); order is lexicographically descending.
    """
    if n_particles < 1 or n_sites < 1:
        raise ValueError("need N >= 1 and L >= 1")
    states = tuple(_compositions(n_particles, n_sites))
    assert len(states) == comb(n_particles + n_sites - 1, n_particles)
    return FockBasis(
        n_particles=n_particles,
        n_sites=n_sites,
        states=states,
        index={s: k for k, s in enumerate(states)},
    )


def hop_matrix_element(state, i: int, j: int) -> tuple[FockState, float]:
    """Apply c_i^dagger c_j to a Fock state.

    Returns the image state and the factor sqrt(n_j) * sqrt(n_i + 1). When
    site ``j`` is empty the amplitude is 0 and the input state is returned
    unchanged.
    """
    state = tuple(int(x) for x in state)
    n_sites = len(state)
    if not (0 <= i < n_sites and 0 <= j < n_sites):
        raise IndexError(f"site index out of range for L={n_sites}: ({i}, {j})")
    if i == j:
        raise ValueError("hopping needs two distinct sites")
    if state[j] == 0:
        return state, 0.0
    amp = sqrt(state[j]) * sqrt(state[i] + 1)
    image = list(state)
    image[j] -= 1
    image[i] += 1
    return tuple(image), amp


def parse_occupations(text: str) -> FockState:
    """Parse an occupation string such as ``"111"``, ``"4000"`` or ``"1,1,2"``."""
    text = text.strip()
    parts = text.split(",") if "," in text else list(text)
    try:
        occ = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"cannot parse occupation string {text!r}") from None
    if not occ or any(n < 0 for n in occ):
        raise ValueError(f"occupations must be non-negative integers: {text!r}")
    return occ
