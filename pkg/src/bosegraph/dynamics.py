"""Time evolution under a fixed real-symmetric Hamiltonian (hbar = 1).

The spectral propagator is the production path. ``rk2_evolve`` is a
second-order Runge-Kutta integrator kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonian import HamiltonianMatrix

RK2_DEFAULT_DT = 1e-3
RK2_MAX_NORM_DRIFT = 1e-6


class NumericalError(RuntimeError):
    """Eigensolver failure or an integration step that breaks unitarity."""


@dataclass(frozen=True)
class SpectralDecomposition:
    energies: np.ndarray  # ascending
    vectors: np.ndarray  # columns are eigenvectors, real orthogonal

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.energies) @ self.vectors.T


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # (len(times), dim) complex

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.states, axis=1)


def _as_array(h) -> np.ndarray:
    return h.matrix if isinstance(h, HamiltonianMatrix) else np.asarray(h)


def decompose(h) -> SpectralDecomposition:
    """Full real spectrum of a symmetric Hamiltonian."""
    mat = _as_array(h)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"Hamiltonian must be square, got shape {mat.shape}")
    try:
        energies, vectors = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver did not converge: {exc}") from exc
    return SpectralDecomposition(energies, vectors)


def evolve(decomp: SpectralDecomposition, psi0, t: float) -> np.ndarray:
    """psi(t) = O exp(-i t E) O^T psi0."""
    psi0 = np.asarray(psi0, dtype=np.complex128)
    if psi0.shape != (len(decomp.energies),):
        raise ValueError(f"state has shape {psi0.shape}, expected ({len(decomp.energies)},)")
    if t == 0:
        return psi0.copy()
    coeffs = decomp.vectors.T @ psi0
    return decomp.vectors @ (np.exp(-1j * t * decomp.energies) * coeffs)


def evolve_many(decomp: SpectralDecomposition, psi0, times) -> Trajectory:
    """Spectral evolution sampled at every entry of ``times`` (vectorized)."""
    times = np.asarray(times, dtype=np.float64)
    psi0 = np.asarray(psi0, dtype=np.complex128)
    if psi0.shape != (len(decomp.energies),):
        raise ValueError(f"state has shape {psi0.shape}, expected ({len(decomp.energies)},)")
    coeffs = decomp.vectors.T @ psi0
    phases = np.exp(-1j * np.outer(times, decomp.energies)) * coeffs
    states = phases @ decomp.vectors.T
    # U(0) is the identity; skip the eigenbasis round trip
    states[times == 0] = psi0
    return Trajectory(times, states)


def sample_times(horizon: float, dt_sample: float) -> np.ndarray:
    """Uniform grid 0, dt, ..., T; the endpoint is included when T/dt is integral."""
    if horizon <= 0 or dt_sample <= 0:
        raise ValueError("horizon and dt_sample must be positive")
    n = int(np.floor(horizon / dt_sample + 1e-9))
    return np.arange(n + 1) * dt_sample


def spectral_center(mat: np.ndarray) -> float:
    """Midpoint of the Gershgorin bounds on the spectrum."""
    radii = np.abs(mat).sum(axis=1) - np.abs(np.diag(mat))
    diag = np.real(np.diag(mat))
    return float(0.5 * ((diag - radii).min() + (diag + radii).max()))


def rk2_evolve(h, psi0, dt: float = RK2_DEFAULT_DT, steps: int = 1,
               energy_shift: float | None = None) -> Trajectory:
    """Explicit midpoint integration of d(psi)/dt = -i H psi.

    Steps are taken in a frame shifted by a constant ``energy_shift``
    (default: the Gershgorin center of H) and the global phase
    exp(-i * shift * t) is restored exactly at every sample. The state is
    renormalized after every step; a step that changes the norm by more than
    ``RK2_MAX_NORM_DRIFT`` raises :class:`NumericalError`.
    """
    if dt <= 0 or steps < 0:
        raise ValueError("dt must be positive and steps non-negative")
    mat = _as_array(h).astype(np.complex128)
    shift = spectral_center(mat) if energy_shift is None else float(energy_shift)
    mat = mat - shift * np.eye(mat.shape[0])
    psi = np.asarray(psi0, dtype=np.complex128).copy()
    out = np.empty((steps + 1, psi.size), dtype=np.complex128)
    out[0] = psi
    for n in range(steps):
        k1 = -1j * (mat @ psi)
        k2 = -1j * (mat @ (psi + 0.5 * dt * k1))
        nxt = psi + dt * k2
        before, after = np.linalg.norm(psi), np.linalg.norm(nxt)
        if abs(after - before) > RK2_MAX_NORM_DRIFT:
            raise NumericalError(
                f"RK2 norm drift {abs(after - before):.2e} at step {n}; reduce dt (={dt})"
            )
        psi = nxt / after
        out[n + 1] = psi
    times = np.arange(steps + 1) * dt
    return Trajectory(times, out * np.exp(-1j * shift * times)[:, None])
