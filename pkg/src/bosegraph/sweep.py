"""Parameter sweeps and their CSV/gnuplot artifacts."""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path

import numpy as np

from .entanglement import DEFAULT_DT_SAMPLE, DEFAULT_HORIZON, entangling_power, entropy_trace
from .graphs import RootedGraph, invariants
from .perturbation import (
    pmax_closed_form_localized,
    pmax_closed_form_uniform,
    predict,
    rabi_pmax,
    two_level,
)

SWEEP_HEADER = ["eps", "ep", "t_star"]
PREDICT_HEADER = ["eps", "ep_exact", "ep_surrogate", "p_closed", "p_matrix"]


def trace_header(n_particles: int) -> list[str]:
    return ["t", "entropy"] + [f"rho_{j}" for j in range(n_particles + 1)] + ["norm"]


def fmt(x: float) -> str:
    return f"{float(x):.12g}"


@dataclass(frozen=True)
class SweepConfig:
    graph: RootedGraph
    psi_in: tuple[int, ...]
    eps_max: float = 20.0
    eps_step: float = 0.1
    tau: float = 1.0
    horizon: float = DEFAULT_HORIZON
    dt_sample: float = DEFAULT_DT_SAMPLE
    negative: bool = False
    refine: bool = False

    def __post_init__(self):
        if self.eps_step <= 0 or self.eps_max <= 0:
            raise ValueError("eps-step and eps-max must be positive")
        if self.horizon <= 0 or self.dt_sample <= 0:
            raise ValueError("horizon and dt must be positive")
        if len(self.psi_in) != self.graph.n_sites:
            raise ValueError(
                f"initial state {self.psi_in} has {len(self.psi_in)} sites, "
                f"graph has {self.graph.n_sites}"
            )
        if sum(self.psi_in) < 1:
            raise ValueError("initial state must hold at least one particle")


def half_grid(eps_max: float, eps_step: float, negative: bool = False) -> np.ndarray:
    """0, step, ..., eps_max (or the mirrored non-positive half), 0 included."""
    n = int(np.floor(eps_max / eps_step + 1e-9))
    grid = np.round(np.arange(n + 1) * eps_step, 12)
    return -grid + 0.0 if negative else grid


def full_grid(eps_max: float, eps_step: float) -> np.ndarray:
    pos = half_grid(eps_max, eps_step)
    return np.concatenate([-pos[:0:-1], pos]) + 0.0


def _map(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def _sweep_point(cfg: SweepConfig, eps: float):
    res = entangling_power(cfg.graph, eps, cfg.tau, cfg.psi_in, cfg.horizon,
                           cfg.dt_sample, refine=cfg.refine)
    return eps, res.ep, res.t_star


def run_sweep(cfg: SweepConfig, workers: int = 1) -> list[tuple[float, float, float]]:
    """(eps, EP, t_star) rows in grid order; identical for any worker count."""
    grid = [float(e) for e in half_grid(cfg.eps_max, cfg.eps_step, cfg.negative)]
    return _map(partial(_sweep_point, cfg), grid, workers)


def _predict_point(graph, psi_in, tau, horizon, dt_sample, family, eps):
    exact = entangling_power(graph, eps, tau, psi_in, horizon, dt_sample).ep
    pred = predict(graph, psi_in, eps, tau)
    inv = invariants(graph)
    if family == "uniform":
        p_closed = pmax_closed_form_uniform(inv, eps, tau)
    else:
        p_closed = pmax_closed_form_localized(inv, eps, tau, sum(psi_in))
    p_matrix = rabi_pmax(two_level(graph, psi_in, eps, tau))
    return eps, exact, pred.ep_estimate, p_closed, p_matrix


def family_state(family: str, n_sites: int) -> tuple[int, ...]:
    if family == "uniform":
        return (1,) * n_sites
    if family == "localized":
        return (n_sites,) + (0,) * (n_sites - 1)
    raise ValueError(f"unknown initial-state family {family!r}")


def run_predict(graph: RootedGraph, family: str, eps_max: float = 20.0, eps_step: float = 0.1,
                tau: float = 1.0, horizon: float = DEFAULT_HORIZON,
                dt_sample: float = DEFAULT_DT_SAMPLE, workers: int = 1):
    """Exact vs two-level predictions over [-eps_max, eps_max]."""
    psi_in = family_state(family, graph.n_sites)
    grid = [float(e) for e in full_grid(eps_max, eps_step)]
    fn = partial(_predict_point, graph, psi_in, tau, horizon, dt_sample, family)
    return _map(fn, grid, workers)


def write_csv(path, header, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(x) for x in row])


def trace_rows(graph, psi_in, eps, tau, horizon, dt_sample):
    times, dists, ent, norms = entropy_trace(graph, eps, tau, psi_in, horizon, dt_sample)
    for k in range(len(times)):
        yield [times[k], ent[k], *dists[k], norms[k]]


def gnuplot_script(csv_path, columns: list[str], title: str, x_label: str,
                   abs_x: bool = False) -> str:
    """Script plotting the named columns of ``csv_path`` against its first column."""
    xexpr = "(abs($1))" if abs_x else "1"
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set title {title!r}",
        f"set xlabel {x_label!r}",
        "set grid",
    ]
    plots = []
    for name in columns:
        plots.append(f"'{csv_path}' using {xexpr}:\"{name}\" with lines title '{name}'")
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"
