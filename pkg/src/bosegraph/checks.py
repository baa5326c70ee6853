"""Acceptance and property checks run by ``bosegraph verify`` and the test suite.

Every check returns a :class:`CheckResult` carrying the worst measured
deviation, so callers can report it next to the pass/fail flag.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .dynamics import decompose, evolve, evolve_many, rk2_evolve
from .entanglement import entangling_power, max_entropy, reduced_distribution, entropy, system
from .fock import enumerate_basis
from .graphs import enumerate_rooted_graphs, graph_id, invariants
from .hamiltonian import build, parity_operator
from .perturbation import (
    bright_state,
    ep_surrogate,
    pmax_closed_form_localized,
    pmax_closed_form_uniform,
    rabi_pmax,
    two_level,
)
from .sweep import family_state, full_grid

LANDMARKS = {
    (3, "uniform"): 0.92,
    (3, "localized"): 0.91,
    (4, "uniform"): 0.83,
    (4, "localized"): 0.87,
}
LANDMARK_TOL = 0.01
NEAR_MAXIMAL = 0.99
SYMMETRY_EPS = (0.5, 1.0, 5.0, 10.0, 20.0)
SYMMETRY_TOL = 1e-6
ORACLE_TOL = 1e-9
SIGN_LAW_EPS = (10.0, 20.0)
SURROGATE_TOL = 0.05
RK2_TOL = 1e-6
NORM_TOL = 1e-8
ENERGY_TOL = 1e-8
DIST_TOL = 1e-10


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _graphs(sites=(3, 4)):
    for n in sites:
        for pos, g in enumerate(enumerate_rooted_graphs(n)):
            yield graph_id(n, pos), g


def check_census() -> CheckResult:
    counts = {}
    for n in (3, 4):
        graphs = enumerate_rooted_graphs.__wrapped__(n)
        counts[n] = (len(graphs), sum(invariants(g).bipartite for g in graphs))
    ok = counts == {3: (3, 2), 4: (11, 5)}
    detail = ", ".join(f"L={n}: {c} classes, {b} bipartite" for n, (c, b) in counts.items())
    return CheckResult("graph census", ok, 0.0, detail)


def check_landmarks() -> CheckResult:
    worst = 0.0
    notes = []
    ok = True
    for (n, family), target in LANDMARKS.items():
        vals = [entangling_power(g, 0.0, 1.0, family_state(family, n)).ep
                for g in enumerate_rooted_graphs(n)]
        dev = max(abs(v - target) for v in vals)
        spread = max(vals) - min(vals)
        worst = max(worst, dev, spread)
        ok &= dev <= LANDMARK_TOL and spread <= LANDMARK_TOL
        notes.append(f"L={n} {family}: {min(vals):.4f}..{max(vals):.4f} vs {target}")
    return CheckResult("eps=0 landmarks", ok, worst, "; ".join(notes))


def check_near_maximal(eps_max: float = 20.0, eps_step: float = 0.1) -> CheckResult:
    grid = full_grid(eps_max, eps_step)
    lowest = 1.0
    for gid, g in _graphs():
        psi = family_state("localized", g.n_sites)
        best = max(entangling_power(g, float(e), 1.0, psi).ep for e in grid)
        lowest = min(lowest, best)
    return CheckResult("near-maximal localized EP", lowest > NEAR_MAXIMAL, lowest,
                       f"smallest per-graph max EP = {lowest:.5f} (need > {NEAR_MAXIMAL}) "
                       f"over {len(grid)} eps points")


def check_bipartite_symmetry() -> CheckResult:
    worst_ep = 0.0
    worst_mat = 0.0
    n_graphs = 0
    for gid, g in _graphs():
        inv = invariants(g)
        if not inv.bipartite:
            continue
        n_graphs += 1
        basis, hop, diag = system(g, g.n_sites, 1.0)
        signs = parity_operator(inv.bipartition[0], basis)
        flipped = signs[:, None] * hop * signs[None, :]
        worst_mat = max(worst_mat, float(np.abs(flipped + hop).max()))
        for family in ("uniform", "localized"):
            psi = family_state(family, g.n_sites)
            for e in SYMMETRY_EPS:
                d = abs(entangling_power(g, e, 1.0, psi).ep - entangling_power(g, -e, 1.0, psi).ep)
                worst_ep = max(worst_ep, d)
    ok = n_graphs == 7 and worst_ep < SYMMETRY_TOL and worst_mat <= 1e-15
    return CheckResult("bipartite eps -> -eps symmetry", ok, worst_ep,
                       f"{n_graphs} graphs, max |EP(e)-EP(-e)| = {worst_ep:.2e}, "
                       f"max |P H_tau P + H_tau| = {worst_mat:.1e}")


def check_triangle_identity(taus=(1.0, 0.7)) -> CheckResult:
    worst = 0.0
    ok = True
    for gid, g in _graphs((2, 3, 4)):
        inv = invariants(g)
        psi_in = family_state("uniform", g.n_sites)
        for tau in taus:
            basis, hop, _ = system(g, g.n_sites, tau)
            bright = bright_state(g, psi_in, basis, tau)
            q = np.count_nonzero(bright)
            diag_elem = float(bright @ hop @ bright)
            worst = max(worst, abs(diag_elem - 18.0 * tau * inv.l3 / q))
            if inv.bipartite:
                psi = basis.basis_vector(psi_in).real
                cube = float(psi @ hop @ hop @ hop @ psi)
                worst = max(worst, abs(cube))
                ok &= abs(diag_elem) <= ORACLE_TOL
    ok &= worst <= ORACLE_TOL
    return CheckResult("<I|H_tau|I> = 18 tau l3 / q", ok, worst,
                       f"max deviation {worst:.1e} over L<=4 graphs")


def check_closed_forms(eps_values=None, taus=(1.0, 0.5)) -> CheckResult:
    if eps_values is None:
        eps_values = full_grid(20.0, 0.5)
    worst = 0.0
    for gid, g in _graphs((2, 3, 4)):
        inv = invariants(g)
        n = g.n_sites
        for tau in taus:
            for e in eps_values:
                e = float(e)
                pu = rabi_pmax(two_level(g, family_state("uniform", n), e, tau))
                pl = rabi_pmax(two_level(g, family_state("localized", n), e, tau))
                worst = max(worst,
                            abs(pu - pmax_closed_form_uniform(inv, e, tau)),
                            abs(pl - pmax_closed_form_localized(inv, e, tau, n)))
    return CheckResult("closed-form P vs matrix elements", worst <= ORACLE_TOL, worst,
                       f"max |P_closed - P_matrix| = {worst:.1e}")


def check_sign_laws() -> CheckResult:
    failures = []
    margin = np.inf
    for gid, g in _graphs():
        inv = invariants(g)
        uni = family_state("uniform", g.n_sites)
        loc = family_state("localized", g.n_sites)
        ep = {}
        for e in SIGN_LAW_EPS:
            for s in (1, -1):
                ep[("u", s * e)] = entangling_power(g, s * e, 1.0, uni).ep
                ep[("l", s * e)] = entangling_power(g, s * e, 1.0, loc).ep
        for e in SIGN_LAW_EPS:
            if not inv.bipartite:
                d_loc = ep[("l", e)] - ep[("l", -e)]
                d_uni = ep[("u", -e)] - ep[("u", e)]
                margin = min(margin, d_loc, d_uni)
                if not d_loc >= 0:
                    failures.append(f"{gid} localized EP(+{e:g})-EP(-{e:g})={d_loc:.2e}")
                if not d_uni > 0:
                    failures.append(f"{gid} uniform EP(-{e:g})-EP(+{e:g})={d_uni:.2e}")
        for s in (1, -1):
            d = ep[("u", 20.0 * s)] - ep[("l", 20.0 * s)]
            margin = min(margin, d)
            if not d > 0:
                failures.append(f"{gid} EP(uniform)-EP(localized) at {20 * s:g} = {d:.2e}")
    detail = "all orderings hold" if not failures else "; ".join(failures)
    return CheckResult("perturbative sign laws", not failures, float(margin), detail)


def check_surrogate(eps_min: float = 10.0, eps_max: float = 20.0, eps_step: float = 0.1) -> CheckResult:
    n = int(round((eps_max - eps_min) / eps_step))
    mags = np.round(eps_min + np.arange(n + 1) * eps_step, 12)
    worst = 0.0
    where = ""
    n_bad = 0
    for gid, g in _graphs():
        for family in ("uniform", "localized"):
            psi = family_state(family, g.n_sites)
            for m in mags:
                for e in (float(m), -float(m)):
                    d = abs(ep_surrogate(g, psi, e) - entangling_power(g, e, 1.0, psi).ep)
                    n_bad += d > SURROGATE_TOL
                    if d > worst:
                        worst, where = d, f"{gid} {family} eps={e:g}"
    return CheckResult("surrogate vs exact EP", worst <= SURROGATE_TOL, worst,
                       f"max |ep_surrogate - EP| = {worst:.4f} at {where}; "
                       f"{n_bad} points above {SURROGATE_TOL}")


def check_properties() -> CheckResult:
    """RK2 agreement, conservation laws, conjugation symmetry, entropy bounds."""
    worst = {"rk2": 0.0, "norm": 0.0, "energy": 0.0, "conj": 0.0, "dist": 0.0}
    bounds_ok = True
    basis3 = enumerate_basis(3, 3)
    for g in enumerate_rooted_graphs(3):
        for e in (0.0, 0.5, 1.0, -1.0):
            h = build(g, e, 1.0, basis3)
            d = decompose(h)
            for psi_in in ((1, 1, 1), (3, 0, 0)):
                psi0 = basis3.basis_vector(psi_in)
                ref = evolve(d, psi0, 1.0)
                rk = rk2_evolve(h, psi0, dt=1e-4, steps=10_000).states[-1]
                worst["rk2"] = max(worst["rk2"], float(np.abs(rk - ref).max()))
    rng = np.random.default_rng(7)
    for gid, g in _graphs():
        n = g.n_sites
        basis, hop, diag = system(g, n, 1.0)
        for e in (-5.0, 0.0, 2.5):
            h = hop + np.diag(e * diag)
            d = decompose(h)
            psi0 = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
            psi0 /= np.linalg.norm(psi0)
            traj = evolve_many(d, psi0, np.linspace(0.0, 15.0, 301))
            worst["norm"] = max(worst["norm"], float(np.abs(traj.norms() - 1).max()))
            energies = np.einsum("ti,ij,tj->t", traj.states.conj(), h, traj.states).real
            worst["energy"] = max(worst["energy"], float(np.abs(energies - energies[0]).max()))
            # alpha_nm(t) = <m|U(t)|n> from random Fock states n
            for t in (0.37, 4.2):
                for k in rng.choice(len(basis), size=min(3, len(basis)), replace=False):
                    fock = basis.basis_vector(basis.states[k])
                    gap = evolve(d, fock, -t) - evolve(d, fock, t).conj()
                    worst["conj"] = max(worst["conj"], float(np.abs(gap).max()))
            dists = reduced_distribution(traj.states, basis)
            worst["dist"] = max(worst["dist"], float(np.abs(dists.sum(axis=1) - 1).max()))
            ent = entropy(dists)
            bounds_ok &= bool(np.all(ent >= -1e-12) and np.all(ent <= max_entropy(n) + 1e-12))
            bounds_ok &= bool(np.all(dists >= -1e-15) and np.all(dists <= 1 + 1e-12))
    ok = (worst["rk2"] <= RK2_TOL and worst["norm"] <= NORM_TOL and worst["energy"] <= ENERGY_TOL
          and worst["conj"] <= 1e-12 and worst["dist"] <= DIST_TOL and bounds_ok)
    detail = (f"rk2 {worst['rk2']:.1e}, norm {worst['norm']:.1e}, energy {worst['energy']:.1e}, "
              f"alpha(-t)-alpha*(t) {worst['conj']:.1e}, sum(rho)-1 {worst['dist']:.1e}, "
              f"entropy bounds {'ok' if bounds_ok else 'VIOLATED'}")
    return CheckResult("property suites", ok, worst["rk2"], detail)


ALL_CHECKS = {
    "census": check_census,
    "landmarks": check_landmarks,
    "near-maximal": check_near_maximal,
    "bipartite-symmetry": check_bipartite_symmetry,
    "triangle-identity": check_triangle_identity,
    "closed-forms": check_closed_forms,
    "sign-laws": check_sign_laws,
    "surrogate": check_surrogate,
    "properties": check_properties,
}


def run_checks(names=None, echo=None) -> list[CheckResult]:
    results = []
    for name in names or ALL_CHECKS:
        start = time.perf_counter()
        res = ALL_CHECKS[name]()
        res.seconds = time.perf_counter() - start
        if echo:
            echo(res.line())
        results.append(res)
    return results
