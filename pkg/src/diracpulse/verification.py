"""Invariant and oracle checks driven by the ``verify`` command."""
from dataclasses import dataclass

import numpy as np

from . import oracle
from .dirac import SpinorField, energy, free_propagate, h0_apply
from .observables import charge_density, current_density
from .pulse import apply_gauge_phase, chi_from_current, ChiProfile, run_extraction
from .grid import make_grid


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool
    note: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.name}: {self.value:.3e} (tol {self.tolerance:.1e})"
        return text + (f" {self.note}" if self.note else "")


def _check(name, value, tol, note="", direction="below"):
    ok = value < tol if direction == "below" else value >= tol
    return Check(name, float(value), float(tol), bool(ok), note)


def random_spinor(grid, rng, bandwidth=None):
    """Random spinor, optionally restricted to |n| <= bandwidth modes."""
    U = rng.normal(size=grid.n_points) + 1j * rng.normal(size=grid.n_points)
    V = rng.normal(size=grid.n_points) + 1j * rng.normal(size=grid.n_points)
    if bandwidth is not None:
        mask = np.abs(grid.mode_numbers()) > bandwidth
        U[mask] = 0
        V[mask] = 0
    return SpinorField.from_momentum(grid, U, V)


def random_real_field(grid, rng, bandwidth):
    """Random real field with modes |n| <= bandwidth (Nyquist excluded)."""
    coeff = rng.normal(size=grid.n_points) + 1j * rng.normal(size=grid.n_points)
    coeff[np.abs(grid.mode_numbers()) > bandwidth] = 0
    return np.fft.ifft(coeff).real * grid.n_points


def commutation_inputs(n_points):
    """Smooth multi-mode chi and spinor on a 2*pi box; aliasing visible at N = 64."""
    grid = make_grid(n_points, 2 * np.pi)
    x = grid.x
    chi = ChiProfile(grid, 4.0 * (np.cos(x) + 0.5 * np.sin(2 * x) + 0.25 * np.cos(3 * x)), 1.0)
    env = np.exp(2.0 * np.cos(x - 1.0))
    psi = SpinorField(grid, env, 0.5 * env * np.exp(1j * np.sin(x)))
    return chi, psi


def single_mode_inputs(n_points):
    grid = make_grid(n_points, 2 * np.pi)
    x = grid.x
    chi = ChiProfile(grid, np.cos(x), 1.0)
    psi = SpinorField(grid, np.exp(1j * x), 0.3 * np.exp(1j * x))
    return chi, psi


def run_checks(psi, f, t_a, t_b, p, seed=0):
    grid = psi.grid
    rng = np.random.default_rng(seed)
    checks = []

    r = random_spinor(grid, rng)
    for comp in (r.upper, r.lower):
        ratio = np.linalg.norm(grid.to_momentum(comp)) ** 2 / np.linalg.norm(comp) ** 2
        checks.append(_check("transform unitarity (Parseval)", abs(ratio - 1), 1e-13))
    back = grid.to_position(grid.to_momentum(r.upper))
    checks.append(_check("transform round trip",
                         np.max(np.abs(back - r.upper)) / np.max(np.abs(r.upper)), 1e-14))

    h = oracle.dense_h0(grid, p)
    checks.append(_check("dense H0 Hermiticity", h.hermiticity_residual(), 1e-13))
    phi = random_spinor(grid, rng)
    lhs = phi.inner(h0_apply(r, p))
    rhs = np.conj(r.inner(h0_apply(phi, p)))
    checks.append(_check("spectral H0 Hermiticity", abs(lhs - rhs) / abs(lhs), 1e-12))
    dense_act = h.apply(psi)
    spec_act = h0_apply(psi, p)
    checks.append(_check("dense vs spectral H0 action",
                         (dense_act - spec_act).norm() / spec_act.norm(), 1e-12))

    U = oracle.dense_propagator(h, t_a)
    checks.append(_check("dense propagator unitarity", U.unitarity_residual(), 1e-11))
    checks.append(_check("dense vs spectral propagator",
                         (U.apply(r) - free_propagate(r, t_a, p)).norm() / r.norm(), 1e-10))
    H_T = U.matrix.conj().T @ h.matrix @ U.matrix
    checks.append(_check("U^dag H0 U = H0", np.max(np.abs(H_T - h.matrix)), 1e-10))

    res64 = oracle.check_gauge_commutation(*commutation_inputs(64), p)
    res128 = oracle.check_gauge_commutation(*commutation_inputs(128), p)
    checks.append(_check("gauge commutation, single mode",
                         oracle.check_gauge_commutation(*single_mode_inputs(64), p), 1e-10))
    checks.append(_check("gauge commutation refinement ratio N=64->128", res64 / res128, 1e3,
                         note=f"(residuals {res64:.2e} -> {res128:.2e})", direction="above"))

    psi0_ta = free_propagate(psi, t_a, p)
    chi = chi_from_current(psi0_ta, f, t_a, p)
    checks.append(_check("energy chain (direct / current / operator)",
                         oracle.check_energy_chain(psi, chi, t_a, t_b, p), 1e-9))

    result = run_extraction(psi, f, t_a, t_b, p)
    e0, e1, d_dense = oracle.dense_pulse_run(psi, chi, t_b, p)
    scale = max(abs(d_dense), np.finfo(float).tiny)
    checks.append(_check("energy change: spectral vs dense",
                         abs(result.delta_measured - d_dense) / scale, 1e-10))
    checks.append(_check("energy change: measured vs divergence prediction",
                         abs(result.delta_measured - result.delta_divergence) / scale, 1e-10))
    checks.append(_check("initial energy: spectral vs dense",
                         abs(energy(psi, p) - e0) / abs(e0), 1e-10))

    pulsed = apply_gauge_phase(psi0_ta, chi.values, p)
    drho = np.max(np.abs(charge_density(pulsed, p) - charge_density(psi0_ta, p)))
    dJ = np.max(np.abs(current_density(pulsed, p) - current_density(psi0_ta, p)))
    checks.append(_check("gauge invariance of rho, J", max(drho, dJ), 1e-13))

    e_start = energy(psi, p)
    drift = max(abs(energy(free_propagate(psi, t, p), p) - e_start) for t in (0.5, t_a, t_b, 10.0))
    checks.append(_check("energy conservation (free)", drift / abs(e_start), 1e-12))
    checks.append(_check("norm conservation (pulse)", abs(pulsed.norm() - psi.norm()), 1e-13))
    return checks
