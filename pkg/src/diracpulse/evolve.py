"""Strang split-operator integration of the pulse-era equation of motion

    i d(psi)/dt = (H0 + q s(t) chi_a'(x) sigma1 + q s'(t) chi_a(x)) psi,

with chi(x, t) = s(t) chi_a(x) and the smoothstep ramp s. This shares
nothing with the closed-form pulse beyond ``free_propagate`` and pointwise
phases, so its convergence to ``apply_pulse`` checks the closed form.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .dirac import SpinorField, free_propagate
from .pulse import apply_pulse


@dataclass(frozen=True)
class RampSpec:
    """Smoothstep s(t) = 3 tau^2 - 2 tau^3, tau = t / t_a; s(0) = s'(0) = 0, s(t_a) = 1."""

    t_a: float

    def __post_init__(self):
        if not self.t_a > 0:
            raise ValueError(f"t_a must be positive, got {self.t_a}")

    def value(self, t):
        tau = t / self.t_a
        return tau * tau * (3.0 - 2.0 * tau)

    def rate(self, t):
        tau = t / self.t_a
        return 6.0 * tau * (1.0 - tau) / self.t_a


@dataclass(frozen=True)
class IntegratorConfig:
    n_steps: int

    def __post_init__(self):
        if int(self.n_steps) != self.n_steps or self.n_steps < 4:
            raise ValueError(f"n_steps must be an integer >= 4, got {self.n_steps}")


def _potential_half(psi, chi_values, chi_grad, s, ds, tau, p):
    a = p.charge * s * chi_grad
    b = p.charge * ds * chi_values
    u, v = kernels.potential_half_step(psi.upper, psi.lower, a, b, tau)
    return SpinorField(psi.grid, u, v)


def step(psi, t, dt, chi_a, ramp, p, _chi_grad=None):
    """One Strang step V(dt/2) K(dt) V(dt/2), potential frozen at t + dt/2.

    A negative dt steps backwards and exactly inverts the forward step that
    spans the same interval.
    """
    lo, hi = sorted((t, t + dt))
    eps = 1e-12 * ramp.t_a
    if lo < -eps or hi > ramp.t_a + eps:
        raise ValueError(f"step [{t}, {t + dt}] leaves the pulse window [0, {ramp.t_a}]")
    chi_grad = chi_a.gradient() if _chi_grad is None else _chi_grad
    tm = t + 0.5 * dt
    s, ds = ramp.value(tm), ramp.rate(tm)
    psi = _potential_half(psi, chi_a.values, chi_grad, s, ds, 0.5 * dt, p)
    psi = free_propagate(psi, dt, p)
    return _potential_half(psi, chi_a.values, chi_grad, s, ds, 0.5 * dt, p)


def run(psi_at_0, chi_a, ramp, config, p, callback=None):
    """Integrate from 0 to t_a in ``config.n_steps`` equal steps.

    ``callback(t, psi)`` is invoked after every step.
    """
    n = config.n_steps
    dt = ramp.t_a / n
    grad = chi_a.gradient()
    psi = psi_at_0
    for j in range(n):
        psi = step(psi, j * dt, dt, chi_a, ramp, p, _chi_grad=grad)
        if callback is not None:
            callback((j + 1) * dt, psi)
    return psi


def run_backward(psi_at_ta, chi_a, ramp, config, p):
    """Integrate from t_a back to 0 (time-reversed stepping)."""
    n = config.n_steps
    dt = ramp.t_a / n
    grad = chi_a.gradient()
    psi = psi_at_ta
    for j in range(n, 0, -1):
        psi = step(psi, j * dt, -dt, chi_a, ramp, p, _chi_grad=grad)
    return psi


@dataclass(frozen=True)
class ConvergenceRow:
    n_steps: int
    dt: float
    l2_error: float
    order: Optional[float]


@dataclass(frozen=True)
class ConvergenceStudy:
    rows: list
    fitted_order: Optional[float]
    degenerate: bool
    monotone: bool

    def in_band(self, lo=1.8, hi=2.2):
        return self.fitted_order is not None and lo <= self.fitted_order <= hi


# all errors below this means the pulse does nothing measurable
DEGENERATE_ERROR = 1e-12


def convergence_study(psi_at_0, chi_a, ramp, step_counts, p):
    """L2 distance of the integrator from ``apply_pulse`` for each step count.

    ``order`` per row is log2-ratio with the previous row scaled by the dt
    ratio; ``fitted_order`` is the least-squares log-log slope.
    """
    counts = [int(c) for c in step_counts]
    if not counts or any(c < 4 for c in counts) or any(b <= a for a, b in zip(counts, counts[1:])):
        raise ValueError(f"step_counts must be strictly increasing and >= 4, got {step_counts}")
    exact = apply_pulse(psi_at_0, chi_a, p)
    errors = []
    for n in counts:
        approx = run(psi_at_0, chi_a, ramp, IntegratorConfig(n), p)
        errors.append((approx - exact).norm())
    dts = [ramp.t_a / n for n in counts]
    degenerate = max(errors) < DEGENERATE_ERROR
    rows = []
    for i, (n, dt, err) in enumerate(zip(counts, dts, errors)):
        order = None
        if i > 0 and not degenerate and err > 0 and errors[i - 1] > 0:
            order = float(np.log(errors[i - 1] / err) / np.log(dts[i - 1] / dt))
        rows.append(ConvergenceRow(n, dt, float(err), order))
    fitted = None
    if not degenerate and len(counts) >= 2 and min(errors) > 0:
        fitted = float(np.polyfit(np.log(dts), np.log(errors), 1)[0])
    monotone = all(b < a for a, b in zip(errors, errors[1:]))
    return ConvergenceStudy(rows, fitted, degenerate, monotone)
