"""Pure-gauge pulse: construction of chi, the closed-form pulsed state, and
the energy change it produces.

A pulse (A0, A) = (d chi/dt, -d chi/dx) switched on at t = 0 (with chi and
d chi/dt zero there) and off at t_a leaves the state

    psi(t_a) = exp(-i q chi(x, t_a)) exp(-i H0 t_a) psi(0)

and afterwards evolves freely. The free-field energy change is then fixed
by the freely evolved current J0 = J(exp(-i H0 t_a) psi(0)):

    delta = -int J0 * d(chi)/dx dx = int chi * d(J0)/dx dx,

and choosing chi = -f dJ0/dx gives delta = -f int (dJ0/dx)^2 dx <= 0.
"""
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .dirac import EnergyReport, SpinorField, energy, energy_split, free_propagate
from .observables import charge_density, current_density, div_current

# tail fraction above which the phase winding counts as under-resolved
TAIL_WARN = 1e-8
# |measured - predicted| <= MISMATCH_TOL * max(1, |predicted|)
MISMATCH_TOL = 1e-8
# rms(dJ/dx) below this times k_max * max(rho) means "no divergence anywhere"
DIVERGENCE_TOL = 1e-12


class ResolutionWarning(UserWarning):
    """The pulsed state has spectral weight near the grid cutoff; raise N."""


class ExtractionImpossibleError(ValueError):
    """The current divergence vanishes everywhere, so chi = -f div J is zero."""


@dataclass(frozen=True, eq=False)
class ChiProfile:
    """chi(x, t_a) sampled on the grid, plus the pulse duration t_a.

    During the pulse the potentials are A0 = d chi/dt and A = -d chi/dx.
    """

    grid: object
    values: np.ndarray
    t_a: float

    def __post_init__(self):
        vals = np.asarray(self.grid.check(self.values))
        if np.iscomplexobj(vals):
            raise ValueError("chi must be real")
        vals = vals.astype(np.float64)
        if not np.all(np.isfinite(vals)):
            raise ValueError("chi has non-finite entries")
        if not self.t_a > 0:
            raise ValueError(f"t_a must be positive, got {self.t_a}")
        object.__setattr__(self, "values", vals)

    def vector_potential(self):
        return -self.grid.derivative(self.values)

    def gradient(self):
        return self.grid.derivative(self.values)


@dataclass
class ExtractionResult:
    f: Optional[float]
    delta_measured: float
    delta_gradient: float
    delta_divergence: float
    delta_quadratic: Optional[float]
    energy_before: float
    energy_after: float
    report_after: EnergyReport
    tail_fraction_after: float
    warnings: list = field(default_factory=list)

    @property
    def rel_err_divergence(self):
        return abs(self.delta_measured - self.delta_divergence) / max(1.0, abs(self.delta_divergence))

    @property
    def consistent(self):
        return self.rel_err_divergence <= MISMATCH_TOL


def _same_grid(psi, chi):
    if psi.grid.n_points != chi.grid.n_points or psi.grid.length != chi.grid.length:
        raise ValueError("state and chi live on different grids")


def chi_from_current(psi0_ta, f, t_a, p):
    """chi = -f dJ/dx of the freely evolved state at t_a."""
    if not np.isfinite(f):
        raise ValueError(f"f must be finite, got {f}")
    return ChiProfile(psi0_ta.grid, -f * div_current(psi0_ta, p), t_a)


def apply_gauge_phase(psi, chi_values, p):
    u, v = kernels.gauge_phase(psi.upper, psi.lower, chi_values, p.charge)
    return SpinorField(psi.grid, u, v)


def apply_pulse(psi_at_0, chi, p):
    """State at t_a: free evolution to t_a followed by the phase exp(-i q chi)."""
    _same_grid(psi_at_0, chi)
    psi0_ta = free_propagate(psi_at_0, chi.t_a, p)
    out = apply_gauge_phase(psi0_ta, chi.values, p)
    tail = out.tail_fraction()
    if tail > TAIL_WARN:
        warnings.warn(
            f"pulsed state tail fraction {tail:.2e} > {TAIL_WARN:g}; "
            f"phase winding under-resolved, increase n_points",
            ResolutionWarning, stacklevel=2)
    return out


def predict_delta_gradient(psi0_ta, chi, p):
    """-int J0 * d(chi)/dx dx."""
    _same_grid(psi0_ta, chi)
    grid = psi0_ta.grid
    return float(-grid.integrate(current_density(psi0_ta, p) * grid.derivative(chi.values)))


def predict_delta_divergence(psi0_ta, chi, p):
    """int chi * dJ0/dx dx (the gradient form after periodic integration by parts)."""
    _same_grid(psi0_ta, chi)
    return float(psi0_ta.grid.integrate(chi.values * div_current(psi0_ta, p)))


def divergence_power(psi0_ta, p):
    """int (dJ0/dx)^2 dx."""
    div = div_current(psi0_ta, p)
    return float(psi0_ta.grid.integrate(div * div))


def predict_delta_quadratic(psi0_ta, f, p):
    """-f int (dJ0/dx)^2 dx; never positive for f >= 0."""
    return -f * divergence_power(psi0_ta, p)


def divergence_vanishes(psi0_ta, p):
    div = div_current(psi0_ta, p)
    rho = charge_density(psi0_ta, p)
    scale = psi0_ta.grid.k_max * float(np.max(np.abs(rho)))
    rms = float(np.sqrt(np.mean(div * div)))
    return rms <= DIVERGENCE_TOL * max(scale, np.finfo(float).tiny)


def f_for_target(psi0_ta, delta_target, p):
    """Pulse strength f whose chi = -f dJ0/dx yields the energy change delta_target."""
    if delta_target > 0:
        raise ValueError("delta_target must be <= 0: this chi can only extract energy")
    if delta_target == 0:
        return 0.0
    if divergence_vanishes(psi0_ta, p):
        raise ExtractionImpossibleError(
            "the current divergence dJ/dx vanishes everywhere for this state "
            "(e.g. a plane wave with uniform current), so chi = -f dJ/dx is zero "
            "and no energy can be extracted")
    return -delta_target / divergence_power(psi0_ta, p)


def _finish(psi_at_0, psi0_ta, chi, t_b, p, f, delta_quadratic):
    if not 0 < chi.t_a <= t_b:
        raise ValueError(f"need 0 < t_a <= t_b, got t_a={chi.t_a}, t_b={t_b}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ResolutionWarning)
        pulsed = apply_pulse(psi_at_0, chi, p)
    messages = [str(w.message) for w in caught if issubclass(w.category, ResolutionWarning)]
    for msg in messages:
        warnings.warn(msg, ResolutionWarning, stacklevel=3)
    psi_b = free_propagate(pulsed, t_b - chi.t_a, p)
    e0 = energy(psi_at_0, p)
    report = energy_split(psi_b, p)
    result = ExtractionResult(
        f=f,
        delta_measured=report.total - e0,
        delta_gradient=predict_delta_gradient(psi0_ta, chi, p),
        delta_divergence=predict_delta_divergence(psi0_ta, chi, p),
        delta_quadratic=delta_quadratic,
        energy_before=e0,
        energy_after=report.total,
        report_after=report,
        tail_fraction_after=psi_b.tail_fraction(),
        warnings=messages,
    )
    if not result.consistent:
        result.warnings.append(
            f"measured energy change {result.delta_measured:.17g} differs from "
            f"prediction {result.delta_divergence:.17g} (rel err {result.rel_err_divergence:.2e})")
    return result


def run_pulse(psi_at_0, chi, t_b, p):
    """Full run for a user-supplied chi; the quadratic prediction is undefined."""
    _same_grid(psi_at_0, chi)
    psi0_ta = free_propagate(psi_at_0, chi.t_a, p)
    return _finish(psi_at_0, psi0_ta, chi, t_b, p, f=None, delta_quadratic=None)


def run_extraction(psi_at_0, f, t_a, t_b, p):
    """Pulse with chi = -f dJ0/dx, energy measured at t = 0 and t = t_b."""
    if not 0 < t_a <= t_b:
        raise ValueError(f"need 0 < t_a <= t_b, got t_a={t_a}, t_b={t_b}")
    psi0_ta = free_propagate(psi_at_0, t_a, p)
    chi = chi_from_current(psi0_ta, f, t_a, p)
    return _finish(psi_at_0, psi0_ta, chi, t_b, p, f=float(f),
                   delta_quadratic=predict_delta_quadratic(psi0_ta, f, p))
