"""Charge density, current density, its divergence and the continuity residual."""
import numpy as np

from . import kernels
from .dirac import h0_apply


def charge_density(psi, p):
    """rho = q (|upper|^2 + |lower|^2)."""
    rho, _ = kernels.densities(psi.upper, psi.lower, p.charge)
    return rho


def current_density(psi, p):
    """J = q psi^dag sigma1 psi = 2 q Re(conj(upper) lower)."""
    _, J = kernels.densities(psi.upper, psi.lower, p.charge)
    return J


def div_current(psi, p):
    return psi.grid.derivative(current_density(psi, p))


def charge_rate(psi, p):
    """d(rho)/dt from the equation of motion psi' = -i H0 psi."""
    h = h0_apply(psi, p)
    dt_u = -1j * h.upper
    dt_v = -1j * h.lower
    return 2.0 * p.charge * (np.conj(psi.upper) * dt_u + np.conj(psi.lower) * dt_v).real


def continuity_residual(psi, p):
    """d(rho)/dt + dJ/dx pointwise; zero up to aliasing of the products."""
    return charge_rate(psi, p) + div_current(psi, p)
