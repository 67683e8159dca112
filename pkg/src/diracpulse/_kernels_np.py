"""Numpy implementations of the per-site / per-mode kernels.

Every function takes and returns complex128 (or float64) 1D arrays and never
mutates its inputs. The compiled module ``_kernels`` exposes the same names.
"""
import numpy as np


def propagate_modes(U, V, k, mass, t):
    """Apply exp(-i H(k) t) with H(k) = k*sigma1 + m*sigma3 to every mode."""
    E = np.sqrt(k * k + mass * mass)
    c = np.cos(E * t)
    s = np.sin(E * t) / E
    HU = mass * U + k * V
    HV = k * U - mass * V
    return c * U - 1j * s * HU, c * V - 1j * s * HV


def h0_modes(U, V, k, mass):
    return mass * U + k * V, k * U - mass * V


def project_modes(U, V, k, mass, sign):
    """Branch projector 1/2 (I + sign * H(k)/E(k)) applied per mode."""
    E = np.sqrt(k * k + mass * mass)
    w = 0.5 * sign / E
    return (0.5 * U + w * (mass * U + k * V),
            0.5 * V + w * (k * U - mass * V))


def potential_half_step(u, v, a, b, tau):
    """exp(-i (a sigma1 + b) tau) per site."""
    ph = np.exp(-1j * b * tau)
    c = np.cos(a * tau)
    s = np.sin(a * tau)
    return ph * (c * u - 1j * s * v), ph * (c * v - 1j * s * u)


def gauge_phase(u, v, chi, charge):
    ph = np.exp(-1j * charge * chi)
    return ph * u, ph * v


def densities(u, v, charge):
    """Return (rho, J) with rho = q psi^dag psi and J = q psi^dag sigma1 psi."""
    rho = charge * (u.real ** 2 + u.imag ** 2 + v.real ** 2 + v.imag ** 2)
    J = 2.0 * charge * (u.real * v.real + u.imag * v.imag)
    return rho, J
