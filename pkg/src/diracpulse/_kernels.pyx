# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_kernels_np``."""
import numpy as np

from libc.math cimport cos, sin, sqrt


def propagate_modes(const double complex[::1] U, const double complex[::1] V,
                    const double[::1] k, double mass, double t):
    cdef Py_ssize_t n = U.shape[0], j
    cdef double E, c, s, kk
    cdef double complex u, v, hu, hv
    out_u = np.empty(n, dtype=np.complex128)
    out_v = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ou = out_u, ov = out_v
    for j in range(n):
        kk = k[j]
        E = sqrt(kk * kk + mass * mass)
        c = cos(E * t)
        s = sin(E * t) / E
        u = U[j]
        v = V[j]
        hu = mass * u + kk * v
        hv = kk * u - mass * v
        ou[j] = c * u - 1j * s * hu
        ov[j] = c * v - 1j * s * hv
    return out_u, out_v


def h0_modes(const double complex[::1] U, const double complex[::1] V,
             const double[::1] k, double mass):
    cdef Py_ssize_t n = U.shape[0], j
    out_u = np.empty(n, dtype=np.complex128)
    out_v = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ou = out_u, ov = out_v
    for j in range(n):
        ou[j] = mass * U[j] + k[j] * V[j]
        ov[j] = k[j] * U[j] - mass * V[j]
    return out_u, out_v


def project_modes(const double complex[::1] U, const double complex[::1] V,
                  const double[::1] k, double mass, double sign):
    cdef Py_ssize_t n = U.shape[0], j
    cdef double w, kk
    cdef double complex u, v
    out_u = np.empty(n, dtype=np.complex128)
    out_v = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ou = out_u, ov = out_v
    for j in range(n):
        kk = k[j]
        w = 0.5 * sign / sqrt(kk * kk + mass * mass)
        u = U[j]
        v = V[j]
        ou[j] = 0.5 * u + w * (mass * u + kk * v)
        ov[j] = 0.5 * v + w * (kk * u - mass * v)
    return out_u, out_v


def potential_half_step(const double complex[::1] u, const double complex[::1] v,
                        const double[::1] a, const double[::1] b, double tau):
    cdef Py_ssize_t n = u.shape[0], j
    cdef double c, s
    cdef double complex ph, uu, vv
    out_u = np.empty(n, dtype=np.complex128)
    out_v = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ou = out_u, ov = out_v
    for j in range(n):
        ph = cos(b[j] * tau) - 1j * sin(b[j] * tau)
        c = cos(a[j] * tau)
        s = sin(a[j] * tau)
        uu = u[j]
        vv = v[j]
        ou[j] = ph * (c * uu - 1j * s * vv)
        ov[j] = ph * (c * vv - 1j * s * uu)
    return out_u, out_v


def gauge_phase(const double complex[::1] u, const double complex[::1] v,
                const double[::1] chi, double charge):
    cdef Py_ssize_t n = u.shape[0], j
    cdef double complex ph
    out_u = np.empty(n, dtype=np.complex128)
    out_v = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ou = out_u, ov = out_v
    for j in range(n):
        ph = cos(charge * chi[j]) - 1j * sin(charge * chi[j])
        ou[j] = ph * u[j]
        ov[j] = ph * v[j]
    return out_u, out_v


def densities(const double complex[::1] u, const double complex[::1] v, double charge):
    cdef Py_ssize_t n = u.shape[0], j
    rho = np.empty(n, dtype=np.float64)
    J = np.empty(n, dtype=np.float64)
    cdef double[::1] r = rho, cur = J
    for j in range(n):
        r[j] = charge * (u[j].real * u[j].real + u[j].imag * u[j].imag
                         + v[j].real * v[j].real + v[j].imag * v[j].imag)
        cur[j] = 2.0 * charge * (u[j].real * v[j].real + u[j].imag * v[j].imag)
    return rho, J
