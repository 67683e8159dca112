"""Brute-force dense-matrix oracle for small grids.

Operators act on the interleaved (site, component) vector produced by
``SpinorField.flatten``. The derivative matrix is assembled from explicit
DFT matrices with the same Nyquist rule as the spectral code, so any
disagreement points at an implementation bug rather than a convention.
"""
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .dirac import SpinorField

DENSE_LIMIT = 64
# the identity check is a handful of mat-vecs; allow one refinement past DENSE_LIMIT
IDENTITY_LIMIT = 256

SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)


class DenseLimitError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DenseOperator:
    matrix: np.ndarray

    @property
    def dimension(self):
        return self.matrix.shape[0]

    def hermiticity_residual(self):
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def unitarity_residual(self):
        m = self.matrix
        return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))

    def apply(self, psi):
        return SpinorField.from_flat(psi.grid, self.matrix @ psi.flatten())

    def __matmul__(self, other):
        return DenseOperator(self.matrix @ other.matrix)


def _guard(grid, limit):
    if grid.n_points > limit:
        raise DenseLimitError(f"dense oracle limited to n_points <= {limit}, got {grid.n_points}")


def dft_matrix(n):
    j = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(j, j) / n) / np.sqrt(n)


def derivative_matrix(grid, limit=DENSE_LIMIT):
    """Dense d/dx: F^dag diag(i k, Nyquist -> 0) F, built by explicit sums."""
    _guard(grid, limit)
    n = grid.n_points
    F = dft_matrix(n)
    modes = np.arange(n)
    modes = np.where(modes < n // 2, modes, modes - n)
    ik = 1j * 2 * np.pi * modes / grid.length
    ik[n // 2] = 0.0
    return F.conj().T @ (ik[:, None] * F)


def dense_h0(grid, p, limit=DENSE_LIMIT):
    """-i sigma1 D + m sigma3 as a 2N x 2N matrix."""
    D = derivative_matrix(grid, limit)
    n = grid.n_points
    H = np.kron(-1j * D, SIGMA1) + p.mass * np.kron(np.eye(n), SIGMA3)
    return DenseOperator(H)


def dense_propagator(h0, t):
    """exp(-i H t) through the eigendecomposition of the Hermitian H."""
    w, Q = scipy.linalg.eigh(h0.matrix)
    return DenseOperator((Q * np.exp(-1j * w * t)) @ Q.conj().T)


def dense_phase(chi_values, charge):
    """diag(exp(-i q chi_j)) acting on both components."""
    ph = np.exp(-1j * charge * np.asarray(chi_values, dtype=float))
    return DenseOperator(np.diag(np.repeat(ph, 2)))


def dense_current_operator(grid, weights, charge):
    """q diag(w) (x) sigma1, whose expectation is int J w dx."""
    return DenseOperator(charge * np.kron(np.diag(np.asarray(weights, dtype=float)), SIGMA1))


def expectation(op, vec, spacing):
    """a * vec^dag M vec (real part; caller-supplied Hermitian M)."""
    return float((spacing * np.vdot(vec, op.matrix @ vec)).real)


def dense_energy(psi, p):
    h = dense_h0(psi.grid, p)
    return expectation(h, psi.flatten(), psi.grid.spacing)


def dense_pulse_run(psi_at_0, chi, t_b, p):
    """(energy_before, energy_after, delta) computed densely."""
    grid = psi_at_0.grid
    h = dense_h0(grid, p)
    U_a = dense_propagator(h, chi.t_a)
    U_rest = dense_propagator(h, t_b - chi.t_a)
    P = dense_phase(chi.values, p.charge)
    vec0 = psi_at_0.flatten()
    vec_b = U_rest.matrix @ (P.matrix @ (U_a.matrix @ vec0))
    e0 = expectation(h, vec0, grid.spacing)
    e1 = expectation(h, vec_b, grid.spacing)
    return e0, e1, e1 - e0


def check_gauge_commutation(chi, psi, p):
    """Residual of H0(e^{-iq chi} psi) = e^{-iq chi}(-q chi' sigma1 + H0) psi.

    Exact on the continuum; on the grid only the aliasing of the pointwise
    products survives. Normalized by ||psi||.
    """
    grid = psi.grid
    limit = IDENTITY_LIMIT
    D = derivative_matrix(grid, limit)
    n = grid.n_points
    H = np.kron(-1j * D, SIGMA1) + p.mass * np.kron(np.eye(n), SIGMA3)
    chi_vals = np.asarray(chi.values, dtype=float)
    chi_grad = (D @ chi_vals).real
    P = np.repeat(np.exp(-1j * p.charge * chi_vals), 2)
    vec = psi.flatten()
    lhs = H @ (P * vec)
    inner = H @ vec - p.charge * np.kron(np.diag(chi_grad), SIGMA1) @ vec
    rhs = P * inner
    a = grid.spacing
    num = np.sqrt(a * np.vdot(lhs - rhs, lhs - rhs).real)
    den = np.sqrt(a * np.vdot(vec, vec).real)
    return float(num / den)


def energy_chain_values(psi_at_0, chi, t_b, p):
    """Energy at t_b computed three ways.

    (i)   direct quadratic form of the pulsed, freely evolved state;
    (ii)  initial energy minus int J0 q chi' dx with J0 the freely evolved current;
    (iii) <psi(0)| H0 - U(t_a)^dag (q chi' sigma1) U(t_a) |psi(0)>.
    """
    grid = psi_at_0.grid
    a = grid.spacing
    h = dense_h0(grid, p)
    D = derivative_matrix(grid)
    chi_grad = (D @ chi.values).real
    U_a = dense_propagator(h, chi.t_a)
    U_rest = dense_propagator(h, t_b - chi.t_a)
    P = dense_phase(chi.values, p.charge)
    vec0 = psi_at_0.flatten()

    vec_b = U_rest.matrix @ (P.matrix @ (U_a.matrix @ vec0))
    direct = expectation(h, vec_b, a)

    vec_a = U_a.matrix @ vec0
    current_term = expectation(dense_current_operator(grid, chi_grad, p.charge), vec_a, a)
    via_current = expectation(h, vec0, a) - current_term

    K = dense_current_operator(grid, chi_grad, p.charge).matrix
    M = h.matrix - U_a.matrix.conj().T @ K @ U_a.matrix
    operator_form = expectation(DenseOperator(M), vec0, a)
    return direct, via_current, operator_form


def check_energy_chain(psi_at_0, chi, t_a, t_b, p):
    """Max pairwise relative discrepancy of the three energy evaluations."""
    if abs(chi.t_a - t_a) > 1e-15 * max(1.0, abs(t_a)):
        raise ValueError("chi.t_a does not match t_a")
    vals = energy_chain_values(psi_at_0, chi, t_b, p)
    scale = max(max(abs(v) for v in vals), np.finfo(float).tiny)
    spread = max(abs(x - y) for x in vals for y in vals)
    return float(spread / scale)
