"""Free 1D Dirac Hamiltonian, its exact propagator and the free-field energy.

Representation: alpha = sigma1, beta = sigma3, so per momentum mode

    H(k) = [[m, k], [k, -m]],   E(k) = sqrt(k^2 + m^2).

k is the spectral-derivative symbol of the grid, so the Nyquist mode carries
k = 0 there (H0 = -i sigma1 D + m sigma3 with D the grid derivative).

The renormalization constant of the free-field energy is taken as zero;
only energy differences are physical and the constant cancels in them.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .grid import TAIL_CUTOFF, Grid1D


class NumericalCorruptionError(RuntimeError):
    """A quantity that must be real came out with a significant imaginary part."""


@dataclass(frozen=True)
class DiracParams:
    mass: float = 1.0
    charge: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.mass) or self.mass <= 0:
            raise ValueError(f"mass must be > 0, got {self.mass}")
        if not np.isfinite(self.charge) or self.charge == 0:
            raise ValueError(f"charge must be nonzero, got {self.charge}")


@dataclass(frozen=True, eq=False)
class SpinorField:
    """Two complex components sampled on a grid."""

    grid: Grid1D
    upper: np.ndarray
    lower: np.ndarray

    def __post_init__(self):
        up = np.asarray(self.grid.check(self.upper), dtype=np.complex128)
        lo = np.asarray(self.grid.check(self.lower), dtype=np.complex128)
        if not (np.all(np.isfinite(up)) and np.all(np.isfinite(lo))):
            raise ValueError("spinor field has non-finite entries")
        object.__setattr__(self, "upper", up)
        object.__setattr__(self, "lower", lo)

    @classmethod
    def zeros(cls, grid):
        return cls(grid, np.zeros(grid.n_points, complex), np.zeros(grid.n_points, complex))

    def _same_grid(self, other):
        if other.grid is not self.grid and (
                other.grid.n_points != self.grid.n_points
                or other.grid.length != self.grid.length):
            raise ValueError("spinor fields live on different grids")

    def __add__(self, other):
        self._same_grid(other)
        return SpinorField(self.grid, self.upper + other.upper, self.lower + other.lower)

    def __sub__(self, other):
        self._same_grid(other)
        return SpinorField(self.grid, self.upper - other.upper, self.lower - other.lower)

    def __mul__(self, scalar):
        return SpinorField(self.grid, scalar * self.upper, scalar * self.lower)

    __rmul__ = __mul__

    def norm(self):
        """L2 norm sqrt(int psi^dag psi dx)."""
        a = self.grid.spacing
        return float(np.sqrt(a * (np.vdot(self.upper, self.upper).real
                                  + np.vdot(self.lower, self.lower).real)))

    def inner(self, other):
        """int self^dag other dx."""
        self._same_grid(other)
        return self.grid.spacing * (np.vdot(self.upper, other.upper)
                                    + np.vdot(self.lower, other.lower))

    def flatten(self):
        """Interleaved (site, component) vector used by the dense oracle."""
        out = np.empty(2 * self.grid.n_points, dtype=np.complex128)
        out[0::2] = self.upper
        out[1::2] = self.lower
        return out

    @classmethod
    def from_flat(cls, grid, vec):
        vec = np.asarray(vec)
        return cls(grid, vec[0::2], vec[1::2])

    def to_momentum(self):
        return self.grid.to_momentum(self.upper), self.grid.to_momentum(self.lower)

    @classmethod
    def from_momentum(cls, grid, U, V):
        return cls(grid, grid.to_position(U), grid.to_position(V))

    def tail_fraction(self):
        return self.grid.tail_fraction(self.upper, self.lower)


def dispersion(k, mass):
    return np.sqrt(np.asarray(k) ** 2 + mass ** 2)


def h0_apply(psi, p):
    U, V = psi.to_momentum()
    HU, HV = kernels.h0_modes(U, V, psi.grid.derivative_momenta, p.mass)
    return SpinorField.from_momentum(psi.grid, HU, HV)


def free_propagate(psi, t, p):
    """Exact exp(-i H0 t) psi, mode by mode. Any real t."""
    if t == 0:
        return SpinorField(psi.grid, psi.upper.copy(), psi.lower.copy())
    U, V = psi.to_momentum()
    U, V = kernels.propagate_modes(U, V, psi.grid.derivative_momenta, p.mass, t)
    return SpinorField.from_momentum(psi.grid, U, V)


def project_branch(psi, branch, p):
    """Apply P_pm(k) = (I +- H(k)/E(k)) / 2 per mode."""
    sign = _branch_sign(branch)
    U, V = psi.to_momentum()
    U, V = kernels.project_modes(U, V, psi.grid.derivative_momenta, p.mass, sign)
    return SpinorField.from_momentum(psi.grid, U, V)


def _energy_complex(psi, p):
    # Parseval: int psi^dag H0 psi dx = a * sum_j ... = (L/N) * sum_n U~^* (H U~)_n
    U, V = psi.to_momentum()
    HU, HV = kernels.h0_modes(U, V, psi.grid.derivative_momenta, p.mass)
    a = psi.grid.spacing
    value = a * (np.vdot(U, HU) + np.vdot(V, HV))
    scale = a * (np.sum(np.abs(U) * np.abs(HU)) + np.sum(np.abs(V) * np.abs(HV)))
    return value, scale


def energy(psi, p):
    """Free-field energy int psi^dag H0 psi dx (renormalization constant 0)."""
    value, scale = _energy_complex(psi, p)
    if abs(value.imag) > 1e-12 * max(abs(value.real), scale):
        raise NumericalCorruptionError(
            f"energy has imaginary part {value.imag:.3e} (real part {value.real:.3e})")
    return float(value.real)


@dataclass(frozen=True)
class EnergyReport:
    total: float
    positive_branch: float
    negative_branch: float


def energy_split(psi, p):
    """Total energy and its split over the positive and negative branches.

    H0 commutes with the projectors, so the cross terms vanish and
    total = E(P+ psi) + E(P- psi).
    """
    plus = project_branch(psi, +1, p)
    minus = project_branch(psi, -1, p)
    return EnergyReport(total=energy(psi, p),
                        positive_branch=max(energy(plus, p), 0.0),
                        negative_branch=min(energy(minus, p), 0.0))


def _branch_sign(branch):
    if branch in (+1, "+", "plus", "positive"):
        return 1.0
    if branch in (-1, "-", "minus", "negative"):
        return -1.0
    raise ValueError(f"branch must be + or -, got {branch!r}")


def branch_spinor(k, mass, branch):
    """Unit eigenvectors of H(k) for eigenvalue +-E(k), shape (2, len(k))."""
    k = np.asarray(k, dtype=float)
    E = dispersion(k, mass)
    if _branch_sign(branch) > 0:
        w = np.array([E + mass, k])
    else:
        w = np.array([-k, E + mass])
    return w / np.sqrt((E + mass) ** 2 + k ** 2)


def make_plane_wave(grid, mode_index, branch, p):
    """Normalized single-mode eigenstate e^{i k_n x} w_pm(k_n) / sqrt(L)."""
    n = int(mode_index)
    if not -grid.n_points // 2 <= n < grid.n_points // 2:
        raise ValueError(f"mode index {n} outside [-N/2, N/2)")
    k = 2 * np.pi * n / grid.length
    # the Nyquist mode is a mass eigenstate of the discrete H0
    k_eff = 0.0 if n == -grid.n_points // 2 else k
    w = branch_spinor([k_eff], p.mass, branch)[:, 0]
    wave = np.exp(1j * k * grid.x) / np.sqrt(grid.length)
    return SpinorField(grid, w[0] * wave, w[1] * wave)


def make_gaussian_packet(grid, k0, sigma_x, x0, branch, p):
    """Branch-pure wavepacket with a Gaussian momentum envelope.

    The envelope exp(-(k-k0)^2 sigma_x^2) e^{-i k x0} gives a position
    density of rms width sigma_x centred on x0 (periodic images included).
    """
    if sigma_x < 4 * grid.spacing:
        raise ValueError(
            f"sigma_x={sigma_x} under-resolved: need >= 4*spacing = {4 * grid.spacing}")
    if abs(k0) > TAIL_CUTOFF * grid.k_max:
        raise ValueError(f"|k0|={abs(k0)} exceeds (2/3) pi/a = {TAIL_CUTOFF * grid.k_max}")
    k = grid.momenta
    envelope = np.exp(-((k - k0) * sigma_x) ** 2 - 1j * k * x0)
    w = branch_spinor(grid.derivative_momenta, p.mass, branch)
    psi = SpinorField.from_momentum(grid, envelope * w[0], envelope * w[1])
    return psi * (1.0 / psi.norm())
