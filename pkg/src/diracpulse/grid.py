"""Periodic 1D grid, unitary DFT, spectral derivative and quadrature.

Scalar fields (chi, rho, J, div J) are plain numpy arrays of length
``n_points``; every routine here checks that length against the grid.
"""
from dataclasses import dataclass, field

import numpy as np

# modes with |k| >= TAIL_CUTOFF * k_max count as "tail" (2/3 dealiasing rule)
TAIL_CUTOFF = 2.0 / 3.0


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Uniform periodic lattice x_j = j*a, j = 0..N-1, on a box of length L.

    ``momenta`` follows the FFT storage layout (numpy ``fftfreq`` order), so
    the Nyquist mode k = -pi/a sits at index N/2.
    """

    n_points: int
    length: float
    spacing: float = field(init=False)
    x: np.ndarray = field(init=False, repr=False)
    momenta: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n, length = self.n_points, self.length
        if isinstance(n, bool) or int(n) != n:
            raise ValueError(f"n_points must be an integer, got {n!r}")
        n = int(n)
        if n < 8 or n % 2:
            raise ValueError(f"n_points must be even and >= 8, got {n}")
        if not np.isfinite(length) or length <= 0:
            raise ValueError(f"length must be positive, got {length}")
        a = float(length) / n
        x = np.arange(n) * a
        k = 2.0 * np.pi * np.fft.fftfreq(n, d=a)
        x.setflags(write=False)
        k.setflags(write=False)
        object.__setattr__(self, "n_points", n)
        object.__setattr__(self, "length", float(length))
        object.__setattr__(self, "spacing", a)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "momenta", k)

    @property
    def k_max(self):
        return np.pi / self.spacing

    @property
    def nyquist_index(self):
        return self.n_points // 2

    def mode_numbers(self):
        """Integer n with k_n = 2*pi*n/L, in storage order."""
        return np.rint(self.momenta * self.length / (2 * np.pi)).astype(int)

    def check(self, values):
        values = np.asarray(values)
        if values.shape != (self.n_points,):
            raise ValueError(
                f"field has shape {values.shape}, grid expects ({self.n_points},)")
        return values

    def to_momentum(self, values):
        """psi~_n = N^{-1/2} sum_j psi_j exp(-i k_n x_j)."""
        return np.fft.fft(self.check(values), norm="ortho")

    def to_position(self, coefficients):
        return np.fft.ifft(self.check(coefficients), norm="ortho")

    @property
    def derivative_momenta(self):
        """k_n with the Nyquist entry zeroed: the symbol of -i d/dx on this grid."""
        k = np.array(self.momenta)
        k[self.nyquist_index] = 0.0
        return k

    def derivative_symbol(self):
        return 1j * self.derivative_momenta

    def derivative(self, values):
        """Spectral d/dx. Real input gives real output."""
        values = self.check(values)
        out = np.fft.ifft(self.derivative_symbol() * np.fft.fft(values))
        if np.isrealobj(values):
            return out.real
        return out

    def integrate(self, values):
        """Rectangle rule a * sum_j f_j (spectrally accurate on a periodic box)."""
        return self.spacing * np.sum(self.check(values))

    def tail_fraction(self, *components):
        """Fraction of spectral power in modes with |k| >= (2/3) pi/a.

        Several components (e.g. both spinor entries) are pooled.
        """
        if not components:
            raise ValueError("tail_fraction needs at least one component")
        tail_mask = np.abs(self.momenta) >= TAIL_CUTOFF * self.k_max * (1 - 1e-12)
        total = 0.0
        tail = 0.0
        for values in components:
            power = np.abs(self.to_momentum(values)) ** 2
            total += power.sum()
            tail += power[tail_mask].sum()
        if total == 0.0:
            raise ValueError("tail fraction of a zero field is undefined")
        return float(tail / total)


def make_grid(n_points, length):
    return Grid1D(n_points, length)
