"""
Periodic 2-D collocation grid and its Fourier symbols.

Wavenumber layout follows the standard FFT ordering: along each axis the
integer mode index runs 0, 1, ..., N/2-1, -N/2, ..., -1 (``scipy.fft.fftfreq``
times N), and the physical wavenumber is that index times 2*pi/L. Axis 0 of
every nodal array is x and axis 1 is y, so ``values[i, j] = u(i*dx, j*dx)``.
"""

import logging
import math

import numpy as np
import scipy.fft


def _frozen(array):
    array.setflags(write=False)
    return array


class SpectralGrid:
    """
    Square periodic grid on [0, L]^2 with N nodes per dimension.

    All symbol tables are computed once and marked read-only, so a grid can be
    shared between threads and between any number of fields and steppers.
    """

    def __init__(self, N, L, dealias=False):
        """
        Build the grid and its symbol tables.

        Args:
            N: Modes per dimension (even, at least 4)
            L: Domain edge length (positive)
            dealias: Apply the 2/3-rule mask to nonlinear terms
        """
        if int(N) != N or N < 4 or N % 2:
            raise ValueError(f"N must be an even integer >= 4, got {N}")
        if not L > 0 or not math.isfinite(L):
            raise ValueError(f"L must be positive and finite, got {L}")

        self.N = int(N)
        self.L = float(L)
        self.dealias = bool(dealias)
        self.dx = self.L / self.N

        self.mode_index = _frozen(np.rint(scipy.fft.fftfreq(self.N, d=1.0 / self.N)).astype(np.int64))
        self.k = _frozen(self.mode_index * (2.0 * np.pi / self.L))
        self.k_x, self.k_y = (
            _frozen(a) for a in np.meshgrid(self.k, self.k, indexing="ij")
        )

        self.k_squared = _frozen(self.k_x ** 2 + self.k_y ** 2)
        self.lap_symbol = _frozen(-self.k_squared)
        self.biharm_symbol = _frozen(self.lap_symbol ** 2)

        # First-derivative symbols drop the Nyquist mode so real fields stay real.
        k_odd = self.k.copy()
        k_odd[self.N // 2] = 0.0
        dx_sym, dy_sym = np.meshgrid(1j * k_odd, 1j * k_odd, indexing="ij")
        self.ddx_symbol = _frozen(dx_sym)
        self.ddy_symbol = _frozen(dy_sym)

        keep = np.abs(self.mode_index) <= self.N // 3
        self.dealias_mask = _frozen(np.logical_and.outer(keep, keep))

        x = np.arange(self.N) * self.dx
        self.x = _frozen(x)
        self.X, self.Y = (_frozen(a) for a in np.meshgrid(x, x, indexing="ij"))

        logging.debug(f"Built spectral grid N={self.N} L={self.L} dealias={self.dealias}")

    @property
    def shape(self):
        return (self.N, self.N)

    @property
    def area(self):
        return self.L * self.L

    def matches(self, other):
        """
        Check whether another grid describes the same discretization.

        Args:
            other: Grid to compare against

        Returns:
            bool: True if N, L and the dealiasing flag agree
        """
        if other is self:
            return True
        return (
            isinstance(other, SpectralGrid)
            and other.N == self.N
            and other.L == self.L
            and other.dealias == self.dealias
        )

    def power_symbol(self, exponent):
        """
        Per-mode |k|**exponent with the zero mode mapped to 0.

        A zero exponent returns all ones (the identity multiplier).
        """
        if exponent == 0:
            return np.ones(self.shape)
        with np.errstate(divide="ignore"):
            sym = np.where(self.k_squared > 0, self.k_squared ** (0.5 * exponent), 0.0)
        return sym

    def hermitian_part(self, spectrum):
        """
        Project a spectrum onto the spectra of real fields.

        Equivalent to an inverse transform, dropping the imaginary part, and a
        forward transform, without the two transforms.
        """
        reflected = np.roll(np.flip(spectrum, axis=(0, 1)), 1, axis=(0, 1))
        return 0.5 * (spectrum + np.conj(reflected))

    def __repr__(self):
        return f"SpectralGrid(N={self.N}, L={self.L}, dealias={self.dealias})"


def make_grid(N, L, dealias=False):
    """
    Create a periodic spectral grid.

    Args:
        N: Modes per dimension (positive even integer, at least 4)
        L: Domain edge length
        dealias: Enable the 2/3-rule mask (default: off)

    Returns:
        SpectralGrid: Grid with all symbol arrays populated
    """
    return SpectralGrid(N, L, dealias)
