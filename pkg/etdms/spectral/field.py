"""
Scalar fields on a spectral grid and the transforms between nodal and
Fourier representations.

Spectra use the ``norm="forward"`` convention: the forward transform divides by
N*N, so the zero-mode coefficient is the nodal mean and Parseval reads
``sum(|u|^2) * dx^2 == L^2 * sum(|u_hat|^2)``.
"""

import numpy as np
import scipy.fft

from etdms.errors import GridMismatchError

FORWARD = "forward"
INVERSE = "inverse"


def forward_fft(values):
    return scipy.fft.fft2(values, norm="forward")


def inverse_fft(spectrum):
    return scipy.fft.ifft2(spectrum, norm="forward").real


class Field:
    """
    One real scalar state on a grid.

    Either representation may be supplied; the other is computed lazily and
    cached. Fields are treated as immutable: operations return new fields.
    """

    def __init__(self, grid, values=None, spectrum=None, mean_zero=False):
        """
        Initialize the field.

        Args:
            grid: SpectralGrid the field lives on
            values: N x N real nodal array
            spectrum: N x N complex coefficient array
            mean_zero: Flag the field as belonging to the mean-zero space
        """
        if values is None and spectrum is None:
            raise ValueError("Field needs nodal values or a spectrum")
        for array in (values, spectrum):
            if array is not None and np.shape(array) != grid.shape:
                raise GridMismatchError(
                    f"Array of shape {np.shape(array)} does not match grid {grid.shape}"
                )
        self.grid = grid
        self._values = None if values is None else np.asarray(values, dtype=np.float64)
        self._spectrum = None if spectrum is None else np.asarray(spectrum, dtype=np.complex128)
        self.mean_zero = mean_zero

    @classmethod
    def from_values(cls, grid, values, mean_zero=False):
        return cls(grid, values=values, mean_zero=mean_zero)

    @classmethod
    def from_spectrum(cls, grid, spectrum, mean_zero=False):
        return cls(grid, spectrum=spectrum, mean_zero=mean_zero)

    @classmethod
    def zeros(cls, grid):
        return cls(grid, values=np.zeros(grid.shape), mean_zero=True)

    @property
    def values(self):
        if self._values is None:
            self._values = inverse_fft(self._spectrum)
        return self._values

    @property
    def spectrum(self):
        if self._spectrum is None:
            self._spectrum = forward_fft(self._values)
        return self._spectrum

    @property
    def mean(self):
        if self._spectrum is not None:
            return float(self._spectrum[0, 0].real)
        return float(np.mean(self._values))

    def has_zero_mean(self, rtol=1e-12):
        """
        Check the mean-zero invariant.

        Returns:
            bool: True if |mean| <= rtol * max|values|
        """
        scale = float(np.max(np.abs(self.values)))
        return abs(self.mean) <= rtol * scale

    def check_grid(self, other):
        if not self.grid.matches(other.grid):
            raise GridMismatchError(f"{self.grid} does not match {other.grid}")

    def __add__(self, other):
        self.check_grid(other)
        return Field.from_spectrum(self.grid, self.spectrum + other.spectrum)

    def __sub__(self, other):
        self.check_grid(other)
        return Field.from_spectrum(self.grid, self.spectrum - other.spectrum)

    def scaled(self, factor):
        return Field.from_spectrum(self.grid, factor * self.spectrum, mean_zero=self.mean_zero)

    def __repr__(self):
        return f"Field({self.grid!r}, mean={self.mean:.3e})"


def transform(f, direction=FORWARD):
    """
    Move a field between nodal and spectral representation.

    Args:
        f: Field to transform
        direction: "forward" (nodal to spectral) or "inverse"

    Returns:
        Field: New field holding both representations
    """
    if direction == FORWARD:
        values = np.asarray(f.values)
        if values.shape != f.grid.shape:
            raise GridMismatchError(f"Nodal array {values.shape} does not match grid {f.grid.shape}")
        return Field(f.grid, values=values, spectrum=forward_fft(values), mean_zero=f.mean_zero)
    if direction == INVERSE:
        spectrum = np.asarray(f.spectrum)
        if spectrum.shape != f.grid.shape:
            raise GridMismatchError(f"Spectrum {spectrum.shape} does not match grid {f.grid.shape}")
        return Field(f.grid, values=inverse_fft(spectrum), spectrum=spectrum, mean_zero=f.mean_zero)
    raise ValueError(f"Unknown transform direction: {direction}")
