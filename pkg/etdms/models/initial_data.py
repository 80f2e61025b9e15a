"""
Seeded random initial data.
"""

import logging

import numpy as np

from etdms.spectral.field import Field, inverse_fft

DEFAULT_AMPLITUDE = 0.05
DEFAULT_MAX_MODE = 8


def uniform_random_field(grid, seed, amplitude=DEFAULT_AMPLITUDE):
    """
    Independent uniform samples on [-amplitude, amplitude], shifted to zero mean.

    Args:
        grid: SpectralGrid
        seed: Seed for numpy's default 64-bit generator
        amplitude: Half-width of the sampling interval

    Returns:
        Field: Mean-zero nodal field
    """
    rng = np.random.default_rng(seed)
    values = rng.uniform(-amplitude, amplitude, size=grid.shape)
    values -= values.mean()
    logging.debug(f"Uniform random initial data: seed={seed} amplitude={amplitude:g}")
    return Field.from_values(grid, values, mean_zero=True)


def smooth_random_field(grid, seed, amplitude=DEFAULT_AMPLITUDE, max_mode=DEFAULT_MAX_MODE):
    """
    Band-limited random field: Gaussian Fourier coefficients on |m| <= max_mode.

    The zero mode is removed and the result scaled so that max|u| = amplitude.

    Args:
        grid: SpectralGrid
        seed: Seed for numpy's default 64-bit generator
        amplitude: Maximum absolute nodal value
        max_mode: Largest integer mode index per axis

    Returns:
        Field: Smooth mean-zero field
    """
    if max_mode < 1 or max_mode >= grid.N // 2:
        raise ValueError(f"max_mode must lie in [1, {grid.N // 2 - 1}], got {max_mode}")
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    band = np.abs(grid.mode_index) <= max_mode
    coeffs = grid.hermitian_part(coeffs * np.logical_and.outer(band, band))
    coeffs[0, 0] = 0.0

    values = inverse_fft(coeffs)
    values *= amplitude / np.max(np.abs(values))
    return Field.from_values(grid, values, mean_zero=True)
