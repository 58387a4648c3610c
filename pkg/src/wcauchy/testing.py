"""Random series and error measures shared by the test suite and ``verify``."""
import numpy as np

from .series import FormalSeries


def random_series(rng, D, *, support=0, const=None, scale=1.0):
    """Complex Gaussian coefficients on degrees ``support..D``, zero below.

    ``const`` overrides the coefficient at degree ``support``.
    """
    c = np.zeros(D + 1, dtype=complex)
    size = D + 1 - support
    c[support:] = scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))
    if const is not None:
        c[support] = const
    return FormalSeries(c)


def random_unit_constant(rng, low=0.5, high=2.0):
    """Complex number with modulus uniform in [low, high) and uniform phase."""
    return rng.uniform(low, high) * np.exp(2j * np.pi * rng.uniform())


def rel_err(a, b):
    """Largest per-coefficient relative error ``|a_n - b_n| / |b_n|``.

    Coefficients where ``b_n == 0`` must match exactly, otherwise the result
    is ``inf``.
    """
    a = a.coeffs if isinstance(a, FormalSeries) else np.asarray(a)
    b = b.coeffs if isinstance(b, FormalSeries) else np.asarray(b)
    diff = np.abs(a - b)
    mag = np.abs(b)
    zero = mag == 0
    if np.any(diff[zero] != 0):
        return float("inf")
    if np.all(zero):
        return 0.0
    return float(np.max(diff[~zero] / mag[~zero]))
