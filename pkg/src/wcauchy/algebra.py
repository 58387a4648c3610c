"""The weighted Cauchy product and what follows from it.

For weights ``delta`` with ``delta(0) = 1`` the product is

    (f * g)(n) = sum_{k=0}^{n} delta(n) / (delta(k) delta(n-k)) f(k) g(n-k)

and the restricted product on series supported at degrees ``>= i`` is

    (f *_i g)(n) = sum_{k=i}^{n} delta(n) / (delta(k) delta(n-k+i)) f(k) g(n-k+i)

with unity ``delta(i) z**i``.  ``delta == 1`` gives the ordinary Cauchy
product and ``delta(n) = n!`` the binomial convolution.

Every output coefficient is accumulated in ascending k, so results are
reproducible run to run; commutativity therefore holds only to rounding.
"""
from __future__ import annotations

import math

import numpy as np

from .exceptions import KernelInconsistency, NotInvertible, SupportError
from .series import FormalSeries, SpaceConfig
from .weights import WeightSequence, diamond_ratio_table

__all__ = [
    "diamond",
    "diamond_i",
    "unity",
    "diamond_power",
    "solve",
    "invert",
    "invert_i",
    "gelfand",
    "spectrum_membership",
    "check_support",
]


def _coeffs(f, D):
    if f.degree_cap != D:
        raise ValueError(f"series has degree cap {f.degree_cap}, space has {D}")
    return f.coeffs


def check_support(f: FormalSeries, i: int) -> None:
    """Raise :class:`SupportError` unless ``f(n) == 0`` exactly for ``n < i``."""
    if i > 0 and np.any(f.coeffs[:i]):
        bad = int(np.flatnonzero(f.coeffs[:i])[0])
        raise SupportError(f"coefficient of z^{bad} is nonzero; need support >= {i}")


def diamond(f: FormalSeries, g: FormalSeries, cfg: SpaceConfig) -> FormalSeries:
    """Weighted Cauchy product, truncated at the degree cap."""
    D = cfg.degree_cap
    a, b = _coeffs(f, D), _coeffs(g, D)
    T = diamond_ratio_table(cfg.delta, D)
    # the k = 0 column of T is exactly 1.0, so a unit first factor returns g bit for bit
    out = T[:, 0] * a[0] * b
    for k in range(1, D + 1):
        if a[k] != 0:
            out[k:] += T[k:, k] * a[k] * b[: D + 1 - k]
    return FormalSeries(out)


def diamond_i(f: FormalSeries, g: FormalSeries, i: int, cfg: SpaceConfig) -> FormalSeries:
    """Product restricted to series supported at degrees ``>= i``."""
    D = cfg.degree_cap
    a, b = _coeffs(f, D), _coeffs(g, D)
    check_support(f, i)
    check_support(g, i)
    if i == 0:
        return diamond(f, g, cfg)
    T = diamond_ratio_table(cfg.delta, D, i)
    out = np.zeros(D + 1, dtype=complex)
    for k in range(i, D + 1):
        if a[k] != 0:
            out[k:] += T[k:, k] * a[k] * b[i: D + 1 - k + i]
    return FormalSeries(out)


def unity(i: int, delta: WeightSequence, D: int) -> FormalSeries:
    """Identity element ``delta(i) z**i`` of the restricted product."""
    if not 0 <= i <= D:
        raise ValueError(f"need 0 <= i <= {D}")
    return FormalSeries.monomial(i, D, 1.0 if i == 0 else math.exp(delta.logcum[i]))


def diamond_power(f: FormalSeries, n: int, cfg: SpaceConfig) -> FormalSeries:
    if n < 0:
        raise ValueError("power must be nonnegative")
    out = unity(0, cfg.delta, cfg.degree_cap)
    for _ in range(n):
        out = diamond(out, f, cfg)
    return out


def solve(f: FormalSeries, h: FormalSeries, cfg: SpaceConfig) -> FormalSeries:
    """The unique g with ``f * g == h`` (mod z^(D+1)), by forward substitution.

    The product matrix is lower triangular with constant diagonal ``f(0)``,
    so this exists exactly when ``f(0) != 0``.
    """
    D = cfg.degree_cap
    a, rhs = _coeffs(f, D), _coeffs(h, D)
    if a[0] == 0:
        raise NotInvertible("constant term is zero")
    T = diamond_ratio_table(cfg.delta, D)
    g = np.zeros(D + 1, dtype=complex)
    g[0] = rhs[0] / a[0]
    for n in range(1, D + 1):
        acc = np.dot(T[n, 1: n + 1] * a[1: n + 1], g[n - 1:: -1])
        g[n] = (rhs[n] - acc) / a[0]
    return FormalSeries(g)


def invert(f: FormalSeries, cfg: SpaceConfig) -> FormalSeries:
    """Inverse under the weighted product; raises :class:`NotInvertible` iff f(0) == 0."""
    D = cfg.degree_cap
    a = _coeffs(f, D)
    if a[0] == 0:
        raise NotInvertible("constant term is zero")
    T = diamond_ratio_table(cfg.delta, D)
    r = 1.0 / a[0]
    g = np.zeros(D + 1, dtype=complex)
    g[0] = r
    for n in range(1, D + 1):
        g[n] = -r * np.dot(T[n, 1: n + 1] * a[1: n + 1], g[n - 1:: -1])
    return FormalSeries(g)


def invert_i(f: FormalSeries, i: int, cfg: SpaceConfig) -> FormalSeries:
    """Inverse of f in the restricted algebra, whose unity is ``delta(i) z**i``."""
    if i == 0:
        return invert(f, cfg)
    D = cfg.degree_cap
    a = _coeffs(f, D)
    check_support(f, i)
    if a[i] == 0:
        raise NotInvertible(f"coefficient of z^{i} is zero")
    T = diamond_ratio_table(cfg.delta, D, i)
    d_i = math.exp(cfg.delta.logcum[i])
    g = np.zeros(D + 1, dtype=complex)
    # lowest coefficient of f *_i g is f(i) g(i) / delta(i), which must equal delta(i)
    g[i] = d_i * d_i / a[i]
    r = d_i / a[i]
    for n in range(i + 1, D + 1):
        # terms k = i+1..n pair f(k) with g(n-k+i), i.e. g(n-1) down to g(i)
        g[n] = -r * np.dot(T[n, i + 1: n + 1] * a[i + 1: n + 1], g[n - 1: i - 1: -1])
    return FormalSeries(g)


def gelfand(f: FormalSeries) -> complex:
    """The only character of the algebra: evaluation of the constant term."""
    return complex(f.coeffs[0])


def spectrum_membership(f: FormalSeries, lam: complex, cfg: SpaceConfig) -> bool:
    """Whether ``lam`` lies in the spectrum of f, i.e. ``lam == f(0)`` exactly.

    When it does not, ``f - lam`` is inverted as a witness; a failure there
    means the inversion kernel disagrees with the algebraic criterion.
    """
    if f.coeffs[0] == lam:
        return True
    try:
        invert(f - lam, cfg)
    except NotInvertible as exc:
        raise KernelInconsistency(
            f"f(0) = {f.coeffs[0]!r} != {lam!r} but f - lam did not invert") from exc
    return False
