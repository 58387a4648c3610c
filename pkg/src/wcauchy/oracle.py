"""Slow, independent reference implementations.

Nothing here calls into :mod:`wcauchy.algebra` or :mod:`wcauchy.operators`
or uses their ratio tables.  The products are literal double loops with a
different traversal order, so agreement with the fast kernels is a real
check rather than a tautology.
"""
import math

from .exceptions import NotInvertible
from .series import FormalSeries

__all__ = ["brute_diamond", "binomial_convolution", "cauchy_convolution", "brute_invert"]

# exact integer binomials up to this row, log-gamma above
_EXACT_BINOMIAL_ROWS = 64


def _as_list(f, D):
    c = list(f.coeffs) if isinstance(f, FormalSeries) else [complex(x) for x in f]
    c = c[: D + 1]
    return c + [0j] * (D + 1 - len(c))


def _weight_quotient(delta, top, a, b):
    """delta(top) / (delta(a) delta(b)), by plain division when it is safe."""
    v = delta.values
    num, den = float(v[top]), float(v[a]) * float(v[b])
    if math.isfinite(num) and num > 0 and math.isfinite(den) and den > 0:
        return float(num / den)
    L = delta.logcum
    return math.exp(L[top] - L[a] - L[b])


def brute_diamond(f, g, delta, D):
    """Literal double sum over (n, m) pairs, each added into degree n + m."""
    a, b = _as_list(f, D), _as_list(g, D)
    out = [0j] * (D + 1)
    for n in range(D + 1):
        for m in range(D + 1 - n):
            out[n + m] += _weight_quotient(delta, n + m, n, m) * a[n] * b[m]
    return FormalSeries(out)


def _binomial(n, k):
    if n <= _EXACT_BINOMIAL_ROWS:
        return float(math.comb(n, k))
    return math.exp(math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1))


def binomial_convolution(f, g, D):
    """``sum_k C(n, k) f(k) g(n-k)``: the product for ``delta(n) = n!``."""
    a, b = _as_list(f, D), _as_list(g, D)
    return FormalSeries([sum(_binomial(n, k) * a[k] * b[n - k] for k in range(n + 1))
                         for n in range(D + 1)])


def cauchy_convolution(f, g, D):
    """Ordinary truncated convolution: the product for ``delta == 1``."""
    a, b = _as_list(f, D), _as_list(g, D)
    out = []
    for n in range(D + 1):
        acc = 0j
        for k in range(n + 1):
            acc += a[k] * b[n - k]
        out.append(acc)
    return FormalSeries(out)


def brute_invert(f, delta, D):
    """Solve ``f * g = 1`` as a dense lower-triangular linear system.

    The matrix is assembled entry by entry from the weights, each row is
    scaled by its diagonal, then plain forward substitution runs.
    """
    a = _as_list(f, D)
    if a[0] == 0:
        raise NotInvertible("zero diagonal")
    A = [[_weight_quotient(delta, n, m, n - m) * a[n - m] if m <= n else 0j
          for m in range(D + 1)] for n in range(D + 1)]
    rhs = [1.0 + 0j] + [0j] * D
    for n in range(D + 1):
        d = A[n][n]
        A[n] = [x / d for x in A[n]]
        rhs[n] = rhs[n] / d
    x = [0j] * (D + 1)
    for n in range(D + 1):
        x[n] = rhs[n] - sum(A[n][m] * x[m] for m in range(n))
    return FormalSeries(x)
