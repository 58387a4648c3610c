"""Truncated formal power series and the weighted lp norm."""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .weights import WeightSequence, make_weight_family

__all__ = [
    "FormalSeries",
    "SpaceConfig",
    "lp_norm",
    "tail",
    "min_support",
    "read_series",
    "write_series",
]


class FormalSeries:
    """Coefficients ``c(0..D)`` of a series taken modulo ``z**(D+1)``.

    The coefficient array is complex, dense and read-only.  Addition,
    subtraction and scalar multiplication are provided; products live in
    :mod:`wcauchy.algebra` because they depend on the weights.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a nonempty 1-d sequence")
        c.setflags(write=False)
        self._c = c

    @classmethod
    def zeros(cls, D):
        return cls(np.zeros(D + 1, dtype=complex))

    @classmethod
    def one(cls, D):
        return cls.monomial(0, D)

    @classmethod
    def monomial(cls, n, D, coeff=1.0):
        if not 0 <= n <= D:
            raise ValueError(f"degree {n} outside 0..{D}")
        c = np.zeros(D + 1, dtype=complex)
        c[n] = coeff
        return cls(c)

    @classmethod
    def from_list(cls, coeffs, D=None):
        """Pad (or check) a short coefficient list up to degree ``D``."""
        c = np.asarray(coeffs, dtype=complex)
        if D is None:
            return cls(c)
        if c.size > D + 1:
            raise ValueError(f"{c.size} coefficients do not fit degree cap {D}")
        out = np.zeros(D + 1, dtype=complex)
        out[: c.size] = c
        return cls(out)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree_cap(self) -> int:
        return self._c.size - 1

    def __len__(self):
        return self._c.size

    def __getitem__(self, n):
        return self._c[n]

    def __iter__(self):
        return iter(self._c)

    def _check(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        if other.degree_cap != self.degree_cap:
            raise ValueError("series have different degree caps")
        return other

    def __add__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            c = self._c.copy()
            c[0] += other
            return FormalSeries(c)
        if self._check(other) is NotImplemented:
            return NotImplemented
        return FormalSeries(self._c + other._c)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FormalSeries(-self._c)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, float, complex, np.number)):
            return NotImplemented
        return FormalSeries(scalar * self._c)

    __rmul__ = __mul__

    def truncate(self, n):
        """Zero every coefficient above degree ``n`` (degree cap unchanged)."""
        c = self._c.copy()
        c[n + 1:] = 0
        return FormalSeries(c)

    def is_zero(self):
        return not np.any(self._c)

    def __repr__(self):
        terms = [f"({c:.6g})z^{n}" for n, c in enumerate(self._c) if c != 0]
        body = " + ".join(terms[:6]) + (" + ..." if len(terms) > 6 else "")
        return f"FormalSeries({body or '0'}; D={self.degree_cap})"


@dataclass(frozen=True)
class SpaceConfig:
    """The ambient truncated algebra: exponent p, weights and degree cap."""

    p: float
    beta: WeightSequence
    delta: WeightSequence
    degree_cap: int

    def __post_init__(self):
        if not self.p >= 1:
            raise ValueError(f"p must be at least 1, got {self.p}")
        if self.degree_cap > min(self.beta.n_max, self.delta.n_max):
            raise ValueError("degree cap exceeds the weight tables")
        if self.degree_cap < 0:
            raise ValueError("degree cap must be nonnegative")

    @classmethod
    def build(cls, p=2.0, beta="one", delta="one", degree=32, n_max=None):
        """Config from family descriptors; weight tables span ``n_max``."""
        n_max = max(degree, 1) if n_max is None else n_max
        return cls(float(p), make_weight_family(beta, n_max),
                   make_weight_family(delta, n_max), int(degree))

    @property
    def q(self) -> float:
        """Conjugate exponent; ``inf`` when p = 1."""
        return math.inf if self.p == 1 else self.p / (self.p - 1)

    @property
    def D(self) -> int:
        return self.degree_cap


def lp_norm(f: FormalSeries, cfg: SpaceConfig) -> float:
    """``(sum_n |c(n)|**p * beta(n)**p) ** (1/p)`` over degrees ``0..D``.

    Terms are formed in log space and summed with ``math.fsum`` after
    factoring out the largest, so weights far below the double range are
    handled.
    """
    if f.degree_cap > cfg.degree_cap:
        raise ValueError("series degree cap exceeds the space's")
    mag = np.abs(f.coeffs)
    nz = np.flatnonzero(mag)
    if nz.size == 0:
        return 0.0
    p = cfg.p
    logs = p * (np.log(mag[nz]) + cfg.beta.logcum[nz])
    top = logs.max()
    s = math.fsum(np.exp(logs - top))
    return math.exp((top + math.log(s)) / p)


def tail(f: FormalSeries, N: int) -> FormalSeries:
    """Drop the coefficients below degree ``N``."""
    if not 0 <= N <= f.degree_cap + 1:
        raise ValueError(f"N must be in 0..{f.degree_cap + 1}")
    c = f.coeffs.copy()
    c[:N] = 0
    return FormalSeries(c)


def min_support(f: FormalSeries):
    """Lowest degree with a nonzero coefficient, or ``None`` for zero."""
    nz = np.flatnonzero(f.coeffs)
    return int(nz[0]) if nz.size else None


def read_series(path, D: int) -> FormalSeries:
    """Read a series file: one ``re`` or ``re im`` per line, line n = degree n."""
    coeffs = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines()):
        parts = raw.split()
        if not parts:
            continue
        if len(parts) > 2:
            raise ValueError(f"{path}:{lineno + 1}: expected 're' or 're im'")
        re = float(parts[0])
        im = float(parts[1]) if len(parts) == 2 else 0.0
        coeffs.append(complex(re, im))
    return FormalSeries.from_list(coeffs, D)


def write_series(f: FormalSeries, path) -> None:
    lines = [f"{c.real:.17g} {c.imag:.17g}" for c in f.coeffs]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
