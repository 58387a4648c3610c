"""Matrices of multiplication and shift operators in the monomial basis.

Column m of a multiplication matrix is the image of ``z**m``.  Norms are
induced norms on the weighted space, i.e. plain p-norms of
``B = W A W^{-1}`` with ``W = diag(beta)``; ``B`` is formed entrywise from
the log weights so that factorial-type weights never overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .algebra import check_support
from .exceptions import SupportError
from .series import FormalSeries, SpaceConfig, lp_norm, tail
from .weights import (ScanPolicy, diamond_ratio_table, holder_constant, p1_tail_sum,
                      tail_constant)

__all__ = [
    "OperatorMatrix",
    "NormBounds",
    "CompactnessRow",
    "mult_matrix",
    "shift_apply",
    "shift_matrix",
    "k_m_matrix",
    "weighted_matrix",
    "induced_norm_bounds",
    "numerical_rank",
    "compactness_profile",
]


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: np.ndarray

    def __post_init__(self):
        e = self.entries
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError("operator matrix must be square")
        e.setflags(write=False)

    @property
    def degree_cap(self) -> int:
        return self.entries.shape[0] - 1

    def apply(self, f: FormalSeries) -> FormalSeries:
        return FormalSeries(self.entries @ f.coeffs)

    def column(self, m: int) -> np.ndarray:
        return self.entries[:, m]

    def __sub__(self, other):
        return OperatorMatrix(self.entries - other.entries)

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.entries @ other.entries)
        if isinstance(other, FormalSeries):
            return self.apply(other)
        return NotImplemented


@dataclass(frozen=True)
class NormBounds:
    lower: float
    upper: float
    method_tag: str

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def _ratio_weighted(f, cfg, i):
    D = cfg.degree_cap
    if f.degree_cap != D:
        raise ValueError("series and space disagree on the degree cap")
    T = diamond_ratio_table(cfg.delta, D, i)
    n = np.arange(D + 1)[:, None]
    m = np.arange(D + 1)[None, :]
    lag = n - m + i
    inside = (m >= i) & (m <= n)
    coeff = f.coeffs[np.clip(lag, 0, D)]
    return np.where(inside, T * coeff, 0)


def mult_matrix(f: FormalSeries, cfg: SpaceConfig, i: int = 0) -> OperatorMatrix:
    """Matrix of ``g -> f * g`` (or of the restricted product when ``i > 0``).

    For ``i > 0`` rows and columns below ``i`` are zero: the operator acts
    on series supported at degrees ``>= i``.
    """
    check_support(f, i)
    return OperatorMatrix(_ratio_weighted(f, cfg, i).astype(complex))


def shift_apply(f: FormalSeries, N: int, cfg: SpaceConfig) -> FormalSeries:
    """N-th power of the weighted shift ``g -> z * g`` (times ``delta(1)**-N``)."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    D = cfg.degree_cap
    if N == 0:
        return f
    out = np.zeros(D + 1, dtype=complex)
    if N > D:
        return FormalSeries(out)
    L = cfg.delta.logcum
    n = np.arange(0, D - N + 1)
    gain = np.exp(L[n + N] - L[n] - N * L[1])
    out[N:] = gain * f.coeffs[: D - N + 1]
    return FormalSeries(out)


def shift_matrix(N: int, cfg: SpaceConfig) -> OperatorMatrix:
    D = cfg.degree_cap
    A = np.zeros((D + 1, D + 1), dtype=complex)
    if N <= D:
        L = cfg.delta.logcum
        n = np.arange(0, D - N + 1)
        A[n + N, n] = np.exp(L[n + N] - L[n] - N * L[1])
    return OperatorMatrix(A)


def k_m_matrix(f: FormalSeries, M: int, i: int, cfg: SpaceConfig) -> OperatorMatrix:
    """Finite-rank approximant: the full action on ``z**m`` for ``m <= i+M`` only."""
    if M < 0:
        raise ValueError("M must be nonnegative")
    A = mult_matrix(f, cfg, i).entries.copy()
    A[:, i + M + 1:] = 0
    return OperatorMatrix(A)


def weighted_matrix(A: OperatorMatrix, cfg: SpaceConfig) -> np.ndarray:
    """``diag(beta) A diag(beta)^{-1}``, built from log weights."""
    D = A.degree_cap
    L = cfg.beta.logcum[: D + 1]
    E = A.entries
    nz = E != 0
    out = np.zeros_like(E)
    rows, cols = np.nonzero(nz)
    with np.errstate(over="ignore"):
        out[rows, cols] = E[rows, cols] * np.exp(L[rows] - L[cols])
    return out


def _p_norm(x, p):
    return float(np.sum(np.abs(x) ** p) ** (1.0 / p))


def _power_norm(B, tol, max_iter):
    n = B.shape[1]
    x = np.ones(n, dtype=complex) / math.sqrt(n)
    sigma = 0.0
    for it in range(max_iter):
        y = B @ x
        new = float(np.linalg.norm(y))
        if new == 0.0:
            return 0.0, True
        x = B.conj().T @ y
        x /= np.linalg.norm(x)
        if abs(new - sigma) <= tol * new:
            return float(np.linalg.norm(B @ x)), True
        sigma = new
    return float(np.linalg.norm(B @ x)), False


def _probe_lower(B, p, probes, seed):
    col = np.array([_p_norm(B[:, m], p) for m in range(B.shape[1])])
    best = float(col.max()) if col.size else 0.0
    rng = np.random.default_rng(seed)
    for _ in range(probes):
        x = rng.standard_normal(B.shape[1]) + 1j * rng.standard_normal(B.shape[1])
        best = max(best, _p_norm(B @ x, p) / _p_norm(x, p))
    return best


def induced_norm_bounds(A: OperatorMatrix, cfg: SpaceConfig, *, tol=1e-14,
                        max_iter=20000, probes=64, seed=0) -> NormBounds:
    """Bounds on the induced norm of A on the weighted space over degrees 0..D.

    p = 1 is exact (largest weighted column sum).  p = 2 uses power iteration
    on ``B^H B`` and reports its estimate as both bounds once successive
    estimates agree to ``tol``.  Any other p, and a p = 2 run that hits
    ``max_iter``, falls back to basis-vector and random probes for the lower
    bound and the Riesz-Thorin interpolation of the 1- and inf-norms above.
    """
    p = cfg.p
    B = weighted_matrix(A, cfg)
    absB = np.abs(B)
    norm1 = float(absB.sum(axis=0).max())
    norm_inf = float(absB.sum(axis=1).max())
    if p == 1:
        return NormBounds(norm1, norm1, "p1-exact")
    interp = norm1 ** (1 / p) * norm_inf ** (1 - 1 / p)
    if p == 2:
        sigma, ok = _power_norm(B, tol, max_iter)
        if ok:
            return NormBounds(sigma, sigma, "p2-power")
        lower = max(sigma, _probe_lower(B, p, probes, seed))
        return NormBounds(lower, max(interp, lower), "p2-power-degraded")
    lower = _probe_lower(B, p, probes, seed)
    return NormBounds(lower, max(interp, lower), "probe-interp")


def numerical_rank(A, rtol=1e-12) -> int:
    """Rank by QR with column pivoting, relative to the largest pivot."""
    E = A.entries if isinstance(A, OperatorMatrix) else np.asarray(A)
    if not np.any(E):
        return 0
    R = scipy.linalg.qr(E, mode="r", pivoting=True)[0]
    d = np.abs(np.diag(R))
    return int(np.count_nonzero(d > rtol * d[0]))


@dataclass(frozen=True)
class CompactnessRow:
    M: int
    measured: NormBounds
    lemma_bound: float
    converged: bool


def compactness_profile(f: FormalSeries, i: int, Ms, cfg: SpaceConfig,
                        scan: ScanPolicy | None = None) -> list[CompactnessRow]:
    """Distance from the multiplication operator to its approximants K_M.

    Requires ``f(j) == 0`` for ``j <= i``.  Each row pairs the measured
    ``||M_f - K_M||`` with the a-priori bound

        p > 1:  C_i**(1/q) ||tail(f, M+i)|| + ||f|| * sum_{k=1}^{M} b^i_{M,k}
        p = 1:  ||f|| * (B_i(N=M+i) + sum_{k=1}^{M} b^i_{M,k})

    Rows whose constants did not settle carry ``converged=False``.
    """
    if np.any(f.coeffs[: i + 1]):
        raise SupportError(f"need f(j) == 0 for every j <= {i}")
    scan = scan or ScanPolicy(n_max=cfg.beta.n_max)
    full = mult_matrix(f, cfg, i)
    f_norm = lp_norm(f, cfg)
    holder = holder_constant(cfg.beta, cfg.delta, cfg.q, i, scan) if cfg.p > 1 else None
    rows = []
    for M in Ms:
        measured = induced_norm_bounds(full - k_m_matrix(f, M, i, cfg), cfg)
        bs = [tail_constant(cfg.beta, cfg.delta, M, k, i, scan) for k in range(1, M + 1)]
        strip = f_norm * math.fsum(b.value for b in bs)
        ok = all(b.converged for b in bs)
        if cfg.p > 1:
            bound = holder.value ** (1 / cfg.q) * lp_norm(tail(f, M + i), cfg) + strip
            ok = ok and holder.converged
        else:
            double = p1_tail_sum(cfg.beta, cfg.delta, M + i, i, scan)
            bound = f_norm * double.value + strip
            ok = ok and double.converged
        rows.append(CompactnessRow(M, measured, bound, ok))
    return rows
