"""Cyclic vectors, invariant subspaces and closed ideals on truncations.

Iterating the weighted shift on a series whose lowest nonzero coefficient
sits at degree i gives columns whose lowest nonzero coefficients sit at
i, i+1, i+2, ...  That echelon shape is checked exactly (no tolerance): it
is the finite picture of the span of the iterates being everything supported
at degrees >= i.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import KernelInconsistency
from .operators import numerical_rank, shift_apply
from .series import FormalSeries, SpaceConfig, min_support
from .weights import ConditionReport, ScanPolicy, holder_constant, tail_constant

__all__ = [
    "KrylovProfile",
    "krylov_profile",
    "is_cyclic",
    "ideal_closure_index",
    "TrendRow",
    "UnicellularityRow",
    "check_unicellularity_conditions",
    "DEFAULT_LADDER",
]

DEFAULT_LADDER = tuple(2 ** j for j in range(11))


@dataclass(frozen=True, eq=False)
class KrylovProfile:
    matrix: np.ndarray
    leading_indices: list
    rank: int
    index: int | None
    echelon: bool


def krylov_profile(f: FormalSeries, K: int, cfg: SpaceConfig) -> KrylovProfile:
    """Columns ``f, S f, S^2 f, ..., S^K f`` for the weighted shift S."""
    D = cfg.degree_cap
    if not 0 <= K <= D:
        raise ValueError(f"need 0 <= K <= {D}")
    cols = [f]
    for _ in range(K):
        cols.append(shift_apply(cols[-1], 1, cfg))
    matrix = np.column_stack([c.coeffs for c in cols])
    leading = [min_support(c) for c in cols]
    index = leading[0]
    if index is None:
        return KrylovProfile(matrix, leading, 0, None, True)
    expected = [index + j if index + j <= D else None for j in range(K + 1)]
    echelon = leading == expected
    if echelon:
        rank = sum(x is not None for x in leading)
    else:
        rank = numerical_rank(matrix)
    return KrylovProfile(matrix, leading, rank, index, echelon)


def is_cyclic(f: FormalSeries, cfg: SpaceConfig) -> bool:
    """f is cyclic for the weighted shift exactly when f(0) != 0."""
    verdict = bool(f.coeffs[0] != 0)
    D = cfg.degree_cap
    full = krylov_profile(f, D, cfg).rank == D + 1
    if verdict != full:
        raise KernelInconsistency(f"f(0) test says {verdict}, Krylov rank says {full}")
    return verdict


def ideal_closure_index(f: FormalSeries, cfg: SpaceConfig):
    """The i for which the closed ideal generated by f is the series supported at >= i.

    ``None`` for the zero series.  The shift iterates are checked to span
    exactly the coordinates ``i..D``.
    """
    i = min_support(f)
    if i is None:
        return None
    D = cfg.degree_cap
    prof = krylov_profile(f, D, cfg)
    covered = sorted(x for x in prof.leading_indices if x is not None)
    if not prof.echelon or covered != list(range(i, D + 1)):
        raise KernelInconsistency(f"shift iterates of f do not span degrees {i}..{D}")
    return i


@dataclass(frozen=True)
class TrendRow:
    i: int
    k: int
    ladder: tuple
    values: tuple
    converged: bool
    last: float
    ratio: float
    trend: str


@dataclass(frozen=True)
class UnicellularityRow:
    i: int
    holder: ConditionReport
    tails: list = field(default_factory=list)
    verdict: str = "inconclusive"


def _trend(values, converged):
    if not converged or len(values) < 2:
        return "inconclusive", float("nan")
    first, prev, last = values[0], values[-2], values[-1]
    ratio = last / prev if prev > 0 else 0.0
    if last <= 1e-12 * first or ratio <= 0.9:
        return "to_zero", ratio
    if ratio >= 0.99 and last > 1e-6 * first:
        return "plateau", ratio
    return "inconclusive", ratio


def check_unicellularity_conditions(beta, delta, i_max: int, scan: ScanPolicy = ScanPolicy(),
                                    *, q: float = 2.0, k_max: int = 4,
                                    ladder=DEFAULT_LADDER) -> list[UnicellularityRow]:
    """Numerical evidence for ``C_i < inf`` and ``b^i_{M,k} -> 0`` for each i.

    The tail constants are evaluated on a ladder of M for each k up to
    ``k_max`` and classified by the ratio of the last two rungs.  A verdict
    is one of ``supported``, ``refuted`` or ``inconclusive``; nothing here is
    a proof.
    """
    rows = []
    for i in range(i_max + 1):
        holder = holder_constant(beta, delta, q, i, scan)
        trends = []
        for k in range(1, k_max + 1):
            n_top = min(scan.n_max, beta.n_max) - k
            rungs = tuple(M for M in ladder if M + i + 1 <= n_top)
            reports = [tail_constant(beta, delta, M, k, i, scan) for M in rungs]
            values = tuple(r.value for r in reports)
            ok = all(r.converged for r in reports)
            trend, ratio = _trend(values, ok)
            trends.append(TrendRow(i, k, rungs, values, ok,
                                   values[-1] if values else float("nan"), ratio, trend))
        if holder.diverged or any(t.trend == "plateau" for t in trends):
            verdict = "refuted"
        elif holder.converged and all(t.trend == "to_zero" for t in trends):
            verdict = "supported"
        else:
            verdict = "inconclusive"
        rows.append(UnicellularityRow(i, holder, trends, verdict))
    return rows
