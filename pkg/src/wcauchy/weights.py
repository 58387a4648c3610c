"""Weight sequences and the scalar condition constants built from them.

Everything here works on the log table ``L(n) = ln w(n)``.  Factorial-type
weights overflow a double near n = 171, so products and quotients of weights
are always formed as sums and differences of logs and exponentiated once.

The constants are suprema or series over infinite index sets.  They are
evaluated by a finite scan and returned as a :class:`ConditionReport` that
states whether the scan looked settled, rather than as a bare float.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import ConvergenceError

__all__ = [
    "WeightSequence",
    "ScanPolicy",
    "ConditionReport",
    "make_weight_family",
    "diamond_ratio",
    "diamond_ratio_table",
    "beta_tilde",
    "holder_constant",
    "tail_constant",
    "p1_tail_sum",
    "shift_norm_constant",
    "p1_product_bound",
]

# relative change below which a running max / partial sum counts as settled
STABLE_RTOL = 1e-12
# anti-diagonal contributions must decay at least like s**-DECAY_EXPONENT
DECAY_EXPONENT = 1.5
# 1/s decay plus lower-order terms still reads as harmonic
_HARMONIC_MARGIN = 0.1


@dataclass(frozen=True, eq=False)
class WeightSequence:
    """Positive weights ``w(0..n_max)`` with ``w(0) = 1``.

    ``logcum`` is authoritative.  ``values`` is ``exp(logcum)`` and may
    overflow to ``inf`` or underflow to ``0`` for factorial-type families at
    large n; never divide by it directly.
    """

    values: np.ndarray
    logcum: np.ndarray
    family_tag: str = "custom"

    def __post_init__(self):
        if self.logcum.ndim != 1 or self.logcum.size < 2:
            raise ValueError("need at least w(0) and w(1)")
        if self.logcum[0] != 0.0:
            raise ValueError("w(0) must be exactly 1")
        if not np.all(np.isfinite(self.logcum)):
            raise ValueError("weights must be positive and finite in log space")
        self.values.setflags(write=False)
        self.logcum.setflags(write=False)

    @classmethod
    def from_logs(cls, logcum, family_tag="custom"):
        logcum = np.array(logcum, dtype=float)
        with np.errstate(over="ignore", under="ignore"):
            values = np.exp(logcum)
        values[0] = 1.0
        return cls(values=values, logcum=logcum, family_tag=family_tag)

    @classmethod
    def from_values(cls, values, family_tag="custom"):
        values = np.array(values, dtype=float)
        if np.any(~(values > 0)) or not np.all(np.isfinite(values)):
            raise ValueError("weights must be positive and finite")
        if values[0] != 1.0:
            raise ValueError("w(0) must be exactly 1")
        logcum = np.log(values)
        logcum[0] = 0.0
        return cls(values=values, logcum=logcum, family_tag=family_tag)

    @property
    def n_max(self) -> int:
        return self.logcum.size - 1

    def __len__(self):
        return self.logcum.size

    def __repr__(self):
        return f"WeightSequence({self.family_tag!r}, n_max={self.n_max})"


@dataclass(frozen=True)
class ScanPolicy:
    n_max: int = 2048
    window: int = 16
    divergence_threshold: float = 1e12

    def __post_init__(self):
        if not self.n_max >= self.window >= 1:
            raise ValueError("need n_max >= window >= 1")
        if not self.divergence_threshold > 0:
            raise ValueError("divergence_threshold must be positive")


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of a finite scan for a sup or a series.

    ``value`` is a lower estimate of the true constant: a running max over
    the scanned indices, or a partial sum of nonnegative terms.
    ``diverged`` is set when the scan found positive evidence of an infinite
    constant; ``converged`` and ``diverged`` are never both true, and both
    false means the scan was inconclusive.
    """

    name: str
    value: float
    converged: bool
    witness: int
    scanned: tuple[int, int]
    diverged: bool = False

    def require(self):
        if not self.converged:
            raise ConvergenceError(f"{self.name} did not converge over n in "
                                   f"{self.scanned} (value {self.value!r})", self)
        return self.value


# --------------------------------------------------------------------------
# families

def _parse_family(family):
    tag, _, arg = family.partition(":")
    return tag.strip(), arg.strip()


def _compensated_cumsum(terms):
    """Prefix sums ``[0, t0, t0+t1, ...]`` with Kahan compensation."""
    out = np.zeros(terms.size + 1)
    acc = carry = 0.0
    for j, x in enumerate(terms.tolist(), start=1):
        y = x - carry
        t = acc + y
        carry = (t - acc) - y
        acc = t
        out[j] = acc
    return out


def make_weight_family(family: str, n_max: int) -> WeightSequence:
    """Build one of the named weight families on ``0..n_max``.

    Descriptors: ``one``, ``poly:a`` for ``(n+1)**a``, ``geometric:r`` for
    ``r**n``, ``factorial``, ``invfactorial``, ``custom:path`` (one decimal
    per line, line n holding w(n)).
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    tag, arg = _parse_family(family)
    n = np.arange(n_max + 1, dtype=float)
    if tag == "one":
        return WeightSequence.from_logs(np.zeros(n_max + 1), family)
    if tag == "poly":
        a = float(arg)
        return WeightSequence.from_logs(a * np.log1p(n), family)
    if tag == "geometric":
        r = float(arg)
        if not r > 0:
            raise ValueError(f"geometric ratio must be positive, got {r}")
        return WeightSequence.from_logs(n * math.log(r), family)
    if tag in ("factorial", "invfactorial"):
        logs = _compensated_cumsum(np.log(n[1:]))
        if tag == "invfactorial":
            logs = -logs
        return WeightSequence.from_logs(logs, family)
    if tag == "custom":
        return _read_custom(Path(arg), n_max, family)
    raise ValueError(f"unknown weight family {family!r}")


def _read_custom(path, n_max, family):
    lines = [ln.strip() for ln in path.read_text(encoding="utf-8").splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) < n_max + 1:
        raise ValueError(f"{path}: need {n_max + 1} weights, found {len(lines)}")
    values = np.array([float(x) for x in lines[: n_max + 1]])
    if np.any(~(values > 0)):
        bad = int(np.flatnonzero(~(values > 0))[0])
        raise ValueError(f"{path}: nonpositive weight on line {bad}")
    if values[0] != 1.0:
        raise ValueError(f"{path}: line 0 must be 1.0")
    return WeightSequence.from_values(values, family)


# --------------------------------------------------------------------------
# weight ratios

def diamond_ratio(delta: WeightSequence, n: int, k: int, i: int = 0) -> float:
    """``delta(n) / (delta(k) * delta(n-k+i))`` for ``i <= k <= n``."""
    if not 0 <= i <= k <= n <= delta.n_max:
        raise IndexError(f"need 0 <= i <= k <= n <= {delta.n_max}, "
                         f"got i={i}, k={k}, n={n}")
    L = delta.logcum
    if k == i or k == n:
        # the two boundary terms cancel down to 1/delta(i)
        return 1.0 if i == 0 else math.exp(-L[i])
    return math.exp(L[n] - L[k] - L[n - k + i])


@functools.lru_cache(maxsize=64)
def _ratio_table(delta, D, i):
    L = delta.logcum
    n = np.arange(D + 1)[:, None]
    k = np.arange(D + 1)[None, :]
    mask = (k >= i) & (k <= n)
    logs = np.where(mask, L[n] - L[k] - L[np.clip(n - k + i, 0, D)], -np.inf)
    with np.errstate(over="ignore"):
        table = np.exp(logs)
    edge = 1.0 if i == 0 else math.exp(-L[i])
    idx = np.arange(i, D + 1)
    table[idx, i] = edge
    table[idx, idx] = edge
    table.setflags(write=False)
    return table


def diamond_ratio_table(delta: WeightSequence, D: int, i: int = 0) -> np.ndarray:
    """Lower-triangular table ``T[n, k] = diamond_ratio(delta, n, k, i)``.

    Entries outside ``i <= k <= n`` are zero.  The result is cached and
    read-only.
    """
    if D > delta.n_max:
        raise IndexError(f"degree {D} beyond weight table (n_max={delta.n_max})")
    if not 0 <= i <= D:
        raise IndexError(f"need 0 <= i <= {D}, got {i}")
    return _ratio_table(delta, int(D), int(i))


def beta_tilde(beta: WeightSequence, delta: WeightSequence) -> WeightSequence:
    """Weights under which the weighted shift becomes the plain shift."""
    if beta.n_max != delta.n_max:
        raise ValueError("beta and delta must share n_max")
    Ld, Lb = delta.logcum, beta.logcum
    logs = (Ld[1:] - Ld[:-1] - Ld[1]) + Lb[:-1]
    logs[0] = 0.0
    return WeightSequence.from_logs(logs, f"tilde({beta.family_tag},{delta.family_tag})")


# --------------------------------------------------------------------------
# condition constants

def _combined(beta, delta):
    if beta.n_max != delta.n_max:
        raise ValueError("beta and delta must share n_max")
    return beta.logcum + delta.logcum


def _log_gain_row(Lw, n, ks, i):
    """log of w(n) / (w(k) w(n-k+i)) for the k in ``ks``, edges exact."""
    out = Lw[n] - Lw[ks] - Lw[n - ks + i]
    out[ks == i] = -Lw[i]
    out[ks == n] = -Lw[i]
    return out


def _settled(running, window):
    if running.size <= window:
        return False
    last, before = running[-1], running[-1 - window]
    return bool(last <= before + STABLE_RTOL * abs(before))


def holder_constant(beta, delta, q: float, i: int = 0, scan: ScanPolicy = ScanPolicy()):
    """Running sup over n of ``sum_k (w(n) / (w(k) w(n-k+i)))**q``, w = beta*delta."""
    if not q > 1:
        raise ValueError(f"q must exceed 1, got {q}")
    Lw = _combined(beta, delta)
    n_max = min(scan.n_max, beta.n_max)
    if i > n_max:
        raise ValueError(f"i={i} beyond scan ceiling {n_max}")
    name = "C_o" if i == 0 else f"C_{i}"
    sums = []
    for n in range(i, n_max + 1):
        ks = np.arange(i, n + 1)
        with np.errstate(over="ignore"):
            s = float(np.sum(np.exp(q * _log_gain_row(Lw, n, ks, i))))
        sums.append(s)
        if not s <= scan.divergence_threshold:
            return ConditionReport(name, s, False, n, (i, n), diverged=True)
    sums = np.array(sums)
    running = np.maximum.accumulate(sums)
    value = float(running[-1])
    witness = i + int(np.argmax(sums))
    converged = _settled(running, scan.window)
    diverged = False
    if not converged and sums.size > scan.window:
        tail = sums[-scan.window - 1:]
        diverged = bool(np.all(np.diff(tail) > 0))
        if diverged:
            witness = n_max
    return ConditionReport(name, value, converged, witness, (i, n_max), diverged)


def tail_constant(beta, delta, M: int, k: int, i: int = 0, scan: ScanPolicy = ScanPolicy()):
    """``sup_{n >= M+i+1} w(n+k) / (w(n) w(k+i))`` over the scanned range."""
    if k < 1 or M < 0 or i < 0:
        raise ValueError("need k >= 1, M >= 0, i >= 0")
    Lw = _combined(beta, delta)
    n_max = min(scan.n_max, beta.n_max)
    n = np.arange(M + i + 1, n_max - k + 1)
    if n.size == 0:
        raise ValueError(f"empty scan: n from {M + i + 1} with n+{k} <= {n_max}")
    with np.errstate(over="ignore"):
        gains = np.exp(Lw[n + k] - Lw[n] - Lw[k + i])
    running = np.maximum.accumulate(gains)
    value = float(running[-1])
    pos = int(np.argmax(gains))
    diverged = not value <= scan.divergence_threshold
    converged = not diverged and _settled(running, scan.window)
    if not converged and not diverged and gains.size > scan.window:
        diverged = bool(np.all(np.diff(gains[-scan.window - 1:]) > 0)) and \
            running[-1] > running[-1 - scan.window] * (1 + 1e-6)
    name = f"b_{{{M},{k}}}" if i == 0 else f"b^{i}_{{{M},{k}}}"
    return ConditionReport(name, value, converged, int(n[pos]),
                           (int(n[0]), int(n[-1])), diverged)


def p1_tail_sum(beta, delta, N: int, i: int = 0, scan: ScanPolicy = ScanPolicy()):
    """Partial sums of ``sum_{n,m >= N+1} w(n+m-i) / (w(n) w(m))``.

    Terms are added one anti-diagonal ``s = n + m`` at a time.  The series is
    judged convergent when the last ``window`` anti-diagonals are negligible
    against the total, or when the anti-diagonal mass decays at least like
    ``s**-1.5`` over each of the last two octaves of the scan.  Decay no faster
    than ``1/s`` is reported as divergence.
    """
    if N < i:
        raise ValueError(f"need N >= i, got N={N}, i={i}")
    Lw = _combined(beta, delta)
    n_max = min(scan.n_max, beta.n_max)
    s_lo, s_hi = 2 * (N + 1), n_max + i
    if s_hi < s_lo:
        raise ValueError("scan ceiling too small for this N")
    name = "B" if i == 0 else f"B_{i}"
    idx = np.arange(N + 1, s_hi - N)
    rows, cols = np.nonzero(idx[:, None] + idx[None, :] <= s_hi)
    n, m = idx[rows], idx[cols]
    with np.errstate(over="ignore"):
        terms = np.exp(Lw[n + m - i] - Lw[n] - Lw[m])
    # one bin per anti-diagonal s = n + m
    contrib = np.bincount(n + m - s_lo, weights=terms, minlength=s_hi - s_lo + 1)
    partial = np.cumsum(contrib)
    over = np.flatnonzero(~(partial <= scan.divergence_threshold))
    if over.size:
        j = int(over[0])
        return ConditionReport(name, float(partial[j]), False, s_lo + j,
                               (s_lo, s_lo + j), diverged=True)
    total = float(partial[-1])
    W = scan.window
    converged = diverged = False
    if contrib.size > W:
        if np.all(contrib[-W:] < STABLE_RTOL * total):
            converged = True
        elif s_hi >= 4 * s_lo and contrib[-1] > 0:
            s_half, s_quarter = s_hi // 2, s_hi // 4
            c_end = contrib[-1]
            c_half = contrib[s_half - s_lo]
            c_quarter = contrib[s_quarter - s_lo]
            slope_hi = math.log(c_end / c_half) / math.log(s_hi / s_half)
            slope_lo = math.log(c_half / c_quarter) / math.log(s_half / s_quarter)
            tail_falling = bool(np.all(np.diff(contrib[-W - 1:]) <= 0))
            if tail_falling and max(slope_hi, slope_lo) <= -DECAY_EXPONENT:
                converged = True
            elif slope_hi >= -1.0 - _HARMONIC_MARGIN:
                diverged = True
    return ConditionReport(name, total, converged, s_hi, (s_lo, s_hi), diverged)


def shift_norm_constant(beta, delta, N: int, scan: ScanPolicy = ScanPolicy()):
    """``sup_n beta(n+N) delta(n+N) / (beta(n) delta(n) delta(1)**N)``.

    This is the norm of the N-th power of the weighted shift.  ``N = 0`` gives
    the identity and reports exactly 1.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    n_max = min(scan.n_max, beta.n_max)
    if N == 0:
        return ConditionReport("C^0", 1.0, True, 0, (0, n_max))
    Lw = _combined(beta, delta)
    n = np.arange(0, n_max - N + 1)
    if n.size == 0:
        raise ValueError(f"empty scan for N={N}")
    with np.errstate(over="ignore"):
        gains = np.exp(Lw[n + N] - Lw[n] - N * delta.logcum[1])
    running = np.maximum.accumulate(gains)
    value = float(running[-1])
    diverged = not value <= scan.divergence_threshold
    converged = not diverged and _settled(running, scan.window)
    return ConditionReport(f"C^{N}", value, converged, int(np.argmax(gains)),
                           (0, int(n[-1])), diverged)


def p1_product_bound(beta, delta, N: int, scan: ScanPolicy = ScanPolicy()) -> float:
    """Multiplicative constant K with ``||f*g|| <= K ||f|| ||g||`` at p = 1.

    Splits the product into the first N+1 coefficients of each factor, which
    act through powers of the weighted shift, and the double tail.  Raises
    :class:`ConvergenceError` if the tail sum or a shift norm is unsettled.
    """
    tail = p1_tail_sum(beta, delta, N, 0, scan).require()
    Ld, Lb = delta.logcum, beta.logcum
    head = 0.0
    for k in range(N + 1):
        shift = shift_norm_constant(beta, delta, k, scan).require()
        head += math.exp(k * Ld[1] - Lb[k] - Ld[k]) * shift
    return 2.0 * head + tail
