"""Column sequences and their peak-to-mean envelope power ratio.

PMEPR of s (length L) is max over t in [0, 1) of |sum_k s_k exp(2j pi k t)|^2 / L.
It is estimated on an ``oversample * L`` grid, then refined by ternary search
around the grid maximum.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exactnum import rows_are_zero
from .seqgen import CodeMatrix, CodeSet, PhaseSequence

__all__ = [
    "PmeprResult",
    "PmeprReport",
    "extract_column",
    "pmepr_value",
    "check_pmepr_bound",
    "find_golay_partner",
    "golay_scan",
    "BOUND_TOL",
]

BOUND_TOL = 1e-6
_REFINE_ITERS = 60


@dataclass(frozen=True)
class PmeprResult:
    value: float
    argmax_t: float
    oversample: int
    length: int


@dataclass
class PmeprReport:
    passed: bool
    bound: float
    oversample: int
    worst: float
    worst_at: tuple[int, int]  # (code, column)
    per_code_max: list[float] = field(default_factory=list)


def extract_column(C: CodeMatrix, i: int) -> PhaseSequence:
    if not 0 <= i < C.N:
        raise IndexError(f"column {i} outside [0, {C.N})")
    return PhaseSequence(C.sigma, C.exponents[:, i])


def _envelope(x: np.ndarray, t: np.ndarray) -> np.ndarray:
    """|sum_k x[..., k] exp(2j pi k t[...])|^2 / L for broadcast-compatible leading axes."""
    L = x.shape[-1]
    k = np.arange(L)
    ph = np.exp(2j * np.pi * t[..., None] * k)
    return np.abs(np.sum(x * ph, axis=-1)) ** 2 / L


def _pmepr_many(x: np.ndarray, oversample: int):
    """Vectorised PMEPR over the leading axes of a complex array (..., L)."""
    if oversample < 4:
        raise ValueError(f"oversample must be >= 4, got {oversample}")
    L = x.shape[-1]
    G = oversample * L
    # ifft(x, G)[j] * G = sum_k x_k exp(2j pi k j / G)
    grid = np.abs(np.fft.ifft(x, G, axis=-1) * G) ** 2 / L
    j = np.argmax(grid, axis=-1)
    best = np.take_along_axis(grid, j[..., None], axis=-1)[..., 0]
    lo = (j - 1) / G
    hi = (j + 1) / G
    for _ in range(_REFINE_ITERS):
        a = lo + (hi - lo) / 3
        b = hi - (hi - lo) / 3
        fa, fb = _envelope(x, a), _envelope(x, b)
        keep_left = fa >= fb
        hi = np.where(keep_left, b, hi)
        lo = np.where(keep_left, lo, a)
    t_ref = (lo + hi) / 2
    f_ref = _envelope(x, t_ref)
    better = f_ref > best
    value = np.where(better, f_ref, best)
    t_best = np.where(better, t_ref, j / G) % 1.0
    return value, t_best


def pmepr_value(s: PhaseSequence, oversample: int = 64) -> PmeprResult:
    value, t = _pmepr_many(s.to_complex()[None, :], oversample)
    return PmeprResult(float(value[0]), float(t[0]), oversample, len(s))


def check_pmepr_bound(S: CodeSet, bound: float = 2.0, oversample: int = 64) -> PmeprReport:
    """PMEPR of every column of every code; passes iff all are <= bound + 1e-6."""
    E = S.exponents  # (M, K, N)
    cols = np.exp(2j * np.pi * np.swapaxes(E, 1, 2) / S.sigma)  # (M, N, K)
    values, _ = _pmepr_many(cols, oversample)
    code, col = np.unravel_index(int(np.argmax(values)), values.shape)
    worst = float(values[code, col])
    return PmeprReport(
        passed=bool(worst <= bound + BOUND_TOL),
        bound=bound,
        oversample=oversample,
        worst=worst,
        worst_at=(int(code), int(col)),
        per_code_max=[float(v) for v in values.max(axis=1)],
    )


def _aacf_counts(e: np.ndarray, sigma: int) -> np.ndarray:
    """Coefficient vectors of A(tau), tau = 1..L-1, shape (L-1, sigma)."""
    L = e.size
    out = np.zeros((max(L - 1, 0), sigma), dtype=np.int64)
    for tau in range(1, L):
        out[tau - 1] = np.bincount((e[tau:] - e[: L - tau]) % sigma, minlength=sigma)
    return out


def find_golay_partner(x: PhaseSequence, pool) -> PhaseSequence | None:
    """First y in pool whose aperiodic autocorrelation cancels x's at every nonzero shift."""
    pool = list(pool)
    for y in pool:
        if y.sigma != x.sigma or len(y) != len(x):
            raise ValueError("pool sequences must share sigma and length with x")
    ax = _aacf_counts(x.exponents, x.sigma)
    for y in pool:
        total = ax + _aacf_counts(y.exponents, y.sigma)
        if total.size == 0 or rows_are_zero(total, x.sigma).all():
            return y
    return None


def golay_scan(S: CodeSet) -> np.ndarray:
    """For every (code, column): does some column of the set complete it to a Golay pair?

    Works on distinct columns only, so the cost scales with the number of
    distinct column sequences rather than M * N.
    """
    E = np.swapaxes(S.exponents, 1, 2).reshape(-1, S.params.K)  # (M*N, K)
    uniq, inverse = np.unique(E, axis=0, return_inverse=True)
    counts = np.stack([_aacf_counts(u, S.sigma) for u in uniq])  # (U, K-1, sigma)
    found = np.zeros(len(uniq), dtype=bool)
    for i in range(len(uniq)):
        total = counts[i][None] + counts
        found[i] = rows_are_zero(total, S.sigma).all(axis=-1).any()
    return found[inverse.ravel()].reshape(S.params.M, S.params.N)
