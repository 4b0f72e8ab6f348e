"""Aperiodic correlations and the ZCCS / CCC definitions as executable checks.

Two engines: ``exact`` accumulates exponent differences into CycloSums and
tests them modulo the cyclotomic polynomial (authoritative); ``float`` uses
zero-padded FFTs with an absolute threshold of 1e-9 * K * N.
"""
from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .exactnum import CycloSum, reduce_rows
from .seqgen import CodeMatrix, CodeSet, PhaseSequence

__all__ = [
    "Violation",
    "CorrelationReport",
    "Optimality",
    "accf",
    "accf_complex",
    "set_accf",
    "check_zccs",
    "check_ccc",
    "measure_zcz",
    "check_optimality",
    "correlate_fft",
    "aacf_exact",
    "FLOAT_ZERO_RTOL",
]

FLOAT_ZERO_RTOL = 1e-9
# elements per bincount batch
_CHUNK_ELEMS = 1 << 22


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("ZCCS_JOBS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True, order=True)
class Violation:
    d1: int
    d2: int
    tau: int
    magnitude: float = field(compare=False)
    kind: str = field(default="corr", compare=False)  # "peak" | "corr" | "shape"


@dataclass
class CorrelationReport:
    passed: bool
    violations: list[Violation]
    peak_value: int | None
    engine: str
    Z: int = 0

    def summary(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.violations)} violations)"
        return f"{status} engine={self.engine} Z={self.Z} peak={self.peak_value}"


class Optimality(str, enum.Enum):
    OPTIMAL = "optimal"
    SUBOPTIMAL = "suboptimal"
    INVALID = "invalid"


def _check_pair(x: PhaseSequence, y: PhaseSequence) -> None:
    if x.sigma != y.sigma:
        raise ValueError(f"sigma mismatch: {x.sigma} vs {y.sigma}")
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")


def _overlap(a: np.ndarray, b: np.ndarray, tau: int):
    """Aligned slices (x part, y part) along the last axis for shift tau."""
    n = a.shape[-1]
    if tau >= 0:
        return a[..., tau:], b[..., : n - tau]
    return a[..., : n + tau], b[..., -tau:]


def accf(x: PhaseSequence, y: PhaseSequence, tau: int) -> CycloSum:
    """Exact aperiodic cross-correlation sum_i x_{i+tau} conj(y_i)."""
    _check_pair(x, y)
    if abs(tau) >= len(x):
        return CycloSum(x.sigma)
    a, b = _overlap(x.exponents, y.exponents, tau)
    return CycloSum.from_exponents(x.sigma, a - b)


def accf_complex(x, y, tau: int) -> complex:
    """Floating-point mirror of accf by direct summation."""
    xc = x.to_complex() if isinstance(x, PhaseSequence) else np.asarray(x, dtype=complex)
    yc = y.to_complex() if isinstance(y, PhaseSequence) else np.asarray(y, dtype=complex)
    if abs(tau) >= xc.size:
        return 0j
    a, b = _overlap(xc, yc, tau)
    return complex(np.sum(a * np.conj(b)))


def set_accf(A: CodeMatrix, B: CodeMatrix, tau: int) -> CycloSum:
    if A.exponents.shape != B.exponents.shape or A.sigma != B.sigma:
        raise ValueError("code matrices differ in shape or sigma")
    if abs(tau) >= A.N:
        return CycloSum(A.sigma)
    a, b = _overlap(A.exponents, B.exponents, tau)
    return CycloSum.from_exponents(A.sigma, a - b)


def aacf_exact(x: PhaseSequence) -> list[CycloSum]:
    """[A_x(0), ..., A_x(L-1)]."""
    return [accf(x, x, t) for t in range(len(x))]


def correlate_fft(x, y) -> np.ndarray:
    """All shifts of the aperiodic ACCF via zero-padded FFT.

    Entry k holds tau = k - (N - 1), so index N - 1 is tau = 0.
    """
    xc = x.to_complex() if isinstance(x, PhaseSequence) else np.asarray(x, dtype=complex)
    yc = y.to_complex() if isinstance(y, PhaseSequence) else np.asarray(y, dtype=complex)
    n = xc.size
    size = 1 << (2 * n - 1).bit_length()
    c = np.fft.ifft(np.fft.fft(xc, size) * np.conj(np.fft.fft(yc, size)))
    return np.concatenate([c[size - n + 1:], c[:n]])


# --- set-level engines -------------------------------------------------------

def _exact_block(E: np.ndarray, sigma: int, tau: int, lo: int, hi: int, col_lo: int) -> np.ndarray:
    """Reduced correlation values for d1 in [lo, hi), d2 in [col_lo, M): shape (hi-lo, M-col_lo, deg)."""
    a, b = _overlap(E[lo:hi], E[col_lo:], tau)
    diff = (a[:, None] - b[None, :]) % sigma
    rows, cols = diff.shape[:2]
    pair = np.arange(rows * cols, dtype=np.int64).reshape(rows, cols, 1, 1) * sigma
    counts = np.bincount((diff + pair).ravel(), minlength=rows * cols * sigma)
    return reduce_rows(counts.reshape(rows, cols, sigma), sigma)


def _float_spectra(E: np.ndarray, sigma: int) -> tuple[np.ndarray, int]:
    n = E.shape[-1]
    size = 1 << (2 * n - 1).bit_length()
    X = np.exp(2j * np.pi * E / sigma)
    return np.fft.fft(X, size, axis=-1), size


def _float_block(F: np.ndarray, size: int, n: int, lo: int, hi: int, col_lo: int) -> np.ndarray:
    """All shifts for a block of pairs: shape (hi-lo, M-col_lo, 2n-1), tau-major as in correlate_fft."""
    cross = np.einsum("akf,bkf->abf", F[lo:hi], np.conj(F[col_lo:]))
    c = np.fft.ifft(cross, axis=-1)
    return np.concatenate([c[..., size - n + 1:], c[..., :n]], axis=-1)


def _chunks(M: int, per_row: int) -> list[tuple[int, int]]:
    step = max(1, _CHUNK_ELEMS // max(per_row, 1))
    return [(lo, min(M, lo + step)) for lo in range(0, M, step)]


def _scan(S: CodeSet, taus, engine: str, ordered: bool, jobs: int | None):
    """Violations at the given shifts, plus the tau=0 autocorrelation value of code 0."""
    E = S.exponents
    M, K, N = E.shape
    sigma = S.sigma
    KN = K * N
    jobs = default_jobs() if jobs is None else max(1, jobs)
    violations: list[Violation] = []
    peak: int | None = None

    if engine == "exact":
        # K*N*x^0 is already reduced: deg Phi_sigma >= 1
        target_peak = np.zeros(reduce_rows(np.zeros((1, sigma), dtype=np.int64), sigma).shape[-1],
                               dtype=np.int64)
        target_peak[0] = KN
        roots = np.exp(2j * np.pi * np.arange(target_peak.size) / sigma)

        def work(task):
            tau, lo, hi = task
            col_lo = lo if not ordered else 0
            rem = _exact_block(E, sigma, tau, lo, hi, col_lo)
            out = []
            d1 = np.arange(lo, hi)[:, None]
            d2 = np.arange(col_lo, M)[None, :]
            nonzero = np.any(rem != 0, axis=-1)
            if not ordered:
                nonzero &= d2 >= d1
            if tau == 0:
                diag = (d1 == d2)
                bad_peak = diag & np.any(rem != target_peak, axis=-1)
                nonzero = (nonzero & ~diag) | bad_peak
            for i, j in zip(*np.nonzero(nonzero)):
                val = complex(np.dot(rem[i, j].astype(float), roots))
                kind = "peak" if (tau == 0 and lo + i == col_lo + j) else "corr"
                out.append(Violation(int(lo + i), int(col_lo + j), tau, abs(val), kind))
            p = None
            if tau == 0 and lo == 0 and not np.any(rem[0, 0, 1:]):
                p = int(rem[0, 0, 0])
            return out, p
    elif engine == "float":
        F, size = _float_spectra(E, sigma)
        tol = FLOAT_ZERO_RTOL * KN
        tau_set = list(taus)

        def work(task):
            _, lo, hi = task
            col_lo = lo if not ordered else 0
            vals = _float_block(F, size, N, lo, hi, col_lo)
            out = []
            p = None
            for tau in tau_set:
                v = vals[..., tau + N - 1]
                d1 = np.arange(lo, hi)[:, None]
                d2 = np.arange(col_lo, M)[None, :]
                if tau == 0:
                    expect = np.where(d1 == d2, KN, 0)
                else:
                    expect = np.zeros(v.shape)
                bad = np.abs(v - expect) > tol
                if not ordered:
                    bad &= d2 >= d1
                for i, j in zip(*np.nonzero(bad)):
                    kind = "peak" if (tau == 0 and lo + i == col_lo + j) else "corr"
                    out.append(Violation(int(lo + i), int(col_lo + j), tau, float(abs(v[i, j])), kind))
                if tau == 0 and lo == 0 and col_lo == 0:
                    p0 = v[0, 0]
                    if abs(p0 - round(p0.real)) <= tol:
                        p = int(round(p0.real))
            return out, p

        taus = [0]  # one pass over pair blocks covers every shift
    else:
        raise ValueError(f"unknown engine {engine!r}")

    per_row = M * K * N * (1 if engine == "exact" else 4)
    tasks = [(tau, lo, hi) for tau in taus for lo, hi in _chunks(M, per_row)]
    if jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(jobs) as pool:
            results = list(pool.map(work, tasks))
    else:
        results = [work(t) for t in tasks]
    for out, p in results:
        violations.extend(out)
        if p is not None:
            peak = p
    violations.sort()
    return violations, peak


def check_zccs(S: CodeSet, Z: int, engine: str = "exact", ordered: bool = True,
               jobs: int | None = None) -> CorrelationReport:
    """Check the three ZCCS clauses for every code pair and every |tau| < Z.

    ``ordered=False`` checks each unordered pair once (the other order is
    the conjugate at -tau).
    """
    N = S.params.N
    if not 1 <= Z <= N:
        raise ValueError(f"Z must lie in [1, {N}], got {Z}")
    violations, peak = _scan(S, range(-(Z - 1), Z), engine, ordered, jobs)
    return CorrelationReport(not violations, violations, peak, engine, Z)


def check_ccc(S: CodeSet, engine: str = "exact", jobs: int | None = None) -> CorrelationReport:
    """Complete complementary code: a ZCCS with Z = N and M = K."""
    rep = check_zccs(S, S.params.N, engine, jobs=jobs)
    if S.params.M != S.params.K:
        rep.violations.insert(0, Violation(S.params.M, S.params.K, 0, float(abs(S.params.M - S.params.K)), "shape"))
        rep.passed = False
    return rep


def measure_zcz(S: CodeSet, engine: str = "exact", jobs: int | None = None) -> int:
    """Largest Z for which the ZCCS clauses hold; 0 if the tau = 0 clauses already fail."""
    N = S.params.N
    if _scan(S, [0], engine, True, jobs)[0]:
        return 0
    for tau in range(1, N):
        if _scan(S, [tau, -tau], engine, True, jobs)[0]:
            return tau
    return N


def check_optimality(M: int, K: int, N: int, Z: int) -> Optimality:
    """Compare M with the set-size bound K * floor(N / Z)."""
    if min(M, K, N, Z) <= 0:
        raise ValueError("M, K, N, Z must all be positive")
    bound = K * (N // Z)
    if M == bound:
        return Optimality.OPTIMAL
    return Optimality.SUBOPTIMAL if M < bound else Optimality.INVALID
