"""Phase sequences, truncation, and assembly of CCCs and ZCCSs.

Every sequence is stored as integer exponents modulo ``sigma``; entry k stands
for ``exp(2j*pi*exponents[k]/sigma)``.  Bit order is LSB-first throughout:
sequence index bit t is variable y_t, row index is v_0 + 2 v_1 + ... + 2**n v_n.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from sympy import factorint

from .gbf import GBF
from .pbf import (
    PBF,
    ConstructionParams,
    HConditionWarning,
    HFunction,
    bits_of,
    build_lambda_member,
    build_omega_member,
    check_h_condition,
    default_width,
    phase_table,
)

__all__ = [
    "PhaseSequence",
    "CodeLabel",
    "CodeMatrix",
    "CodeSetParams",
    "CodeSet",
    "ParameterPlan",
    "psi",
    "truncate",
    "truncation_mask",
    "conjugate_seq",
    "generate_ccc",
    "generate_zccs",
    "plan_parameters",
]


@dataclass(frozen=True, eq=False)
class PhaseSequence:
    sigma: int
    exponents: np.ndarray

    def __post_init__(self):
        e = np.array(self.exponents, dtype=np.int64).ravel()
        if self.sigma < 1:
            raise ValueError("sigma must be positive")
        if e.size < 1:
            raise ValueError("empty sequence")
        if e.min() < 0 or e.max() >= self.sigma:
            raise ValueError(f"exponents must lie in [0, {self.sigma})")
        e.setflags(write=False)
        object.__setattr__(self, "exponents", e)

    def __len__(self) -> int:
        return self.exponents.size

    def __eq__(self, other):
        if not isinstance(other, PhaseSequence):
            return NotImplemented
        return self.sigma == other.sigma and np.array_equal(self.exponents, other.exponents)

    def to_complex(self) -> np.ndarray:
        return np.exp(2j * np.pi * self.exponents / self.sigma)


class CodeLabel(NamedTuple):
    family: str  # "omega" | "lambda*"
    r: int
    lam: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class CodeMatrix:
    """K x N exponent matrix sharing one sigma."""

    sigma: int
    exponents: np.ndarray
    label: CodeLabel | None = None

    def __post_init__(self):
        e = np.array(self.exponents, dtype=np.int64)
        if e.ndim != 2 or 0 in e.shape:
            raise ValueError(f"code matrix must be a non-empty 2-D array, got shape {e.shape}")
        if e.min() < 0 or e.max() >= self.sigma:
            raise ValueError(f"exponents must lie in [0, {self.sigma})")
        e.setflags(write=False)
        object.__setattr__(self, "exponents", e)

    @classmethod
    def from_rows(cls, rows: Sequence[PhaseSequence], label: CodeLabel | None = None) -> CodeMatrix:
        sigmas = {r.sigma for r in rows}
        lengths = {len(r) for r in rows}
        if len(sigmas) != 1 or len(lengths) != 1:
            raise ValueError("rows must share sigma and length")
        return cls(sigmas.pop(), np.stack([r.exponents for r in rows]), label)

    @property
    def K(self) -> int:
        return self.exponents.shape[0]

    @property
    def N(self) -> int:
        return self.exponents.shape[1]

    @property
    def rows(self) -> list[PhaseSequence]:
        return [PhaseSequence(self.sigma, row) for row in self.exponents]

    def __eq__(self, other):
        if not isinstance(other, CodeMatrix):
            return NotImplemented
        return self.sigma == other.sigma and np.array_equal(self.exponents, other.exponents)


@dataclass(frozen=True)
class CodeSetParams:
    M: int
    K: int
    N: int
    Z: int
    sigma: int
    provenance: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True, eq=False)
class CodeSet:
    codes: tuple[CodeMatrix, ...]
    params: CodeSetParams

    def __post_init__(self):
        codes = tuple(self.codes)
        if not codes:
            raise ValueError("a code set needs at least one code")
        shapes = {c.exponents.shape for c in codes}
        sigmas = {c.sigma for c in codes}
        if len(shapes) != 1 or len(sigmas) != 1:
            raise ValueError("all codes must share shape and sigma")
        (K, N), sigma = shapes.pop(), sigmas.pop()
        p = self.params
        if (p.M, p.K, p.N, p.sigma) != (len(codes), K, N, sigma):
            raise ValueError(
                f"declared (M,K,N,sigma)=({p.M},{p.K},{p.N},{p.sigma}) "
                f"but codes give ({len(codes)},{K},{N},{sigma})")
        object.__setattr__(self, "codes", codes)

    @property
    def sigma(self) -> int:
        return self.params.sigma

    @property
    def exponents(self) -> np.ndarray:
        """All codes stacked, shape (M, K, N)."""
        return np.stack([c.exponents for c in self.codes])

    def __len__(self) -> int:
        return len(self.codes)

    def __eq__(self, other):
        if not isinstance(other, CodeSet):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.exponents, other.exponents)

    def with_exponents(self, exponents: np.ndarray) -> CodeSet:
        """Copy with replaced exponents (same labels and params)."""
        codes = tuple(CodeMatrix(c.sigma, e, c.label) for c, e in zip(self.codes, exponents))
        return CodeSet(codes, self.params)


def psi(p: PBF, q: int, sigma: int) -> PhaseSequence:
    return PhaseSequence(sigma, phase_table(p, q, sigma))


def truncation_mask(m: int, widths: Sequence[int], primes: Sequence[int]) -> np.ndarray:
    """Boolean keep-mask over 2**(m + sum widths) indices."""
    idx = np.arange(2 ** (m + sum(widths)), dtype=np.int64) >> m
    keep = np.ones(idx.shape, dtype=bool)
    for s, p in zip(widths, primes):
        keep &= (idx & ((1 << s) - 1)) < p
        idx >>= s
    return keep


def truncate(s: PhaseSequence, m: int, widths: Sequence[int], primes: Sequence[int]) -> PhaseSequence:
    """Drop every index whose prime-digit i_k reaches p_k; keeps ascending order."""
    if len(widths) != len(primes):
        raise ValueError("need one width per prime")
    expected = 2 ** (m + sum(widths))
    if len(s) != expected:
        raise ValueError(f"sequence length {len(s)} != 2**(m + sum widths) = {expected}")
    return PhaseSequence(s.sigma, s.exponents[truncation_mask(m, widths, primes)])


def conjugate_seq(s: PhaseSequence) -> PhaseSequence:
    return PhaseSequence(s.sigma, (-s.exponents) % s.sigma)


def _rows(params: ConstructionParams):
    """(v, v_n) in row order."""
    for idx in range(params.K):
        yield bits_of(idx, params.n), idx >> params.n


def _assemble(params: ConstructionParams, kind: str) -> CodeSet:
    q, sigma = params.q, params.sigma
    keep = truncation_mask(params.m, params.widths, params.primes)
    lams = list(params.lambdas())
    omega, lam_star = [], []
    for r in range(2**params.n):
        for lam in lams:
            rows = [phase_table(build_omega_member(params, r, lam, v, vn), q, sigma)[keep]
                    for v, vn in _rows(params)]
            omega.append(CodeMatrix(sigma, np.stack(rows), CodeLabel("omega", r, lam)))
    for r in range(2**params.n):
        for lam in lams:
            rows = [(-phase_table(build_lambda_member(params, r, lam, v, vn), q, sigma)[keep]) % sigma
                    for v, vn in _rows(params)]
            lam_star.append(CodeMatrix(sigma, np.stack(rows), CodeLabel("lambda*", r, lam)))
    codes = tuple(omega + lam_star)
    prov = {
        "construction": kind,
        "q": q,
        "m": params.m,
        "n": params.n,
        "primes": list(params.primes),
        "widths": list(params.widths),
        "g": _gbf_text(params.g),
        "h_table": list(params.h.table),
        "delete": list(params.delete),
        "gamma": params.gamma,
    }
    if params.literal_ybar:
        prov["literal_ybar"] = True
    set_params = CodeSetParams(len(codes), params.K, params.N, params.Z, sigma, prov)
    if kind == "ccc":
        set_params = CodeSetParams(len(codes), params.K, params.N, params.N, sigma, prov)
    return CodeSet(codes, set_params)


def _gbf_text(g: GBF) -> str:
    from .expr import format_gbf

    return format_gbf(g)


def generate_ccc(g: GBF, n: int, delete: Sequence[int], gamma: int, q: int | None = None,
                 h: HFunction | None = None) -> CodeSet:
    """The (2^(n+1), 2^(n+1), 2^m) complete complementary code built from g.

    ``h`` adds a per-row constant and defaults to zero.
    """
    q = g.q if q is None else q
    params = ConstructionParams(q, g, n, tuple(delete), gamma, (), (), h)
    _warn_h(params)
    return _assemble(params, "ccc")


def _warn_h(params: ConstructionParams) -> None:
    if not check_h_condition(params.h).ok:
        warnings.warn(
            f"h values {sorted(set(params.h.table))} are not within {{c, c+{params.q // 2}}} "
            "for any c; the output may not be a valid code set",
            HConditionWarning, stacklevel=3)


def generate_zccs(params: ConstructionParams) -> CodeSet:
    """Truncated-PBF code set: (2^(n+1) prod p, 2^m)-ZCCS with K = 2^(n+1), N = 2^m prod p."""
    if not params.primes:
        return generate_ccc(params.g, params.n, params.delete, params.gamma, params.q, params.h)
    _warn_h(params)
    return _assemble(params, "zccs")


@dataclass(frozen=True)
class ParameterPlan:
    length: int
    m: int
    primes: tuple[int, ...]
    widths: tuple[int, ...]

    def build(self, q: int, g: GBF, n: int, delete: Sequence[int], gamma: int,
              h: HFunction | None = None, **kw) -> ConstructionParams:
        if g.m != self.m:
            raise ValueError(f"g has {g.m} variables, plan needs m={self.m}")
        return ConstructionParams(q, g, n, tuple(delete), gamma, self.primes, self.widths, h, **kw)


def plan_parameters(target_length: int, m: int) -> ParameterPlan:
    """Factor target_length = n' 2^m into primes (ascending) with default widths."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if target_length < 2 or target_length % 2**m:
        raise ValueError(f"length {target_length} is not of the form n' * 2^{m}")
    rest = target_length // 2**m
    primes = tuple(p for p, e in sorted(factorint(rest).items()) for _ in range(e)) if rest > 1 else ()
    return ParameterPlan(target_length, m, primes, tuple(default_width(p) for p in primes))
