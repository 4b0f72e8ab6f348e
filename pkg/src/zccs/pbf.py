"""Pseudo-Boolean functions for the truncated-sequence construction.

Variables 0..m-1 carry the GBF ``g``; after them come ``l`` blocks of
``s_i`` bits each, one block per prime ``p_i``.  Coefficients are exact
``Fraction`` values and nothing here touches floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from sympy import factorint, isprime

from .gbf import GBF, check_path_reduction, reverse_gbf

__all__ = [
    "PBF",
    "HFunction",
    "HCondition",
    "ConstructionParams",
    "HConditionWarning",
    "default_width",
    "build_m_lambda",
    "build_n_lambda",
    "build_omega_member",
    "build_lambda_member",
    "eval_pbf",
    "eval_pbf_phase",
    "phase_table",
    "check_h_condition",
    "bits_of",
]


class HConditionWarning(UserWarning):
    """h takes values outside {c, c + q/2}; the ZCCS claim is not guaranteed."""


def bits_of(x: int, width: int) -> tuple[int, ...]:
    """Binary digits of x, least significant first."""
    return tuple((x >> t) & 1 for t in range(width))


def default_width(p: int) -> int:
    """Smallest s with p <= 2**s."""
    return max(1, math.ceil(math.log2(p)))


@dataclass(frozen=True, eq=False)
class PBF:
    """Multilinear polynomial with exact rational coefficients."""

    nvars: int
    terms: Mapping[frozenset[int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[frozenset[int], Fraction] = {}
        for mono, c in self.terms.items():
            mono = frozenset(mono)
            if any(not 0 <= v < self.nvars for v in mono):
                raise ValueError(f"monomial {sorted(mono)} out of range for {self.nvars} variables")
            clean[mono] = clean.get(mono, Fraction(0)) + Fraction(c)
        ordered = sorted((k for k in clean if clean[k]), key=lambda k: (len(k), sorted(k)))
        object.__setattr__(self, "terms", {k: clean[k] for k in ordered})

    @classmethod
    def from_gbf(cls, g: GBF, nvars: int | None = None) -> PBF:
        return cls(g.m if nvars is None else nvars, {k: Fraction(c) for k, c in g.monomials().items()})

    def __add__(self, other: PBF) -> PBF:
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return PBF(self.nvars, terms)

    def reduce_mod(self, q: int) -> PBF:
        return PBF(self.nvars, {k: c % q for k, c in self.terms.items()})

    def coeff(self, *variables: int) -> Fraction:
        return self.terms.get(frozenset(variables), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, PBF):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(self.terms.items())))

    def __repr__(self):
        parts = []
        for mono, c in self.terms.items():
            names = "*".join(f"y{v}" for v in sorted(mono))
            parts.append(str(c) if not names else names if c == 1 else f"({c})*{names}")
        return f"PBF({self.nvars}, {' + '.join(parts) or '0'})"


@dataclass(frozen=True)
class HFunction:
    """h: {0,1}^(n+1) -> Z_q as a table indexed by v' = (v_0..v_n), v_0 least significant."""

    q: int
    table: tuple[int, ...]

    def __post_init__(self):
        size = len(self.table)
        if size < 2 or size & (size - 1):
            raise ValueError(f"h table length must be a power of two >= 2, got {size}")
        object.__setattr__(self, "table", tuple(int(v) % self.q for v in self.table))

    @property
    def n_inputs(self) -> int:
        return len(self.table).bit_length() - 1

    @classmethod
    def zero(cls, q: int, n_inputs: int) -> HFunction:
        return cls(q, (0,) * 2**n_inputs)

    @classmethod
    def from_path(cls, q: int, perm: Sequence[int], lin: Sequence[int] | None = None, const: int = 0) -> HFunction:
        """h(v') = (q/2) sum v_perm[a] v_perm[a+1] + sum lin[a] v_a + const."""
        k = len(perm)
        if sorted(perm) != list(range(k)):
            raise ValueError(f"perm must be a permutation of 0..{k - 1}, got {list(perm)}")
        lin = tuple(lin) if lin is not None else (0,) * k
        if len(lin) != k:
            raise ValueError(f"expected {k} linear coefficients, got {len(lin)}")
        table = []
        for idx in range(2**k):
            v = bits_of(idx, k)
            val = const + sum(u * b for u, b in zip(lin, v))
            val += (q // 2) * sum(v[perm[a]] * v[perm[a + 1]] for a in range(k - 1))
            table.append(val)
        return cls(q, tuple(table))

    def __call__(self, v: Sequence[int], v_n: int) -> int:
        return self.table[sum(b << t for t, b in enumerate(v)) + (v_n << len(v))]


@dataclass(frozen=True)
class HCondition:
    ok: bool
    c: int | None = None


def check_h_condition(h: HFunction, q: int | None = None) -> HCondition:
    """Is every value of h in {c, c + q/2} for one c?  Reports the smallest such c."""
    q = h.q if q is None else q
    values = {v % q for v in h.table}
    for c in range(q):
        if values <= {c, (c + q // 2) % q}:
            return HCondition(True, c)
    return HCondition(False)


@dataclass(frozen=True)
class ConstructionParams:
    """Everything needed to build one code set.

    ``strict`` enforces p_i < 2**s_i; by default p_i <= 2**s_i is enough.
    ``literal_ybar`` leaves the last entry of the complemented deletion
    vector uncomplemented, reproducing a misprinted variant for comparison.
    """

    q: int
    g: GBF
    n: int
    delete: tuple[int, ...]
    gamma: int
    primes: tuple[int, ...] = ()
    widths: tuple[int, ...] | None = None
    h: HFunction | None = None
    strict: bool = False
    literal_ybar: bool = False

    def __post_init__(self):
        object.__setattr__(self, "delete", tuple(self.delete))
        object.__setattr__(self, "primes", tuple(int(p) for p in self.primes))
        if self.widths is None:
            object.__setattr__(self, "widths", tuple(default_width(p) for p in self.primes))
        object.__setattr__(self, "widths", tuple(int(s) for s in self.widths))
        if self.h is None:
            object.__setattr__(self, "h", HFunction.zero(self.q, self.n + 1))
        self.validate()

    def validate(self) -> None:
        if self.g.q != self.q:
            raise ValueError(f"g is defined mod {self.g.q}, params use q={self.q}")
        if self.n < 0 or len(self.delete) != self.n:
            raise ValueError(f"deletion set {self.delete} must have exactly n={self.n} vertices")
        if len(set(self.delete)) != self.n:
            raise ValueError("deletion set has repeated vertices")
        if len(self.widths) != len(self.primes):
            raise ValueError("need one width per prime")
        for p, s in zip(self.primes, self.widths):
            if p < 2 or not isprime(p):
                hint = ""
                if p >= 2:
                    fac = factorint(p)
                    hint = "; factor it as " + "*".join(
                        str(b) for b, e in sorted(fac.items()) for _ in range(e))
                raise ValueError(f"{p} is not prime{hint}")
            if s < 1 or p > 2**s or (self.strict and p >= 2**s):
                rel = "<" if self.strict else "<="
                raise ValueError(f"prime {p} needs p {rel} 2**s, got s={s}")
        if self.h.q != self.q:
            raise ValueError("h modulus differs from q")
        if self.h.n_inputs != self.n + 1:
            raise ValueError(f"h must take n+1={self.n + 1} inputs, has {self.h.n_inputs}")
        report = check_path_reduction(self.g, self.delete, self.gamma)
        if not report.ok:
            raise ValueError(f"g fails the path-reduction requirement: {report.failure_reason.value}")

    @property
    def m(self) -> int:
        return self.g.m

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.primes)

    @property
    def total_vars(self) -> int:
        return self.m + sum(self.widths)

    @property
    def sigma(self) -> int:
        return math.lcm(self.q, *self.primes)

    @property
    def K(self) -> int:
        return 2 ** (self.n + 1)

    @property
    def N(self) -> int:
        return 2**self.m * math.prod(self.primes)

    @property
    def Z(self) -> int:
        return 2**self.m

    @property
    def M_total(self) -> int:
        return 2 ** (self.n + 1) * math.prod(self.primes)

    def lambdas(self):
        """All lambda tuples in mixed radix, lambda_1 varying fastest."""
        total = math.prod(self.primes)
        for idx in range(total):
            lam = []
            for p in self.primes:
                idx, d = divmod(idx, p)
                lam.append(d)
            yield tuple(lam)


def _check_lambda(params: ConstructionParams, lam: Sequence[int]) -> None:
    if len(lam) != params.l or any(not 0 <= x < p for x, p in zip(lam, params.primes)):
        raise ValueError(f"lambda {tuple(lam)} out of range for primes {params.primes}")


def _lambda_tail(params: ConstructionParams, lam: Sequence[int]) -> dict[frozenset[int], Fraction]:
    terms = {}
    offset = params.m
    for x, p, s in zip(lam, params.primes, params.widths):
        for k in range(s):
            if x:
                terms[frozenset((offset + k,))] = Fraction(x * params.q, p) * 2**k
        offset += s
    return terms


def build_m_lambda(params: ConstructionParams, lam: Sequence[int]) -> PBF:
    _check_lambda(params, lam)
    base = PBF.from_gbf(params.g, params.total_vars)
    return base + PBF(params.total_vars, _lambda_tail(params, lam))


def build_n_lambda(params: ConstructionParams, lam: Sequence[int]) -> PBF:
    _check_lambda(params, lam)
    base = PBF.from_gbf(reverse_gbf(params.g), params.total_vars)
    return base + PBF(params.total_vars, _lambda_tail(params, lam))


def _check_member_args(params, r, v, v_n):
    if not 0 <= r < 2**params.n:
        raise ValueError(f"r={r} outside [0, {2**params.n})")
    if len(v) != params.n or any(b not in (0, 1) for b in v) or v_n not in (0, 1):
        raise ValueError("v must be a binary n-tuple and v_n a bit")


def build_omega_member(params: ConstructionParams, r: int, lam: Sequence[int],
                       v: Sequence[int], v_n: int) -> PBF:
    """M^lam + h(v') + (q/2)((v + r).y_beta + v_n y_gamma), reduced mod q."""
    _check_member_args(params, r, v, v_n)
    half = params.q // 2
    terms = {frozenset(): Fraction(params.h(v, v_n))}
    for t, (vt, rt) in enumerate(zip(v, bits_of(r, params.n))):
        key = frozenset((params.delete[t],))
        terms[key] = terms.get(key, 0) + half * (vt + rt)
    key = frozenset((params.gamma,))
    terms[key] = terms.get(key, 0) + half * v_n
    return (build_m_lambda(params, lam) + PBF(params.total_vars, terms)).reduce_mod(params.q)


def build_lambda_member(params: ConstructionParams, r: int, lam: Sequence[int],
                        v: Sequence[int], v_n: int) -> PBF:
    """N^lam + h(v') + (q/2)((v + r).(1 - y_beta) + (1 - v_n) y_gamma), reduced mod q."""
    _check_member_args(params, r, v, v_n)
    half = params.q // 2
    terms = {frozenset(): Fraction(params.h(v, v_n))}
    for t, (vt, rt) in enumerate(zip(v, bits_of(r, params.n))):
        w = half * (vt + rt)
        key = frozenset((params.delete[t],))
        if params.literal_ybar and t == params.n - 1:
            terms[key] = terms.get(key, 0) + w
        else:
            terms[frozenset()] += w
            terms[key] = terms.get(key, 0) - w
    key = frozenset((params.gamma,))
    terms[key] = terms.get(key, 0) + half * (1 - v_n)
    return (build_n_lambda(params, lam) + PBF(params.total_vars, terms)).reduce_mod(params.q)


def eval_pbf(p: PBF, point: Sequence[int]) -> Fraction:
    if len(point) != p.nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {p.nvars}")
    ones = {i for i, b in enumerate(point) if b}
    return sum((c for mono, c in p.terms.items() if mono <= ones), Fraction(0))


def eval_pbf_phase(p: PBF, point: Sequence[int], q: int, sigma: int) -> int:
    """Exponent e in Z_sigma with exp(2j pi e / sigma) = exp(2j pi p(point) / q)."""
    scaled = eval_pbf(p, point) * sigma / q
    if scaled.denominator != 1:
        raise ValueError(f"phase {scaled} is not an integer multiple of 2pi/{sigma}; sigma is wrong")
    return int(scaled) % sigma


def phase_table(p: PBF, q: int, sigma: int) -> np.ndarray:
    """eval_pbf_phase at every point, index bit t = y_t (LSB first)."""
    size = 2**p.nvars
    idx = np.arange(size, dtype=np.int64)
    scaled = {mono: c * sigma / q for mono, c in p.terms.items()}
    denom = math.lcm(1, *(c.denominator for c in scaled.values()))
    acc = np.zeros(size, dtype=np.int64)
    for mono, c in scaled.items():
        mask = sum(1 << v for v in mono)
        hit = (idx & mask) == mask
        acc += int(c * denom) * hit
    if np.any(acc % denom):
        raise ValueError(f"non-integral phase for sigma={sigma}; sigma is wrong")
    return (acc // denom) % sigma
