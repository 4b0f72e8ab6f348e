"""Exact arithmetic on sums of sigma-th roots of unity.

A sum ``sum_e c[e] * zeta**e`` with ``zeta = exp(2j*pi/sigma)`` is zero exactly
when the integer polynomial ``sum_e c[e] x**e`` is divisible by the
sigma-th cyclotomic polynomial.  Everything here is integer-only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

__all__ = [
    "IntPolynomial",
    "CycloSum",
    "cyclotomic_poly",
    "add_root",
    "is_zero_exact",
    "to_complex",
    "reduction_matrix",
    "rows_are_zero",
    "reduce_rows",
]

# int64 products summed in reduce_rows must stay below this.
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def divmod_monic(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Quotient and remainder by a monic divisor (exact over the integers)."""
        if divisor.is_zero() or divisor.coeffs[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        d = divisor.degree
        quot = [0] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if c:
                quot[k - d] = c
                for i, b in enumerate(divisor.coeffs):
                    rem[k - d + i] -= c * b
        return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem[:d]))

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"


@lru_cache(maxsize=None)
def cyclotomic_poly(d: int) -> IntPolynomial:
    """d-th cyclotomic polynomial, by dividing x**d - 1 by the proper-divisor factors."""
    if d < 1:
        raise ValueError(f"cyclotomic index must be >= 1, got {d}")
    poly = IntPolynomial((-1,) + (0,) * (d - 1) + (1,))
    for e in range(1, d):
        if d % e == 0:
            poly, rem = poly.divmod_monic(cyclotomic_poly(e))
            assert rem.is_zero()
    return poly


@dataclass
class CycloSum:
    """Integer combination of sigma-th roots of unity."""

    sigma: int
    coeffs: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.sigma < 1:
            raise ValueError("sigma must be positive")
        if self.coeffs is None:
            self.coeffs = np.zeros(self.sigma, dtype=np.int64)
        else:
            self.coeffs = np.asarray(self.coeffs)
            if self.coeffs.shape != (self.sigma,):
                raise ValueError(f"expected {self.sigma} coefficients, got shape {self.coeffs.shape}")

    @classmethod
    def from_exponents(cls, sigma: int, exponents, weights=None) -> CycloSum:
        e = np.asarray(exponents, dtype=np.int64).ravel() % sigma
        w = None if weights is None else np.asarray(weights, dtype=np.int64).ravel()
        return cls(sigma, np.bincount(e, weights=w, minlength=sigma).astype(np.int64))

    def conjugate(self) -> CycloSum:
        return CycloSum(self.sigma, np.roll(self.coeffs[::-1], 1))

    def __add__(self, other: CycloSum) -> CycloSum:
        if other.sigma != self.sigma:
            raise ValueError("sigma mismatch")
        return CycloSum(self.sigma, self.coeffs + other.coeffs)

    def __sub__(self, other: CycloSum) -> CycloSum:
        if other.sigma != self.sigma:
            raise ValueError("sigma mismatch")
        return CycloSum(self.sigma, self.coeffs - other.coeffs)

    def __eq__(self, other) -> bool:
        # equal as algebraic numbers, not as coefficient vectors
        if not isinstance(other, CycloSum) or other.sigma != self.sigma:
            return NotImplemented
        return is_zero_exact(self - other)

    __hash__ = None

    def integer_value(self) -> int | None:
        """The sum as an exact integer, or None if it is not rational."""
        rem = _remainder(self)
        if rem.is_zero():
            return 0
        if rem.degree == 0:
            return rem.coeffs[0]
        return None

    def __complex__(self) -> complex:
        return to_complex(self)


def add_root(s: CycloSum, exponent: int, weight: int = 1) -> CycloSum:
    """Return ``s + weight * zeta**exponent``."""
    if not 0 <= exponent < s.sigma:
        raise ValueError(f"exponent {exponent} outside [0, {s.sigma})")
    coeffs = s.coeffs.copy()
    coeffs[exponent] += weight
    return CycloSum(s.sigma, coeffs)


def _remainder(s: CycloSum) -> IntPolynomial:
    poly = IntPolynomial(tuple(int(c) for c in s.coeffs))
    return poly.divmod_monic(cyclotomic_poly(s.sigma))[1]


def is_zero_exact(s: CycloSum) -> bool:
    return _remainder(s).is_zero()


def to_complex(s: CycloSum) -> complex:
    e = np.arange(s.sigma)
    roots = np.exp(2j * np.pi * e / s.sigma)
    return complex(np.dot(s.coeffs.astype(np.float64), roots))


@lru_cache(maxsize=None)
def reduction_matrix(sigma: int) -> np.ndarray:
    """Row e holds the coefficients of x**e mod Phi_sigma, shape (sigma, deg Phi_sigma)."""
    phi = cyclotomic_poly(sigma)
    deg = phi.degree
    rows = np.zeros((sigma, deg), dtype=object)
    cur = [0] * deg
    if deg:
        cur[0] = 1
    for e in range(sigma):
        rows[e] = cur
        # multiply by x, then fold the x**deg term back with the monic relation
        top = cur[-1] if deg else 0
        cur = [0] + cur[:-1]
        for i in range(deg):
            cur[i] -= top * phi.coeffs[i]
    rows.setflags(write=False)
    return rows


def reduce_rows(counts: np.ndarray, sigma: int) -> np.ndarray:
    """Reduce many coefficient vectors (shape (..., sigma)) modulo Phi_sigma at once."""
    red = reduction_matrix(sigma)
    counts = np.asarray(counts)
    bound = int(np.abs(counts).max(initial=0)) * max(
        (abs(int(v)) for v in red.ravel()), default=0
    ) * sigma
    if bound < _INT64_SAFE:
        return counts.astype(np.int64) @ red.astype(np.int64)
    return counts.astype(object) @ red


def rows_are_zero(counts: np.ndarray, sigma: int) -> np.ndarray:
    """Boolean mask: which coefficient vectors represent an exactly-zero sum."""
    rem = reduce_rows(counts, sigma)
    return ~np.any(rem != 0, axis=-1)
