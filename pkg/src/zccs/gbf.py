"""Second-order generalized Boolean functions over Z_q and their graphs."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "GBF",
    "GbfGraph",
    "PathFailure",
    "PathReport",
    "eval_gbf",
    "truth_table",
    "reverse_gbf",
    "restrict_gbf",
    "quadratic_graph",
    "check_path_reduction",
    "find_deletion_set",
]


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True, eq=False)
class GBF:
    """g(y) = sum quad[i,j] y_i y_j + sum lin[i] y_i + cst  (mod q).

    Coefficients are reduced into [0, q) and zero terms are dropped, so two
    GBFs compare equal iff they are the same function.
    """

    q: int
    m: int
    quad: Mapping[tuple[int, int], int] = field(default_factory=dict)
    lin: Mapping[int, int] = field(default_factory=dict)
    cst: int = 0

    def __post_init__(self):
        q, m = self.q, self.m
        if q < 2 or q % 2:
            raise ValueError(f"q must be an even integer >= 2, got {q}")
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m}")
        quad: dict[tuple[int, int], int] = {}
        for (i, j), c in self.quad.items():
            if i == j:
                raise ValueError(f"self-pair ({i},{j}) in quadratic terms; use the linear term")
            self._check_index(i)
            self._check_index(j)
            key = _pair(i, j)
            quad[key] = (quad.get(key, 0) + int(c)) % q
        lin: dict[int, int] = {}
        for i, c in self.lin.items():
            self._check_index(i)
            lin[i] = (lin.get(i, 0) + int(c)) % q
        object.__setattr__(self, "quad", {k: quad[k] for k in sorted(quad) if quad[k]})
        object.__setattr__(self, "lin", {k: lin[k] for k in sorted(lin) if lin[k]})
        object.__setattr__(self, "cst", int(self.cst) % q)

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.m:
            raise ValueError(f"variable index {i} outside [0, {self.m})")

    @classmethod
    def from_monomials(cls, q: int, m: int, terms: Mapping[Iterable[int], int]) -> GBF:
        """Build from {variable-set: coefficient}; rejects monomials of degree > 2."""
        quad, lin, cst = {}, {}, 0
        for mono, c in terms.items():
            vs = sorted(set(mono))
            if len(vs) > 2:
                raise ValueError(f"monomial {vs} has degree {len(vs)} > 2")
            if len(vs) == 2:
                quad[tuple(vs)] = quad.get(tuple(vs), 0) + c
            elif len(vs) == 1:
                lin[vs[0]] = lin.get(vs[0], 0) + c
            else:
                cst += c
        return cls(q, m, quad, lin, cst)

    def monomials(self) -> dict[frozenset[int], int]:
        out = {frozenset(p): c for p, c in self.quad.items()}
        out.update({frozenset((i,)): c for i, c in self.lin.items()})
        if self.cst:
            out[frozenset()] = self.cst
        return out

    def _key(self):
        return (self.q, self.m, tuple(self.quad.items()), tuple(self.lin.items()), self.cst)

    def __eq__(self, other):
        if not isinstance(other, GBF):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        from .expr import format_gbf

        return f"GBF(q={self.q}, m={self.m}, {format_gbf(self)!r})"


def eval_gbf(g: GBF, point: Sequence[int]) -> int:
    if len(point) != g.m:
        raise ValueError(f"point has {len(point)} coordinates, expected {g.m}")
    y = [int(b) & 1 for b in point]
    total = g.cst
    total += sum(c * y[i] for i, c in g.lin.items())
    total += sum(c * y[i] * y[j] for (i, j), c in g.quad.items())
    return total % g.q


def truth_table(g: GBF) -> np.ndarray:
    """Values at all 2**m points, index bit t = y_t (LSB first)."""
    idx = np.arange(2**g.m)
    bits = (idx[:, None] >> np.arange(g.m)) & 1
    vals = np.full(idx.shape, g.cst, dtype=np.int64)
    for i, c in g.lin.items():
        vals += c * bits[:, i]
    for (i, j), c in g.quad.items():
        vals += c * bits[:, i] * bits[:, j]
    return vals % g.q


def reverse_gbf(g: GBF) -> GBF:
    """The reversal g(1 - y_0, ..., 1 - y_{m-1}), expanded back to monomial form."""
    quad: dict[tuple[int, int], int] = {}
    lin: dict[int, int] = {}
    cst = g.cst
    # c(1-a)(1-b) = c - ca - cb + cab
    for (i, j), c in g.quad.items():
        quad[(i, j)] = c
        lin[i] = lin.get(i, 0) - c
        lin[j] = lin.get(j, 0) - c
        cst += c
    for i, c in g.lin.items():
        lin[i] = lin.get(i, 0) - c
        cst += c
    return GBF(g.q, g.m, quad, lin, cst)


def restrict_gbf(g: GBF, var: int, value: int) -> tuple[GBF, tuple[int, ...]]:
    """Fix y_var = value and drop it.

    Returns the restricted function on m - 1 variables together with ``kept``,
    where ``kept[k]`` is the original index of new variable k.
    """
    if not 0 <= var < g.m:
        raise ValueError(f"variable index {var} outside [0, {g.m})")
    if value not in (0, 1):
        raise ValueError("value must be 0 or 1")
    if g.m == 1:
        raise ValueError("cannot restrict the only variable of a GBF")
    kept = tuple(i for i in range(g.m) if i != var)
    new = {old: k for k, old in enumerate(kept)}
    quad: dict[tuple[int, int], int] = {}
    lin: dict[int, int] = {}
    cst = g.cst + (g.lin.get(var, 0) if value else 0)
    for i, c in g.lin.items():
        if i != var:
            lin[new[i]] = lin.get(new[i], 0) + c
    for (i, j), c in g.quad.items():
        if var in (i, j):
            if value:
                other = j if i == var else i
                lin[new[other]] = lin.get(new[other], 0) + c
        else:
            quad[(new[i], new[j])] = c
    return GBF(g.q, g.m - 1, quad, lin, cst), kept


@dataclass(frozen=True)
class GbfGraph:
    m: int
    edges: dict[tuple[int, int], int]

    @property
    def vertices(self) -> range:
        return range(self.m)

    def neighbours(self, v: int) -> list[int]:
        return sorted(j if i == v else i for (i, j) in self.edges if v in (i, j))


def quadratic_graph(g: GBF) -> GbfGraph:
    return GbfGraph(g.m, dict(g.quad))


class PathFailure(str, enum.Enum):
    NOT_A_PATH = "not-a-path"
    WRONG_EDGE_WEIGHT = "wrong-edge-weight"
    DISCONNECTED = "disconnected"
    EMPTY = "empty"
    GAMMA_NOT_END = "gamma-not-end"


@dataclass(frozen=True)
class PathReport:
    ok: bool
    remaining_path: tuple[int, ...] = ()
    end_vertices: frozenset[int] = frozenset()
    failure_reason: PathFailure | None = None


def check_path_reduction(g: GBF, delete: Iterable[int], gamma: int | None = None) -> PathReport:
    """Does deleting ``delete`` from G(g) leave a path whose edges all weigh q/2?"""
    delete = set(delete)
    if len(delete) > g.m - 1:
        raise ValueError(f"deletion set of size {len(delete)} too large for m={g.m}")
    for v in delete:
        if not 0 <= v < g.m:
            raise ValueError(f"vertex {v} outside [0, {g.m})")
    if gamma is not None and gamma in delete:
        raise ValueError(f"gamma={gamma} lies inside the deletion set")

    remaining = [v for v in range(g.m) if v not in delete]
    if not remaining:
        return PathReport(False, failure_reason=PathFailure.EMPTY)
    edges = {e: c for e, c in g.quad.items() if e[0] not in delete and e[1] not in delete}
    if any(c != g.q // 2 for c in edges.values()):
        return PathReport(False, failure_reason=PathFailure.WRONG_EDGE_WEIGHT)

    adj: dict[int, list[int]] = {v: [] for v in remaining}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    if any(len(nb) > 2 for nb in adj.values()):
        return PathReport(False, failure_reason=PathFailure.NOT_A_PATH)
    if len(edges) >= len(remaining):
        return PathReport(False, failure_reason=PathFailure.NOT_A_PATH)  # contains a cycle
    if len(edges) < len(remaining) - 1:
        return PathReport(False, failure_reason=PathFailure.DISCONNECTED)

    # now a tree with max degree 2, i.e. a simple path
    ends = sorted(v for v, nb in adj.items() if len(nb) <= 1)
    walk = [ends[0]]
    prev = None
    while len(walk) < len(remaining):
        nxt = [u for u in adj[walk[-1]] if u != prev]
        prev = walk[-1]
        walk.append(nxt[0])
    end_set = frozenset(ends)
    if gamma is not None and gamma not in end_set:
        return PathReport(False, tuple(walk), end_set, PathFailure.GAMMA_NOT_END)
    return PathReport(True, tuple(walk), end_set)


def find_deletion_set(g: GBF, n: int) -> tuple[int, ...] | None:
    """Lexicographically smallest size-n deletion set leaving a q/2-weighted path."""
    if n > g.m - 1:
        raise ValueError(f"n={n} exceeds m-1={g.m - 1}")
    for combo in itertools.combinations(range(g.m), n):
        if check_path_reduction(g, combo).ok:
            return combo
    return None
