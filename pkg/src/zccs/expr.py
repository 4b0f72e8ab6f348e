"""Text syntax for GBFs and path-form h specifications.

GBF expressions are sums of products of ``y<k>`` variables and nonnegative
integer literals, e.g. ``"y1*y2 + y0"`` or ``"3*y0*y1 + 2"``.
"""
from __future__ import annotations

import re

from .gbf import GBF

__all__ = ["ExprError", "parse_gbf_expr", "format_gbf", "parse_h_path"]

_TOKEN = re.compile(r"\s*(?:(?P<var>y(?P<idx>\d+))|(?P<int>\d+)|(?P<op>[+*])|(?P<bad>\S))")


class ExprError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


def _tokens(text: str):
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            return
        if m.group("bad") is not None:
            raise ExprError(f"unexpected character {m.group('bad')!r}", m.start("bad"))
        kind = "var" if m.group("var") else "int" if m.group("int") else "op"
        yield kind, m.group(kind if kind != "var" else "idx"), m.start(kind)
        pos = m.end()


def parse_gbf_expr(text: str, q: int, m: int) -> GBF:
    """Parse ``text`` into a GBF over y0..y{m-1}, applying y*y = y."""
    terms: dict[frozenset[int], int] = {}
    coeff, vars_, expect_operand, last_pos = 1, set(), True, 0
    for kind, val, pos in _tokens(text):
        last_pos = pos
        if expect_operand:
            if kind == "int":
                coeff *= int(val)
            elif kind == "var":
                k = int(val)
                if k >= m:
                    raise ExprError(f"unknown variable y{k} (m={m})", pos)
                vars_.add(k)
            else:
                raise ExprError(f"expected a variable or integer, got {val!r}", pos)
            expect_operand = False
        else:
            if kind != "op":
                raise ExprError(f"expected '+' or '*', got {val!r}", pos)
            if val == "+":
                key = frozenset(vars_)
                terms[key] = terms.get(key, 0) + coeff
                coeff, vars_ = 1, set()
            expect_operand = True
    if expect_operand:
        raise ExprError("unexpected end of expression", len(text) if text.strip() else last_pos)
    key = frozenset(vars_)
    terms[key] = terms.get(key, 0) + coeff
    for mono, c in terms.items():
        if len(mono) > 2 and c % q:
            raise ExprError(f"monomial of degree {len(mono)} not allowed (second-order only)")
    return GBF.from_monomials(q, m, {k: c for k, c in terms.items() if c % q})


def format_gbf(g: GBF) -> str:
    """Canonical text: quadratic terms, then linear, then constant."""

    def term(c: int, vs) -> str:
        names = [f"y{v}" for v in vs]
        return "*".join(names if c == 1 else [str(c), *names])

    parts = [term(c, p) for p, c in g.quad.items()]
    parts += [term(c, (i,)) for i, c in g.lin.items()]
    if g.cst:
        parts.append(str(g.cst))
    return "+".join(parts) if parts else "0"


def parse_h_path(text: str) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """Parse ``"perm=0,1;u=0,0;c=0"`` into (perm, linear coefficients, constant)."""
    fields: dict[str, str] = {}
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        key, sep, val = chunk.partition("=")
        if not sep:
            raise ExprError(f"malformed h-path field {chunk!r}")
        fields[key.strip()] = val.strip()
    unknown = set(fields) - {"perm", "u", "c"}
    if unknown or "perm" not in fields:
        raise ExprError(f"h-path needs perm=...; unknown fields {sorted(unknown)}")

    def ints(s: str) -> tuple[int, ...]:
        try:
            return tuple(int(x) for x in s.split(",") if x.strip())
        except ValueError as exc:
            raise ExprError(f"bad integer list {s!r}") from exc

    perm = ints(fields["perm"])
    lin = ints(fields.get("u", "")) or (0,) * len(perm)
    const = int(fields.get("c", "0"))
    return perm, lin, const
