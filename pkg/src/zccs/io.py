"""Code-set JSON documents and CSV export."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .seqgen import CodeLabel, CodeMatrix, CodeSet, CodeSetParams

__all__ = ["FORMAT_VERSION", "DocumentError", "codeset_to_dict", "codeset_from_dict",
           "write_codeset", "read_codeset", "dumps_codeset", "export_csv"]

FORMAT_VERSION = 1


class DocumentError(ValueError):
    pass


def codeset_to_dict(S: CodeSet) -> dict:
    p = S.params
    prov = dict(p.provenance)
    return {
        "format_version": FORMAT_VERSION,
        "sigma": p.sigma,
        "q": prov.get("q"),
        "construction": prov,
        "claimed": {"M": p.M, "K": p.K, "N": p.N, "Z": p.Z},
        "labels": [[c.label.family, c.label.r, list(c.label.lam)] if c.label else None
                   for c in S.codes],
        "codes": S.exponents.tolist(),
    }


def dumps_codeset(S: CodeSet) -> str:
    # fixed key order, compact separators: byte-stable output
    return json.dumps(codeset_to_dict(S), separators=(",", ":")) + "\n"


def codeset_from_dict(doc: dict) -> CodeSet:
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {version!r} (expected {FORMAT_VERSION})")
    try:
        sigma = int(doc["sigma"])
        claimed = doc["claimed"]
        M, K, N, Z = (int(claimed[k]) for k in "MKNZ")
        raw = doc["codes"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"missing or malformed field: {exc}") from exc
    if len(raw) != M or any(len(code) != K for code in raw) or any(
            len(row) != N for code in raw for row in code):
        raise DocumentError(f"codes array does not have the claimed shape ({M}, {K}, {N})")
    E = np.array(raw, dtype=np.int64)
    if E.size and (E.min() < 0 or E.max() >= sigma):
        raise DocumentError(f"exponent outside [0, {sigma})")
    labels = doc.get("labels") or [None] * M
    if len(labels) != M:
        raise DocumentError("labels list does not match the number of codes")
    codes = tuple(
        CodeMatrix(sigma, E[i], CodeLabel(lab[0], int(lab[1]), tuple(lab[2])) if lab else None)
        for i, lab in enumerate(labels))
    prov = dict(doc.get("construction") or {})
    return CodeSet(codes, CodeSetParams(M, K, N, Z, sigma, prov))


def write_codeset(S: CodeSet, path) -> None:
    Path(path).write_text(dumps_codeset(S), encoding="utf-8")


def read_codeset(path) -> CodeSet:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("top-level JSON value must be an object")
    return codeset_from_dict(doc)


def _fmt(v: float) -> str:
    if abs(v) < 1e-15:
        v = 0.0
    s = f"{v:.15g}"
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def export_csv(S: CodeSet, path) -> None:
    """One row per sequence: code, row, then re,im pairs at 15 significant digits."""
    E = S.exponents
    angle = 2 * np.pi * E / S.sigma
    re, im = np.cos(angle), np.sin(angle)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["code", "row"] + [f"{part}{k}" for k in range(E.shape[2]) for part in ("re", "im")])
        for d in range(E.shape[0]):
            for r in range(E.shape[1]):
                vals = []
                for a, b in zip(re[d, r], im[d, r]):
                    vals += [_fmt(a), _fmt(b)]
                w.writerow([d, r] + vals)
