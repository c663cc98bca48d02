"""Matrix text and JSON formats.

Text: first line ``n``, then n lines of n whitespace-separated numbers.
Rational matrices may use ``p/q`` tokens, and any such token selects the
rational backend.  Lines starting with ``#`` are ignored.

JSON: ``{"n": int, "rows": [[...], ...], "backend": "float" | "rational"}``.
Rational entries are written as ``"p/q"`` strings; plain numbers are read
as well.
"""
from __future__ import annotations

import hashlib
import json
import sys
from fractions import Fraction

from .errors import ParseError
from .linalg import FLOAT, RATIONAL, Matrix, to_fraction


def _format_entry(x, backend: str) -> str:
    if backend == RATIONAL:
        return str(x)
    return repr(float(x))


def to_text(m: Matrix) -> str:
    lines = [str(m.n)]
    for row in m.array.tolist():
        lines.append(" ".join(_format_entry(x, m.backend) for x in row))
    return "\n".join(lines) + "\n"


def to_json_obj(m: Matrix) -> dict:
    if m.is_rational:
        rows = [[str(x) for x in row] for row in m.array.tolist()]
    else:
        rows = [[float(x) for x in row] for row in m.array.tolist()]
    return {"n": m.n, "rows": rows, "backend": m.backend}


def from_json_obj(obj: dict, backend: str | None = None) -> Matrix:
    try:
        n = int(obj["n"])
        rows = obj["rows"]
        declared = obj.get("backend", FLOAT)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix JSON: {exc}") from None
    if declared not in (FLOAT, RATIONAL):
        raise ParseError(f"unknown backend {declared!r}")
    backend = backend or declared
    if any(isinstance(x, str) and "/" in x for row in rows for x in row):
        backend = RATIONAL
    return _build(rows, n, backend)


def _build(rows, n: int, backend: str) -> Matrix:
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(f"expected {n} rows of {n} entries")
    try:
        if backend == RATIONAL:
            vals = [[to_fraction(x) if not isinstance(x, float) else to_fraction(repr(x))
                     for x in row] for row in rows]
        else:
            vals = [[float(Fraction(x)) if isinstance(x, str) else float(x) for x in row]
                    for row in rows]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad matrix entry: {exc}") from None
    return Matrix(vals, backend)


def parse_text(text: str, backend: str | None = None) -> Matrix:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty matrix input")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"first line must be the dimension, got {lines[0]!r}") from None
    if n < 0:
        raise ParseError("dimension must be non-negative")
    rows = [ln.split() for ln in lines[1:]]
    if backend is None:
        backend = RATIONAL if any("/" in tok for row in rows for tok in row) else FLOAT
    return _build(rows, n, backend)


def parse(text: str, backend: str | None = None) -> Matrix:
    """Parse either format, chosen by the first non-blank character."""
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from None
        return from_json_obj(obj, backend)
    return parse_text(text, backend)


def load(path: str, backend: str | None = None) -> Matrix:
    if path == "-":
        return parse(sys.stdin.read(), backend)
    try:
        with open(path, encoding="utf-8") as fh:
            return parse(fh.read(), backend)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def digest(m: Matrix) -> str:
    """SHA-256 of the canonical text form (backend included)."""
    payload = f"{m.backend}\n{to_text(m)}".encode()
    return hashlib.sha256(payload).hexdigest()
