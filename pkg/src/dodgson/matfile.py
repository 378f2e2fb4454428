"""Plain-text matrix files.

::

    # optional comments
    @domain rationals
    3 3
    1 1/2 0
    ...

The size line is ``n m`` or just ``n`` for a square matrix.  Entries use the
scalar grammar (``-7``, ``3/4``, ``2 mod 5``).  Without an ``@domain``
directive the domain is inferred from the entries.
"""

from __future__ import annotations

import re
from pathlib import Path

from .matrix import Matrix
from .scalar import INTEGERS, RATIONALS, RingDomain, parse_domain, prime_field

__all__ = ["MatrixFormatError", "parse_matrix", "read_matrix", "format_matrix"]

_TOKEN = re.compile(r"[+-]?\d+(?:/\d+)?(?:\s+mod\s+\d+)?")


class MatrixFormatError(ValueError):
    """The text is not a well-formed matrix file."""


def _tokens(line: str, lineno: int) -> list[str]:
    pos, out = 0, []
    line = line.strip()
    while pos < len(line):
        if line[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(line, pos)
        if not m or (m.end() < len(line) and not line[m.end()].isspace()):
            raise MatrixFormatError(f"line {lineno}: cannot parse entry near {line[pos:pos + 12]!r}")
        out.append(m.group())
        pos = m.end()
    return out


def parse_matrix(text: str, domain: RingDomain | None = None) -> Matrix:
    """Parse the text format; ``domain`` overrides any ``@domain`` directive."""
    declared = None
    size = None
    rows: list[list[str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("@"):
            key, _, rest = line[1:].partition(" ")
            if key == "domain":
                try:
                    declared = parse_domain(rest)
                except ValueError as exc:
                    raise MatrixFormatError(f"line {lineno}: {exc}") from None
                continue
            raise MatrixFormatError(f"line {lineno}: unknown directive @{key}")
        if size is None:
            parts = line.split()
            if not 1 <= len(parts) <= 2 or not all(p.isdigit() for p in parts):
                raise MatrixFormatError(f"line {lineno}: expected 'n' or 'n m', got {line!r}")
            n = int(parts[0])
            size = (n, int(parts[1]) if len(parts) == 2 else n)
            continue
        toks = _tokens(line, lineno)
        if len(toks) != size[1]:
            raise MatrixFormatError(f"line {lineno}: expected {size[1]} entries, got {len(toks)}")
        rows.append(toks)
    if size is None:
        raise MatrixFormatError("missing size line")
    if len(rows) != size[0]:
        raise MatrixFormatError(f"expected {size[0]} rows, got {len(rows)}")
    dom = domain or declared or _infer_domain(rows)
    try:
        data = tuple(tuple(dom.parse(t) for t in row) for row in rows)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise MatrixFormatError(str(exc)) from None
    return Matrix(data, dom)


def _infer_domain(rows) -> RingDomain:
    moduli = set()
    rational = False
    for row in rows:
        for t in row:
            if "mod" in t:
                moduli.add(int(t.split()[-1]))
            elif "/" in t:
                rational = True
    if moduli:
        if len(moduli) > 1 or rational:
            raise MatrixFormatError("entries from more than one domain")
        try:
            return prime_field(moduli.pop())
        except ValueError as exc:
            raise MatrixFormatError(str(exc)) from None
    return RATIONALS if rational else INTEGERS


def read_matrix(path, domain: RingDomain | None = None) -> Matrix:
    return parse_matrix(Path(path).read_text(), domain)


def format_matrix(A: Matrix, *, directive: bool = True) -> str:
    lines = [f"@domain {A.domain}"] if directive else []
    lines.append(str(A.rows) if A.is_square else f"{A.rows} {A.cols}")
    if A.rows:
        lines.append(str(A))
    return "\n".join(lines) + "\n"
