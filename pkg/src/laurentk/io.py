"""Readers and writers for the line-oriented module and endomorphism files.

Module file::

    [module]
    degree0.generators = 2
    degree0.relations = X-1, 0 ; 0, X+1     # rows separated by ';'
    degree1.generators = 0

Endomorphism file::

    [endo]
    parity = 0
    degree0 = X, 0 ; 0, 1
    degree1 =

``#`` starts a comment.  Errors carry 1-based line and column numbers.
"""

from __future__ import annotations

from .errors import ParseError
from .laurent import LaurentPoly, parse_poly
from .localize import GradedModuleMap
from .modules import GradedModule, PresentedModule


def _records(text: str, section: str):
    """Yield ``(lineno, raw_line, key, value, value_column)`` after the section header."""
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            if stripped != f"[{section}]":
                raise ParseError(f"expected section header [{section}]", column=line.index("[") + 1,
                                 line=lineno, text=raw)
            if seen_header:
                raise ParseError(f"duplicate [{section}] header", column=1, line=lineno, text=raw)
            seen_header = True
            continue
        if not seen_header:
            raise ParseError(f"missing [{section}] header", column=1, line=lineno, text=raw)
        key, eq, value = line.partition("=")
        if not eq:
            raise ParseError("expected 'key = value'", column=len(line.rstrip()) + 1, line=lineno, text=raw)
        yield lineno, raw, key.strip(), value, len(key) + 2
    if not seen_header:
        raise ParseError(f"missing [{section}] header", line=1)


def parse_matrix(value: str, column: int = 1, lineno: int | None = None, raw: str | None = None):
    """``"a, b ; c, d"`` to a list of rows of :class:`LaurentPoly`; blank gives ``[]``."""
    if not value.strip():
        return []
    rows = []
    offset = 0
    for row_text in value.split(";"):
        row = []
        col_off = offset
        for entry in row_text.split(","):
            lead = len(entry) - len(entry.lstrip())
            start = column + col_off + lead
            if not entry.strip():
                raise ParseError("empty matrix entry", column=start, line=lineno, text=raw)
            try:
                row.append(parse_poly(entry.strip()))
            except ParseError as exc:
                raise ParseError(exc.message, column=start + (exc.column or 1) - 1, line=lineno,
                                 text=raw) from None
            col_off += len(entry) + 1
        rows.append(row)
        offset += len(row_text) + 1
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ParseError("rows have different lengths", column=column, line=lineno, text=raw)
    return rows


def _int(value: str, column: int, lineno: int, raw: str) -> int:
    try:
        v = int(value.strip())
    except ValueError:
        raise ParseError(f"expected an integer, got {value.strip()!r}", column=column, line=lineno,
                         text=raw) from None
    if v < 0:
        raise ParseError("expected a nonnegative integer", column=column, line=lineno, text=raw)
    return v


def parse_module(text: str) -> GradedModule:
    gens = {0: 0, 1: 0}
    rels = {0: None, 1: None}
    where = {}
    for lineno, raw, key, value, col in _records(text, "module"):
        deg, dot, field = key.partition(".")
        if deg not in ("degree0", "degree1") or field not in ("generators", "relations"):
            raise ParseError(f"unknown key {key!r}", column=raw.index(key) + 1, line=lineno, text=raw)
        d = int(deg[-1])
        if field == "generators":
            gens[d] = _int(value, col, lineno, raw)
        else:
            rels[d] = parse_matrix(value, col, lineno, raw)
            where[d] = (lineno, raw)
    degrees = []
    for d in (0, 1):
        r = rels[d] or []
        if r and len(r) != gens[d]:
            lineno, raw = where[d]
            raise ParseError(f"degree{d} has {gens[d]} generators but {len(r)} relation rows",
                             column=1, line=lineno, text=raw)
        degrees.append(PresentedModule(gens[d], tuple(map(tuple, r))))
    return GradedModule(*degrees)


def parse_endo(text: str) -> GradedModuleMap:
    parity = None
    blocks = {0: [], 1: []}
    for lineno, raw, key, value, col in _records(text, "endo"):
        if key == "parity":
            v = value.strip()
            if v not in ("0", "1"):
                raise ParseError("parity must be 0 or 1", column=col, line=lineno, text=raw)
            parity = int(v)
        elif key in ("degree0", "degree1"):
            blocks[int(key[-1])] = parse_matrix(value, col, lineno, raw)
        else:
            raise ParseError(f"unknown key {key!r}", column=raw.index(key) + 1, line=lineno, text=raw)
    return GradedModuleMap(0 if parity is None else parity, (blocks[0], blocks[1]))


def format_matrix(M) -> str:
    return " ; ".join(", ".join(str(x) for x in row) for row in M)


def format_module(gm: GradedModule) -> str:
    lines = ["[module]"]
    for d in (0, 1):
        m = gm.degree(d)
        lines.append(f"degree{d}.generators = {m.generators}")
        if m.num_relations:
            lines.append(f"degree{d}.relations = {format_matrix(m.relations)}")
    return "\n".join(lines) + "\n"


def format_endo(L: GradedModuleMap) -> str:
    return "\n".join(["[endo]", f"parity = {L.parity}",
                      f"degree0 = {format_matrix(L.blocks[0])}",
                      f"degree1 = {format_matrix(L.blocks[1])}"]) + "\n"
