"""Reading and writing the text formats used by the command line tools.

Three small formats live here: ideal files (a generator list with an
optional alphabet declaration), matrix files (one 0-1 vertex per row),
and witness files (one rational coefficient per line).  Parsers report
line and column on failure so a typo in a long file stays findable.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .model import (
    InputError,
    SquarefreeIdeal,
    ZeroOnePolytope,
    minimalize_generators,
)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_VARS_PREFIX = "vars:"


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _declared_names(rest: str, offset: int, line_no: int) -> list[str]:
    """Read the names on a ``vars:`` line; commas and spaces both separate."""
    names: list[str] = []
    for match in re.finditer(r"[^,\s]+", rest):
        name = match.group()
        col = offset + match.start() + 1
        if not _IDENT.match(name):
            raise InputError(
                f"line {line_no}, column {col}: bad variable name {name!r}"
            )
        if name in names:
            raise InputError(
                f"line {line_no}, column {col}: variable {name!r} declared twice"
            )
        names.append(name)
    if not names:
        raise InputError(f"line {line_no}: vars: line declares no variables")
    return names


def _parse_monomial(chunk: str, chunk_col: int, line_no: int) -> frozenset[str]:
    """Parse ``a*b*c`` into its variable set.

    chunk_col is the 1-based column of chunk[0] in the original line, so
    error positions point into the file, not into the stripped fragment.
    A repeated variable would make the monomial non-squarefree and is
    rejected here rather than silently collapsed.
    """
    seen: list[str] = []
    start = 0
    for i in range(len(chunk) + 1):
        if i < len(chunk) and chunk[i] != "*":
            continue
        piece = chunk[start:i]
        lead = len(piece) - len(piece.lstrip())
        name = piece.strip()
        col = chunk_col + start + lead
        if not name:
            raise InputError(f"line {line_no}, column {col}: empty factor in monomial")
        if not _IDENT.match(name):
            raise InputError(
                f"line {line_no}, column {col}: expected a variable name, got {name!r}"
            )
        if name in seen:
            raise InputError(
                f"line {line_no}, column {col}: repeated variable {name!r} in monomial"
            )
        seen.append(name)
        start = i + 1
    return frozenset(seen)


def parse_ideal_text(text: str) -> SquarefreeIdeal:
    """Parse an ideal file.

    Grammar: an optional first line ``vars: <name>...`` fixes the leading
    variables and their order; every other line holds one or more
    generators separated by commas; a generator is variable names joined
    by ``*``; ``#`` starts a comment.  Variables that appear in a
    generator without being declared are appended after the declared ones
    in lexicographic order.  Dominated generators are dropped with a
    warning, duplicated generators are an error.
    """
    declared: list[str] | None = None
    generators: list[frozenset[str]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        stripped = line.lstrip()
        if declared is None and not generators and stripped.startswith(_VARS_PREFIX):
            offset = len(line) - len(stripped) + len(_VARS_PREFIX)
            declared = _declared_names(line[offset:], offset, line_no)
            continue
        start = 0
        for i in range(len(line) + 1):
            if i < len(line) and line[i] != ",":
                continue
            piece = line[start:i]
            if piece.strip():
                lead = len(piece) - len(piece.lstrip())
                generators.append(
                    _parse_monomial(piece.strip(), start + lead + 1, line_no)
                )
            start = i + 1
    if not generators:
        raise InputError("no generators found: the ideal is empty")
    used: set[str] = set().union(*generators)
    names = list(declared or [])
    names.extend(sorted(used - set(names)))
    return minimalize_generators(tuple(names), generators)


def print_ideal(ideal: SquarefreeIdeal) -> str:
    """Render an ideal in the file format; parsing the result round-trips."""
    lines = ["vars: " + " ".join(ideal.variables)]
    lines.extend(ideal.monomial_string(i) for i in range(ideal.num_generators))
    return "\n".join(lines) + "\n"


def parse_matrix_text(text: str) -> ZeroOnePolytope:
    """Parse a matrix file: header ``s n`` then s rows of n entries in {0,1}.

    Row entries may be separated by spaces or written as one digit string;
    both "1 0 1" and "101" denote the same vertex.
    """
    entries: list[tuple[int, str]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if line:
            entries.append((line_no, line))
    if not entries:
        raise InputError("empty matrix file")
    head_no, head = entries[0]
    tokens = head.split()
    if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
        raise InputError(
            f"line {head_no}: expected header '<vertices> <dimension>', got {head!r}"
        )
    count, dim = int(tokens[0]), int(tokens[1])
    if count < 1 or dim < 1:
        raise InputError(f"line {head_no}: header counts must be positive")
    if len(entries) - 1 != count:
        raise InputError(
            f"expected {count} vertex rows after the header, found {len(entries) - 1}"
        )
    rows: list[tuple[int, ...]] = []
    first_at: dict[tuple[int, ...], int] = {}
    for idx, (line_no, line) in enumerate(entries[1:], start=1):
        digits = "".join(line.split())
        if len(digits) != dim or any(ch not in "01" for ch in digits):
            raise InputError(
                f"line {line_no}: expected {dim} entries of 0 or 1, got {line!r}"
            )
        row = tuple(int(ch) for ch in digits)
        if row in first_at:
            raise InputError(
                f"line {line_no}: duplicate vertex, rows {first_at[row]} and {idx}"
                " are identical"
            )
        first_at[row] = idx
        rows.append(row)
    return ZeroOnePolytope(tuple(rows))


def parse_witness_text(text: str) -> tuple[Fraction, ...]:
    """Parse a witness file: one rational per line, aligned with generators."""
    values: list[Fraction] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if len(line.split()) != 1:
            raise InputError(
                f"line {line_no}: expected one rational per line, got {raw.strip()!r}"
            )
        try:
            values.append(Fraction(line))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"line {line_no}: cannot parse rational {line!r}") from None
    if not values:
        raise InputError("witness file has no coefficients")
    return tuple(values)
