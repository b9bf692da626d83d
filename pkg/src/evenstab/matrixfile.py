"""Plain-text serialization of stabiliser matrices.

Format::

    # optional comments introduced by '#', anywhere in the file
    q n r modulus
    <2n integers in 0..q-1>     (r rows)

The header carries the field as its order ``q`` and the bit-packed
irreducible modulus as a plain integer (e.g. ``4 2 2 7`` is a 2x4 matrix
over GF(4) with modulus x^2+x+1).  Rows list the A half then the B half.
Whitespace is free-form; parse -> serialize is the identity on files
produced by :func:`render_matrix`.
"""

from __future__ import annotations

import os
from typing import List, Optional, Tuple

from .errors import ParseError
from .gf2h import FieldSpec
from .symcode import StabiliserMatrix

__all__ = ["parse_matrix", "read_matrix", "render_matrix", "write_matrix", "element_text"]


def _tokens(text: str) -> List[Tuple[int, str]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        for tok in body.split():
            out.append((lineno, tok))
    return out


def _to_int(lineno: int, tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, found {tok!r}") from None


def parse_matrix(text: str) -> StabiliserMatrix:
    toks = _tokens(text)
    if len(toks) < 4:
        raise ParseError("missing header: expected 'q n r modulus'")
    (l_q, t_q), (l_n, t_n), (l_r, t_r), (l_m, t_m) = toks[:4]
    q = _to_int(l_q, t_q)
    n = _to_int(l_n, t_n)
    r = _to_int(l_r, t_r)
    modulus = _to_int(l_m, t_m)
    h = q.bit_length() - 1
    if q < 2 or q != 1 << h:
        raise ParseError(f"line {l_q}: field order {q} is not a power of two")
    if n < 1 or r < 0:
        raise ParseError(f"line {l_n}: need n >= 1 and r >= 0, found n={n} r={r}")
    try:
        field = FieldSpec(h, modulus)
    except ValueError as exc:
        raise ParseError(f"line {l_m}: {exc}") from None
    body = toks[4:]
    need = r * 2 * n
    if len(body) != need:
        raise ParseError(
            f"expected {need} entries ({r} rows of {2 * n}), found {len(body)}"
        )
    rows = []
    for i in range(r):
        row = []
        for j in range(2 * n):
            lineno, tok = body[i * 2 * n + j]
            v = _to_int(lineno, tok)
            if not 0 <= v < q:
                raise ParseError(
                    f"line {lineno}: entry {v} is outside the field range 0..{q - 1}"
                )
            row.append(v)
        rows.append(tuple(row))
    return StabiliserMatrix(field=field, n=n, rows=tuple(rows))


def read_matrix(path: os.PathLike | str) -> StabiliserMatrix:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_matrix(text)


def element_text(field: FieldSpec, x: int, *, pretty: bool = False) -> str:
    """One field element, as an integer or (pretty) as a generator power."""
    return field.pretty(x) if pretty else str(x)


def render_matrix(M: StabiliserMatrix, *, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"# {part}".rstrip())
    lines.append("# q n r modulus; rows give the A half then the B half")
    lines.append(f"{M.field.q} {M.n} {M.r} {M.field.modulus}")
    for row in M.rows:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def pretty_rows(M: StabiliserMatrix) -> List[str]:
    """Aligned (A | B) table with entries as generator powers."""
    cells = [
        [element_text(M.field, v, pretty=True) for v in row] for row in M.rows
    ]
    width = max((len(c) for row in cells for c in row), default=1)
    out = []
    for row in cells:
        a = " ".join(c.rjust(width) for c in row[: M.n])
        b = " ".join(c.rjust(width) for c in row[M.n :])
        out.append(f"{a} | {b}")
    return out


def write_matrix(
    M: StabiliserMatrix, path: os.PathLike | str, *, comment: Optional[str] = None
) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_matrix(M, comment=comment))
