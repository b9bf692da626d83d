"""Bit-packed 4x4 matrices over GF(2).

A matrix is a 16-bit integer with bit ``4*r + c`` holding entry ``(r, c)``.
Matrix addition is XOR.  The natural integer order on the packed value is
the lexicographic order on the row-major bit string, which is what the
canonical forms in :mod:`evenstab.classify.configs` minimise.

Besides the arithmetic primitives this module provides the conjugacy
helpers used by the configuration searches: characteristic and minimal
polynomials (a complete conjugacy invariant for the matrices those searches
deal with), and the solver for ``L X = Y L`` that yields transporters and
centralizers without any orbit enumeration.
"""

from __future__ import annotations

from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from ..f2linalg import BinMatrix, kernel

IDENTITY = 0x8421  # bits 0, 5, 10, 15
GL4_ORDER = 20160

_PERMS4 = tuple(permutations(range(4)))


def row(m: int, r: int) -> int:
    """Row ``r`` as a 4-bit integer (bit ``c`` = entry ``(r, c)``)."""
    return (m >> (4 * r)) & 0xF


def col(m: int, c: int) -> int:
    """Column ``c`` as a 4-bit integer (bit ``r`` = entry ``(r, c)``)."""
    v = 0
    for r in range(4):
        v |= ((m >> (4 * r + c)) & 1) << r
    return v


def from_rows(rows: Sequence[int]) -> int:
    if len(rows) != 4:
        raise ValueError(f"expected 4 rows, got {len(rows)}")
    m = 0
    for r, bits in enumerate(rows):
        if bits >> 4:
            raise ValueError(f"row {r} does not fit in 4 bits: {bits}")
        m |= bits << (4 * r)
    return m


def from_cols(cols: Sequence[int]) -> int:
    if len(cols) != 4:
        raise ValueError(f"expected 4 columns, got {len(cols)}")
    m = 0
    for c, bits in enumerate(cols):
        if bits >> 4:
            raise ValueError(f"column {c} does not fit in 4 bits: {bits}")
        for r in range(4):
            m |= ((bits >> r) & 1) << (4 * r + c)
    return m


def transpose(m: int) -> int:
    return from_rows([col(m, r) for r in range(4)])


def apply(m: int, v: int) -> int:
    """Matrix times column vector: bit ``r`` of the result is ``row_r . v``."""
    out = 0
    for r in range(4):
        out |= (((m >> (4 * r)) & v & 0xF).bit_count() & 1) << r
    return out


def mul(a: int, b: int) -> int:
    """Matrix product ``a @ b``."""
    b_rows = (b & 0xF, (b >> 4) & 0xF, (b >> 8) & 0xF, (b >> 12) & 0xF)
    out = 0
    for r in range(4):
        ar = (a >> (4 * r)) & 0xF
        v = 0
        if ar & 1:
            v ^= b_rows[0]
        if ar & 2:
            v ^= b_rows[1]
        if ar & 4:
            v ^= b_rows[2]
        if ar & 8:
            v ^= b_rows[3]
        out |= v << (4 * r)
    return out


def inv(m: int) -> Optional[int]:
    """Inverse matrix, or None if singular."""
    # Forward elimination on rows augmented with the identity in bits 4..7.
    pivots: List[Tuple[int, int]] = []  # (pivot bit, row) in insertion order
    for r in range(4):
        v = ((m >> (4 * r)) & 0xF) | (1 << (4 + r))
        for pi, pv in pivots:
            if (v >> pi) & 1:
                v ^= pv
        if not (v & 0xF):
            return None
        pivots.append(((v & -v).bit_length() - 1, v))
    # Backward pass: clear the later pivots from each row, leaving each
    # low nibble equal to its pivot bit alone.
    for idx in range(2, -1, -1):
        pi, pv = pivots[idx]
        for qi, qv in pivots[idx + 1 :]:
            if (pv >> qi) & 1:
                pv ^= qv
        pivots[idx] = (pi, pv)
    out = [0] * 4
    for pi, pv in pivots:
        out[pi] = pv >> 4
    return from_rows(out)


def is_invertible(m: int) -> bool:
    return inv(m) is not None


def conj(l: int, m: int, l_inv: Optional[int] = None) -> int:
    """Conjugate ``l @ m @ l^-1``."""
    if l_inv is None:
        l_inv = inv(l)
        if l_inv is None:
            raise ValueError("conjugating matrix is singular")
    return mul(mul(l, m), l_inv)


# ---------------------------------------------------------------------------
# polynomials over GF(2), packed with bit k = coefficient of x^k
# ---------------------------------------------------------------------------


def polymul(a: int, b: int) -> int:
    out = 0
    while a:
        low = a & -a
        out ^= b << (low.bit_length() - 1)
        a ^= low
    return out


def charpoly(m: int) -> int:
    """Characteristic polynomial det(xI + m), packed, always degree 4."""
    total = 0
    for perm in _PERMS4:
        term = 1
        for r, c in enumerate(perm):
            entry = (m >> (4 * r + c)) & 1
            if r == c:
                entry |= 2  # the x from xI
            if entry == 0:
                term = 0
                break
            term = polymul(term, entry)
        total ^= term
    return total


def minpoly(m: int) -> int:
    """Minimal polynomial of ``m``, packed."""
    # Reduce successive powers of m (as 16-bit vectors) until one falls in
    # the span of the previous ones; the audit trail gives the coefficients.
    basis: Dict[int, Tuple[int, int]] = {}  # pivot -> (vector, combo)
    power = IDENTITY
    for k in range(5):
        v, combo = power, 1 << k
        while v:
            p = (v & -v).bit_length() - 1
            if p not in basis:
                basis[p] = (v, combo)
                break
            bv, bc = basis[p]
            v ^= bv
            combo ^= bc
        else:
            return combo
        power = mul(power, m)
    raise AssertionError("no minimal polynomial of degree <= 4")  # pragma: no cover


def class_id(m: int) -> Tuple[int, int]:
    """(charpoly, minpoly): a conjugacy invariant, complete for the
    invertible matrices with invertible ``m + I`` handled by the searches."""
    return (charpoly(m), minpoly(m))


# ---------------------------------------------------------------------------
# conjugation transporters: all invertible L with L X_i L^-1 = Y_i
# ---------------------------------------------------------------------------


def conjugators(sources: Sequence[int], targets: Sequence[int]) -> List[int]:
    """All invertible L with ``L @ sources[i] == targets[i] @ L`` for every i.

    Solves the linear system over the 16 unknown entries of L and filters
    the kernel for invertible elements.  Returns [] when the tuples are not
    simultaneously conjugate.
    """
    if len(sources) != len(targets):
        raise ValueError("sources and targets must have equal length")
    rows = []
    for x, y in zip(sources, targets):
        for r in range(4):
            for c in range(4):
                mask = 0
                for j in range(4):  # coefficient of L[r, j] in (L X)[r, c]
                    if (x >> (4 * j + c)) & 1:
                        mask ^= 1 << (4 * r + j)
                for i in range(4):  # coefficient of L[i, c] in (Y L)[r, c]
                    if (y >> (4 * r + i)) & 1:
                        mask ^= 1 << (4 * i + c)
                rows.append(mask)
    ker = kernel(BinMatrix(rows=tuple(rows), ncols=16))
    return [l for l in ker.vectors() if l and is_invertible(l)]


def centralizer(m: int) -> List[int]:
    """The group of invertible matrices commuting with ``m``."""
    return conjugators((m,), (m,))
