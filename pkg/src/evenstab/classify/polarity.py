"""Hyperbolic-line labelings of solid configurations.

A quantum set of symplectic polar spaces with h = 2 assigns to each solid a
symplectic polarity; the assignment is encoded here by marking, per solid,
the 20 lines that are hyperbolic for that polarity (out of the 35 lines of
the solid).  The defining evenness condition — every subspace of
codimension 2 meets an even number of solids in a marked line — is linear
over GF(2) in the marks, one equation per codimension-2 subspace of the
ambient space.  This module builds that parity system for a configuration
in normal form, enumerates its kernel, and keeps exactly the labelings
whose per-solid marks are the hyperbolic lines of an actual polarity
(validated by reconstructing the Gram matrix from the marks).

It also reconstructs the binary stabiliser matrix of a labeled
configuration, transports labelings along configuration automorphisms
(which yields the equivalence test on labelings), and extracts per-solid
bases adapted to the polarities (used by the nonexistence search).
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import BudgetExceededError, ValidationError
from ..f2linalg import BinMatrix, codim2_functional_pairs, kernel
from ..gf2h import FieldSpec
from ..symcode import StabiliserMatrix
from .configs import Achiever, Config, std_solids
from . import mat4

Labeling = Tuple[int, ...]  # one 35-bit mark mask per solid

# ---------------------------------------------------------------------------
# the 35 lines of a 4-dimensional binary space
# ---------------------------------------------------------------------------


def _build_lines() -> Tuple[Tuple[Tuple[int, int, int], ...], Dict[Tuple[int, int], int]]:
    lines = sorted(
        {
            tuple(sorted((u, v, u ^ v)))
            for u in range(1, 16)
            for v in range(1, 16)
            if v not in (0, u)
        }
    )
    of_pair: Dict[Tuple[int, int], int] = {}
    for idx, pts in enumerate(lines):
        for u in pts:
            for v in pts:
                if u != v:
                    of_pair[(u, v)] = idx
    return tuple(lines), of_pair


LINES, LINE_OF_PAIR = _build_lines()
LINE_COUNT = len(LINES)  # 35


def _build_pair2line() -> Dict[Tuple[int, int], int]:
    """Map an independent functional pair to the line it annihilates."""
    out: Dict[Tuple[int, int], int] = {}
    for idx, pts in enumerate(LINES):
        ann = [
            g
            for g in range(1, 16)
            if all((g & p).bit_count() % 2 == 0 for p in pts[:2])
        ]
        for g1 in ann:
            for g2 in ann:
                if g2 not in (0, g1):
                    out[(g1, g2)] = idx
    return out


PAIR2LINE = _build_pair2line()


def _build_meets() -> Tuple[int, ...]:
    """meets[i] = bitmask of lines sharing a point with line i (incl. itself)."""
    masks = []
    for pts in LINES:
        mask = 0
        pset = set(pts)
        for jdx, qts in enumerate(LINES):
            if pset & set(qts):
                mask |= 1 << jdx
        masks.append(mask)
    return tuple(masks)


MEETS = _build_meets()


def hyperbolic_mask(gram: int) -> int:
    """Marked-line mask of a symplectic form given as a packed 4x4 Gram."""
    mask = 0
    for idx, (u, v, _) in enumerate(LINES):
        if (mat4.apply(gram, v) & u).bit_count() & 1:
            mask |= 1 << idx
    return mask


def polarity_from_marks(mask: int) -> Optional[int]:
    """The packed Gram matrix whose hyperbolic lines are exactly ``mask``,
    or None if no symplectic polarity has that set of hyperbolic lines."""
    rows = []
    for s in range(4):
        bits = 0
        for t in range(4):
            if t != s and (mask >> LINE_OF_PAIR[(1 << s, 1 << t)]) & 1:
                bits |= 1 << t
        rows.append(bits)
    gram = mat4.from_rows(rows)
    if not mat4.is_invertible(gram):
        return None
    return gram if hyperbolic_mask(gram) == mask else None


def has_perpendicular_pair(mask: int) -> bool:
    """Fast necessary structure check on a candidate 20-line mask: some
    marked line l1 admits a disjoint marked l2 such that every other marked
    line meets exactly one of them (l2 is then the perpendicular of l1)."""
    if not mask:
        return False
    l1 = (mask & -mask).bit_length() - 1
    rest_all = mask & ~(1 << l1)
    for l2_mask in _iter_bits(rest_all):
        l2 = l2_mask.bit_length() - 1
        if (MEETS[l1] >> l2) & 1:
            continue
        rest = rest_all & ~l2_mask
        diff = MEETS[l1] ^ MEETS[l2]
        if rest & ~diff == 0:
            return True
    return False


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


# ---------------------------------------------------------------------------
# the parity system of a configuration
# ---------------------------------------------------------------------------


def parity_system(config: Config) -> BinMatrix:
    """One GF(2) equation per codimension-2 subspace of the ambient space,
    in the 35 * n mark variables of the configuration."""
    n = config.n
    # pullback tables: solid s sends an ambient functional (top, bot) to the
    # local functional top ^ M^T bot (with M the parameter; top for (I|O),
    # bot for (O|I)).
    tabs: List[Optional[List[int]]] = [None, None]
    tabs.append([b for b in range(16)])  # parameter I for the (I|I) solid
    for m in config.params:
        mt = mat4.transpose(m)
        tabs.append([mat4.apply(mt, b) for b in range(16)])
    rows = set()
    for f1, f2 in codim2_functional_pairs(8):
        top1, bot1 = f1 & 0xF, f1 >> 4
        top2, bot2 = f2 & 0xF, f2 >> 4
        eq = 0
        for s in range(n):
            tab = tabs[s]
            if s == 0:
                g1, g2 = top1, top2
            elif s == 1:
                g1, g2 = bot1, bot2
            else:
                g1 = top1 ^ tab[bot1]  # type: ignore[index]
                g2 = top2 ^ tab[bot2]  # type: ignore[index]
            if g1 and g2 and g1 != g2:
                eq |= 1 << (35 * s + PAIR2LINE[(g1, g2)])
        if eq:
            rows.add(eq)
    return BinMatrix(rows=tuple(sorted(rows)), ncols=35 * n)


def polarity_solutions(
    config: Config, *, budget_dim: int = 26
) -> List[Labeling]:
    """All labelings of the configuration: kernel elements of the parity
    system whose per-solid marks are the hyperbolic lines of a polarity."""
    n = config.n
    ker = kernel(parity_system(config))
    dim = ker.dim
    if dim > budget_dim:
        raise BudgetExceededError(
            f"parity kernel has dimension {dim}, beyond the enumeration "
            f"budget of 2^{budget_dim} candidates"
        )
    # per-solid 35-bit words of the kernel basis
    basis = np.zeros((max(dim, 1), n), dtype=np.uint64)
    for i, vec in enumerate(ker.basis):
        for s in range(n):
            basis[i, s] = (vec >> (35 * s)) & ((1 << 35) - 1)
    lo = min(dim, 16)
    lo_arr = np.zeros((1, n), dtype=np.uint64)
    for i in range(lo):
        lo_arr = np.concatenate([lo_arr, lo_arr ^ basis[i]], axis=0)
    out: List[Labeling] = []
    for hi_bits in range(1 << (dim - lo) if dim else 1):
        hi = np.zeros(n, dtype=np.uint64)
        for i in range(dim - lo):
            if (hi_bits >> i) & 1:
                hi ^= basis[lo + i]
        chunk = lo_arr ^ hi
        ok = np.all(np.bitwise_count(chunk) == 20, axis=1)
        for row in chunk[ok]:
            marks = tuple(int(w) for w in row)
            if all(polarity_from_marks(m) is not None for m in marks):
                out.append(marks)
    out.sort()
    return out


# ---------------------------------------------------------------------------
# transport of labelings along automorphisms, and equivalence
# ---------------------------------------------------------------------------


def _line_image(line_idx: int, local_map: int) -> int:
    u, v, _ = LINES[line_idx]
    return LINE_OF_PAIR[(mat4.apply(local_map, u), mat4.apply(local_map, v))]


def transport_labeling(labeling: Labeling, aut: Achiever) -> Labeling:
    """Push a labeling through a configuration automorphism."""
    maps = aut.local_maps
    out = []
    for pos in range(len(aut.order)):
        src = labeling[aut.order[pos]]
        mask = 0
        for bit in _iter_bits(src):
            mask |= 1 << _line_image(bit.bit_length() - 1, maps[pos])
        out.append(mask)
    return tuple(out)


def solutions_equivalent(
    config: Config, first: Labeling, second: Labeling
) -> bool:
    """Whether an automorphism of the configuration carries one labeling to
    the other.  Labelings of distinct canonical configurations are never
    equivalent."""
    from .configs import config_automorphisms

    for aut in config_automorphisms(config.params):
        if transport_labeling(first, aut) == second:
            return True
    return False


# ---------------------------------------------------------------------------
# adapted bases and stabiliser reconstruction
# ---------------------------------------------------------------------------


def symplectic_basis(gram: int) -> Tuple[int, int, int, int]:
    """(p, q, s, t) with f(p,q) = f(s,t) = 1 and the two lines mutually
    perpendicular, for the packed 4x4 Gram matrix of a symplectic form."""

    def f(u: int, v: int) -> int:
        return (mat4.apply(gram, v) & u).bit_count() & 1

    p = 1
    q = next(v for v in range(1, 16) if f(p, v))
    w = [v for v in range(1, 16) if f(p, v) == 0 and f(q, v) == 0]
    s = min(w)
    t = next(v for v in w if f(s, v))
    return p, q, s, t


def adapted_bases(config: Config, labeling: Labeling) -> List[Tuple[int, int, int, int]]:
    """Per solid, a local basis (p, q, s, t) adapted to the labeling's
    polarity: columns (p,q) span a hyperbolic line, (s,t) its perpendicular."""
    out = []
    for mask in labeling:
        gram = polarity_from_marks(mask)
        if gram is None:
            raise ValidationError("labeling does not describe polarities")
        out.append(symplectic_basis(gram))
    return out


def reconstruct_stabiliser(config: Config, labeling: Labeling) -> StabiliserMatrix:
    """The binary stabiliser matrix whose expansion geometry is the labeled
    configuration: solid s contributes positions 2s and 2s+1, with column
    pairs (p,q) and (s,t) of the adapted basis."""
    solids = config.solids()
    bases = adapted_bases(config, labeling)
    n_bin = 2 * config.n
    a_cols: List[int] = []
    b_cols: List[int] = []
    for solid, (p, q, s, t) in zip(solids, bases):

        def amb(local: int) -> int:
            v = 0
            for j in range(4):
                if (local >> j) & 1:
                    v ^= solid[j]
            return v

        a_cols.extend([amb(p), amb(s)])
        b_cols.extend([amb(q), amb(t)])
    rows = []
    for r in range(8):
        row = [ (a_cols[j] >> r) & 1 for j in range(n_bin) ]
        row += [ (b_cols[j] >> r) & 1 for j in range(n_bin) ]
        rows.append(tuple(row))
    return StabiliserMatrix(field=FieldSpec(1), n=n_bin, rows=tuple(rows))
