"""Branch search proving that no quaternary [[7,1,4]] stabiliser code exists.

Such a code is, geometrically, a quantum set of seven solids in PG(11,2)
in general position: every pair of solids meets trivially and every triple
spans the space (otherwise an undetected error of weight below four would
exist).  Picking three solids as coordinate axes splits F_2^12 into three
4-dimensional bands, and quotienting away the third band projects the six
remaining solids onto a labeled six-solid configuration in PG(7,2) — one
of the finitely many (configuration, labeling) branches that
:func:`evenstab.classify.configs.enumerate_solid_configs` and
:func:`evenstab.classify.polarity.polarity_solutions` enumerate.

Per branch, writing each non-axis block in its adapted local basis, the
12x28 candidate matrix is pinned down to three unknown band-2 components
A2, B2, C2 — a 48-bit unknown.  The Gram identity of the quantum set
splits into

* the upper 8x8 part: automatic, it is the six-solid solution itself;
* the mixed band parts: 32 affine parity equations on the 48 bits;
* the band-2 diagonal: the pairing matrix W of the four non-axis blocks
  must be congruent to the standard symplectic form of the axis block that
  was quotiented away, i.e. **nondegenerate** (Pfaffian 1).

The search enumerates the affine solution space of every branch and
certifies that each solution either has W = 0 (the blocks' rows are
pairwise symplectically orthogonal — no seventh block can close the set)
or fails one of the general-position rank conditions.  No candidate with
nondegenerate W survives, so no [[7,1,4]]_4 exists; projecting one block
of a hypothetical [[8,0,5]]_4 would produce exactly such a code, so that
code is ruled out as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import BudgetExceededError, InternalInconsistencyError
from ..f2linalg import BinMatrix, kernel, rank, solve
from . import mat4
from .configs import Config
from .polarity import Labeling, adapted_bases

__all__ = ["refute_branch", "branch_blocks", "BranchBlocks"]

_INV_TABLE: Optional[np.ndarray] = None

#: Row-index pairs behind the six bits of the pairing signature.
_SIG_PAIRS: Tuple[Tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _inv_table() -> np.ndarray:
    """Boolean table over all 16-bit packed 4x4 matrices: invertible or not."""
    global _INV_TABLE
    if _INV_TABLE is None:
        table = np.zeros(1 << 16, dtype=bool)
        for code in range(1 << 16):
            table[code] = mat4.is_invertible(code)
        _INV_TABLE = table
    return _INV_TABLE


def _swap4(x: int) -> int:
    return ((x & 0x5) << 1) | ((x >> 1) & 0x5)


def _swap12(x: int) -> int:
    return ((x & 0x555) << 1) | ((x >> 1) & 0x555)


def _f4(x: int, y: int) -> int:
    """Standard symplectic pairing of two local row vectors."""
    return (_swap4(x) & y).bit_count() & 1


@dataclass(frozen=True)
class BranchBlocks:
    """Band components of the non-axis blocks of one search branch.

    ``y`` is the component shared by all three bands of the block sitting
    over the (I;I) solid; the pairs (a0, a1), (b0, b1), (c0, c1) are the
    known band-0/band-1 components of the three parametrised blocks, whose
    band-2 components A2, B2, C2 are the search unknowns.
    """

    y: int
    a0: int
    a1: int
    b0: int
    b1: int
    c0: int
    c1: int

    def known_triples(self, a2: int, b2: int, c2: int) -> Tuple[Tuple[int, int, int], ...]:
        return ((self.a0, self.a1, a2), (self.b0, self.b1, b2), (self.c0, self.c1, c2))


def branch_blocks(config: Config, labeling: Labeling) -> BranchBlocks:
    """Adapted band components of the labeled six-solid configuration."""
    if config.n != 6:
        raise InternalInconsistencyError("branch search requires a six-solid configuration")
    solids = config.solids()
    bases = adapted_bases(config, labeling)
    comps: List[Tuple[int, int]] = []
    for solid, basis in zip(solids, bases):
        cols = []
        for local in basis:
            v = 0
            for j in range(4):
                if (local >> j) & 1:
                    v ^= solid[j]
            cols.append(v)
        top = mat4.from_cols([c & 0xF for c in cols])
        bot = mat4.from_cols([c >> 4 for c in cols])
        comps.append((top, bot))
    if comps[2][0] != comps[2][1]:
        raise InternalInconsistencyError("solution block is not aligned across bands")
    blocks = BranchBlocks(
        y=comps[2][0],
        a0=comps[3][0],
        a1=comps[3][1],
        b0=comps[4][0],
        b1=comps[4][1],
        c0=comps[5][0],
        c1=comps[5][1],
    )
    for m in (blocks.y, blocks.a0, blocks.a1, blocks.b0, blocks.b1, blocks.c0, blocks.c1):
        if not mat4.is_invertible(m):
            raise InternalInconsistencyError("degenerate band component in branch blocks")
    return blocks


def _affine_system(blocks: BranchBlocks) -> Tuple[BinMatrix, int]:
    """The 32 parity equations M[band2, band m] = 0 on the 48 unknown bits.

    Unknown bit layout: row i of (A2 | B2 | C2) occupies bits [12i, 12i+12),
    with A2's nibble lowest.  Equation (m, j, i) says that row i of band 2
    pairs with row j of band m to the same value as the aligned block's
    rows: parity(swap12(W^m_j) & u_i) = f4(Y_i, Y_j).
    """
    y_rows = [mat4.row(blocks.y, i) for i in range(4)]
    rows: List[int] = []
    rhs = 0
    for mats in (
        (blocks.a0, blocks.b0, blocks.c0),
        (blocks.a1, blocks.b1, blocks.c1),
    ):
        for j in range(4):
            w = (
                mat4.row(mats[0], j)
                | mat4.row(mats[1], j) << 4
                | mat4.row(mats[2], j) << 8
            )
            sw = _swap12(w)
            for i in range(4):
                if _f4(y_rows[i], y_rows[j]):
                    rhs |= 1 << len(rows)
                rows.append(sw << (12 * i))
    return BinMatrix(tuple(rows), 48), rhs


def _nibble_matrix(u: int, shift: int) -> int:
    """16-bit matrix code from one nibble lane of a 48-bit unknown."""
    out = 0
    for i in range(4):
        out |= ((u >> (12 * i + shift)) & 0xF) << (4 * i)
    return out


def _pairing_signature(blocks: BranchBlocks, u: int) -> int:
    """Six-bit signature of the pairing matrix W at one solution."""
    y_rows = [mat4.row(blocks.y, i) for i in range(4)]
    u_rows = [(u >> (12 * i)) & 0xFFF for i in range(4)]
    sig = 0
    for b, (i, j) in enumerate(_SIG_PAIRS):
        t = (_swap12(u_rows[i]) & u_rows[j]).bit_count() & 1
        t ^= _f4(y_rows[i], y_rows[j])
        sig |= t << b
    return sig


def pairing_nondegenerate(sig: int) -> bool:
    """Pfaffian of the alternating 4x4 pairing matrix given by ``sig``."""
    pf = (sig & (sig >> 5)) ^ ((sig >> 1) & (sig >> 4)) ^ ((sig >> 2) & (sig >> 3))
    return bool(pf & 1)


def _passes_spans(blocks: BranchBlocks, u: int) -> bool:
    """Exact general-position check of one affine solution.

    Conditions involving the unknowns: each of A2, B2, C2 invertible
    (triples with both upper axis blocks); their sums with the matching
    band-0/1 components invertible (triples with one upper axis block and
    the solution block); pairwise band-(0,2) and band-(1,2) 8x8 blocks of
    full rank (triples with one upper axis block); the three triples
    through the solution block (reduced 8x8) and the triple of all three
    parametrised blocks (full 12x12).
    """
    a2 = _nibble_matrix(u, 0)
    b2 = _nibble_matrix(u, 4)
    c2 = _nibble_matrix(u, 8)
    triples = blocks.known_triples(a2, b2, c2)
    for m0, m1, m2 in triples:
        if not (
            mat4.is_invertible(m2)
            and mat4.is_invertible(m2 ^ m0)
            and mat4.is_invertible(m2 ^ m1)
        ):
            return False
    for x in range(3):
        for y in range(x + 1, 3):
            first, second = triples[x], triples[y]
            for ba, bb in ((0, 2), (1, 2)):
                rows8 = [
                    mat4.row(first[ba], r) | mat4.row(second[ba], r) << 4
                    for r in range(4)
                ]
                rows8 += [
                    mat4.row(first[bb], r) | mat4.row(second[bb], r) << 4
                    for r in range(4)
                ]
                if rank(BinMatrix(tuple(rows8), 8)) != 8:
                    return False
            # Triple through the solution block: subtracting its shared
            # band reduces the 12x12 to this 8x8.
            rows8 = [
                mat4.row(first[1] ^ first[0], r) | mat4.row(second[1] ^ second[0], r) << 4
                for r in range(4)
            ]
            rows8 += [
                mat4.row(first[2] ^ first[0], r) | mat4.row(second[2] ^ second[0], r) << 4
                for r in range(4)
            ]
            if rank(BinMatrix(tuple(rows8), 8)) != 8:
                return False
    rows12 = []
    for band in range(3):
        for r in range(4):
            rows12.append(
                mat4.row(triples[0][band], r)
                | mat4.row(triples[1][band], r) << 4
                | mat4.row(triples[2][band], r) << 8
            )
    return rank(BinMatrix(tuple(rows12), 12)) == 12


def _chunk_scan(
    u: np.ndarray, blocks: BranchBlocks, fy_bits: Tuple[int, ...], inv: np.ndarray
) -> Tuple[int, int, np.ndarray]:
    """Vectorised pass over one chunk of affine solutions.

    Returns (count with W = 0, count with W nondegenerate, solutions with
    W != 0 that survive the invertibility prefilter and therefore need the
    exact rank checks).
    """
    twelve = np.uint64(12)
    lanes = [(u >> (twelve * np.uint64(i))) & np.uint64(0xFFF) for i in range(4)]
    one = np.uint64(1)
    m555 = np.uint64(0x555)
    swapped = [((x & m555) << one) | ((x >> one) & m555) for x in lanes]
    sig = np.zeros(u.shape, dtype=np.uint8)
    for b, (i, j) in enumerate(_SIG_PAIRS):
        t = (np.bitwise_count(swapped[i] & lanes[j]) & one).astype(np.uint8)
        if fy_bits[b]:
            t ^= np.uint8(1)
        sig |= t << np.uint8(b)
    n_orth = int((sig == 0).sum())
    pf = (sig & (sig >> np.uint8(5))) ^ ((sig >> np.uint8(1)) & (sig >> np.uint8(4)))
    pf ^= (sig >> np.uint8(2)) & (sig >> np.uint8(3))
    n_nondeg = int((pf & np.uint8(1)).sum())

    ok = sig != 0
    four = np.uint64(4)
    for shift, m0, m1 in (
        (0, blocks.a0, blocks.a1),
        (4, blocks.b0, blocks.b1),
        (8, blocks.c0, blocks.c1),
    ):
        code = np.zeros_like(u)
        for i in range(4):
            code |= ((u >> np.uint64(12 * i + shift)) & np.uint64(0xF)) << (
                four * np.uint64(i)
            )
        idx = code.astype(np.int64)
        ok &= inv[idx]
        ok &= inv[idx ^ m0]
        ok &= inv[idx ^ m1]
    return n_orth, n_nondeg, u[ok]


def refute_branch(
    config: Config, labeling: Labeling, *, budget_dim: int = 26
) -> Dict[str, object]:
    """Exhaust one (configuration, labeling) branch of the search.

    The returned certificate counts, over the affine solution space of the
    branch's 32 parity equations: solutions whose pairing matrix W is zero
    (``n_orth``), solutions with W nondegenerate (``n_quad`` — only these
    could complete to a seventh block), and solutions with W != 0 passing
    every general-position rank condition (``n_nonorth_span``, listed in
    ``survivors`` as [solution, signature] pairs).  The branch refutes the
    code iff no survivor has a nondegenerate signature; the search as a
    whole expects ``n_nonorth_span == 0`` on every branch.
    """
    blocks = branch_blocks(config, labeling)
    system, rhs = _affine_system(blocks)
    particular = solve(system, rhs)
    ker = kernel(system)
    dim = ker.dim
    certificate: Dict[str, object] = {
        "affine_rank": 48 - dim,
        "dim": dim if particular is not None else -1,
        "n_orth": 0,
        "n_quad": 0,
        "n_nonorth_span": 0,
        "survivors": [],
    }
    if particular is None:
        return certificate
    if dim > budget_dim:
        raise BudgetExceededError(
            f"affine solution space has dimension {dim}, "
            f"beyond the configured budget of {budget_dim}"
        )

    y_rows = [mat4.row(blocks.y, i) for i in range(4)]
    fy_bits = tuple(_f4(y_rows[i], y_rows[j]) for (i, j) in _SIG_PAIRS)
    inv = _inv_table()

    lo = list(ker.basis[:16])
    hi = list(ker.basis[16:])
    lo_arr = np.array([particular], dtype=np.uint64)
    for v in lo:
        lo_arr = np.concatenate([lo_arr, lo_arr ^ np.uint64(v)])
    hi_vals = [0]
    for v in hi:
        hi_vals += [h ^ v for h in hi_vals]

    n_orth = 0
    n_quad = 0
    survivors: List[List[int]] = []
    for h in hi_vals:
        chunk = lo_arr ^ np.uint64(h) if h else lo_arr
        orth, nondeg, needing_exact = _chunk_scan(chunk, blocks, fy_bits, inv)
        n_orth += orth
        n_quad += nondeg
        for u in needing_exact.tolist():
            if _passes_spans(blocks, u):
                survivors.append([u, _pairing_signature(blocks, u)])
    survivors.sort()
    certificate["n_orth"] = n_orth
    certificate["n_quad"] = n_quad
    certificate["n_nonorth_span"] = len(survivors)
    certificate["survivors"] = survivors
    return certificate
