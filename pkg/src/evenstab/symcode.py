"""Stabiliser matrices over GF(2^h) and their trace-symplectic structure.

A stabiliser matrix is an r x 2n matrix (A|B) over GF(2^h) whose rows are
GF(2)-independent and pairwise orthogonal under the trace-symplectic product

    <(a|b), (a'|b')>_s = sum_i tr(a_i b'_i + a'_i b_i).

The additive code C spanned by the rows (GF(2)-span, |C| = 2^r) determines
the quantum code's parameters: n, k = (hn - r)/h (an exact rational), and

    d = min swt(C^perp_s)          if k = 0,
    d = min swt(C^perp_s \\ C)      if k > 0,

where swt counts positions i with (a_i, b_i) != (0, 0).

Coordinate expansion: with a trace-orthogonal basis (e_1..e_h), each GF(2^h)
column splits into h binary columns via x |-> (tr(x e_1), ..., tr(x e_h));
this preserves the trace-symplectic product, maps an [[n,k,d]] code to an
[[hn, hk, d']] binary code with d <= d' <= h d, and is inverted by `merge`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import BudgetExceededError, ValidationError
from .f2linalg import BinMatrix, kernel, rank
from .gf2h import FieldSpec, TraceBasis, find_trace_orthogonal_basis

__all__ = [
    "AdditiveCode",
    "CodeParameters",
    "StabiliserMatrix",
    "code_parameters",
    "convert",
    "expand",
    "find_non_orthogonal_pair",
    "is_pure",
    "is_self_orthogonal",
    "merge",
    "minimum_distance",
    "pack_rows",
    "singleton_margin",
    "symplectic_dual",
    "symplectic_weight",
    "trace_symplectic_product",
    "unpack_row",
]

DEFAULT_DISTANCE_BUDGET = 1 << 28


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class StabiliserMatrix:
    """An r x 2n matrix (A|B) over GF(2^h), rows as tuples of field ints."""

    field: FieldSpec
    n: int
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.n <= 0:
            raise ValidationError("need at least one position")
        for row in self.rows:
            if len(row) != 2 * self.n:
                raise ValidationError(
                    f"row length {len(row)} != 2n = {2 * self.n}"
                )
            for x in row:
                if not 0 <= x < self.field.q:
                    raise ValidationError(f"entry {x} outside field of order {self.field.q}")

    @property
    def r(self) -> int:
        return len(self.rows)

    @property
    def h(self) -> int:
        return self.field.h

    @property
    def k(self) -> Fraction:
        return Fraction(self.h * self.n - self.r, self.h)

    def a_half(self, row: Sequence[int]) -> Sequence[int]:
        return row[: self.n]

    def b_half(self, row: Sequence[int]) -> Sequence[int]:
        return row[self.n :]

    def validate(self) -> None:
        """Check row independence, self-orthogonality, and r <= hn."""
        if self.r > self.h * self.n:
            raise ValidationError(f"r = {self.r} exceeds hn = {self.h * self.n}")
        packed = pack_rows(self)
        if rank(BinMatrix(rows=tuple(packed), ncols=2 * self.h * self.n)) != self.r:
            raise ValidationError("rows are GF(2)-linearly dependent")
        bad = find_non_orthogonal_pair(self)
        if bad is not None:
            raise ValidationError(
                f"rows {bad[0] + 1} and {bad[1] + 1} are not trace-symplectic orthogonal"
            )

    def as_additive(self) -> "AdditiveCode":
        return AdditiveCode(field=self.field, n=self.n, generators=self.rows)


@dataclass(frozen=True)
class AdditiveCode:
    """GF(2)-span of generator vectors in F_q^{2n}; no orthogonality required."""

    field: FieldSpec
    n: int
    generators: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        for row in self.generators:
            if len(row) != 2 * self.n:
                raise ValidationError("generator length != 2n")

    def gf2_dimension(self) -> int:
        packed = _pack_vectors(self.field, self.n, self.generators)
        return rank(BinMatrix(rows=tuple(packed), ncols=2 * self.field.h * self.n))

    def iter_codewords(self) -> Iterable[Tuple[int, ...]]:
        """All 2^rank codewords (small codes only)."""
        basis_packed = _eliminate_packed(
            _pack_vectors(self.field, self.n, self.generators)
        )
        basis = find_trace_orthogonal_basis(self.field)
        words = [0]
        for g in basis_packed:
            words += [w ^ g for w in words]
        for w in words:
            yield unpack_row(self.field, self.n, w, basis)


@dataclass(frozen=True)
class CodeParameters:
    """The [[n, k, d]]_q parameter triple (k exact, possibly non-integral)."""

    n: int
    k: Fraction
    d: int
    q: int

    @property
    def mds(self) -> bool:
        return singleton_margin(self) == 0


def singleton_margin(p: CodeParameters) -> Union[int, Fraction]:
    """n - 2d + 2 - k; nonnegative for every existing code, 0 iff MDS."""
    margin = p.n - 2 * p.d + 2 - p.k
    return int(margin) if margin.denominator == 1 else margin


# ---------------------------------------------------------------------------
# products and weights


def trace_symplectic_product(
    field: FieldSpec, u: Sequence[int], v: Sequence[int]
) -> int:
    """<(a|b),(a'|b')>_s = sum_i tr(a_i b'_i + a'_i b_i), in {0, 1}."""
    if len(u) != len(v) or len(u) % 2:
        raise ValidationError("vectors must share the same even length")
    n = len(u) // 2
    acc = 0
    for i in range(n):
        acc ^= field.mul(u[i], v[n + i]) ^ field.mul(v[i], u[n + i])
    return field.trace(acc)


def is_self_orthogonal(M: StabiliserMatrix) -> bool:
    return find_non_orthogonal_pair(M) is None


def find_non_orthogonal_pair(M: StabiliserMatrix) -> Optional[Tuple[int, int]]:
    """First row pair (i <= j) violating trace-symplectic orthogonality."""
    for i in range(M.r):
        for j in range(i, M.r):
            if trace_symplectic_product(M.field, M.rows[i], M.rows[j]):
                return (i, j)
    return None


def symplectic_weight(v: Sequence[int]) -> int:
    """Number of positions i with (a_i, b_i) != (0, 0)."""
    if len(v) % 2:
        raise ValidationError("vector length must be even")
    n = len(v) // 2
    return sum(1 for i in range(n) if v[i] or v[n + i])


# ---------------------------------------------------------------------------
# packing between field rows and GF(2) bit rows


def pack_rows(M: StabiliserMatrix, basis: Optional[TraceBasis] = None) -> List[int]:
    """Binary expansion of each row, bit-packed in split layout.

    Bit h*i + j of the result is tr(a_i e_j); bit hn + h*i + j is tr(b_i e_j).
    """
    return _pack_vectors(M.field, M.n, M.rows, basis)


def _pack_vectors(
    field: FieldSpec,
    n: int,
    vectors: Iterable[Sequence[int]],
    basis: Optional[TraceBasis] = None,
) -> List[int]:
    if basis is None:
        basis = find_trace_orthogonal_basis(field)
    h = field.h
    hn = h * n
    out = []
    for row in vectors:
        v = 0
        for i in range(n):
            for j, e in enumerate(basis.elements):
                if field.trace(field.mul(row[i], e)):
                    v |= 1 << (h * i + j)
                if field.trace(field.mul(row[n + i], e)):
                    v |= 1 << (hn + h * i + j)
        out.append(v)
    return out


def unpack_row(
    field: FieldSpec, n: int, bits: int, basis: Optional[TraceBasis] = None
) -> Tuple[int, ...]:
    """Inverse of pack_rows for a single split-layout bit row."""
    if basis is None:
        basis = find_trace_orthogonal_basis(field)
    h = field.h
    hn = h * n
    a = []
    b = []
    for i in range(n):
        x = y = 0
        for j, e in enumerate(basis.elements):
            if (bits >> (h * i + j)) & 1:
                x ^= e
            if (bits >> (hn + h * i + j)) & 1:
                y ^= e
        a.append(x)
        b.append(y)
    return tuple(a + b)


def _eliminate_packed(vectors: Iterable[int]) -> List[int]:
    basis: List[int] = []
    for v in vectors:
        for p in basis:
            low = p & -p
            if v & low:
                v ^= p
        if v:
            basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# expansion / merge / convert


def expand(M: StabiliserMatrix, basis: Optional[TraceBasis] = None) -> StabiliserMatrix:
    """Coordinate expansion: [[n,k,d]]_{2^h} -> [[hn,hk,d']]_2 stabiliser matrix."""
    if basis is not None and basis.field != M.field:
        raise ValidationError("basis belongs to a different field")
    if basis is None:
        basis = find_trace_orthogonal_basis(M.field)
    f2 = FieldSpec(1)
    h, n = M.field.h, M.n
    hn = h * n
    packed = pack_rows(M, basis)
    rows = []
    for v in packed:
        rows.append(tuple((v >> c) & 1 for c in range(2 * hn)))
    return StabiliserMatrix(field=f2, n=hn, rows=tuple(rows))


def _normalize_partition(
    partition: Optional[Sequence[Sequence[int]]], n_bin: int, h: int
) -> Tuple[Tuple[int, ...], ...]:
    if partition is None:
        return tuple(tuple(range(g * h, (g + 1) * h)) for g in range(n_bin // h))
    groups = tuple(tuple(g) for g in partition)
    flat = [c for g in groups for c in g]
    if sorted(flat) != list(range(n_bin)) or any(len(g) != h for g in groups):
        raise ValidationError(
            f"partition must split the {n_bin} positions into disjoint {h}-sets"
        )
    return groups


def merge(
    M: StabiliserMatrix,
    h: int,
    basis: Optional[TraceBasis] = None,
    partition: Optional[Sequence[Sequence[int]]] = None,
    *,
    check_general_position: bool = True,
) -> StabiliserMatrix:
    """Merge h-sets of binary positions into GF(2^h) positions (inverse of expand).

    `partition` lists, for each output position, the h input positions whose
    bits become the coordinates of the merged entry; group i of the A half is
    paired with group i of the B half.  When `check_general_position` is set
    (the default), every output position must induce a full-rank r x 2h
    binary block; a deficient block means the merged code's symplectic dual
    contains a weight-one element at that position, and a ValidationError
    naming the block is raised.  Pass check_general_position=False to merge
    anyway (the algebraic round trip merge(expand(X)) = X holds regardless).
    """
    if M.field.h != 1:
        raise ValidationError("merge expects a binary stabiliser matrix")
    n_bin = M.n
    if n_bin % h:
        raise ValidationError(f"{h} does not divide the number of positions {n_bin}")
    field = basis.field if basis is not None else FieldSpec(h)
    if field.h != h:
        raise ValidationError("basis field does not match target extension degree")
    if basis is None:
        basis = find_trace_orthogonal_basis(field)
    groups = _normalize_partition(partition, n_bin, h)
    n_out = n_bin // h

    if check_general_position:
        for gi, g in enumerate(groups):
            cols = []
            for c in g:
                cols.append(sum(((M.rows[s][c]) & 1) << s for s in range(M.r)))
            for c in g:
                cols.append(sum(((M.rows[s][n_bin + c]) & 1) << s for s in range(M.r)))
            blk_rank = rank(BinMatrix(rows=tuple(cols), ncols=max(M.r, 1)))
            if blk_rank != 2 * h:
                raise ValidationError(
                    f"invalid partition - weight-one dual element: block {gi} "
                    f"has rank {blk_rank} < {2 * h}"
                )

    rows = []
    for row in M.rows:
        a = []
        b = []
        for g in groups:
            x = y = 0
            for j, c in enumerate(g):
                if row[c]:
                    x ^= basis.elements[j]
                if row[n_bin + c]:
                    y ^= basis.elements[j]
            a.append(x)
            b.append(y)
        rows.append(tuple(a + b))
    return StabiliserMatrix(field=field, n=n_out, rows=tuple(rows))


def convert(
    M: StabiliserMatrix,
    to_h: int,
    permutation: Optional[Sequence[int]] = None,
    *,
    basis_from: Optional[TraceBasis] = None,
    basis_to: Optional[TraceBasis] = None,
    partition: Optional[Sequence[Sequence[int]]] = None,
    check_general_position: bool = True,
) -> StabiliserMatrix:
    """expand -> permute binary position pairs -> merge into GF(2^{to_h}).

    `permutation` has length hn; output binary position j is input binary
    position permutation[j] (A and B halves move together).  Requires
    to_h | hn.  `partition` is forwarded to :func:`merge` to pick which
    binary positions form each merged symbol.
    """
    hn = M.field.h * M.n
    if hn % to_h:
        raise ValidationError(f"target degree {to_h} does not divide hn = {hn}")
    B = expand(M, basis_from)
    if permutation is not None:
        perm = list(permutation)
        if sorted(perm) != list(range(hn)):
            raise ValidationError(f"permutation must rearrange 0..{hn - 1}")
        rows = []
        for row in B.rows:
            a = [row[perm[j]] for j in range(hn)]
            b = [row[hn + perm[j]] for j in range(hn)]
            rows.append(tuple(a + b))
        B = StabiliserMatrix(field=B.field, n=hn, rows=tuple(rows))
    if to_h == 1:
        if partition is not None:
            raise ValidationError("a partition only applies when merging (to_h > 1)")
        return B
    return merge(
        B,
        to_h,
        basis=basis_to,
        partition=partition,
        check_general_position=check_general_position,
    )


# ---------------------------------------------------------------------------
# duality


def symplectic_dual(C: Union[AdditiveCode, StabiliserMatrix]) -> AdditiveCode:
    """Generators of C^perp_s = {v : <v,w>_s = 0 for all w in C}.

    Computed by expanding to F_2^{2hn}, taking the kernel of the binary
    symplectic Gram system, and merging back; GF(2) dimensions satisfy
    |C| * |C^perp_s| = 2^r * 2^{2hn-r} = q^{2n}.
    """
    if isinstance(C, StabiliserMatrix):
        C = C.as_additive()
    field, n = C.field, C.n
    hn = field.h * n
    basis = find_trace_orthogonal_basis(field)
    packed = _pack_vectors(field, n, C.generators, basis)
    mask = (1 << hn) - 1
    swapped = tuple(((v & mask) << hn) | (v >> hn) for v in packed)
    K = kernel(BinMatrix(rows=swapped, ncols=2 * hn))
    gens = tuple(unpack_row(field, n, v, basis) for v in K.basis)
    return AdditiveCode(field=field, n=n, generators=gens)


def _adapted_dual_basis(M: StabiliserMatrix) -> Tuple[List[int], List[int]]:
    """Split-layout bit bases (code_basis, extension) with
    span(code_basis + extension) = C^perp_s and span(code_basis) = C."""
    field, n = M.field, M.n
    hn = field.h * n
    packed = pack_rows(M)
    mask = (1 << hn) - 1
    swapped = tuple(((v & mask) << hn) | (v >> hn) for v in packed)
    K = kernel(BinMatrix(rows=swapped, ncols=2 * hn))
    code_basis = _eliminate_packed(packed)
    if len(code_basis) != M.r:
        raise ValidationError("rows are GF(2)-linearly dependent")
    ext: List[int] = []
    acc = list(code_basis)
    for v in K.basis:
        w = v
        for p in acc:
            low = p & -p
            if w & low:
                w ^= p
        if w:
            acc.append(w)
            ext.append(v)
    if len(code_basis) + len(ext) != K.dim:
        raise ValidationError("code is not contained in its symplectic dual")
    return code_basis, ext


# ---------------------------------------------------------------------------
# weight enumeration engine


def _interleave(v: int, n: int, h: int) -> int:
    """Split layout (a-bits, then b-bits) -> per-position 2h-bit fields."""
    hn = h * n
    out = 0
    for i in range(n):
        a = (v >> (h * i)) & ((1 << h) - 1)
        b = (v >> (hn + h * i)) & ((1 << h) - 1)
        out |= (a | (b << h)) << (2 * h * i)
    return out


def _gray_flips(m: int) -> Iterable[int]:
    """Positions flipped along the Gray walk of m bits (2^m - 1 steps)."""
    for idx in range(1, 1 << m):
        yield ((idx & -idx).bit_length()) - 1


def _min_weight_python(
    inner: Sequence[int], outer: Sequence[int], n: int, h: int
) -> int:
    """Reference Gray-code walk, pure Python ints, split-layout inputs.

    Enumerates {i ^ o : i in span(inner), o a combination of `outer` with at
    least one outer generator when `outer` is nonempty}.  Returns the minimum
    symplectic weight over the nonzero vectors seen (the zero vector never
    counts).
    """
    hn = h * n
    fm = (1 << h) - 1
    best = n + 1

    def weight(v: int) -> int:
        w = 0
        for i in range(n):
            if (v >> (h * i)) & fm or (v >> (hn + h * i)) & fm:
                w += 1
        return w

    def scan_inner(offset: int) -> None:
        nonlocal best
        cur = offset
        w = weight(cur)
        if 0 < w < best:
            best = w
        for flip in _gray_flips(len(inner)):
            cur ^= inner[flip]
            w = weight(cur)
            if 0 < w < best:
                best = w

    if not outer:
        scan_inner(0)
    else:
        cur = 0
        for flip in _gray_flips(len(outer)):
            cur ^= outer[flip]
            scan_inner(cur)
    return best


_NP_WORD = 64


def _min_weight_numpy(
    inner: Sequence[int], outer: Sequence[int], n: int, h: int
) -> int:
    """Vectorized variant of the same enumeration (needs 2h*n <= 64 bits)."""
    w = 2 * h
    width = w * n
    if width > _NP_WORD:
        return _min_weight_python(inner, outer, n, h)
    inner_i = [np.uint64(_interleave(v, n, h)) for v in inner]
    outer_i = [np.uint64(_interleave(v, n, h)) for v in outer]
    lsb_mask = np.uint64(sum(1 << (w * i) for i in range(n)))

    # table = all combinations of the low inner generators
    low = inner_i[: min(len(inner_i), 18)]
    high = inner_i[len(low) :]
    table = np.zeros(1, dtype=np.uint64)
    for g in low:
        table = np.concatenate([table, table ^ g])

    def fold_weights(chunk: np.ndarray) -> np.ndarray:
        acc = chunk.copy()
        for s in range(1, w):
            acc |= chunk >> np.uint64(s)
        acc &= lsb_mask
        return np.bitwise_count(acc)

    best = n + 1

    def scan(offset) -> None:
        nonlocal best
        cur = offset
        # walk the high inner generators; each step scans one table chunk
        steps = [None] + list(_gray_flips(len(high)))
        for flip in steps:
            if flip is not None:
                cur = cur ^ high[flip]
            weights = fold_weights(table ^ cur)
            if cur == np.uint64(0):
                weights[0] = 255  # the zero vector's slot; never a minimum
            m = int(weights.min())
            if 0 < m < best:
                best = m

    if not outer_i:
        scan(np.uint64(0))
    else:
        cur = np.uint64(0)
        for flip in _gray_flips(len(outer_i)):
            cur = cur ^ outer_i[flip]
            scan(cur)
    return best


def minimum_distance(
    M: StabiliserMatrix,
    budget: int = DEFAULT_DISTANCE_BUDGET,
    *,
    use_reference: bool = False,
) -> int:
    """Exact minimum distance by exhaustive dual enumeration.

    Walks all nonzero elements of C^perp_s, excluding members of C when
    k > 0 (via an adapted basis: excluded vectors are exactly the
    combinations with zero extension part, so no membership tests happen
    inside the loop).  Raises BudgetExceededError when the dual has more
    than `budget` elements.  `use_reference` forces the pure-Python
    Gray-walk reference implementation.
    """
    field, n = M.field, M.n
    h = field.h
    dual_dim = 2 * h * n - M.r
    if (1 << dual_dim) > budget:
        raise BudgetExceededError(
            f"dual has 2^{dual_dim} elements; budget is {budget}"
        )
    code_basis, ext = _adapted_dual_basis(M)
    outer = ext if M.k > 0 else []
    impl = _min_weight_python if use_reference else _min_weight_numpy
    d = impl(code_basis, outer, n, h)
    if not 0 < d <= n:
        raise ValidationError("empty enumeration: no nonzero dual vectors")
    return d


def is_pure(M: StabiliserMatrix, d: Optional[int] = None) -> bool:
    """True iff the minimum nonzero swt over C itself is >= d."""
    if d is None:
        d = minimum_distance(M)
    code_basis = _eliminate_packed(pack_rows(M))
    w = _min_weight_numpy(code_basis, [], M.n, M.field.h)
    return w >= d


def code_parameters(
    M: StabiliserMatrix, budget: int = DEFAULT_DISTANCE_BUDGET
) -> CodeParameters:
    return CodeParameters(
        n=M.n, k=M.k, d=minimum_distance(M, budget), q=M.field.q
    )
