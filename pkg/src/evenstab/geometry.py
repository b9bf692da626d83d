"""Quantum sets of symplectic polar spaces for binary stabiliser matrices.

A binary stabiliser matrix with r rows and hn positions turns into n
"blocks": 2h-dimensional subspaces of F_2^r spanned by the binary columns
that belong to the same group of h positions.  Each block carries a
distinguished set of h lines (one per binary position, pairing the a-side
and b-side columns) and the unique symplectic form for which those lines
are hyperbolic and mutually perpendicular.  The resulting configuration
characterises the code: the even-intersection condition holds exactly when
the matrix is self-orthogonal, and the code's minimum distance equals a
purely geometric quantity computed from dependent point sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import BudgetExceededError, ValidationError
from .f2linalg import (
    BinMatrix,
    Subspace,
    codim2_functional_pairs,
    dot,
    kernel,
    rank,
    solve,
)
from .symcode import StabiliserMatrix

ISOTROPIC = "isotropic"
HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class SymplecticForm:
    """A nondegenerate alternating bilinear form on F_2^dim.

    gram[s] is the bit-packed row s of the Gram matrix: bit t of gram[s] is
    f(e_s, e_t).  The matrix must be symmetric with zero diagonal (so that
    f(v, v) = 0 for every v) and invertible.
    """

    dim: int
    gram: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.gram) != self.dim:
            raise ValidationError("Gram matrix must be square of size dim")
        for s, row in enumerate(self.gram):
            if row >> self.dim:
                raise ValidationError("Gram row has bits beyond dim")
            if (row >> s) & 1:
                raise ValidationError("Gram diagonal must be zero")
            for t in range(self.dim):
                if (row >> t) & 1 != (self.gram[t] >> s) & 1:
                    raise ValidationError("Gram matrix must be symmetric")
        if rank(BinMatrix(rows=self.gram, ncols=self.dim)) != self.dim:
            raise ValidationError("form is degenerate")

    @classmethod
    def standard(cls, h: int) -> "SymplecticForm":
        """The form with f(e_j, e_{h+j}) = 1 and zero between distinct pairs."""
        rows = [1 << (h + j) for j in range(h)] + [1 << j for j in range(h)]
        return cls(dim=2 * h, gram=tuple(rows))

    def apply(self, v: int) -> int:
        """The functional f(., v), bit-packed (bit s = f(e_s, v))."""
        out = 0
        for s, row in enumerate(self.gram):
            out |= dot(row, v) << s
        return out

    def product(self, u: int, v: int) -> int:
        return dot(u, self.apply(v))

    def perp(self, S: Subspace) -> Subspace:
        """{v : f(v, w) = 0 for all w in S}."""
        if S.ambient_dim != self.dim:
            raise ValidationError("subspace lives in a different dimension")
        rows = tuple(self.apply(w) for w in S.basis)
        return kernel(BinMatrix(rows=rows, ncols=self.dim))

    def is_totally_isotropic(self, S: Subspace) -> bool:
        basis = S.basis
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                if self.product(basis[i], basis[j]):
                    return False
        return True

    def inverse_gram(self) -> Tuple[int, ...]:
        """Rows of the inverse Gram matrix."""
        n = self.dim
        G = BinMatrix(rows=self.gram, ncols=n)
        cols = []
        for c in range(n):
            x = solve(G, 1 << c)
            if x is None:  # pragma: no cover - nondegeneracy checked at init
                raise ValidationError("form is degenerate")
            cols.append(x)
        return tuple(
            sum(((cols[t] >> s) & 1) << t for t in range(n)) for s in range(n)
        )


LineLike = Union[Subspace, Tuple[int, int]]


def classify_line(form: SymplecticForm, line: LineLike) -> str:
    """Whether a 2-dimensional subspace is isotropic or hyperbolic.

    The restriction of an alternating form to a 2-space is either zero
    (isotropic: the line meets its perp) or nondegenerate (hyperbolic: the
    line is disjoint from its perp) -- there is no intermediate case.
    """
    if isinstance(line, Subspace):
        if line.dim != 2:
            raise ValidationError("classify_line expects a 2-dimensional subspace")
        u, v = line.basis
    else:
        u, v = line
        if Subspace.from_vectors((u, v), form.dim).dim != 2:
            raise ValidationError("classify_line expects two independent vectors")
    return HYPERBOLIC if form.product(u, v) else ISOTROPIC


def line_census(form: SymplecticForm) -> Tuple[int, int]:
    """(isotropic, hyperbolic) counts over all lines of F_2^dim."""
    iso = hyp = 0
    for u in range(1, 1 << form.dim):
        for v in range(u + 1, 1 << form.dim):
            if u ^ v > v:  # count each line {u, v, u^v} once
                if form.product(u, v):
                    hyp += 1
                else:
                    iso += 1
    return iso, hyp


@dataclass(frozen=True)
class Block:
    """A 2h-dimensional subspace of F_2^r with h distinguished lines.

    basis holds the 2h spanning column vectors in the order
    (a_0, ..., a_{h-1}, b_0, ..., b_{h-1}); the j-th distinguished line is
    span{basis[j], basis[h+j]}.  The form is expressed in basis coordinates.
    """

    ambient_dim: int
    h: int
    basis: Tuple[int, ...]
    form: SymplecticForm

    def __post_init__(self) -> None:
        if len(self.basis) != 2 * self.h:
            raise ValidationError("block basis must have 2h vectors")
        if self.form.dim != 2 * self.h:
            raise ValidationError("form dimension must be 2h")
        for v in self.basis:
            if v >> self.ambient_dim:
                raise ValidationError("basis vector has bits beyond ambient dim")

    def validate(self) -> None:
        if rank(BinMatrix(rows=self.basis, ncols=self.ambient_dim)) != 2 * self.h:
            raise ValidationError(
                "rank-deficient block: columns span fewer than 2h dimensions"
            )
        # each distinguished line must be hyperbolic with the others in its perp
        for j in range(self.h):
            if self.form.product(1 << j, 1 << (self.h + j)) != 1:
                raise ValidationError(f"distinguished line {j} is not hyperbolic")
            for m in range(self.h):
                if m == j:
                    continue
                for u, v in itertools.product(
                    (1 << j, 1 << (self.h + j)), (1 << m, 1 << (self.h + m))
                ):
                    if self.form.product(u, v):
                        raise ValidationError(
                            f"distinguished lines {j} and {m} are not perpendicular"
                        )

    def lines(self) -> Tuple[Tuple[int, int], ...]:
        """The h distinguished lines as ambient vector pairs."""
        return tuple(
            (self.basis[j], self.basis[self.h + j]) for j in range(self.h)
        )

    def subspace(self) -> Subspace:
        return Subspace.from_vectors(self.basis, self.ambient_dim)

    def to_ambient(self, u: int) -> int:
        """Ambient vector of a local coordinate vector (2h bits)."""
        out = 0
        for j, b in enumerate(self.basis):
            if (u >> j) & 1:
                out ^= b
        return out

    def pullback(self, functional: int) -> int:
        """Restriction of an ambient functional to block coordinates."""
        out = 0
        for j, b in enumerate(self.basis):
            out |= dot(functional, b) << j
        return out

    def points(self) -> List[int]:
        """All nonzero ambient vectors of the block (distinct iff full rank)."""
        return [self.to_ambient(u) for u in range(1, 1 << (2 * self.h))]


@dataclass(frozen=True)
class PolarSpaceSet:
    """n blocks spanning F_2^r, each with its symplectic form."""

    ambient_dim: int
    blocks: Tuple[Block, ...]

    @property
    def n(self) -> int:
        return len(self.blocks)

    @property
    def h(self) -> int:
        return self.blocks[0].h

    def validate(self) -> None:
        if not self.blocks:
            raise ValidationError("need at least one block")
        allcols = []
        for blk in self.blocks:
            if blk.ambient_dim != self.ambient_dim:
                raise ValidationError("block ambient dimension mismatch")
            blk.validate()
            allcols.extend(blk.basis)
        if rank(BinMatrix(rows=tuple(allcols), ncols=self.ambient_dim)) != self.ambient_dim:
            raise ValidationError("blocks do not span the ambient space")


def blocks_from_matrix(M: StabiliserMatrix, h: int) -> PolarSpaceSet:
    """Group the binary columns of M into n = positions/h blocks of 2h columns.

    Block i is spanned by the a-side columns h*i .. h*i+h-1 followed by the
    b-side columns of the same positions; its j-th distinguished line pairs
    the a- and b-columns of binary position h*i+j.  Every block must have
    full rank 2h: a deficient block is equivalent to the merged code's dual
    containing a weight-one element.
    """
    if M.field.h != 1:
        raise ValidationError("blocks_from_matrix expects a binary stabiliser matrix")
    n_bin = M.n
    if h < 1 or n_bin % h:
        raise ValidationError(f"{h} does not divide the number of positions {n_bin}")
    r = M.r
    form = SymplecticForm.standard(h)

    def col(c: int) -> int:
        return sum((M.rows[s][c] & 1) << s for s in range(r))

    blocks = []
    for i in range(n_bin // h):
        basis = tuple(col(h * i + j) for j in range(h)) + tuple(
            col(n_bin + h * i + j) for j in range(h)
        )
        if rank(BinMatrix(rows=basis, ncols=r)) != 2 * h:
            raise ValidationError(
                f"rank-deficient block {i}: the dual code has a weight-one element"
            )
        blocks.append(Block(ambient_dim=r, h=h, basis=basis, form=form))
    X = PolarSpaceSet(ambient_dim=r, blocks=tuple(blocks))
    X.validate()
    return X


def _block_condition(blk: Block, f1: int, f2: int) -> bool:
    """Whether a codim-2 ambient subspace meets the block in a subspace
    whose perp (inside the block) fails to be totally isotropic."""
    g1 = blk.pullback(f1)
    g2 = blk.pullback(f2)
    inter = kernel(BinMatrix(rows=(g1, g2), ncols=2 * blk.h))
    P = blk.form.perp(inter)
    return not blk.form.is_totally_isotropic(P)


def verify_quantum_set(X: PolarSpaceSet, *, method: str = "exhaustive") -> bool:
    """Even-intersection test over every codimension-2 ambient subspace.

    For each codim-2 subspace, the number of blocks it meets in a subspace
    with a non-totally-isotropic perp must be even.  For h = 1 this reduces
    to the classical condition that every codim-2 subspace is skew to an
    even number of the lines.

    method="exhaustive" walks every codim-2 subspace (one canonical
    functional pair each).  method="gram" evaluates the equivalent bilinear
    identity sum_i S_i K_i S_i^T = 0, where S_i stacks block i's columns and
    K_i is the inverse Gram matrix of its form; the per-subspace count for
    functionals (f1, f2) equals f1 S_i K_i S_i^T f2^T, so the condition for
    all subspaces at once is the vanishing of that r x r matrix.
    """
    X.validate()
    r = X.ambient_dim
    if method == "gram":
        total = [0] * r
        for blk in X.blocks:
            w = 2 * blk.h
            srows = [
                sum(((blk.basis[j] >> s) & 1) << j for j in range(w))
                for s in range(r)
            ]
            kinv = blk.form.inverse_gram()
            kmat = BinMatrix(rows=kinv, ncols=w)
            for s in range(r):
                ks = kmat.apply(srows[s])
                total[s] ^= sum(dot(srows[t], ks) << t for t in range(r))
        return all(row == 0 for row in total)
    if method != "exhaustive":
        raise ValidationError(f"unknown method {method!r}")
    if r < 2:
        return True
    for f1, f2 in codim2_functional_pairs(r):
        parity = 0
        for blk in X.blocks:
            if _block_condition(blk, f1, f2):
                parity ^= 1
        if parity:
            return False
    return True


def codim2_count_histogram(X: PolarSpaceSet) -> Dict[int, int]:
    """How many codim-2 ambient subspaces count m blocks, for each m.

    A block is counted by a subspace under the same condition as in
    :func:`verify_quantum_set`; X is a quantum set iff every occurring
    count m is even.
    """
    X.validate()
    r = X.ambient_dim
    hist: Dict[int, int] = {}
    if r < 2:
        return hist
    for f1, f2 in codim2_functional_pairs(r):
        m = sum(1 for blk in X.blocks if _block_condition(blk, f1, f2))
        hist[m] = hist.get(m, 0) + 1
    return hist


def check_even_skew_theorem(h: int) -> bool:
    """Exhaustively confirm, on the standard rank-h block, that a subspace of
    codimension <= 2 is skew to an even number of the distinguished lines
    exactly when its perp is totally isotropic."""
    form = SymplecticForm.standard(h)
    dim = 2 * h
    lines = [(1 << j, 1 << (h + j)) for j in range(h)]

    def agree(functionals: Sequence[int]) -> bool:
        pi = kernel(BinMatrix(rows=tuple(functionals), ncols=dim))
        skew = 0
        for u, v in lines:
            if not (pi.contains(u) or pi.contains(v) or pi.contains(u ^ v)):
                skew += 1
        ti = form.is_totally_isotropic(form.perp(pi))
        return (skew % 2 == 0) == ti

    if not agree(()):  # codimension 0
        return False
    for f in range(1, 1 << dim):  # codimension 1: one hyperplane per functional
        if not agree((f,)):
            return False
    if dim >= 2:
        for f1, f2 in codim2_functional_pairs(dim):
            if not agree((f1, f2)):
                return False
    return True


def _no_hyperplane(X: PolarSpaceSet, chosen: Sequence[int], points: Sequence[int]) -> bool:
    """True when no hyperplane contains all given points together with every
    block outside `chosen`."""
    rows = list(points)
    chosen_set = set(chosen)
    for j, blk in enumerate(X.blocks):
        if j not in chosen_set:
            rows.extend(blk.basis)
    return rank(BinMatrix(rows=tuple(rows), ncols=X.ambient_dim)) == X.ambient_dim


def geometric_min_distance(
    X: PolarSpaceSet,
    k: Union[int, Fraction] = 0,
    *,
    budget: int = 10**8,
) -> int:
    """Minimum size of a dependent set of points chosen from distinct blocks.

    A candidate is m nonzero points, one from each of m distinct blocks,
    whose sum is zero.  When k > 0 a candidate only counts if no hyperplane
    contains the chosen points together with all the unchosen blocks (this
    excludes sets that come from rows of the stabiliser matrix itself).
    """
    X.validate()
    n = X.n
    pts: List[List[int]] = [blk.points() for blk in X.blocks]
    psets = [set(p) for p in pts]
    examined = 0
    for m in range(2, n + 1):
        for combo in itertools.combinations(range(n), m):
            last = combo[-1]
            for partial in itertools.product(*(pts[i] for i in combo[:-1])):
                examined += 1
                if examined > budget:
                    raise BudgetExceededError(
                        f"examined more than {budget} point tuples"
                    )
                acc = 0
                for p in partial:
                    acc ^= p
                if acc in psets[last]:
                    if k == 0 or _no_hyperplane(X, combo, partial + (acc,)):
                        return m
    raise ValidationError("no dependent point set exists across the blocks")


def project_from_block(X: PolarSpaceSet, i: int) -> PolarSpaceSet:
    """Quotient the ambient space by block i; the remaining blocks descend.

    The projection of a valid configuration drops the ambient dimension by
    2h and keeps every other block's rank (a rank drop would mean the
    original configuration had two blocks sharing a point, i.e. distance
    less than 3); the distinguished lines and forms carry over unchanged in
    the image coordinates.
    """
    if X.n < 2:
        raise ValidationError("need at least two blocks to project")
    if not 0 <= i < X.n:
        raise ValidationError("block index out of range")
    B = X.blocks[i].subspace()
    functionals = B.annihilator().basis
    new_dim = len(functionals)

    def phi(v: int) -> int:
        return sum(dot(f, v) << t for t, f in enumerate(functionals))

    new_blocks = []
    for j, blk in enumerate(X.blocks):
        if j == i:
            continue
        imgs = tuple(phi(v) for v in blk.basis)
        if rank(BinMatrix(rows=imgs, ncols=new_dim)) != 2 * blk.h:
            raise ValidationError(
                f"projected block {j} is rank-deficient: blocks {i} and {j} overlap"
            )
        new_blocks.append(
            Block(ambient_dim=new_dim, h=blk.h, basis=imgs, form=blk.form)
        )
    Y = PolarSpaceSet(ambient_dim=new_dim, blocks=tuple(new_blocks))
    Y.validate()
    return Y
