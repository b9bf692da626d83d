"""Bit-packed linear algebra over GF(2).

Vectors are plain ints: bit j of the int is coordinate j (so coordinate 0 is
the least significant bit).  A :class:`BinMatrix` is a list of such row ints
plus an explicit column count.  All algorithms are exact and deterministic.

Matrix-vector products treat rows as functionals: ``(M @ x)_i = parity(row_i & x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

__all__ = [
    "BinMatrix",
    "Subspace",
    "dot",
    "enumerate_codim2_subspaces",
    "codim2_functional_pairs",
    "gaussian_binomial_codim2",
    "kernel",
    "rank",
    "rref",
    "solve",
]


def dot(u: int, v: int) -> int:
    """GF(2) dot product of two bit-packed vectors."""
    return (u & v).bit_count() & 1


@dataclass(frozen=True)
class BinMatrix:
    """A matrix over GF(2) stored as bit-packed rows."""

    rows: Tuple[int, ...]
    ncols: int

    def __post_init__(self):
        if self.ncols < 0:
            raise ValueError("negative column count")
        mask = (1 << self.ncols) - 1
        for r in self.rows:
            if r & ~mask:
                raise ValueError("row has bits beyond ncols")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def apply(self, x: int) -> int:
        """M @ x: bit i of the result is parity(row_i & x)."""
        out = 0
        for i, r in enumerate(self.rows):
            out |= dot(r, x) << i
        return out

    def column(self, j: int) -> int:
        """Column j as a bit-packed vector over row indices."""
        c = 0
        for i, r in enumerate(self.rows):
            c |= ((r >> j) & 1) << i
        return c

    def transpose(self) -> "BinMatrix":
        return BinMatrix(
            rows=tuple(self.column(j) for j in range(self.ncols)),
            ncols=self.nrows,
        )


def _eliminate(rows: Iterable[int]) -> List[int]:
    """Full reduced row echelon form; pivots are lowest set bits, rows sorted
    by ascending pivot."""
    reduced: List[int] = []  # kept fully reduced against each other
    for v in rows:
        for p in reduced:
            low = p & -p
            if v & low:
                v ^= p
        if v == 0:
            continue
        low = v & -v
        reduced = [p ^ v if p & low else p for p in reduced]
        reduced.append(v)
    reduced.sort(key=lambda p: p & -p)
    return reduced


def rref(M: BinMatrix) -> Tuple[BinMatrix, int, Tuple[int, ...]]:
    """Reduced row echelon form, rank, and pivot column indices."""
    reduced = _eliminate(M.rows)
    pivots = tuple((p & -p).bit_length() - 1 for p in reduced)
    return BinMatrix(rows=tuple(reduced), ncols=M.ncols), len(reduced), pivots


def rank(M: BinMatrix) -> int:
    return len(_eliminate(M.rows))


def kernel(M: BinMatrix) -> "Subspace":
    """Right kernel {x : M @ x = 0} as a canonical Subspace."""
    R, rk, pivots = rref(M)
    pivset = set(pivots)
    free = [j for j in range(M.ncols) if j not in pivset]
    basis = []
    for f in free:
        v = 1 << f
        for p, row in zip(pivots, R.rows):
            if (row >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return Subspace.from_vectors(basis, M.ncols)


def inverse(M: BinMatrix) -> Optional["BinMatrix"]:
    """Inverse of a square matrix, or None if it is singular."""
    n = M.ncols
    if M.nrows != n:
        raise ValueError(f"matrix is {M.nrows}x{n}, not square")
    augmented = [r | (1 << (n + i)) for i, r in enumerate(M.rows)]
    reduced = _eliminate(augmented)
    out = [0] * n
    for row in reduced:
        pivot = (row & -row).bit_length() - 1
        if pivot >= n:
            return None
        out[pivot] = row >> n
    return BinMatrix(rows=tuple(out), ncols=n)


def solve(M: BinMatrix, b: int) -> Optional[int]:
    """One solution x of M @ x = b, or None if inconsistent.

    b is bit-packed over row indices (bit i = right-hand side of row i).
    """
    n = M.ncols
    aug = [r | (((b >> i) & 1) << n) for i, r in enumerate(M.rows)]
    reduced = _eliminate(aug)
    x = 0
    for row in reduced:
        p = (row & -row).bit_length() - 1
        if p == n:
            return None  # pivot in the augmented column: inconsistent
        if (row >> n) & 1:
            x |= 1 << p
    return x


class Subspace:
    """A subspace of F_2^n in canonical RREF form.

    Two subspaces are equal iff their canonical bases are bitwise equal.
    """

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, basis: Sequence[int], ambient_dim: int, _canonical: bool = False):
        if not _canonical:
            raise TypeError("use Subspace.from_vectors")
        self.ambient_dim = ambient_dim
        self.basis = tuple(basis)
        self._pivots = tuple((v & -v).bit_length() - 1 for v in self.basis)

    @classmethod
    def from_vectors(cls, vectors: Iterable[int], ambient_dim: int) -> "Subspace":
        reduced = _eliminate(vectors)
        mask = (1 << ambient_dim) - 1
        for v in reduced:
            if v & ~mask:
                raise ValueError("vector has bits beyond ambient dimension")
        return cls(reduced, ambient_dim, _canonical=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: int) -> bool:
        for row in self.basis:
            if v & (row & -row):
                v ^= row
        return v == 0

    def vectors(self) -> Iterator[int]:
        """All 2^dim elements (use only for small dimensions)."""
        out = [0]
        for b in self.basis:
            out += [x ^ b for x in out]
        return iter(out)

    def span(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.from_vectors(self.basis + other.basis, self.ambient_dim)

    def annihilator(self) -> "Subspace":
        """{f : f . v = 0 for all v in self} under the standard dot product."""
        return kernel(BinMatrix(rows=self.basis, ncols=self.ambient_dim))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return self.annihilator().span(other.annihilator()).annihilator()

    def project_quotient(self, W: "Subspace") -> Tuple["Subspace", Tuple[int, ...]]:
        """Image of this subspace in the quotient F_2^n / W.

        Quotient coordinates are the values of a canonical basis of
        functionals vanishing on W (returned as the second item), so the
        image lives in an (n - dim W)-dimensional ambient space.
        """
        self._check_ambient(W)
        functionals = W.annihilator().basis
        imgs = []
        for v in self.basis:
            imgs.append(sum(dot(f, v) << i for i, f in enumerate(functionals)))
        return (
            Subspace.from_vectors(imgs, len(functionals)),
            functionals,
        )

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        rows = ", ".join(format(v, f"0{self.ambient_dim}b")[::-1] for v in self.basis)
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, rows=[{rows}])"


def gaussian_binomial_codim2(r: int) -> int:
    """Number of (r-2)-dimensional subspaces of F_2^r: [r choose 2]_2."""
    if r < 2:
        return 0
    return ((1 << r) - 1) * ((1 << (r - 1)) - 1) // 3


def codim2_functional_pairs(r: int) -> Iterator[Tuple[int, int]]:
    """Canonical RREF pairs (f1, f2) of independent functionals on F_2^r.

    Each 2-dimensional subspace of the dual space appears exactly once:
    pivot columns j1 < j2, f1 has pivot j1 and zero at j2, f2 has pivot j2,
    free entries only at columns above the pivot.  Deterministic order:
    ascending (j1, j2), then ascending free bits (f2 outer, f1 inner).
    """
    if r < 2:
        raise ValueError("need ambient dimension >= 2")
    for j1 in range(r):
        for j2 in range(j1 + 1, r):
            f1_free = [c for c in range(j1 + 1, r) if c != j2]
            f2_free = list(range(j2 + 1, r))
            for m2 in range(1 << len(f2_free)):
                f2 = 1 << j2
                for b, c in enumerate(f2_free):
                    if (m2 >> b) & 1:
                        f2 |= 1 << c
                for m1 in range(1 << len(f1_free)):
                    f1 = 1 << j1
                    for b, c in enumerate(f1_free):
                        if (m1 >> b) & 1:
                            f1 |= 1 << c
                    yield f1, f2


def enumerate_codim2_subspaces(r: int) -> Iterator[Subspace]:
    """Every subspace of F_2^r of dimension r-2, exactly once.

    Each subspace is the kernel of a canonical pair of independent
    functionals (see :func:`codim2_functional_pairs`).
    """
    for f1, f2 in codim2_functional_pairs(r):
        yield kernel(BinMatrix(rows=(f1, f2), ncols=r))
