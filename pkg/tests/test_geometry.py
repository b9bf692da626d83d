"""Tests for blocks, symplectic forms, quantum-set verification, and the
geometric minimum distance."""


import pytest

from evenstab.errors import BudgetExceededError, ValidationError
from evenstab.f2linalg import BinMatrix, Subspace, gaussian_binomial_codim2, rank
from evenstab.geometry import (
    HYPERBOLIC,
    ISOTROPIC,
    Block,
    PolarSpaceSet,
    SymplecticForm,
    blocks_from_matrix,
    check_even_skew_theorem,
    classify_line,
    geometric_min_distance,
    line_census,
    project_from_block,
    verify_quantum_set,
)
from evenstab.gf2h import FieldSpec
from evenstab.symcode import (
    StabiliserMatrix,
    expand,
    merge,
    minimum_distance,
)

from conftest import random_self_orthogonal

# the known pairing of the 8-cycle's lines into four solids (a [[4,0,3]]
# code over GF(4)); groups are binary positions of the cycle matrix
PAIRING = ((0, 3), (1, 6), (2, 5), (4, 7))


@pytest.fixture
def witness403(eight_cycle):
    return merge(eight_cycle, 2, partition=PAIRING)


def polar(M, h):
    """Blocks of a q-ary matrix via its binary expansion."""
    return blocks_from_matrix(expand(M) if M.field.h > 1 else M, h)


# ---------------------------------------------------------------------------
# forms


def test_standard_form(rng):
    for h in (1, 2, 3):
        f = SymplecticForm.standard(h)
        for j in range(h):
            assert f.product(1 << j, 1 << (h + j)) == 1
            for m in range(h):
                if m != j:
                    assert f.product(1 << j, 1 << m) == 0
                    assert f.product(1 << j, 1 << (h + m)) == 0
        for _ in range(50):
            v = rng.randrange(1 << (2 * h))
            assert f.product(v, v) == 0


def test_form_validation():
    with pytest.raises(ValidationError, match="diagonal"):
        SymplecticForm(dim=2, gram=(0b11, 0b01))
    with pytest.raises(ValidationError, match="symmetric"):
        SymplecticForm(dim=3, gram=(0b010, 0b000, 0b000))
    with pytest.raises(ValidationError, match="degenerate"):
        SymplecticForm(dim=2, gram=(0, 0))


def test_inverse_gram():
    for h in (1, 2, 3):
        f = SymplecticForm.standard(h)
        inv = f.inverse_gram()
        n = f.dim
        G = BinMatrix(rows=f.gram, ncols=n)
        for c in range(n):
            col = sum(((inv[s] >> c) & 1) << s for s in range(n))
            assert G.apply(col) == 1 << c


def test_perp_properties(rng):
    f = SymplecticForm.standard(2)
    whole = Subspace.from_vectors([1, 2, 4, 8], 4)
    assert f.perp(whole).dim == 0
    # perp of a distinguished line is the span of the other one
    l0 = Subspace.from_vectors([1 << 0, 1 << 2], 4)
    assert f.perp(l0) == Subspace.from_vectors([1 << 1, 1 << 3], 4)
    for _ in range(40):
        vecs = [rng.randrange(1, 16) for _ in range(rng.randrange(1, 4))]
        S = Subspace.from_vectors(vecs, 4)
        P = f.perp(S)
        assert S.dim + P.dim == 4
        assert f.perp(P) == S


def test_classify_line():
    f = SymplecticForm.standard(2)
    assert classify_line(f, (1 << 0, 1 << 2)) == HYPERBOLIC
    assert classify_line(f, (1 << 0, 1 << 1)) == ISOTROPIC
    iso_sub = Subspace.from_vectors([0b0011, 0b0101], 4)
    assert classify_line(f, iso_sub) in (ISOTROPIC, HYPERBOLIC)
    with pytest.raises(ValidationError):
        classify_line(f, (1, 1))
    with pytest.raises(ValidationError):
        classify_line(f, Subspace.from_vectors([1, 2, 4], 4))


def test_line_census():
    assert line_census(SymplecticForm.standard(1)) == (0, 1)
    iso, hyp = line_census(SymplecticForm.standard(2))
    assert (iso, hyp) == (15, 20)
    assert iso + hyp == 35 == gaussian_binomial_codim2(4)


# ---------------------------------------------------------------------------
# blocks


def test_blocks_from_cycle(eight_cycle):
    X = blocks_from_matrix(eight_cycle, 1)
    assert X.n == 8 and X.ambient_dim == 8
    # block i is the line through e_i and the i-th adjacency column
    for i, blk in enumerate(X.blocks):
        assert blk.basis[0] == 1 << i
        adj = (1 << ((i - 1) % 8)) | (1 << ((i + 1) % 8))
        assert blk.basis[1] == adj
    X.validate()


def test_blocks_from_expansion(twelve_qubit):
    X = polar(twelve_qubit, 2)
    assert X.n == 6 and X.ambient_dim == 6 and X.h == 2
    Y = polar(twelve_qubit, 3)
    assert Y.n == 4 and Y.h == 3


def test_blocks_rank_deficient(sample_4ary_binary):
    with pytest.raises(ValidationError, match="weight-one"):
        blocks_from_matrix(sample_4ary_binary, 2)


def test_blocks_bad_arguments(eight_cycle, sample_4ary):
    with pytest.raises(ValidationError, match="divide"):
        blocks_from_matrix(eight_cycle, 3)
    with pytest.raises(ValidationError, match="binary"):
        blocks_from_matrix(sample_4ary, 2)


def test_block_validation():
    form = SymplecticForm.standard(1)
    bad = Block(ambient_dim=4, h=1, basis=(1, 1), form=form)
    with pytest.raises(ValidationError, match="rank-deficient"):
        bad.validate()
    wrong_form = SymplecticForm(dim=2, gram=(2, 1))
    ok = Block(ambient_dim=4, h=1, basis=(1, 2), form=wrong_form)
    ok.validate()  # 2-dim standard form is the only alternating choice


# ---------------------------------------------------------------------------
# quantum-set verification


def test_verify_known_sets(eight_cycle, twelve_qubit, witness403):
    assert verify_quantum_set(blocks_from_matrix(eight_cycle, 1))
    assert verify_quantum_set(polar(twelve_qubit, 2))
    assert verify_quantum_set(polar(twelve_qubit, 3))
    assert verify_quantum_set(polar(witness403, 2))


def test_verify_rejects_non_self_orthogonal(f2):
    M = StabiliserMatrix(field=f2, n=1, rows=((1, 0), (0, 1)))
    X = blocks_from_matrix(M, 1)
    assert not verify_quantum_set(X)
    assert not verify_quantum_set(X, method="gram")


def test_verify_methods_agree(rng):
    f2 = FieldSpec(1)
    agreements = 0
    while agreements < 30:
        r = rng.randrange(2, 5)
        n_bin = rng.randrange(2, 5) * 2
        rows = []
        for _ in range(r):
            rows.append(tuple(rng.randrange(2) for _ in range(2 * n_bin)))
        M = StabiliserMatrix(field=f2, n=n_bin, rows=tuple(rows))
        try:
            X = blocks_from_matrix(M, 2)
            X.validate()
        except ValidationError:
            continue
        assert verify_quantum_set(X) == verify_quantum_set(X, method="gram")
        agreements += 1


def test_verify_gram_matches_self_orthogonality(rng):
    f2 = FieldSpec(1)
    for _ in range(40):
        n = rng.randrange(2, 7)
        r = rng.randrange(1, n + 1)
        M = random_self_orthogonal(f2, n, r, rng)
        try:
            X = blocks_from_matrix(M, 1)
        except ValidationError:
            continue  # a rank-deficient line: skip
        assert verify_quantum_set(X, method="gram")


def test_even_skew_theorem():
    assert check_even_skew_theorem(1)
    assert check_even_skew_theorem(2)
    assert check_even_skew_theorem(3)
    assert gaussian_binomial_codim2(6) == 651


# ---------------------------------------------------------------------------
# geometric distance


def test_distance_eight_cycle(eight_cycle):
    X = blocks_from_matrix(eight_cycle, 1)
    assert geometric_min_distance(X, 0) == 3


def test_distance_witness403(witness403):
    X = polar(witness403, 2)
    assert geometric_min_distance(X, 0) == 3
    assert minimum_distance(witness403) == 3


def test_distance_with_hyperplane_clause(sample_4ary_binary, twelve_qubit):
    # [[4,2,2]] as four lines in PG(1,2): the minimum dependent pair uses two
    # blocks sharing a point, and the unchosen blocks span the plane, so no
    # hyperplane kills it; the answer must match the algebraic distance 2.
    X = blocks_from_matrix(sample_4ary_binary, 1)
    assert geometric_min_distance(X, sample_4ary_binary.k) == 2
    # the twelve-position binary code as 12 lines in PG(5,2), k = 6 > 0
    Y = blocks_from_matrix(twelve_qubit, 1)
    assert geometric_min_distance(Y, twelve_qubit.k) == 3


def test_distance_agrees_with_algebra(twelve_qubit, merged_4ary, merged_8ary):
    for M, h in ((twelve_qubit, 1), (merged_4ary, 2), (merged_8ary, 3)):
        bin_M = expand(M) if M.field.h > 1 else M
        X = blocks_from_matrix(bin_M, h)
        assert geometric_min_distance(X, M.k) == minimum_distance(M)


def test_distance_budget(eight_cycle):
    X = blocks_from_matrix(eight_cycle, 1)
    with pytest.raises(BudgetExceededError):
        geometric_min_distance(X, 0, budget=5)


def test_distance_random_codes(rng):
    checked = 0
    while checked < 12:
        h = rng.choice([1, 1, 2])
        n = rng.randrange(2, 6 if h == 1 else 4)
        field = FieldSpec(h)
        r = rng.randrange(1, h * n + 1)
        M = random_self_orthogonal(field, n, r, rng)
        bin_M = expand(M) if h > 1 else M
        try:
            X = blocks_from_matrix(bin_M, h)
        except ValidationError:
            continue  # distance 1: no geometric counterpart
        assert geometric_min_distance(X, M.k) == minimum_distance(M)
        checked += 1


# ---------------------------------------------------------------------------
# projection


def test_project_witness(witness403):
    X = polar(witness403, 2)
    Y = project_from_block(X, 0)
    assert Y.n == 3 and Y.ambient_dim == 4
    assert verify_quantum_set(Y)
    d = geometric_min_distance(Y, 0)
    assert d in (2, 3)


def test_project_direct_sum():
    form = SymplecticForm.standard(1)
    b1 = Block(ambient_dim=4, h=1, basis=(1, 2), form=form)
    b2 = Block(ambient_dim=4, h=1, basis=(4, 8), form=form)
    X = PolarSpaceSet(ambient_dim=4, blocks=(b1, b2))
    Y = project_from_block(X, 0)
    assert Y.n == 1 and Y.ambient_dim == 2
    assert Y.blocks[0].basis == (1, 2)


def test_project_overlap_raises(sample_4ary_binary):
    X = blocks_from_matrix(sample_4ary_binary, 1)
    # blocks 2 and 3 coincide, so projecting from block 2 must fail
    with pytest.raises(ValidationError, match="overlap"):
        project_from_block(X, 2)


def test_project_needs_two_blocks():
    form = SymplecticForm.standard(1)
    b = Block(ambient_dim=2, h=1, basis=(1, 2), form=form)
    X = PolarSpaceSet(ambient_dim=2, blocks=(b,))
    with pytest.raises(ValidationError, match="two blocks"):
        project_from_block(X, 0)


# ---------------------------------------------------------------------------
# symplectic invariance


def random_symplectic_columns(form, rng):
    """Columns of a random Gram-preserving change of basis (rejection)."""
    dim = form.dim
    while True:
        cols = [rng.randrange(1, 1 << dim) for _ in range(dim)]
        if rank(BinMatrix(rows=tuple(cols), ncols=dim)) != dim:
            continue
        ok = True
        for a in range(dim):
            for b in range(a + 1, dim):
                if form.product(cols[a], cols[b]) != (form.gram[a] >> b) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return cols


def transform_block(blk, cols):
    new_basis = tuple(blk.to_ambient(c) for c in cols)
    return Block(ambient_dim=blk.ambient_dim, h=blk.h, basis=new_basis, form=blk.form)


def test_symplectic_invariance(witness403, rng):
    X = polar(witness403, 2)
    base_verify = verify_quantum_set(X)
    base_d = geometric_min_distance(X, 0)
    for trial in range(4):
        i = rng.randrange(X.n)
        cols = random_symplectic_columns(X.blocks[i].form, rng)
        blocks = list(X.blocks)
        blocks[i] = transform_block(blocks[i], cols)
        Y = PolarSpaceSet(ambient_dim=X.ambient_dim, blocks=tuple(blocks))
        Y.validate()
        assert verify_quantum_set(Y, method="gram") == base_verify
        if trial < 2:
            assert verify_quantum_set(Y) == base_verify
        assert geometric_min_distance(Y, 0) == base_d
