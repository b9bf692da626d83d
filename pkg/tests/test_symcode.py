"""Tests for stabiliser matrices, duality, distance, and conversions."""

from fractions import Fraction

import pytest

from evenstab.errors import BudgetExceededError, ValidationError
from evenstab.gf2h import FieldSpec, find_trace_orthogonal_basis
from evenstab.symcode import (
    AdditiveCode,
    CodeParameters,
    StabiliserMatrix,
    convert,
    expand,
    find_non_orthogonal_pair,
    is_pure,
    is_self_orthogonal,
    merge,
    minimum_distance,
    singleton_margin,
    symplectic_dual,
    symplectic_weight,
    trace_symplectic_product,
)

from conftest import (
    MERGED_4ARY_ROWS,
    MERGED_8ARY_ROWS,
    SAMPLE_4ARY_BINARY_ROWS,
    TWELVE_QUBIT_ROWS,
    cycle_graph_code,
    random_self_orthogonal,
)


# ---------------------------------------------------------------------------
# products, weights, orthogonality


def test_product_examples(f4, f2, rng):
    assert trace_symplectic_product(f4, (1, 1, 2, 0), (0, 1, 1, 1)) == 0
    assert trace_symplectic_product(f2, (1, 0), (0, 1)) == 1
    for _ in range(100):
        v = tuple(rng.randrange(4) for _ in range(6))
        assert trace_symplectic_product(f4, v, v) == 0
    with pytest.raises(ValidationError):
        trace_symplectic_product(f4, (1, 2), (1, 2, 0, 0))


def test_product_bilinear(f8, rng):
    for _ in range(50):
        u = tuple(rng.randrange(8) for _ in range(8))
        v = tuple(rng.randrange(8) for _ in range(8))
        w = tuple(rng.randrange(8) for _ in range(8))
        uv = tuple(a ^ b for a, b in zip(u, v))
        lhs = trace_symplectic_product(f8, uv, w)
        rhs = trace_symplectic_product(f8, u, w) ^ trace_symplectic_product(f8, v, w)
        assert lhs == rhs


def test_self_orthogonality(sample_4ary, eight_cycle, f2):
    assert is_self_orthogonal(sample_4ary)
    assert is_self_orthogonal(eight_cycle)
    single = StabiliserMatrix(field=f2, n=1, rows=((1, 1),))
    assert is_self_orthogonal(single)
    xz = StabiliserMatrix(field=f2, n=1, rows=((1, 0), (0, 1)))
    assert not is_self_orthogonal(xz)
    assert find_non_orthogonal_pair(xz) == (0, 1)


def test_symplectic_weight(f4):
    assert symplectic_weight((0, 0, 0, 0)) == 0
    assert symplectic_weight((1, 1, 2, 0)) == 2
    assert symplectic_weight((0, 1, 0, 0)) == 1
    with pytest.raises(ValidationError):
        symplectic_weight((1, 0, 0))


def test_validate(f2, f4):
    ok = StabiliserMatrix(field=f4, n=2, rows=((1, 1, 2, 0), (0, 1, 1, 1)))
    ok.validate()
    dep = StabiliserMatrix(field=f2, n=2, rows=((1, 0, 0, 0), (1, 0, 0, 0)))
    with pytest.raises(ValidationError, match="dependent"):
        dep.validate()
    bad = StabiliserMatrix(field=f2, n=2, rows=((1, 0, 0, 0), (0, 0, 1, 0)))
    with pytest.raises(ValidationError, match="rows 1 and 2"):
        bad.validate()
    toomany = StabiliserMatrix(
        field=f2, n=1, rows=((1, 0), (0, 1), (1, 1))
    )
    with pytest.raises(ValidationError, match="exceeds"):
        toomany.validate()


def test_k_is_exact_rational(f4, twelve_qubit):
    assert twelve_qubit.k == 6
    m = StabiliserMatrix(field=f4, n=2, rows=((1, 1, 2, 0), (0, 1, 1, 1), (0, 0, 2, 3)))
    assert m.k == Fraction(1, 2)


# ---------------------------------------------------------------------------
# duality


def test_dual_dimensions(sample_4ary, f2):
    D = symplectic_dual(sample_4ary)
    assert D.gf2_dimension() == 2 * 2 * 2 - 2  # 2hn - r = 6
    zweight = AdditiveCode(field=f2, n=1, generators=((0, 1),))
    DD = symplectic_dual(zweight)
    assert set(DD.iter_codewords()) == {(0, 0), (0, 1)}
    full = AdditiveCode(field=f2, n=1, generators=((1, 0), (0, 1)))
    assert symplectic_dual(full).gf2_dimension() == 0


def test_dual_of_dual_small_codes(rng):
    for h, n in [(1, 2), (1, 3), (2, 1), (1, 4), (2, 2), (3, 1)]:
        field = FieldSpec(h)
        for _ in range(5):
            r = rng.randrange(1, h * n + 1)
            M = random_self_orthogonal(field, n, r, rng)
            C = M.as_additive()
            DD = symplectic_dual(symplectic_dual(C))
            assert set(DD.iter_codewords()) == set(C.iter_codewords())


def test_dual_elements_are_orthogonal_to_code(sample_4ary, f4):
    D = symplectic_dual(sample_4ary)
    for w in D.generators:
        for row in sample_4ary.rows:
            assert trace_symplectic_product(f4, w, row) == 0


# ---------------------------------------------------------------------------
# expansion and merging


def test_expand_sample(sample_4ary, sample_4ary_binary):
    E = expand(sample_4ary)
    assert E.rows == sample_4ary_binary.rows
    assert E.field.h == 1 and E.n == 4


def test_expand_h1_is_identity(eight_cycle):
    E = expand(eight_cycle)
    assert E.rows == eight_cycle.rows


def test_expand_zero_matrix(f4):
    Z = StabiliserMatrix(field=f4, n=2, rows=((0, 0, 0, 0),))
    E = expand(Z)
    assert E.n == 4 and E.rows == ((0,) * 8,)


def test_expand_preserves_product(rng):
    for h in (2, 3):
        field = FieldSpec(h)
        basis = find_trace_orthogonal_basis(field)
        f2 = FieldSpec(1)
        for _ in range(200):
            n = rng.randrange(1, 4)
            u = tuple(rng.randrange(field.q) for _ in range(2 * n))
            v = tuple(rng.randrange(field.q) for _ in range(2 * n))
            Mu = StabiliserMatrix(field=field, n=n, rows=(u,))
            Mv = StabiliserMatrix(field=field, n=n, rows=(v,))
            eu = expand(Mu, basis).rows[0]
            ev = expand(Mv, basis).rows[0]
            assert trace_symplectic_product(field, u, v) == trace_symplectic_product(
                f2, eu, ev
            )


def test_merge_pairs_matches_known_matrix(twelve_qubit, merged_4ary):
    got = merge(twelve_qubit, 2)
    assert got.rows == merged_4ary.rows
    assert got.field == merged_4ary.field


def test_merge_triples_matches_known_matrix(twelve_qubit, merged_8ary):
    got = merge(twelve_qubit, 3)
    assert got.rows == merged_8ary.rows


def test_merge_round_trip(sample_4ary, merged_8ary):
    # blocks of the sample's expansion are rank-deficient (r = 2 < 4), so the
    # general-position check must be disabled for the round trip
    E = expand(sample_4ary)
    back = merge(E, 2, check_general_position=False)
    assert back.rows == sample_4ary.rows
    E8 = expand(merged_8ary)
    assert merge(E8, 3).rows == merged_8ary.rows  # full-rank blocks, no flag


def test_merge_rank_check(sample_4ary_binary):
    with pytest.raises(ValidationError, match="weight-one dual element"):
        merge(sample_4ary_binary, 2)


def test_merge_partition_validation(twelve_qubit):
    with pytest.raises(ValidationError, match="partition"):
        merge(twelve_qubit, 2, partition=[(0, 1)] * 6)
    with pytest.raises(ValidationError, match="does not divide"):
        merge(cycle_graph_code(5), 2)
    with pytest.raises(ValidationError, match="binary"):
        merge(StabiliserMatrix(field=FieldSpec(2), n=2, rows=((1, 0, 0, 0),)), 2)


def test_merge_custom_partition(twelve_qubit, merged_4ary):
    # permuting the groups permutes the output positions
    part = [(2 * g, 2 * g + 1) for g in (1, 0, 2, 3, 4, 5)]
    got = merge(twelve_qubit, 2, partition=part)
    want = tuple(
        tuple(row[i] for i in (1, 0, 2, 3, 4, 5)) + tuple(row[6 + i] for i in (1, 0, 2, 3, 4, 5))
        for row in merged_4ary.rows
    )
    assert got.rows == want


def test_convert_identity(sample_4ary, merged_4ary):
    # merged_4ary has full-rank column blocks, so the strict default works
    assert convert(merged_4ary, 2).rows == merged_4ary.rows
    # the two-ququart sample has a weight-one dual element, so its identity
    # conversion needs the general-position check disabled
    got = convert(sample_4ary, 2, check_general_position=False)
    assert got.rows == sample_4ary.rows
    got = convert(
        sample_4ary, 2, permutation=list(range(4)), check_general_position=False
    )
    assert got.rows == sample_4ary.rows


def test_convert_chain(twelve_qubit, merged_4ary, merged_8ary):
    assert convert(twelve_qubit, 2).rows == merged_4ary.rows
    assert convert(twelve_qubit, 3).rows == merged_8ary.rows
    with pytest.raises(ValidationError, match="divide"):
        convert(twelve_qubit, 5)
    with pytest.raises(ValidationError, match="permutation"):
        convert(twelve_qubit, 2, permutation=[0] * 12)


def test_convert_permutation_moves_pairs(twelve_qubit):
    perm = list(range(12))
    perm[0], perm[2] = perm[2], perm[0]
    got = convert(twelve_qubit, 1, permutation=perm)
    for old, new in zip(twelve_qubit.rows, got.rows):
        assert new[0] == old[2] and new[2] == old[0]
        assert new[12] == old[14] and new[14] == old[12]


# ---------------------------------------------------------------------------
# minimum distance


def test_distance_sample_4ary(sample_4ary, f4):
    # The two-ququart sample has a weight-one dual element: v = (0,0|1,0)
    # satisfies <v, row_1> = tr(1*1) = 0 and <v, row_2> = 0, and v is not in
    # the row span.  (Also forced by the Singleton bound: k <= n - 2d + 2
    # gives d = 1 for n = 2, k = 1.)
    v = (0, 0, 1, 0)
    for row in sample_4ary.rows:
        assert trace_symplectic_product(f4, v, row) == 0
    assert minimum_distance(sample_4ary) == 1


def test_distance_binary_sample(sample_4ary_binary):
    assert minimum_distance(sample_4ary_binary) == 2


def test_distance_eight_cycle(eight_cycle):
    assert minimum_distance(eight_cycle) == 3


def test_distance_single_z(f2):
    M = StabiliserMatrix(field=f2, n=1, rows=((0, 1),))
    assert minimum_distance(M) == 1


def test_distance_known_codes(twelve_qubit, merged_4ary, merged_8ary):
    assert minimum_distance(twelve_qubit) == 3
    assert minimum_distance(merged_4ary) == 2
    assert minimum_distance(merged_8ary) == 2


def test_distance_budget(twelve_qubit):
    with pytest.raises(BudgetExceededError):
        minimum_distance(twelve_qubit, budget=4)


def test_distance_reference_agrees_with_fast_path(rng):
    for _ in range(25):
        h = rng.choice([1, 1, 2])
        n = rng.randrange(2, 7 if h == 1 else 4)
        field = FieldSpec(h)
        r = rng.randrange(1, h * n + 1)
        M = random_self_orthogonal(field, n, r, rng)
        assert minimum_distance(M) == minimum_distance(M, use_reference=True)


def test_expand_distance_bound(rng):
    for _ in range(20):
        h = rng.choice([2, 3])
        n = rng.randrange(1, 4)
        field = FieldSpec(h)
        r = rng.randrange(1, h * n + 1)
        M = random_self_orthogonal(field, n, r, rng)
        d = minimum_distance(M)
        dprime = minimum_distance(expand(M))
        assert d <= dprime <= h * d


# ---------------------------------------------------------------------------
# purity and parameters


def test_is_pure(sample_4ary, sample_4ary_binary, eight_cycle):
    assert is_pure(sample_4ary)  # min swt over the 4 codewords is 2 >= d = 1
    assert is_pure(sample_4ary_binary)
    assert is_pure(eight_cycle)  # k = 0: the weight sets coincide


def test_is_pure_matches_brute_force(rng):
    for _ in range(15):
        h = rng.choice([1, 2])
        n = rng.randrange(2, 6 if h == 1 else 4)
        field = FieldSpec(h)
        r = rng.randrange(1, h * n + 1)
        M = random_self_orthogonal(field, n, r, rng)
        d = minimum_distance(M)
        brute = min(
            (symplectic_weight(w) for w in M.as_additive().iter_codewords()
             if any(w)),
            default=n + 1,
        )
        assert is_pure(M, d) == (brute >= d)


def test_singleton_margin():
    assert singleton_margin(CodeParameters(n=4, k=Fraction(0), d=3, q=4)) == 0
    assert CodeParameters(n=4, k=Fraction(0), d=3, q=4).mds
    assert singleton_margin(CodeParameters(n=8, k=Fraction(0), d=3, q=2)) == 4
    assert singleton_margin(CodeParameters(n=7, k=Fraction(1), d=4, q=4)) == 0
    assert singleton_margin(CodeParameters(n=2, k=Fraction(1), d=1, q=4)) == 1
    frac = singleton_margin(CodeParameters(n=2, k=Fraction(1, 2), d=1, q=4))
    assert frac == Fraction(3, 2)
