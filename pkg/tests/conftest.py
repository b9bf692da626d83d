"""Shared fixtures: sample codes and a random self-orthogonal code generator."""

from __future__ import annotations

import random

import pytest

from evenstab.f2linalg import BinMatrix, kernel
from evenstab.gf2h import FieldSpec
from evenstab.symcode import StabiliserMatrix, unpack_row


def pytest_addoption(parser):
    parser.addoption(
        "--seed",
        default="0",
        help="base seed for the randomized property tests (default: 0)",
    )
    parser.addoption(
        "--run-refutation",
        action="store_true",
        default=False,
        help="run the long-running nonexistence search in the acceptance "
        "suite (resumable; census kept under var/acceptance-census)",
    )


@pytest.fixture
def rng(request):
    """Per-test deterministic RNG; vary with --seed to explore new streams."""
    base = request.config.getoption("--seed")
    return random.Random(f"{base}:{request.node.name}")

# Two-ququart sample (GF(4): 2 = g, 3 = g^2 with g^2 = g + 1).  Its binary
# expansion in the lex-first trace-orthogonal basis is a [[4,2,2]] code; the
# 4-ary code itself has a weight-one dual element, see test_symcode.
SAMPLE_4ARY_ROWS = ((1, 1, 2, 0), (0, 1, 1, 1))

SAMPLE_4ARY_BINARY_ROWS = (
    (1, 1, 1, 1, 1, 0, 0, 0),
    (0, 0, 1, 1, 1, 1, 1, 1),
)

# A 6x24 binary stabiliser matrix of a [[12,6,3]] code whose pair/triple
# merges are used across the conversion tests.
TWELVE_QUBIT_ROWS = tuple(
    tuple(int(c) for c in a + b)
    for a, b in [
        ("100000010101", "001011100000"),
        ("010000101010", "100111010100"),
        ("001000010110", "010010001001"),
        ("000100011000", "101010110010"),
        ("000010110001", "111101000011"),
        ("000001000010", "001110111111"),
    ]
)

# Merge of the above into GF(4) (consecutive pairs, basis (2, 3)): [[6,3,2]].
MERGED_4ARY_ROWS = (
    (2, 0, 0, 3, 3, 3, 0, 2, 1, 2, 0, 0),
    (3, 0, 0, 2, 2, 2, 2, 3, 1, 3, 3, 0),
    (0, 2, 0, 3, 3, 2, 3, 0, 2, 0, 2, 3),
    (0, 3, 0, 3, 2, 0, 2, 2, 2, 1, 0, 2),
    (0, 0, 2, 1, 0, 3, 1, 1, 3, 0, 0, 1),
    (0, 0, 3, 0, 0, 2, 0, 1, 2, 1, 1, 1),
)

# Merge into GF(8) (consecutive triples, basis (2, 4, 7)): [[4,2,2]].
# GF(8) powers of g=2 with modulus x^3+x^2+1: 1,2,4,5,7,3,6.
MERGED_8ARY_ROWS = (
    (2, 0, 4, 5, 7, 3, 2, 0),
    (4, 0, 5, 4, 2, 1, 4, 2),
    (7, 0, 4, 6, 4, 4, 7, 7),
    (0, 2, 3, 0, 5, 4, 6, 4),
    (0, 4, 6, 7, 1, 5, 0, 3),
    (0, 7, 0, 4, 7, 6, 1, 1),
)


def cycle_graph_code(m: int) -> StabiliserMatrix:
    """Graph-state stabiliser matrix (I | A) with A the m-cycle adjacency."""
    f2 = FieldSpec(1)
    rows = []
    for i in range(m):
        a = [1 if j == i else 0 for j in range(m)]
        b = [0] * m
        b[(i + 1) % m] = 1
        b[(i - 1) % m] = 1
        rows.append(tuple(a + b))
    return StabiliserMatrix(field=f2, n=m, rows=tuple(rows))


def random_self_orthogonal(
    field: FieldSpec, n: int, r: int, rng: random.Random
) -> StabiliserMatrix:
    """Uniform-ish random r-row self-orthogonal matrix via iterated duals."""
    h = field.h
    hn = h * n
    if r > hn:
        raise ValueError("r cannot exceed hn")
    mask = (1 << hn) - 1
    packed: list[int] = []
    reduced: list[int] = []
    while len(packed) < r:
        swapped = tuple(((v & mask) << hn) | (v >> hn) for v in packed)
        K = kernel(BinMatrix(rows=swapped, ncols=2 * hn))
        combo = rng.randrange(1, 1 << K.dim)
        v = 0
        for i, b in enumerate(K.basis):
            if (combo >> i) & 1:
                v ^= b
        w = v
        for p in reduced:
            low = p & -p
            if w & low:
                w ^= p
        if w == 0:
            continue
        packed.append(v)
        reduced.append(w)
    rows = tuple(unpack_row(field, n, v) for v in packed)
    return StabiliserMatrix(field=field, n=n, rows=rows)


@pytest.fixture
def f2():
    return FieldSpec(1)


@pytest.fixture
def f4():
    return FieldSpec(2)


@pytest.fixture
def f8():
    return FieldSpec(3)


@pytest.fixture
def sample_4ary(f4):
    return StabiliserMatrix(field=f4, n=2, rows=SAMPLE_4ARY_ROWS)


@pytest.fixture
def sample_4ary_binary(f2):
    return StabiliserMatrix(field=f2, n=4, rows=SAMPLE_4ARY_BINARY_ROWS)


@pytest.fixture
def twelve_qubit(f2):
    return StabiliserMatrix(field=f2, n=12, rows=TWELVE_QUBIT_ROWS)


@pytest.fixture
def merged_4ary(f4):
    return StabiliserMatrix(field=f4, n=6, rows=MERGED_4ARY_ROWS)


@pytest.fixture
def merged_8ary(f8):
    return StabiliserMatrix(field=f8, n=4, rows=MERGED_8ARY_ROWS)


@pytest.fixture
def eight_cycle():
    return cycle_graph_code(8)
