import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidscan import ff
from rigidscan.constructions import complete_bipartite
from rigidscan.ff import P, FFMatrix
from rigidscan.rigidity import random_placement, rigidity_matrix

from oracle import int_placement, int_rigidity_matrix, q_rank


def mat(rows, cols=None):
    return FFMatrix.from_rows(rows, cols)


def k55_int_matrix(seed=7):
    g = complete_bipartite(5, 5)
    pts = int_placement(10, 3, random.Random(seed))
    return int_rigidity_matrix(g.edges(), 10, 3, pts)


def test_rank_trivial_cases():
    assert ff.rank(FFMatrix.identity(3)) == 3
    assert ff.rank(FFMatrix.zeros(2, 2)) == 0
    assert ff.rank(FFMatrix.zeros(0, 4)) == 0


def test_rank_k55_matches_rational_oracle():
    rows = k55_int_matrix()
    expected = q_rank(rows, 30)
    assert expected == 24
    assert ff.rank(mat(rows)) == expected


def test_right_kernel_basic():
    assert ff.right_kernel_basis(FFMatrix.identity(3)) == []
    (v,) = ff.right_kernel_basis(mat([[1, -1]]))
    assert v[0] == v[1] != 0


def test_left_kernel_of_k55_rigidity_matrix_is_one_dimensional():
    R = mat(k55_int_matrix())
    basis = ff.right_kernel_basis(R.transpose())
    assert len(basis) == 25 - 24
    assert R.apply_left(basis[0]) == [0] * 30


def test_random_left_kernel_vector():
    assert ff.random_left_kernel_vector(FFMatrix.identity(3), seed=1) is None
    w = ff.random_left_kernel_vector(mat([[1], [1]]), seed=1)
    assert w[0] != 0 and (w[0] + w[1]) % P == 0
    R = rigidity_matrix(complete_bipartite(5, 5), 3, random_placement(10, 3, random.Random(2)))
    w = ff.random_left_kernel_vector(R, seed=5)
    assert len(w) == 25 and any(w)
    assert R.apply_left(w) == [0] * 30
    assert ff.random_left_kernel_vector(R, seed=5) == w


def test_shape_validation():
    with pytest.raises(ValueError):
        FFMatrix(2, 2, [[1, 2]])
    with pytest.raises(ZeroDivisionError):
        ff.inv(P)


def test_rank_matches_rational_rank_on_1000_random_matrices():
    rng = random.Random(20240611)
    for _ in range(1000):
        r, c = rng.randint(1, 12), rng.randint(1, 12)
        # low-rank products make the comparison non-trivial
        if rng.random() < 0.5:
            k = rng.randint(1, min(r, c))
            A = [[rng.randint(-10, 10) for _ in range(k)] for _ in range(r)]
            B = [[rng.randint(-10, 10) for _ in range(c)] for _ in range(k)]
            rows = [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(c)] for i in range(r)]
        else:
            rows = [[rng.randint(-10, 10) for _ in range(c)] for _ in range(r)]
        assert ff.rank(mat(rows, c)) == q_rank(rows, c)


matrices = st.integers(1, 8).flatmap(
    lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=1, max_size=8)
)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_kernel_properties(rows):
    M = mat(rows)
    basis = ff.right_kernel_basis(M)
    for v in basis:
        assert M.apply(v) == [0] * M.rows
    assert ff.rank(M) + len(basis) == M.cols
    assert ff.rank(M) == ff.rank(M.transpose())
    if basis:
        assert ff.rank(FFMatrix(len(basis), M.cols, basis)) == len(basis)


@settings(max_examples=100, deadline=None)
@given(matrices, st.integers(0, 2**32))
def test_left_kernel_vector_properties(rows, seed):
    M = mat(rows)
    w = ff.random_left_kernel_vector(M, seed)
    assert w == ff.random_left_kernel_vector(M, seed)
    if ff.rank(M) == M.rows:
        assert w is None
    else:
        assert M.apply_left(w) == [0] * M.cols
        assert any(w)
