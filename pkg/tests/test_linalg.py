import pytest
from hypothesis import given, strategies as st

from qforms.linalg import (
    OpMatrix, kernel_basis, kron, pivot_columns, rank_exact, rank_mod_p,
    rank_probabilistic, solve, weighted_partial_trace,
)
from qforms.scalar import ONE, ZERO, Z, RatFunc, q_pow

entries = st.integers(-3, 3)


@st.composite
def int_matrices(draw, max_side=4):
    r = draw(st.integers(1, max_side))
    c = draw(st.integers(1, max_side))
    return OpMatrix.from_dense([[draw(entries) for _ in range(c)] for _ in range(r)])


def test_kron_of_identities():
    assert kron(OpMatrix.identity(2), OpMatrix.identity(3)) == OpMatrix.identity(6)


def test_kron_mixed_product():
    a = OpMatrix.from_dense([[1, Z], [0, 2]])
    b = OpMatrix.from_dense([[0, 1], [1, 0]])
    c = OpMatrix.from_dense([[Z, 0], [1, 1]])
    d = OpMatrix.from_dense([[1, 2], [3, 4]])
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


@given(int_matrices())
def test_rank_matches_transpose(m):
    assert rank_exact(m) == rank_exact(m.transpose())


@given(int_matrices())
def test_kernel_has_complementary_dimension(m):
    ker = kernel_basis(m)
    assert len(ker) + rank_exact(m) == m.cols
    for v in ker:
        assert all(x.is_zero() for x in m.apply(v).values())


def test_rank_over_function_field():
    m = OpMatrix.from_dense([[Z, 1], [Z**2, Z]])
    assert rank_exact(m) == 1
    m2 = OpMatrix.from_dense([[Z, 1], [1, Z]])
    assert rank_exact(m2) == 2
    assert pivot_columns(m2) == [0, 1]


def test_modular_and_probabilistic_ranks():
    m = OpMatrix.from_dense([[Z, 1], [1, Z]])
    assert rank_mod_p(m, 1) == 1  # det vanishes at z = 1
    assert rank_probabilistic(m, seed=11) == 2
    pole = OpMatrix.from_dense([[Z.inverse() - ONE]])
    assert rank_mod_p(pole, 0) is None


def test_solve():
    m = OpMatrix.from_dense([[Z, 1], [1, Z]])
    x = solve(m, {0: ONE, 1: ONE})
    assert x == {0: (Z + 1).inverse(), 1: (Z + 1).inverse()}
    assert solve(OpMatrix.from_dense([[1, 1], [1, 1]]), {0: ONE}) is None


def test_json_round_trip():
    m = OpMatrix.from_dense([[Z, 0], [RatFunc([1], [0, 1]), 3]])
    assert OpMatrix.from_json(m.to_json()) == m


def test_partial_trace_of_kron():
    a = OpMatrix.from_dense([[1, Z], [2, 3]])
    b = OpMatrix.from_dense([[Z, 1], [0, 5]])
    w = [Z, q_pow(2, 1)]
    expected = a.scale(Z * Z + q_pow(2, 1) * 5)
    assert weighted_partial_trace(kron(a, b), 1, w) == expected
    assert weighted_partial_trace(kron(a, b), 0, [1, 1]) == b.scale(4)


def test_partial_trace_validation():
    m = OpMatrix.identity(4)
    with pytest.raises(ValueError):
        weighted_partial_trace(m, 0, [1, 1, 1])
    with pytest.raises(IndexError):
        weighted_partial_trace(m, 2, [1, 1])


def test_zero_matrix():
    assert OpMatrix.zeros(2, 3).is_zero()
    assert (OpMatrix.identity(2) - OpMatrix.identity(2)).is_zero()
    assert OpMatrix.identity(2)[0, 1] == ZERO
