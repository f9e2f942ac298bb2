import os

import pytest

from qforms.bimodule import SpaceSignature, sigma_word
from qforms.exterior import (
    ResourceLimitError, antisymmetrizer, kernel_equality_check, lambda_basis,
    lambda_dims, partial_antisymmetrizer, top_form,
)
from qforms.linalg import OpMatrix, kron


def test_dims_n2_exact():
    assert lambda_dims(2, 1, 5).dims == [1, 4, 6, 4, 1, 0]
    assert lambda_dims(2, -1, 5).dims == [1, 4, 6, 4, 1, 0]


def test_dims_probabilistic_is_seeded():
    a = lambda_dims(2, 1, 5, mode="probabilistic", seed=7)
    b = lambda_dims(2, 1, 5, mode="probabilistic", seed=7)
    assert a.dims == b.dims == [1, 4, 6, 4, 1, 0]
    with pytest.raises(ValueError):
        lambda_dims(2, 1, 3, mode="probabilistic")


def test_dims_n3_low_degree():
    assert lambda_dims(3, 1, 2).dims == [1, 9, 36]


def test_dims_truncate_beyond_bound(monkeypatch):
    monkeypatch.setenv("QFORMS_MAX_DIM", "64")
    res = lambda_dims(2, 1, 4)
    assert res.truncated and res.dims == [1, 4, 6, 4]


def test_antisymmetrizer_size_limit(monkeypatch):
    monkeypatch.setenv("QFORMS_MAX_DIM", "16")
    with pytest.raises(ResourceLimitError):
        antisymmetrizer(3, 1, 1, 2)


@pytest.mark.parametrize("tau", [1, -1])
@pytest.mark.parametrize("sign", [1, -1])
def test_factorisation(tau, sign):
    A1 = OpMatrix.identity(4)
    A2 = antisymmetrizer(2, tau, sign, 2).matrix
    A3 = antisymmetrizer(3, tau, sign, 2).matrix
    A21 = partial_antisymmetrizer(2, 1, "A", tau, sign, 2)
    B21 = partial_antisymmetrizer(2, 1, "B", tau, sign, 2)
    assert A3 == A21 @ kron(A2, A1)
    assert A3 == kron(A2, A1) @ B21


@pytest.mark.parametrize("k", [2, 3])
def test_reversal_sign(k):
    # σ^∓_(k) A^±_k = (-1)^(k(k-1)/2) A^∓_k on a uniform τ = + space
    for sign in (1, -1):
        A = antisymmetrizer(k, 1, sign, 2).matrix
        Aop = antisymmetrizer(k, 1, -sign, 2).matrix
        rev = sigma_word("full", SpaceSignature.uniform(1, k, 2), -sign, k)
        assert rev @ A == Aop.scale((-1) ** (k * (k - 1) // 2))


@pytest.mark.parametrize("k", [2, 3])
def test_kernel_equality(k):
    assert kernel_equality_check(k, 1, 2)
    assert kernel_equality_check(k, -1, 2)


def test_lambda_coordinates_round_trip():
    basis = lambda_basis(2, 1, 2)
    assert basis.rank == 6
    for i, _ in enumerate(basis.pivots):
        coords = [0] * basis.rank
        coords[i] = 1
        back = basis.coords(basis.representative(coords))
        assert all(c == (1 if j == i else 0) for j, c in enumerate(back))


def test_top_form_n2():
    for tau in (1, -1):
        top = top_form(2, tau)
        assert top.n0 == 4
        assert top.sigma_eigenvalue == 1


@pytest.mark.skipif(not os.environ.get("QFORMS_SLOW"), reason="about a minute; set QFORMS_SLOW=1")
def test_dims_n3_degree_three():
    assert lambda_dims(3, 1, 3).dims == [1, 9, 36, 84]
