import pytest

from qforms.linalg import OpMatrix, kron
from qforms.rmatrix import f_functionals, f_of_antipode, rform_table, rhat, r_value
from qforms.scalar import ONE, ZERO, q_pow, z_pow


@pytest.mark.parametrize("N", [1, 2, 3])
def test_hecke_relation(N):
    q = q_pow(N, 1)
    R, I = rhat(N), OpMatrix.identity(N * N)
    assert (R - I.scale(q)) @ (R + I.scale(q.inverse())) == OpMatrix.zeros(N * N, N * N)


@pytest.mark.parametrize("N", [2, 3])
def test_braid_relation(N):
    R, I = rhat(N), OpMatrix.identity(N)
    R12, R23 = kron(R, I), kron(I, R)
    assert R12 @ R23 @ R12 == R23 @ R12 @ R23


@pytest.mark.parametrize("N", [2, 3])
def test_inverse(N):
    q = q_pow(N, 1)
    assert rhat(N, -1) == rhat(N) - OpMatrix.identity(N * N).scale(q - q.inverse())
    assert rhat(N) @ rhat(N, -1) == OpMatrix.identity(N * N)


def test_rhat_entries_n2():
    q = q_pow(2, 1)
    R = rhat(2)
    assert R[0, 0] == q
    assert R[1, 2] == ONE and R[2, 1] == ONE
    assert R[1, 1] == q - q.inverse()
    assert R[2, 2] == ZERO


def test_f_functionals_n2():
    f, fbar = f_functionals(2)
    assert [f[i, i] for i in (1, 2)] == [z_pow(-1), z_pow(-5)]
    assert [fbar[i, i] for i in (1, 2)] == [z_pow(1), z_pow(5)]
    fs = f_of_antipode(2)
    assert [fs[i, i] for i in (1, 2)] == [z_pow(-5), z_pow(-1)]


@pytest.mark.parametrize("N", [2, 3])
def test_f_and_fbar_are_inverse(N):
    f, fbar = f_functionals(N)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            total = sum((f.get((i, k), ZERO) * fbar.get((k, j), ZERO) for k in range(1, N + 1)), ZERO)
            assert total == (ONE if i == j else ZERO)


@pytest.mark.parametrize("N", [2, 3])
def test_r_form_invariant_under_double_antipode(N):
    idx = range(1, N + 1)
    for a in (0, 1):
        for b in (0, 1):
            for i in idx:
                for j in idx:
                    for k in idx:
                        for l in idx:
                            assert r_value(N, a + 2, b + 2, i, j, k, l) == r_value(N, a, b, i, j, k, l)


def test_table_json_keys():
    doc = rform_table(2).to_json()
    assert "1,1,1,1" in doc["r_uu"]
