import pytest

from qforms.bimodule import (
    SpaceSignature, as_sign, biinvariant_form, braid_check, braiding,
    braiding_from_action, right_action, rtt_compatible, sigma_word, swap_word,
)
from qforms.linalg import OpMatrix


def test_sign_parsing():
    assert as_sign("+") == 1 and as_sign("-") == -1 and as_sign(-1) == -1
    with pytest.raises(ValueError):
        as_sign("x")


@pytest.mark.parametrize("left,right", [(1, 1), (1, -1), (-1, 1), (-1, -1)])
def test_braiding_inverse_n2(left, right):
    d = 4
    fwd = braiding(2, left, right, 1)
    back = braiding(2, right, left, -1)
    assert back @ fwd == OpMatrix.identity(d * d)


@pytest.mark.parametrize("left,right", [(1, 1), (1, -1), (-1, 1), (-1, -1)])
def test_braiding_matches_right_action(left, right):
    assert braiding(2, left, right, 1) == braiding_from_action(2, left, right)


@pytest.mark.parametrize("sign", [1, -1])
def test_right_action_respects_rtt(sign):
    assert rtt_compatible(2, sign)


def test_right_action_is_antimultiplicative():
    # ρ(ab) = ρ(b) ρ(a) holds by construction; check on a commuting pair u^1_1 u^1_2 = q u^1_2 u^1_1
    from qforms.scalar import q_pow
    a, b = right_action(1, (1, 1), 2), right_action(1, (1, 2), 2)
    assert b @ a == (a @ b).scale(q_pow(2, 1))


def test_biinvariant_forms_fixed_by_braiding():
    # σ(η ⊗ η) = η ⊗ η for the inner form
    for sign in (1, -1):
        eta = biinvariant_form(2, sign).vector()
        vec = {i * 4 + j: a * b for i, a in eta.items() for j, b in eta.items()}
        assert braiding(2, sign, sign, 1).apply(vec) == vec


def test_swap_words():
    assert swap_word("full", 3) == [1, 2, 1] or sorted(swap_word("full", 3)) == [1, 1, 2]
    assert len(swap_word("full", 4)) == 6
    with pytest.raises(ValueError):
        swap_word("nonsense", 2)


def test_sigma_word_changes_signature():
    sig = SpaceSignature((1, -1), 2)
    m = sigma_word("full", sig, 1, 2)
    assert m.rows == m.cols == 16


@pytest.mark.parametrize("N", [2, 3])
def test_braid_check_suite(N):
    report = braid_check(N)
    assert report and all(report.values()), [k for k, v in report.items() if not v]
