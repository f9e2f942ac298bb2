"""R-matrix of SL_q(N), the universal r-form on generators, and the functionals f, f-bar.

Indices are 1-based throughout this module, matching the usual upper/lower
notation ``R^{ij}_{kl}``.  As an N^2 x N^2 matrix the row index is the upper
pair ``(i, j)`` and the column index the lower pair ``(k, l)``.

Only the generator-level values are needed: ``r(S^a(u^i_j), S^b(u^k_l))``
for antipode powers ``a, b`` in ``{0, 1, 2}``.  The square of the antipode
acts on generators by a scalar, ``S^2(u^k_l) = q^{2k-2l} u^k_l``, so even
powers reduce to scalar factors and ``r(Sx, Sy) = r(x, y)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .linalg import OpMatrix
from .scalar import ONE, ZERO, RatFunc, q_pow, z_pow

__all__ = [
    "rhat",
    "rhat_entry",
    "RFormTable",
    "rform_table",
    "r_value",
    "s2_scalar",
    "f_functionals",
    "f_of_antipode",
    "pair_index",
]


def pair_index(N: int, i: int, j: int) -> int:
    """Flat label of the 1-based pair (i, j)."""
    return (i - 1) * N + (j - 1)


def rhat_entry(N: int, i: int, j: int, k: int, l: int) -> RatFunc:
    """R^{ij}_{kl} = q^{δij} δ^i_l δ^j_k + [i<j] (q - 1/q) δ^i_k δ^j_l."""
    value = ZERO
    if i == l and j == k:
        value = q_pow(N, 1) if i == j else ONE
    if i < j and i == k and j == l:
        value = value + q_pow(N, 1) - q_pow(N, -1)
    return value


@lru_cache(maxsize=None)
def rhat(N: int, sign: int = 1) -> OpMatrix:
    """R-hat (sign +1) or its inverse (sign -1), as an N^2 x N^2 matrix."""
    if N < 1:
        raise ValueError("N must be positive")
    rng = range(1, N + 1)
    entries = [
        (pair_index(N, i, j), pair_index(N, k, l), rhat_entry(N, i, j, k, l))
        for i in rng for j in rng for k in rng for l in rng
    ]
    m = OpMatrix.from_entries(N * N, N * N, (e for e in entries if not e[2].is_zero()))
    if sign > 0:
        return m
    # Hecke relation: R^2 = (q - 1/q) R + 1, so R^-1 = R - (q - 1/q)
    return m - OpMatrix.identity(N * N).scale(q_pow(N, 1) - q_pow(N, -1))


@dataclass(frozen=True)
class RFormTable:
    """Values of r on generator pairs; keys are 1-based (i, j, k, l)."""

    N: int
    r_uu: dict
    r_u_Su: dict
    r_Su_u: dict

    def get(self, table: str, i: int, j: int, k: int, l: int) -> RatFunc:
        return getattr(self, table).get((i, j, k, l), ZERO)

    def to_json(self) -> dict:
        def dump(table):
            return {f"{i},{j},{k},{l}": str(v) for (i, j, k, l), v in sorted(table.items())}

        return {"N": self.N, "r_uu": dump(self.r_uu), "r_u_Su": dump(self.r_u_Su), "r_Su_u": dump(self.r_Su_u)}


@lru_cache(maxsize=None)
def rform_table(N: int) -> RFormTable:
    inv = rhat(N, -1)
    z, zi = z_pow(1), z_pow(-1)
    rng = range(1, N + 1)
    r_uu, r_u_Su, r_Su_u = {}, {}, {}
    for i in rng:
        for j in rng:
            for k in rng:
                for l in rng:
                    a = rhat_entry(N, k, i, j, l)
                    if not a.is_zero():
                        r_uu[i, j, k, l] = zi * a
                    b = inv[pair_index(N, i, k), pair_index(N, l, j)]
                    if not b.is_zero():
                        r_u_Su[i, j, k, l] = z * q_pow(N, 2 * k - 2 * l) * b
                        r_Su_u[i, j, k, l] = z * b
    return RFormTable(N, r_uu, r_u_Su, r_Su_u)


def s2_scalar(N: int, k: int, l: int) -> RatFunc:
    """The scalar by which S^2 acts on u^k_l."""
    return q_pow(N, 2 * k - 2 * l)


_TABLE_BY_PARITY = {(0, 0): "r_uu", (0, 1): "r_u_Su", (1, 0): "r_Su_u", (1, 1): "r_uu"}


def r_value(N: int, a: int, b: int, i: int, j: int, k: int, l: int) -> RatFunc:
    """r(S^a(u^i_j), S^b(u^k_l)) for antipode powers a, b >= 0."""
    scale = ONE
    if a >= 2:
        scale = scale * q_pow(N, (a // 2) * (2 * i - 2 * j))
    if b >= 2:
        scale = scale * q_pow(N, (b // 2) * (2 * k - 2 * l))
    value = rform_table(N).get(_TABLE_BY_PARITY[a % 2, b % 2], i, j, k, l)
    if value.is_zero():
        return ZERO
    return value if scale.is_one() else value * scale


@lru_cache(maxsize=None)
def f_functionals(N: int):
    """(f, f-bar) on generators as dicts (i, j) -> RatFunc.

    f(u^i_j) = sum_k r(u^i_k, S u^k_j) and f-bar(u^i_j) = sum_k r(S^2 u^i_k, u^k_j).
    """
    rng = range(1, N + 1)
    f, fbar = {}, {}
    for i in rng:
        for j in rng:
            f[i, j] = sum((r_value(N, 0, 1, i, k, k, j) for k in rng), ZERO)
            fbar[i, j] = sum((r_value(N, 2, 0, i, k, k, j) for k in rng), ZERO)
    return f, fbar


@lru_cache(maxsize=None)
def f_of_antipode(N: int):
    """f(S u^i_j) as a dict (i, j) -> RatFunc; the coefficients of the biinvariant θ."""
    # Δ(S u^i_j) = S u^k_j ⊗ S u^i_k, so f(S u^i_j) = sum_k r(S u^k_j, S^2 u^i_k)
    rng = range(1, N + 1)
    return {
        (i, j): sum((r_value(N, 1, 2, k, j, i, k) for k in rng), ZERO)
        for i in rng for j in rng
    }
