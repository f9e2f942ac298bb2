"""Spectrum of the Laplace-Beltrami operator on SL_q(N) labelled by Young diagrams.

The eigenvalue on the corepresentation λ (at most N rows, m boxes) is

    E_λ = (z - 1/z)^2 ( [m]_z^2 [N]_q + [N]_z Σ_{(i,j) in λ} [N^2 - 2m + 2N(j-i)]_z ).

It is cross-checked against an operator on (C^N)^{⊗m} built from
Jucys-Murphy elements of the Hecke algebra generated by R-hat.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import OpMatrix, kron, weighted_partial_trace
from .rmatrix import rhat
from .scalar import ZERO, RatFunc, Z, q_int, q_pow, rf_eval, z_pow

__all__ = [
    "YoungDiagram",
    "diagrams",
    "eigenvalue",
    "sl2_eigenvalue",
    "classical_eigenvalue",
    "classical_limit",
    "jucys_murphy",
    "word_laplace",
    "hecke_projector",
    "min_positive",
]


@dataclass(frozen=True)
class YoungDiagram:
    rows: tuple

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r < 0 for r in rows) or any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"row lengths must be weakly decreasing and nonnegative: {rows}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, rows, N: int) -> YoungDiagram:
        rows = list(rows)
        if len([r for r in rows if r]) > N or len(rows) > N and any(rows[N:]):
            raise ValueError(f"{rows} has more than {N} rows")
        return cls(tuple(rows[:N]) + (0,) * (N - len(rows)))

    @property
    def boxes(self) -> int:
        return sum(self.rows)

    def cells(self):
        for i, length in enumerate(self.rows, start=1):
            for j in range(1, length + 1):
                yield i, j

    def column_counts(self) -> list:
        """m_i = number of columns of length i, i = 1..len(rows)."""
        n = len(self.rows)
        padded = list(self.rows) + [0]
        return [padded[i - 1] - padded[i] for i in range(1, n + 1)]

    def __str__(self):
        return "[" + ",".join(str(r) for r in self.rows) + "]"


def diagrams(N: int, max_boxes: int, min_boxes: int = 0):
    """Diagrams with at most N rows and min_boxes..max_boxes boxes, by box count then reverse-lex."""
    out = []

    def parts(remaining, cap, prefix):
        if len(prefix) == N:
            if remaining == 0:
                out.append(YoungDiagram(tuple(prefix)))
            return
        for r in range(min(remaining, cap), -1, -1):
            parts(remaining - r, r, prefix + [r])

    for m in range(min_boxes, max_boxes + 1):
        parts(m, m, [])
    return out


def eigenvalue(lam: YoungDiagram, N: int) -> RatFunc:
    if len(lam.rows) > N and any(lam.rows[N:]):
        raise ValueError(f"{lam} has more than {N} rows")
    m = lam.boxes
    z = Z
    q = q_pow(N, 1)
    content = sum((q_int(N * N - 2 * m + 2 * N * (j - i), z) for i, j in lam.cells()), ZERO)
    bracket = q_int(m, z) ** 2 * q_int(N, q) + q_int(N, z) * content
    return (z - z.inverse()) ** 2 * bracket


def sl2_eigenvalue(m: int) -> RatFunc:
    """2 (z - 1/z)^2 [m]_z [m+2]_z, the closed form for N = 2, λ = [m, 0]."""
    return 2 * (Z - Z.inverse()) ** 2 * q_int(m, Z) * q_int(m + 2, Z)


def classical_eigenvalue(lam: YoungDiagram, N: int) -> Fraction:
    """Σ_{i<N} (N-i) m_i / N · (i (m_i + N) + 2 Σ_{j<i} j m_j)."""
    m = lam.column_counts()
    m = m + [0] * (N - len(m))
    total = Fraction(0)
    for i in range(1, N):
        mi = m[i - 1]
        inner = i * (mi + N) + 2 * sum(j * m[j - 1] for j in range(1, i))
        total += Fraction((N - i) * mi, N) * inner
    return total


def classical_limit(lam: YoungDiagram, N: int) -> Fraction:
    """E_λ / (q - 1/q)^2 at z = 1, after cancelling the common factor."""
    q = q_pow(N, 1)
    return rf_eval(eigenvalue(lam, N) / (q - q.inverse()) ** 2, 1)


# ---------------------------------------------------------------------------
# Jucys-Murphy operators and the operator oracle


def _placed_rhat(N: int, slots: int, p: int, sign: int) -> OpMatrix:
    """R-hat^sign on tensor slots p, p+1 (1-based) of (C^N)^{⊗slots}."""
    return kron(kron(OpMatrix.identity(N ** (p - 1)), rhat(N, sign)), OpMatrix.identity(N ** (slots - p - 1)))


@lru_cache(maxsize=None)
def jucys_murphy(m: int, n: int, sign: int, N: int) -> OpMatrix:
    """D^sign_n = R_{n-1,n} ... R_{12}^2 ... R_{n-1,n} on (C^N)^{⊗(m+1)} (with R^-1 for sign -1)."""
    slots = m + 1
    if not 1 <= n <= slots:
        raise ValueError(f"index n={n} outside 1..{slots}")
    if n == 1:
        return OpMatrix.identity(N ** slots)
    inner = jucys_murphy(m, n - 1, sign, N)
    r = _placed_rhat(N, slots, n - 1, sign)
    return r @ inner @ r


@lru_cache(maxsize=None)
def word_laplace(m: int, N: int) -> OpMatrix:
    """L_m = q^(-N-1) Σ_k q^(2k) (z^(-2m) D^+_(m+1) + z^(2m) D^-_(m+1) - 2 id) on (C^N)^{⊗m}."""
    if m < 1:
        raise ValueError("word length must be at least 1")
    ident = OpMatrix.identity(N ** (m + 1))
    op = jucys_murphy(m, m + 1, 1, N).scale(z_pow(-2 * m)) + jucys_murphy(m, m + 1, -1, N).scale(z_pow(2 * m))
    op = op - ident.scale(2)
    traced = weighted_partial_trace(op, m, [q_pow(N, 2 * k) for k in range(1, N + 1)])
    return traced.scale(q_pow(N, -N - 1))


def hecke_projector(kind: str, N: int) -> OpMatrix:
    """(R + 1/q)/(q + 1/q) onto the symmetric part, (q - R)/(q + 1/q) onto the antisymmetric part."""
    q = q_pow(N, 1)
    ident = OpMatrix.identity(N * N)
    if kind == "sym":
        num = rhat(N) + ident.scale(q.inverse())
    elif kind == "anti":
        num = ident.scale(q) - rhat(N)
    else:
        raise ValueError(f"unknown projector kind {kind!r}")
    return num.scale((q + q.inverse()).inverse())


# ---------------------------------------------------------------------------


def min_positive(N: int, max_boxes: int, at) -> dict:
    """Evaluate E_λ at z = at over all diagrams with at most max_boxes boxes.

    Returns the values, the minimizer among positive values and whether it has
    column shape [1^k, 0^(N-k)].  A pole at ``at`` raises PoleError; pick another point.
    """
    at = Fraction(at)
    values = []
    for lam in diagrams(N, max_boxes):
        values.append((lam, rf_eval(eigenvalue(lam, N), at)))
    positive = [(v, lam) for lam, v in values if v > 0]
    if not positive:
        return {"values": values, "minimizer": None, "minimum": None, "column_shape": False}
    best_value, best = min(positive, key=lambda t: (t[0], t[1].boxes))
    column = all(r in (0, 1) for r in best.rows)
    return {"values": values, "minimizer": best, "minimum": best_value, "column_shape": column}
