"""Antisymmetrizers of the braided tensor powers of Γ±, ranks, Λ^k coordinates and the top form.

All operators here are words in the adjacent braidings σ_{p,p+1} of a
uniform signature (every slot of the same type τ), so the slot types never
change.  Operators are applied to sparse vectors ``{flat index: scalar}``;
full matrices are assembled column by column only where they are small.

The same code runs over Q(z) (``EXACT``) and over GF(p) after substituting
a number for z (:class:`ModP`), which is what probabilistic ranks use.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from flint import nmod_mat

from .bimodule import as_sign, braiding
from .linalg import PRIME, OpMatrix, pivot_columns, rank_exact
from .scalar import ONE, RatFunc, as_ratfunc

__all__ = [
    "EXACT",
    "ModP",
    "Antisymmetrizer",
    "antisymmetrizer",
    "apply_swap",
    "apply_word",
    "apply_A",
    "apply_A_i1",
    "shuffle_terms",
    "apply_AB",
    "operator_matrix",
    "partial_antisymmetrizer",
    "lambda_dims",
    "DimsResult",
    "kernel_equality_check",
    "LambdaBasis",
    "lambda_basis",
    "TopForm",
    "top_form",
    "ResourceLimitError",
    "StructureError",
    "max_dim",
]


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds the configured size bound."""


class StructureError(RuntimeError):
    """An identity that generic q guarantees failed; points at a transcription bug."""


def max_dim() -> int:
    """Largest tensor-space dimension materialized, from QFORMS_MAX_DIM (default 1024)."""
    return int(os.environ.get("QFORMS_MAX_DIM", "1024"))


# ---------------------------------------------------------------------------
# scalar rings for vector arithmetic


class _Exact:
    key = "exact"

    def convert(self, v: RatFunc):
        return v

    def reduce(self, x):
        return x

    one = ONE


EXACT = _Exact()


class _PoleHit(ArithmeticError):
    pass


@dataclass(frozen=True)
class ModP:
    """Arithmetic in GF(p) after putting z = at."""

    at: int
    p: int = PRIME
    one: int = field(default=1, init=False)

    @property
    def key(self):
        return ("mod", self.at, self.p)

    def convert(self, v: RatFunc) -> int:
        x = v.eval_mod(self.at, self.p)
        if x is None:
            raise _PoleHit(self.at)
        return x

    def reduce(self, x: int) -> int:
        return x % self.p


_local_cache: dict = {}


def _local_columns(N: int, tau: int, sign: int, ring) -> dict:
    key = (N, tau, sign, ring.key)
    cols = _local_cache.get(key)
    if cols is None:
        b = braiding(N, tau, tau, sign)
        cols = {}
        for r, c, v in b.entries():
            cols.setdefault(c, []).append((r, ring.convert(v)))
        _local_cache[key] = cols
    return cols


def _clean(vec: dict, ring) -> dict:
    out = {}
    for i, x in vec.items():
        x = ring.reduce(x)
        if x:
            out[i] = x
    return out


def apply_swap(vec: dict, p: int, k: int, N: int, tau: int, sign: int, ring=EXACT) -> dict:
    """σ^sign on slots p, p+1 (1-based) of a k-slot vector of type τ."""
    d = N * N
    after = d ** (k - p - 1)
    block = d * d * after
    cols = _local_columns(N, tau, sign, ring)
    out: dict = {}
    for idx, x in vec.items():
        hi, rest = divmod(idx, block)
        pair, lo = divmod(rest, after)
        base = hi * block + lo
        for r, v in cols.get(pair, ()):
            j = base + r * after
            y = v * x
            prev = out.get(j)
            out[j] = y if prev is None else prev + y
    return _clean(out, ring)


def _axpy(a: dict, b: dict, coeff: int, ring) -> dict:
    """a + coeff*b for coeff in {+1, -1}."""
    out = dict(a)
    for i, x in b.items():
        prev = out.get(i)
        y = x if coeff > 0 else -x
        out[i] = y if prev is None else prev + y
    return _clean(out, ring)


def apply_word(vec: dict, word, k: int, N: int, tau: int, sign: int, ring=EXACT) -> dict:
    """Apply the operator product σ_{w1} σ_{w2} ... (rightmost first)."""
    for p in reversed(word):
        vec = apply_swap(vec, p, k, N, tau, sign, ring)
    return vec


def apply_A_i1(vec: dict, i: int, k: int, N: int, tau: int, sign: int, ring=EXACT, offset: int = 0) -> dict:
    """A_{i,1} = id - (A_{i-1,1} ⊗ id) σ_{i,i+1} on slots offset+1 .. offset+i+1."""
    if i == 0:
        return vec
    moved = apply_swap(vec, offset + i, k, N, tau, sign, ring)
    return _axpy(vec, apply_A_i1(moved, i - 1, k, N, tau, sign, ring, offset), -1, ring)


def apply_A(vec: dict, m: int, k: int, N: int, tau: int, sign: int, ring=EXACT, offset: int = 0) -> dict:
    """A_m = A_{m-1,1} (A_{m-1} ⊗ id) on slots offset+1 .. offset+m of a k-slot vector."""
    if m <= 1:
        return vec
    inner = apply_A(vec, m - 1, k, N, tau, sign, ring, offset)
    return apply_A_i1(inner, m - 1, k, N, tau, sign, ring, offset)


# ---------------------------------------------------------------------------
# A_{i,j} and B_{i,j} as signed sums over shuffles


def _reduced_word(target):
    """Adjacent transpositions (operator order, leftmost applied last) reaching ``target`` from the identity."""
    current = list(range(len(target)))
    steps = []
    for pos, label in enumerate(target):
        at = current.index(label)
        while at > pos:
            current[at - 1], current[at] = current[at], current[at - 1]
            steps.append(at)  # swap of slots at, at+1 (1-based)
            at -= 1
    return list(reversed(steps))


@lru_cache(maxsize=None)
def shuffle_terms(i: int, j: int, kind: str = "A"):
    """(sign, word) pairs of A_{i,j} (or B_{i,j} with reversed words).

    Each term moves the two blocks of i and j slots into an interleaving that
    keeps the order inside each block; its sign is (-1)^(word length).
    """
    n = i + j
    terms = []
    for first_positions in combinations(range(n), i):
        target = [None] * n
        for slot, pos in enumerate(first_positions):
            target[pos] = slot
        rest = iter(range(i, n))
        target = [t if t is not None else next(rest) for t in target]
        word = _reduced_word(target)
        if kind == "B":
            word = list(reversed(word))
        terms.append((-1 if len(word) % 2 else 1, tuple(word)))
    return tuple(terms)


def apply_AB(vec: dict, i: int, j: int, kind: str, k: int, N: int, tau: int, sign: int, ring=EXACT, offset: int = 0) -> dict:
    out: dict = {}
    for s, word in shuffle_terms(i, j, kind):
        term = apply_word(vec, [p + offset for p in word], k, N, tau, sign, ring)
        out = _axpy(out, term, s, ring)
    return out


def operator_matrix(fn, dim: int) -> OpMatrix:
    """Assemble the matrix of a linear map given on sparse vectors."""
    data: dict = {}
    for c in range(dim):
        for r, v in fn({c: ONE}).items():
            data.setdefault(r, {})[c] = v
    return OpMatrix(dim, dim, data)


def _check_size(N: int, k: int):
    if (N * N) ** k > max_dim():
        raise ResourceLimitError(f"(N^2)^k = {(N * N) ** k} exceeds the bound {max_dim()}")


@dataclass(frozen=True)
class Antisymmetrizer:
    degree: int
    sign: int
    tau: int
    N: int
    matrix: OpMatrix


def antisymmetrizer(k: int, tau=1, sign=1, N: int = 2) -> Antisymmetrizer:
    """A_k^sign on (Γ_τ)^{⊗k} as a full matrix (bounded by QFORMS_MAX_DIM)."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    _check_size(N, k)
    return _antisymmetrizer(k, as_sign(tau), as_sign(sign), N)


@lru_cache(maxsize=None)
def _antisymmetrizer(k: int, tau: int, sign: int, N: int) -> Antisymmetrizer:
    dim = (N * N) ** k
    m = operator_matrix(lambda v: apply_A(v, k, k, N, tau, sign), dim)
    return Antisymmetrizer(k, sign, tau, N, m)


def partial_antisymmetrizer(i: int, j: int, kind: str, tau=1, sign=1, N: int = 2) -> OpMatrix:
    """A_{i,j} (kind "A") or B_{i,j} (kind "B") as a full matrix."""
    _check_size(N, i + j)
    return _partial_antisymmetrizer(i, j, kind, as_sign(tau), as_sign(sign), N)


@lru_cache(maxsize=None)
def _partial_antisymmetrizer(i: int, j: int, kind: str, tau: int, sign: int, N: int) -> OpMatrix:
    k = i + j
    return operator_matrix(lambda v: apply_AB(v, i, j, kind, k, N, tau, sign), (N * N) ** k)


# ---------------------------------------------------------------------------
# ranks by candidate columns
#
# A_k = A_{k-1,1}(A_{k-1} ⊗ id), so the image of A_k is spanned by A_k(e_c ⊗ e_b)
# with e_c running over pivot columns of A_{k-1}.  Pivots of A_k are chosen
# among these candidates.


def _candidate_images(prev_pivots, k, N, tau, sign, ring):
    d = N * N
    cands = [c * d + b for c in prev_pivots for b in range(d)]
    images = [apply_A({c: ring.one}, k, k, N, tau, sign, ring) for c in cands]
    return cands, images


def _exact_pivots(cands, images, dim):
    if not cands:
        return []
    m = OpMatrix.from_columns(images, dim)
    return [cands[i] for i in pivot_columns(m)]


def _modp_pivots(cands, images, dim, ring: ModP):
    if not cands:
        return []
    used = sorted({r for img in images for r in img})
    pos = {r: i for i, r in enumerate(used)}
    rows = len(used)
    if rows == 0:
        return []
    flat = [0] * (rows * len(cands))
    for c, img in enumerate(images):
        for r, x in img.items():
            flat[pos[r] * len(cands) + c] = x
    rref, rank = nmod_mat(rows, len(cands), flat, ring.p).rref()
    pivots = []
    for r in range(rank):
        for c in range(len(cands)):
            if int(rref[r, c]) != 0:
                pivots.append(cands[c])
                break
    return pivots


@lru_cache(maxsize=None)
def exact_pivots(N: int, tau: int, k: int) -> tuple:
    """Pivot columns of A^+_k (kernels agree for both signs, so they serve A^-_k too)."""
    if k == 0:
        return (0,)
    if k == 1:
        return tuple(range(N * N))
    prev = exact_pivots(N, tau, k - 1)
    cands, images = _candidate_images(prev, k, N, tau, 1, EXACT)
    return tuple(_exact_pivots(cands, images, (N * N) ** k))


@dataclass
class DimsResult:
    dims: list
    truncated: bool = False
    mode: str = "exact"
    seed: int | None = None

    def to_json(self) -> dict:
        out = {"dims": self.dims, "truncated": self.truncated, "mode": self.mode}
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def lambda_dims(N: int, tau=1, max_k: int = 4, mode: str = "exact", seed: int | None = None,
                sign=1, exact_up_to: int | None = None) -> DimsResult:
    """dims[k] = rank A_k for k = 0..max_k.

    ``mode="probabilistic"`` computes every rank over GF(p) at random z (two
    draws, the larger rank wins); ``exact_up_to`` keeps degrees up to that
    value exact even in probabilistic mode.  Degrees whose tensor space
    exceeds QFORMS_MAX_DIM are not computed and the result is marked truncated.
    """
    tau, sign = as_sign(tau), as_sign(sign)
    if mode not in ("exact", "probabilistic"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "probabilistic" and seed is None:
        raise ValueError("probabilistic mode needs a seed")
    rng = random.Random(seed)
    dims = []
    truncated = False
    exact_prev = None
    mod_prev = None
    rings = []
    for k in range(max_k + 1):
        if k >= 2 and (N * N) ** k > max_dim():
            truncated = True
            break
        use_exact = mode == "exact" or (exact_up_to is not None and k <= exact_up_to)
        if k <= 1:
            piv = [0] if k == 0 else list(range(N * N))
            exact_prev, mod_prev = piv, [piv, piv]
            dims.append(len(piv))
            continue
        if use_exact:
            cands, images = _candidate_images(exact_prev, k, N, tau, sign, EXACT)
            exact_prev = _exact_pivots(cands, images, (N * N) ** k)
            mod_prev = [exact_prev, exact_prev]
            dims.append(len(exact_prev))
            continue
        if not rings:
            rings = [_fresh_ring(rng) for _ in range(2)]
        best = 0
        new_prev = []
        for t in range(2):
            while True:
                try:
                    cands, images = _candidate_images(mod_prev[t], k, N, tau, sign, rings[t])
                    break
                except _PoleHit:
                    rings[t] = _fresh_ring(rng)
            piv = _modp_pivots(cands, images, (N * N) ** k, rings[t])
            new_prev.append(piv)
            best = max(best, len(piv))
        mod_prev = new_prev
        dims.append(best)
    return DimsResult(dims, truncated, mode, seed)


def _fresh_ring(rng: random.Random) -> ModP:
    return ModP(rng.randrange(2, PRIME - 1))


def kernel_equality_check(k: int, tau=1, N: int = 2) -> bool:
    """ker A^+_k = ker A^-_k, decided by rank([A+; A-]) = rank A+ = rank A-."""
    tau = as_sign(tau)
    if k <= 1:
        return True
    plus = antisymmetrizer(k, tau, 1, N).matrix
    minus = antisymmetrizer(k, tau, -1, N).matrix
    rows = plus.rows
    stacked = OpMatrix(2 * rows, plus.cols, {**plus.data, **{r + rows: row for r, row in minus.data.items()}})
    r1, r2 = rank_exact(plus), rank_exact(minus)
    return r1 == r2 == rank_exact(stacked)


# ---------------------------------------------------------------------------
# coordinates on Λ^k


class LambdaBasis:
    """Coordinates of classes in (Γ_τ)^{⊗k} / ker A_k with respect to the classes of e_c, c in pivots."""

    def __init__(self, N: int, tau: int, k: int):
        self.N, self.tau, self.k = N, as_sign(tau), k
        self.pivots = list(exact_pivots(N, self.tau, k))
        self.images = [self.project({c: ONE}) for c in self.pivots]
        r = len(self.pivots)
        # choose r independent rows of the image matrix and invert that square block
        dim = (N * N) ** k
        tall = OpMatrix.from_columns(self.images, dim)
        self.rows = pivot_columns(tall.transpose())[:r]
        square = OpMatrix.from_dense([[tall[row, c] for c in range(r)] for row in self.rows]) if r else None
        self._inverse = _inverse(square) if r else None

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def project(self, vec: dict) -> dict:
        return apply_A(vec, self.k, self.k, self.N, self.tau, 1)

    def coords(self, vec: dict) -> list:
        """Coordinates of the class of ``vec``."""
        if not self.pivots:
            return []
        img = self.project(vec)
        rhs = {i: img[row] for i, row in enumerate(self.rows) if row in img}
        sol = self._inverse.apply(rhs)
        return [sol.get(i, RatFunc()) for i in range(self.rank)]

    def representative(self, coords) -> dict:
        coords = [as_ratfunc(x) for x in coords]
        return {c: x for c, x in zip(self.pivots, coords) if not x.is_zero()}


def _inverse(m: OpMatrix) -> OpMatrix:
    from .linalg import solve

    n = m.rows
    cols = []
    for j in range(n):
        x = solve(m, {j: ONE})
        if x is None:
            raise StructureError("singular coordinate block")
        cols.append(x)
    return OpMatrix.from_columns(cols, n)


@lru_cache(maxsize=None)
def lambda_basis(N: int, tau, k: int) -> LambdaBasis:
    return LambdaBasis(N, as_sign(tau), k)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TopForm:
    N: int
    tau: int
    n0: int
    pivot: int
    vector: dict  # A_{n0} e_pivot
    sigma_eigenvalue: RatFunc


def top_form(N: int, tau=1) -> TopForm:
    """Detect n0 (rank A_n0 = 1, rank A_{n0+1} = 0) and return a spanning vector of the image of A_n0."""
    from .bimodule import swap_word

    tau = as_sign(tau)
    k = 0
    while True:
        k += 1
        if k >= 2 and (N * N) ** (k + 1) > max_dim():
            raise ResourceLimitError(f"top form search for N={N} exceeds the bound {max_dim()}")
        piv = exact_pivots(N, tau, k)
        if len(piv) == 1:
            break
        if not piv:
            raise StructureError(f"rank A_{k} = 0 before reaching rank 1")
    if exact_pivots(N, tau, k + 1):
        raise StructureError(f"rank A_{k + 1} is nonzero after rank A_{k} = 1")
    c = piv[0]
    vec = apply_A({c: ONE}, k, k, N, tau, 1)
    # σ_(n0) acts on the one-dimensional image by a scalar
    moved = apply_word(vec, swap_word("full", k), k, N, tau, 1)
    image = apply_A(moved, k, k, N, tau, 1)
    base = apply_A(vec, k, k, N, tau, 1)
    lead = min(base)
    lam = image.get(lead, RatFunc()) / base[lead]
    if image != {i: x * lam for i, x in base.items()}:
        raise StructureError("σ_(n0) does not act by a scalar on the top form")
    return TopForm(N, tau, k, c, vec, lam)
