"""The bicovariant bimodules Γ+ (basis ω_ij) and Γ- (basis θ_ij) of SL_q(N).

Signs are the integers +1 / -1 (strings "+" / "-" are accepted at the API
boundary).  A slot of type +1 holds ω_ij, a slot of type -1 holds θ_ij, and
both use the flat label ``(i-1)*N + (j-1)``.

The braiding σ: Γ_τ ⊗ Γ_τ' -> Γ_τ' ⊗ Γ_τ is transcribed from its r-form
expression.  Each of the eight expressions (σ and σ^-1 on the four type
pairs) is a product of four r-factors ``r(S^a u^p_q, S^b u^r_s)`` summed over
four inner indices; the input is ``(ij)⊗(kl)`` and the output ``(mn)⊗(rs)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .linalg import OpMatrix, kron
from .rmatrix import f_of_antipode, r_value, s2_scalar
from .scalar import ONE, ZERO, RatFunc

__all__ = [
    "as_sign",
    "SpaceSignature",
    "BiinvariantForm",
    "braiding",
    "braiding_from_action",
    "action_matrix",
    "right_action",
    "form_times_generator",
    "biinvariant_form",
    "swap_word",
    "sigma_word",
    "apply_word_matrix",
    "rtt_compatible",
    "place_braiding",
    "braid_check",
]


def as_sign(s) -> int:
    if s in (1, "+", "plus"):
        return 1
    if s in (-1, "-", "minus", "−"):
        return -1
    raise ValueError(f"not a sign: {s!r}")


def sign_str(s: int) -> str:
    return "+" if s > 0 else "-"


@dataclass(frozen=True)
class SpaceSignature:
    """Γ_τ1 ⊗ ... ⊗ Γ_τk at the level of left-invariant forms."""

    signs: tuple
    N: int

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(as_sign(s) for s in self.signs))

    @classmethod
    def uniform(cls, tau, k: int, N: int) -> SpaceSignature:
        return cls((as_sign(tau),) * k, N)

    @property
    def slot_dim(self) -> int:
        return self.N * self.N

    @property
    def dim(self) -> int:
        return self.slot_dim ** len(self.signs)

    def __len__(self):
        return len(self.signs)

    def swapped(self, p: int) -> SpaceSignature:
        """Signature after braiding slots p, p+1 (1-based)."""
        s = list(self.signs)
        s[p - 1], s[p] = s[p], s[p - 1]
        return SpaceSignature(tuple(s), self.N)


# ---------------------------------------------------------------------------
# braiding formulas: ((a, b), (p, q, r, s)) encodes r(S^a u^p_q, S^b u^r_s)

_OMEGA, _THETA = 1, -1

_BRAIDING_FACTORS = {
    (1, _OMEGA, _OMEGA): [((0, 1), "rtyn"), ((0, 0), "timx"), ((1, 0), "lyzs"), ((0, 0), "xkjz")],
    (1, _OMEGA, _THETA): [((0, 1), "rtyn"), ((0, 2), "timx"), ((1, 0), "lyzs"), ((2, 0), "xkjz")],
    (1, _THETA, _OMEGA): [((0, 0), "ynrt"), ((0, 1), "mxti"), ((0, 0), "zsly"), ((1, 0), "jzxk")],
    (1, _THETA, _THETA): [((0, 0), "ynrt"), ((1, 0), "mxti"), ((0, 0), "zsly"), ((0, 1), "jzxk")],
    (-1, _OMEGA, _OMEGA): [((0, 1), "rtyn"), ((1, 0), "mxti"), ((0, 0), "zsly"), ((0, 0), "xkjz")],
    (-1, _OMEGA, _THETA): [((2, 0), "ynrt"), ((0, 2), "timx"), ((1, 0), "lyzs"), ((0, 1), "jzxk")],
    (-1, _THETA, _OMEGA): [((1, 0), "rtyn"), ((0, 1), "mxti"), ((0, 0), "zsly"), ((0, 0), "xkjz")],
    (-1, _THETA, _THETA): [((0, 0), "ynrt"), ((0, 0), "timx"), ((1, 0), "lyzs"), ((0, 1), "jzxk")],
}


def _factor_support(N: int, a: int, b: int):
    rng = range(1, N + 1)
    out = []
    for idx in product(rng, rng, rng, rng):
        v = r_value(N, a, b, *idx)
        if not v.is_zero():
            out.append((idx, v))
    return out


def _join(N: int, factors):
    """Sum over all index assignments of the product of the factors (sparse join)."""
    partial = [({}, ONE)]
    for (a, b), names in factors:
        support = _factor_support(N, a, b)
        nxt = []
        for assign, coeff in partial:
            for idx, v in support:
                new = dict(assign)
                ok = True
                for name, val in zip(names, idx):
                    old = new.get(name)
                    if old is None:
                        new[name] = val
                    elif old != val:
                        ok = False
                        break
                if ok:
                    nxt.append((new, coeff * v))
        partial = nxt
    return partial


@lru_cache(maxsize=None)
def braiding(N: int, left, right, sign=1) -> OpMatrix:
    """σ^sign on Γ_left ⊗ Γ_right, an N^4 x N^4 matrix into Γ_right ⊗ Γ_left.

    For sign -1 the matrix is the inverse of σ on Γ_right ⊗ Γ_left.
    """
    left, right, sign = as_sign(left), as_sign(right), as_sign(sign)
    d = N * N
    acc: dict[tuple[int, int], RatFunc] = {}
    for assign, coeff in _join(N, _BRAIDING_FACTORS[sign, left, right]):
        g = assign.get
        col = ((g("i") - 1) * N + g("j") - 1) * d + (g("k") - 1) * N + g("l") - 1
        row = ((g("m") - 1) * N + g("n") - 1) * d + (g("r") - 1) * N + g("s") - 1
        key = (row, col)
        acc[key] = acc.get(key, ZERO) + coeff
    return OpMatrix.from_entries(d * d, d * d, ((r, c, v) for (r, c), v in acc.items() if not v.is_zero()))


# ---------------------------------------------------------------------------
# right action on left-invariant forms
#
# A generator word is a tuple of (s, a, b) meaning S^s(u^a_b).  The matrix
# ρ(w) has ρ(w)[K, I] = coefficient of basis form K in (form I) ◁ w, so
# ρ(w1 w2) = ρ(w2) ρ(w1).


def _coproduct(s: int, a: int, b: int, N: int):
    """Δ(S^s u^a_b) as a list of ((s, a, c), (s, c', b')) pairs."""
    out = []
    for c in range(1, N + 1):
        if s % 2 == 0:
            out.append(((s, a, c), (s, c, b)))
        else:  # Δ(S x) = S x_(2) ⊗ S x_(1)
            out.append(((s, c, b), (s, a, c)))
    return out


@lru_cache(maxsize=None)
def _generator_action(N: int, form_sign: int, s: int, a: int, b: int) -> OpMatrix:
    rng = range(1, N + 1)
    entries = []
    for first, second in _coproduct(s, a, b, N):
        for i, j, k, l in product(rng, rng, rng, rng):
            if form_sign > 0:
                # ω_ij ◁ x = r(u^k_i, x_(1)) r(x_(2), u^j_l) ω_kl
                v1 = r_value(N, 0, first[0], k, i, first[1], first[2])
                if v1.is_zero():
                    continue
                v2 = r_value(N, second[0], 0, second[1], second[2], j, l)
            else:
                # θ_ij ◁ x = r(x_(1), S u^k_i) r(S u^j_l, x_(2)) θ_kl
                v1 = r_value(N, first[0], 1, first[1], first[2], k, i)
                if v1.is_zero():
                    continue
                v2 = r_value(N, 1, second[0], j, l, second[1], second[2])
            if not v2.is_zero():
                entries.append(((k - 1) * N + l - 1, (i - 1) * N + j - 1, v1 * v2))
    return OpMatrix.from_entries(N * N, N * N, entries)


def action_matrix(N: int, form_sign, word) -> OpMatrix:
    """ρ(word) for a product of generators ``word = ((s, a, b), ...)``."""
    form_sign = as_sign(form_sign)
    m = OpMatrix.identity(N * N)
    for s, a, b in word:
        m = _generator_action(N, form_sign, s, a, b) @ m
    return m


def right_action(form_sign, a: tuple, N: int) -> OpMatrix:
    """ρ(u^a_b) on the N^2-dim left-invariant basis of Γ_form_sign."""
    if len(a) != 2:
        raise ValueError("right_action expects a single generator index (a, b)")
    return action_matrix(N, form_sign, ((0, a[0], a[1]),))


def form_times_generator(N: int, form_sign, a: int, b: int):
    """ξ_I u^a_b = sum_c u^a_c (ξ_I ◁ u^c_b) as triples ((a, c), K, coeff) per input I."""
    out = {}
    for c in range(1, N + 1):
        rho = right_action(form_sign, (c, b), N)
        for K, I, v in rho.entries():
            out.setdefault(I, []).append(((a, c), K, v))
    return out


@dataclass(frozen=True)
class BiinvariantForm:
    sign: int
    coefficients: dict  # (i, j) -> RatFunc

    def vector(self) -> dict:
        N = max(i for i, _ in self.coefficients)
        return {(i - 1) * N + j - 1: v for (i, j), v in self.coefficients.items() if not v.is_zero()}


def biinvariant_form(N: int, sign) -> BiinvariantForm:
    """ω = sum_i ω_ii for +, θ = f(S u^i_j) θ_ij for -."""
    sign = as_sign(sign)
    rng = range(1, N + 1)
    if sign > 0:
        return BiinvariantForm(1, {(i, j): ONE if i == j else ZERO for i in rng for j in rng})
    return BiinvariantForm(-1, dict(f_of_antipode(N)))


def _coaction_word(N: int, form_sign: int, k: int, l: int, i: int, j: int):
    """The coefficient v^{kl}_{ij} of the right coaction as a generator word."""
    if form_sign > 0:
        return ONE, ((0, k, i), (1, j, l))
    # S^2(u^k_i) S(u^j_l); S^2 is a scalar on generators
    return s2_scalar(N, k, i), ((0, k, i), (1, j, l))


@lru_cache(maxsize=None)
def braiding_from_action(N: int, left, right) -> OpMatrix:
    """σ(ξ_I ⊗ ζ_J) = ζ_K ⊗ (ξ_I ◁ v^K_J), with v the right-coaction matrix of ζ.

    An independent construction of σ used to cross-check the transcribed formulas.
    """
    left, right = as_sign(left), as_sign(right)
    d = N * N
    rng = range(1, N + 1)
    entries = []
    for k, l, i, j in product(rng, rng, rng, rng):
        scale, word = _coaction_word(N, right, k, l, i, j)
        rho = action_matrix(N, left, word)
        K, J = (k - 1) * N + l - 1, (i - 1) * N + j - 1
        for L, I, v in rho.entries():
            entries.append((K * d + L, I * d + J, v * scale))
    return OpMatrix.from_entries(d * d, d * d, entries)


# ---------------------------------------------------------------------------
# braid words


def place_braiding(signature: SpaceSignature, p: int, sign) -> tuple[OpMatrix, SpaceSignature]:
    """σ^sign acting on slots p, p+1 (1-based) of the signature."""
    k = len(signature)
    if not 1 <= p < k:
        raise ValueError(f"slot pair ({p}, {p + 1}) outside a {k}-slot space")
    d = signature.slot_dim
    s = signature.signs
    b = braiding(signature.N, s[p - 1], s[p], sign)
    m = kron(kron(OpMatrix.identity(d ** (p - 1)), b), OpMatrix.identity(d ** (k - p - 1)))
    return m, signature.swapped(p)


def swap_word(kind: str, j: int = 0, k: int = 0) -> list[int]:
    """Adjacent transpositions of a braid word, written left to right as an operator product.

    ``p`` stands for σ_{p,p+1}.  Kinds: ``Rto`` (σ_{j,j+1}...σ_{k-1,k}), ``Lto``
    (σ_{k-1,k}...σ_{j,j+1}), ``full`` (σ_(j) = Lto(1,1) Lto(1,2) ... Lto(1,j))
    and ``block`` (σ_(j,k) = Rto(k, j+k) Rto(k-1, j+k-1) ... Rto(1, j+1)).
    """
    if min(j, k) < 0:
        raise ValueError("word indices must be nonnegative")
    if kind in ("Rto", "Lto"):
        if j >= k:
            return []
        if j < 1:
            raise ValueError(f"malformed word {kind}({j}, {k})")
        return list(range(j, k)) if kind == "Rto" else list(range(k - 1, j - 1, -1))
    if kind == "full":
        return [p for m in range(1, j + 1) for p in swap_word("Lto", 1, m)]
    if kind == "block":
        if j == 0 or k == 0:
            return []
        return [p for t in range(k, 0, -1) for p in swap_word("Rto", t, j + t)]
    raise ValueError(f"unknown word kind {kind!r}")


def sigma_word(kind: str, signature: SpaceSignature, sign, j: int = 0, k: int = 0) -> OpMatrix:
    """The operator of a braid word on the given signature (rightmost factor applied first)."""
    word = swap_word(kind, j, k)
    if word and max(word) >= len(signature):
        raise ValueError(f"word {kind}({j}, {k}) does not fit {len(signature)} slots")
    return apply_word_matrix(word, signature, sign)[0]


def apply_word_matrix(word, signature: SpaceSignature, sign) -> tuple[OpMatrix, SpaceSignature]:
    m = OpMatrix.identity(signature.dim)
    sig = signature
    for p in reversed(word):
        step, sig = place_braiding(sig, p, sign)
        m = step @ m
    return m, sig


def rtt_compatible(N: int, form_sign) -> bool:
    """Whether the action respects R u1 u2 = u1 u2 R, i.e. is an action of the quotient algebra."""
    from .rmatrix import rhat_entry

    rng = range(1, N + 1)
    pairs = list(product(rng, rng))
    for (i, j), (m, n) in product(pairs, pairs):
        lhs = OpMatrix.zeros(N * N, N * N)
        rhs = OpMatrix.zeros(N * N, N * N)
        for k, l in pairs:
            c = rhat_entry(N, i, j, k, l)
            if not c.is_zero():
                lhs = lhs + action_matrix(N, form_sign, ((0, k, m), (0, l, n))).scale(c)
            c = rhat_entry(N, k, l, m, n)
            if not c.is_zero():
                rhs = rhs + action_matrix(N, form_sign, ((0, i, k), (0, j, l))).scale(c)
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------


def braid_check(N: int) -> dict:
    """Inverse pairs, braid relations and the action cross-check, as named booleans."""
    report = {}
    d = N * N
    ident2 = OpMatrix.identity(d * d)
    for left, right in product((1, -1), repeat=2):
        name = f"{sign_str(left)}{sign_str(right)}"
        fwd = braiding(N, left, right, 1)
        back = braiding(N, right, left, -1)
        report[f"inverse[{name}]"] = back @ fwd == ident2 and fwd @ back == ident2
        report[f"action_formula[{name}]"] = fwd == braiding_from_action(N, left, right)
    for form_sign in (1, -1):
        report[f"action_respects_rtt[{sign_str(form_sign)}]"] = rtt_compatible(N, form_sign)
    from .exterior import max_dim

    if d ** 3 <= max_dim():
        for signs in product((1, -1), repeat=3):
            sig = SpaceSignature(signs, N)
            for s in (1, -1):
                lhs = apply_word_matrix([1, 2, 1], sig, s)
                rhs = apply_word_matrix([2, 1, 2], sig, s)
                key = "".join(sign_str(t) for t in signs)
                report[f"braid_relation[{key},{sign_str(s)}]"] = lhs == rhs
    return report
