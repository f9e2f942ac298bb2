"""The σ-metric pairing Γ+ with Γ-, its verification suite, contractions, Hodge operators
and the codifferential, all on left-invariant forms.

The pairing of a slot of type τ with a slot of type -τ is
``g'[(ij),(kl)] = F1^j_k F2^l_i`` for τ = + and ``g''[(ij),(kl)] = G1^j_k G2^l_i``
for τ = -, with diagonal

    F1 = z^-1 q^(N-2i),  F2 = q^(2i),  G1 = z^-1 q^N,  G2 = 1.

The extended pairing g̃ of ``x_1 ⊗ ... ⊗ x_k`` with ``y_1 ⊗ ... ⊗ y_l`` pairs x_k
with y_1, x_(k-1) with y_2 and so on; the unpaired slots survive.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .bimodule import (
    action_matrix,
    apply_word_matrix,
    as_sign,
    biinvariant_form,
    braiding,
    sign_str,
    SpaceSignature,
)
from .exterior import (
    StructureError,
    apply_A,
    apply_AB,
    apply_word,
    lambda_basis,
    top_form,
)
from .linalg import OpMatrix, kron, rank_exact
from .rmatrix import f_functionals, f_of_antipode, s2_scalar
from .scalar import ONE, ZERO, RatFunc, q_pow, z_pow

__all__ = [
    "MetricData",
    "metric_data",
    "verify_metric",
    "gtilde_vectors",
    "gtilde",
    "contract_vectors",
    "contract",
    "lambda_pairing",
    "NormalizedTopForms",
    "normalized_top_forms",
    "hodge",
    "codifferential",
    "laplace_on_generators",
    "wedge_coords",
]


@dataclass(frozen=True)
class MetricData:
    N: int
    F1: tuple
    F2: tuple
    G1: tuple
    G2: tuple
    g_plus_minus: OpMatrix
    g_minus_plus: OpMatrix

    def pairing(self, tau: int) -> OpMatrix:
        """Pairing matrix of a τ-slot (row) with a (-τ)-slot (column)."""
        return self.g_plus_minus if tau > 0 else self.g_minus_plus


def _pairing_matrix(N: int, first, second) -> OpMatrix:
    """[(ij),(kl)] -> first[j, k] * second[l, i] for diagonal first/second."""
    entries = []
    for i, j in product(range(N), repeat=2):
        # nonzero only for k = j, l = i
        entries.append((i * N + j, j * N + i, first[j] * second[i]))
    return OpMatrix.from_entries(N * N, N * N, entries)


def metric_data(N: int, F1=None, F2=None, G1=None, G2=None) -> MetricData:
    """The standard diagonal F/G data, or custom diagonals (used for negative controls)."""
    if F1 is None:
        F1 = tuple(z_pow(-1) * q_pow(N, N - 2 * i) for i in range(1, N + 1))
    if F2 is None:
        F2 = tuple(q_pow(N, 2 * i) for i in range(1, N + 1))
    if G1 is None:
        G1 = tuple(z_pow(-1) * q_pow(N, N) for _ in range(N))
    if G2 is None:
        G2 = tuple(ONE for _ in range(N))
    return MetricData(N, tuple(F1), tuple(F2), tuple(G1), tuple(G2),
                      _pairing_matrix(N, F1, F2), _pairing_matrix(N, G1, G2))


_standard = lru_cache(maxsize=None)(lambda N: metric_data(N))


# ---------------------------------------------------------------------------
# verification of the σ-metric conditions


def _as_functional(g: OpMatrix) -> OpMatrix:
    """A pairing matrix as a 1 x d^2 row functional on the tensor product."""
    d = g.rows
    return OpMatrix.from_entries(1, d * d, ((0, r * d + c, v) for r, c, v in g.entries()))


def _contract_adjacent(g: OpMatrix, pos: int, nslots: int) -> OpMatrix:
    """g applied to slots pos, pos+1 (1-based) of an nslots tensor; the other slots survive."""
    d = g.rows
    gf = _as_functional(g)
    left = OpMatrix.identity(d ** (pos - 1))
    right = OpMatrix.identity(d ** (nslots - pos - 1))
    return kron(kron(left, gf), right)


def _morphism_checks(md: MetricData) -> dict:
    N = md.N
    rng = range(N)
    out = {}
    # T in Mor(v, w) means T v = w T; on generators S^2 is the scalar q^(2i-2k)
    out["morphism[F1: S^2 u -> u]"] = all(
        md.F1[i] * s2_scalar(N, i + 1, k + 1) == md.F1[k] for i in rng for k in rng)
    out["morphism[F2: u -> S^2 u]"] = all(
        md.F2[i] == s2_scalar(N, i + 1, k + 1) * md.F2[k] for i in rng for k in rng)
    out["morphism[G1: u -> u]"] = len(set(md.G1)) == 1
    out["morphism[G2: u -> u]"] = len(set(md.G2)) == 1
    return out


def _bimodule_checks(md: MetricData) -> dict:
    """g(ξ a, ζ) summed through the coproduct equals g(ξ, ζ) a, on every generator."""
    N = md.N
    out = {}
    rng = range(1, N + 1)
    for tau in (1, -1):
        G = md.pairing(tau)
        ok = True
        for c, q in product(rng, rng):
            acc = OpMatrix.zeros(N * N, N * N)
            for e in rng:
                left = action_matrix(N, tau, ((0, c, e),))
                right = action_matrix(N, -tau, ((0, e, q),))
                acc = acc + left.transpose() @ G @ right
            expect = G if c == q else OpMatrix.zeros(N * N, N * N)
            ok = ok and acc == expect
        out[f"bimodule_homomorphism[{sign_str(tau)}{sign_str(-tau)}]"] = ok
    return out


def _prop_scalar_checks(md: MetricData) -> dict:
    """Constants c, ζ with f(S u) = ζ f̄(u), F1 = c G2 f(u), F2 = c^-1 f̄(u) G1 (all diagonal here)."""
    N = md.N
    f, fbar = f_functionals(N)
    fS = f_of_antipode(N)
    out = {}
    offdiag_zero = all(f[i, j].is_zero() and fbar[i, j].is_zero() and fS[i, j].is_zero()
                       for i in range(1, N + 1) for j in range(1, N + 1) if i != j)
    zeta = fS[1, 1] / fbar[1, 1]
    out["f_antipode_proportional_to_fbar"] = offdiag_zero and all(
        fS[i, i] == zeta * fbar[i, i] for i in range(1, N + 1))
    c = md.F1[0] / (md.G2[0] * f[1, 1])
    out["F1_equals_c_G2_f"] = all(md.F1[i - 1] == c * md.G2[i - 1] * f[i, i] for i in range(1, N + 1))
    out["F2_equals_cinv_fbar_G1"] = all(
        md.F2[i - 1] == fbar[i, i] * md.G1[i - 1] / c for i in range(1, N + 1))
    out["_constants"] = {"c": str(c), "zeta": str(zeta)}
    return out


def verify_metric(N: int, md: MetricData | None = None) -> dict:
    """Named boolean checks of every σ-metric condition on left-invariant forms."""
    md = md or _standard(N)
    d = N * N
    report: dict = {}
    report["nondegenerate[+-]"] = rank_exact(md.g_plus_minus) == d
    report["nondegenerate[-+]"] = rank_exact(md.g_minus_plus) == d
    report.update(_morphism_checks(md))
    report.update(_bimodule_checks(md))
    # σ-symmetry: g ∘ σ^± = g on both orderings
    for tau in (1, -1):
        g_in = _as_functional(md.pairing(tau))
        g_out = _as_functional(md.pairing(-tau))
        for s in (1, -1):
            report[f"sigma_symmetric[{sign_str(tau)}{sign_str(-tau)},{sign_str(s)}]"] = \
                g_out @ braiding(N, tau, -tau, s) == g_in
    # exchange diagram on Γ_τ ⊗ Γ_τ' ⊗ Γ_-τ
    for tau, tau2 in product((1, -1), repeat=2):
        sig = SpaceSignature((tau, tau2, -tau), N)
        for s in (1, -1):
            lhs_sigma, sig_after = apply_word_matrix([2], sig, s)
            lhs = _contract_adjacent(md.pairing(sig_after.signs[0]), 1, 3) @ lhs_sigma
            rhs_sigma, sig_after2 = apply_word_matrix([1], sig, -s)
            rhs = _contract_adjacent(md.pairing(sig_after2.signs[1]), 2, 3) @ rhs_sigma
            name = f"exchange[{sign_str(tau)}{sign_str(tau2)}{sign_str(-tau)},{sign_str(s)}]"
            report[name] = lhs == rhs
    report.update(_prop_scalar_checks(md))
    return report


# ---------------------------------------------------------------------------
# extended pairing and contractions on sparse vectors


@lru_cache(maxsize=None)
def _slot_partner(N: int, tau: int):
    """For a τ-slot label, its unique (-τ)-partner label and the pairing value."""
    g = _standard(N).pairing(tau)
    return {r: next(iter(row.items())) for r, row in g.data.items()}


def gtilde_vectors(x: dict, a: int, y: dict, b: int, tau: int, N: int) -> dict:
    """g̃ of an a-slot τ-vector with a b-slot (-τ)-vector; the result has |a-b| slots."""
    d = N * N
    m = min(a, b)
    partner = _slot_partner(N, tau)
    # paired block of x: last m slots, of y: first m slots (x_a with y_1, ...)
    ysplit = d ** (b - m)
    yblocks: dict = {}
    for idx, v in y.items():
        head, tail = divmod(idx, ysplit)
        yblocks.setdefault(head, []).append((tail, v))
    out: dict = {}
    xsplit = d ** m
    for idx, v in x.items():
        keep, block = divmod(idx, xsplit)
        # digits of the x block, last slot first
        target = 0
        scale = v
        rest = block
        ok = True
        for _ in range(m):
            rest, digit = divmod(rest, d)
            hit = partner.get(digit)
            if hit is None:
                ok = False
                break
            label, gval = hit
            target = target * d + label
            scale = scale * gval
        if not ok or target not in yblocks:
            continue
        for tail, w in yblocks[target]:
            key = keep if a >= b else tail
            prev = out.get(key)
            term = scale * w
            out[key] = term if prev is None else prev + term
    return {i: val for i, val in out.items() if not val.is_zero()}


def gtilde(k: int, tau, N: int) -> OpMatrix:
    """g̃ on (Γ_τ)^{⊗k} ⊗ (Γ_-τ)^{⊗k} as a 1 x d^(2k) functional."""
    tau = as_sign(tau)
    d = N * N
    entries = []
    for xi in range(d ** k):
        for yi, v in _gtilde_row(xi, k, tau, N).items():
            entries.append((0, xi * d ** k + yi, v))
    return OpMatrix.from_entries(1, d ** (2 * k), entries)


def _gtilde_row(xi: int, k: int, tau: int, N: int) -> dict:
    d = N * N
    partner = _slot_partner(N, tau)
    target, scale, rest = 0, ONE, xi
    for _ in range(k):
        rest, digit = divmod(rest, d)
        label, gval = partner[digit]
        target = target * d + label
        scale = scale * gval
    return {target: scale}


def contract_vectors(x: dict, k: int, y: dict, l: int, tau, sign, N: int) -> dict:
    """ctr^sign of a k-slot τ-vector with an l-slot (-τ)-vector.

    k >= l: g̃(B_{k-l,l} x, A_l y); k < l: g̃(A_k x, B_{k,l-k} y).
    """
    tau, sign = as_sign(tau), as_sign(sign)
    if k >= l:
        bx = apply_AB(x, k - l, l, "B", k, N, tau, sign)
        ay = apply_A(y, l, l, N, -tau, sign)
        return gtilde_vectors(bx, k, ay, l, tau, N)
    ax = apply_A(x, k, k, N, tau, sign)
    by = apply_AB(y, k, l - k, "B", l, N, -tau, sign)
    return gtilde_vectors(ax, k, by, l, tau, N)


def contract(k: int, l: int, tau, sign, N: int) -> OpMatrix:
    """ctr^sign as a matrix from (d^k ⊗ d^l) (index x*d^l + y) to d^|k-l|."""
    tau, sign = as_sign(tau), as_sign(sign)
    d = N * N
    entries = []
    for xi in range(d ** k):
        for yi in range(d ** l):
            for r, v in contract_vectors({xi: ONE}, k, {yi: ONE}, l, tau, sign, N).items():
                entries.append((r, xi * d ** l + yi, v))
    return OpMatrix.from_entries(d ** abs(k - l), d ** (k + l), entries)


def lambda_pairing(k: int, tau, sign, N: int) -> OpMatrix:
    """ctr^sign between the Λ^k(τ) and Λ^k(-τ) working bases (a rank x rank matrix)."""
    tau = as_sign(tau)
    left, right = lambda_basis(N, tau, k), lambda_basis(N, -tau, k)
    rows = []
    for a in left.pivots:
        row = []
        for b in right.pivots:
            row.append(contract_vectors({a: ONE}, k, {b: ONE}, k, tau, sign, N).get(0, ZERO))
        rows.append(row)
    return OpMatrix.from_dense(rows) if rows else OpMatrix.zeros(0, 0)


def wedge_coords(x: dict, k: int, y: dict, l: int, tau, N: int) -> list:
    """Coordinates in Λ^(k+l)(τ) of the wedge of the classes of x and y."""
    d = N * N
    prod_vec = {}
    for i, v in x.items():
        for j, w in y.items():
            prod_vec[i * d ** l + j] = v * w
    return lambda_basis(N, as_sign(tau), k + l).coords(prod_vec)


# ---------------------------------------------------------------------------
# top forms, Hodge operators, codifferential


@dataclass(frozen=True)
class NormalizedTopForms:
    N: int
    n0: int
    plus: dict
    minus: dict
    sigma_eigenvalue: RatFunc
    raw_pairings: tuple

    def of(self, tau: int) -> dict:
        return self.plus if tau > 0 else self.minus


@lru_cache(maxsize=None)
def normalized_top_forms(N: int) -> NormalizedTopForms:
    """ω0^± scaled so that ctr^±(ω0^+, ω0^-) = ctr^±(ω0^-, ω0^+) = 1."""
    tp, tm = top_form(N, 1), top_form(N, -1)
    if tp.n0 != tm.n0:
        raise StructureError("top degrees differ between Γ+ and Γ-")
    n0 = tp.n0
    values = []
    for s in (1, -1):
        values.append(contract_vectors(tp.vector, n0, tm.vector, n0, 1, s, N).get(0, ZERO))
        values.append(contract_vectors(tm.vector, n0, tp.vector, n0, -1, s, N).get(0, ZERO))
    if values[0].is_zero() or any(v != values[0] for v in values):
        raise StructureError(f"top forms cannot be normalized: pairings {[str(v) for v in values]}")
    scale = values[0].inverse()
    minus = {i: v * scale for i, v in tm.vector.items()}
    return NormalizedTopForms(N, n0, tp.vector, minus, tp.sigma_eigenvalue, tuple(values))


def hodge(k: int, tau, side: str, sign, N: int) -> OpMatrix:
    """*_L or *_R from Λ^k(τ) to Λ^(n0-k)(-τ) in the working bases.

    *_L(ξ) = ctr(ξ, ω0^-τ) and *_R(ξ) = ctr(ω0^-τ, ξ).
    """
    tau, sign = as_sign(tau), as_sign(sign)
    top = normalized_top_forms(N)
    n0 = top.n0
    if not 0 <= k <= n0:
        raise ValueError(f"degree {k} outside 0..{n0}")
    src = lambda_basis(N, tau, k)
    dst = lambda_basis(N, -tau, n0 - k)
    omega = top.of(-tau)
    cols = []
    for c in src.pivots:
        if side == "left":
            img = contract_vectors({c: ONE}, k, omega, n0, tau, sign, N)
        elif side == "right":
            img = contract_vectors(omega, n0, {c: ONE}, k, -tau, sign, N)
        else:
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        coords = dst.coords(img)
        cols.append({i: v for i, v in enumerate(coords) if not v.is_zero()})
    return OpMatrix.from_columns(cols, dst.rank)


def codifferential(k: int, tau, sign, N: int) -> OpMatrix:
    """κ ρ = ctr(ρ, η^-τ) + (-1)^k ctr(η^-τ, ρ) from Λ^k(τ) to Λ^(k-1)(τ)."""
    tau, sign = as_sign(tau), as_sign(sign)
    if k == 0:
        return OpMatrix.zeros(0, 1)
    eta = biinvariant_form(N, -tau).vector()
    src = lambda_basis(N, tau, k)
    dst = lambda_basis(N, tau, k - 1)
    cols = []
    for c in src.pivots:
        first = contract_vectors({c: ONE}, k, eta, 1, tau, sign, N)
        second = contract_vectors(eta, 1, {c: ONE}, k, -tau, sign, N)
        total = dict(first)
        for i, v in second.items():
            total[i] = total.get(i, ZERO) + (v if k % 2 == 0 else -v)
        total = {i: v for i, v in total.items() if not v.is_zero()}
        coords = dst.coords(total)
        cols.append({i: v for i, v in enumerate(coords) if not v.is_zero()})
    return OpMatrix.from_columns(cols, dst.rank)


def laplace_on_generators(N: int) -> OpMatrix:
    """Δ(u^i_j) = ctr(η+ u^i_j, η-) + ctr(η- u^i_j, η+) - 2 u^i_j ctr(η+, η-) in the basis u^i_j.

    Moving u^i_j to the left through a 1-form gives ξ u^i_j = u^i_c (ξ ◁ u^c_j),
    so Δ(u^i_j) = sum_c u^i_c M^c_j with M built from the right action.
    """
    md = _standard(N)
    eta_p = biinvariant_form(N, 1).vector()
    eta_m = biinvariant_form(N, -1).vector()
    gp, gm = md.pairing(1), md.pairing(-1)

    def pair(g, x, y):
        return sum((xv * g[r, c] * y[c] for r, xv in x.items() for c in y), ZERO)

    base = pair(gp, eta_p, eta_m)
    M = {}
    rng = range(1, N + 1)
    for c, b in product(rng, rng):
        moved_p = action_matrix(N, 1, ((0, c, b),)).apply(eta_p)
        moved_m = action_matrix(N, -1, ((0, c, b),)).apply(eta_m)
        value = pair(gp, moved_p, eta_m) + pair(gm, moved_m, eta_p)
        if c == b:
            value = value - 2 * base
        M[c, b] = value
    entries = []
    for i, c, j in product(rng, rng, rng):
        v = M[c, j]
        if not v.is_zero():
            entries.append(((i - 1) * N + c - 1, (i - 1) * N + j - 1, v))
    return OpMatrix.from_entries(N * N, N * N, entries)
