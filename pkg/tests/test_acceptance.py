"""End-to-end acceptance checks, one per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import itertools
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE
from qforms.bimodule import braid_check
from qforms.exterior import exact_pivots, kernel_equality_check, lambda_dims, top_form
from qforms.laplace import (
    YoungDiagram, classical_eigenvalue, classical_limit, diagrams, eigenvalue,
    hecke_projector, min_positive, sl2_eigenvalue, word_laplace,
)
from qforms.linalg import OpMatrix, kron
from qforms.metric import hodge, laplace_on_generators, metric_data, normalized_top_forms, verify_metric
from qforms.rmatrix import rhat
from qforms.scalar import ZERO, q_pow, rf_eval


def record(number, desc, ok, part=""):
    ACCEPTANCE[number, part] = (desc, bool(ok))
    assert ok, desc


def _checks_pass(report):
    return all(v for k, v in report.items() if not k.startswith("_"))


def test_1_dimension_table():
    start = time.perf_counter()
    res = lambda_dims(2, 1, 5, mode="probabilistic", seed=20261019, exact_up_to=3)
    exact = lambda_dims(2, 1, 3).dims
    elapsed = time.perf_counter() - start
    ok = res.dims == [1, 4, 6, 4, 1, 0] and exact == [1, 4, 6, 4] and not res.truncated and elapsed < 300
    record(1, f"rank A_k (N=2, k=0..5) = {res.dims}, exact k<=3, seeded mod-p k=4,5 ({elapsed:.1f}s)", ok)


def test_2_braid_and_hecke():
    start = time.perf_counter()
    ok = True
    for N in (2, 3):
        q = q_pow(N, 1)
        R, I = rhat(N), OpMatrix.identity(N * N)
        ok &= (R - I.scale(q)) @ (R + I.scale(q.inverse())) == OpMatrix.zeros(N * N, N * N)
        R12, R23 = kron(R, OpMatrix.identity(N)), kron(OpMatrix.identity(N), R)
        ok &= R12 @ R23 @ R12 == R23 @ R12 @ R23
        report = braid_check(N)
        ok &= all(report.values())
        ok &= sum(k.startswith("braid_relation") for k in report) == 16
        ok &= sum(k.startswith("inverse") for k in report) == 4
    elapsed = time.perf_counter() - start
    record(2, f"Hecke, braid relation and σ+σ- = id on all pairings, N=2,3 ({elapsed:.1f}s)", ok and elapsed < 60)


def test_3_sigma_metric():
    start = time.perf_counter()
    ok = _checks_pass(verify_metric(2)) and _checks_pass(verify_metric(3))
    std = metric_data(2)
    f2 = list(std.F2)
    f2[0], f2[1] = f2[1], f2[0]
    control = verify_metric(2, metric_data(2, F2=tuple(f2)))
    control_fails = not all(v for k, v in control.items() if k.startswith("sigma_symmetric"))
    elapsed = time.perf_counter() - start
    record(3, f"σ-metric suite passes N=2,3; perturbed F2 fails σ-symmetry ({elapsed:.1f}s)",
           ok and control_fails and elapsed < 120)


def test_4_kernel_equality():
    ok = all(kernel_equality_check(k, tau, 2) for k in (2, 3) for tau in (1, -1))
    record(4, "ker A+_k = ker A-_k for k=2,3, N=2", ok)


def test_5_top_form_and_hodge():
    top = top_form(2, 1)
    one_dim = len(exact_pivots(2, 1, 4)) == 1 and not exact_pivots(2, 1, 5)
    ok = top.n0 == 4 and one_dim and top.sigma_eigenvalue == (-1) ** (4 * 3 // 2)
    normalized_top_forms(2)
    for k, tau, side in itertools.product(range(5), (1, -1), ("left", "right")):
        h = hodge(k, tau, side, 1, 2)
        ok &= hodge(4 - k, -tau, side, -1, 2) @ h == OpMatrix.identity(h.cols)
        ok &= h @ hodge(4 - k, -tau, side, -1, 2) == OpMatrix.identity(h.rows)
    record(5, "n0 = 4, dim image A_4 = 1, σ_(4) = +1, Hodge round trip on all degrees", ok)


def test_6_sl2_spectrum():
    ok = all(eigenvalue(YoungDiagram.of([m], 2), 2) == sl2_eigenvalue(m) for m in range(7))
    record(6, "E_[m,0] = 2(z-1/z)^2 [m]_z [m+2]_z for m <= 6", ok)


def test_7_oracle_agreement():
    start = time.perf_counter()
    e1 = eigenvalue(YoungDiagram.of([1], 2), 2)
    ok = laplace_on_generators(2) == OpMatrix.identity(4).scale(e1)
    ok &= word_laplace(1, 2) == OpMatrix.identity(2).scale(e1)
    L = word_laplace(2, 2)
    for kind, rows in (("sym", [2]), ("anti", [1, 1])):
        P = hecke_projector(kind, 2)
        ok &= L @ P == P.scale(eigenvalue(YoungDiagram.of(rows, 2), 2))
    elapsed = time.perf_counter() - start
    record(7, f"generator Laplacian = L_1 = E_[1] id; L_2 acts by E_[2], E_[1,1] on projectors ({elapsed:.1f}s)",
           ok and elapsed < 120)


def test_8_classical_limit():
    ok = all(classical_limit(lam, N) == classical_eigenvalue(lam, N) for N in (2, 3) for lam in diagrams(N, 3))
    value = classical_limit(YoungDiagram.of([1], 2), 2)
    record(8, f"q -> 1 limit matches the classical eigenvalue for <= 3 boxes, N=2,3; [1,0] -> {value}",
           ok and value == Fraction(3, 2))


def _reduces_to_empty(lam):
    # full columns form the quantum determinant, i.e. the trivial corepresentation
    return len(set(lam.rows)) == 1


@pytest.mark.parametrize("N,at", [(2, Fraction(3, 2)), (3, Fraction(5, 4))])
def test_9_spectrum_ordering(N, at):
    res = min_positive(N, 4, at)
    values = res["values"]
    nonneg = all(v >= 0 for _, v in values)
    zeros = {lam for lam, v in values if v == 0}
    zero_set_ok = zeros == {lam for lam, _ in values if _reduces_to_empty(lam)}
    # removing a full column leaves the corepresentation, hence E, unchanged
    stable = all(eigenvalue(lam, N) == eigenvalue(YoungDiagram(tuple(r - lam.rows[-1] for r in lam.rows)), N)
                 for lam, _ in values)
    ok = nonneg and zero_set_ok and stable and res["column_shape"]
    desc = (f"N={N}, z={at}: E >= 0 on <= 4 boxes, zero exactly on full-column diagrams, "
            f"min positive at {res['minimizer']}")
    record(9, desc, ok, part=f"N={N}")


@pytest.mark.xfail(strict=True, reason="E vanishes on full-column diagrams such as [1,1] for N=2")
def test_9_zero_only_at_literal_empty_diagram():
    values = min_positive(2, 4, Fraction(3, 2))["values"]
    assert [lam for lam, v in values if v == 0] == [YoungDiagram((0, 0))]


@pytest.mark.xfail(strict=True, reason="removing a full column keeps E equal, it does not decrease it")
def test_9_strict_decrease_under_column_removal():
    big, small = YoungDiagram.of([2, 1], 2), YoungDiagram.of([1], 2)
    assert rf_eval(eigenvalue(big, 2), Fraction(3, 2)) > rf_eval(eigenvalue(small, 2), Fraction(3, 2))


def test_10_determinism():
    argvs = [
        ["dims", "--n", "2", "--max-degree", "5", "--mode", "probabilistic", "--seed", "99"],
        ["spectrum", "--n", "3", "--max-boxes", "3", "--at", "5/4", "--classical"],
        ["verify-metric", "--n", "2"],
    ]
    ok = True
    for argv in argvs:
        outs = [subprocess.run([sys.executable, "-m", "qforms", *argv], capture_output=True, check=False)
                for _ in range(2)]
        ok &= outs[0].returncode == outs[1].returncode == 0
        ok &= outs[0].stdout == outs[1].stdout and len(outs[0].stdout) > 0
    record(10, "repeated CLI runs with identical seeds give byte-identical JSON", ok)


def test_zero_is_exact():
    assert eigenvalue(YoungDiagram.of([1, 1], 2), 2) == ZERO
