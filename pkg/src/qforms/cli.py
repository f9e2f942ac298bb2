"""Batch command line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 the
request exceeds the size bound QFORMS_MAX_DIM (default 1024).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import bimodule, exterior, laplace, metric, rmatrix
from .linalg import OpMatrix
from .scalar import PoleError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TRUNCATED = 0, 1, 2, 3

# human-readable provenance for each family of checks
ANCHORS = {
    "inverse": "σ^- is the inverse of σ^+ on each pair of bimodule types",
    "action_formula": "σ(ξ⊗ζ) = ζ_K ⊗ (ξ ◁ v^K_J) reproduces the r-form braiding formula",
    "action_respects_rtt": "the right action on left-invariant forms respects the RTT relation",
    "braid_relation": "σ12 σ23 σ12 = σ23 σ12 σ23 on three slots",
    "hecke": "(R - q)(R + 1/q) = 0",
    "rhat_braid": "R12 R23 R12 = R23 R12 R23",
    "nondegenerate": "the pairing matrix of g is invertible",
    "morphism": "F1, F2, G1, G2 intertwine u, S^2 u as required",
    "bimodule_homomorphism": "g(ξa, ζ) = g(ξ, aζ) and g(ξ, ζa) = g(ξ, ζ)a",
    "sigma_symmetric": "g ∘ σ = g",
    "exchange": "g12 σ23 = g23 σ12 (opposite signs) on Γ_τ ⊗ Γ_τ' ⊗ Γ_-τ",
    "f_antipode_proportional_to_fbar": "f(S u) = ζ f̄(u) for a constant ζ",
    "F1_equals_c_G2_f": "F1 = c G2 f(u) for a constant c",
    "F2_equals_cinv_fbar_G1": "F2 = c^-1 f̄(u) G1 with the same constant c",
    "hodge_round_trip": "*(+) *(-) = *(-) *(+) = id",
    "hodge_sign_independent": "*(+) = *(-) in degrees 0, 1, n0-1, n0",
    "sigma_top": "σ_(n0) acts on the top form by (-1)^(n0(n0-1)/2)",
    "generator_laplacian": "Δ on generators from the right action equals E_[1] id",
    "word_laplacian": "the Jucys-Murphy operator L_m acts as E_λ on the projector for λ",
}


class UsageError(Exception):
    pass


class Truncated(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int = 2
    max_degree: int = 4
    max_boxes: int = 3
    mode: str = "exact"
    seed: int | None = None
    at: Fraction | None = None
    classical: bool = False
    k: int = 0
    m: int = 1
    tau: int = 1
    side: str = "left"
    sign: int = 1
    negative_control: bool = False
    fmt: str = "json"

    def validate(self):
        if self.n < 1:
            raise UsageError("--n must be at least 1")
        if self.mode == "probabilistic" and self.seed is None:
            raise UsageError("--seed is required with --mode probabilistic")
        if self.at is not None and (self.at == 0 or abs(self.at) == 1):
            raise UsageError("--at must be a nonzero rational different from 1 and -1")


def _anchor(name: str) -> str:
    return ANCHORS.get(name.split("[")[0], "")


def _checks(report: dict) -> list:
    return [
        {"name": name, "pass": bool(ok), "anchor": _anchor(name)}
        for name, ok in report.items() if not name.startswith("_")
    ]


def _status(checks) -> int:
    return EXIT_OK if all(c["pass"] for c in checks) else EXIT_FAIL


def _bound(size: int):
    if size > exterior.max_dim():
        raise Truncated(f"space of dimension {size} exceeds QFORMS_MAX_DIM={exterior.max_dim()}")


# ---------------------------------------------------------------------------


def cmd_dims(cfg: RunConfig):
    res = exterior.lambda_dims(cfg.n, cfg.tau, cfg.max_degree, cfg.mode, cfg.seed)
    return (EXIT_TRUNCATED if res.truncated else EXIT_OK), res.dims


def cmd_spectrum(cfg: RunConfig):
    rows = []
    for lam in laplace.diagrams(cfg.n, cfg.max_boxes, min_boxes=1):
        e = laplace.eigenvalue(lam, cfg.n)
        row = {"diagram": list(lam.rows), "E": str(e)}
        if cfg.at is not None:
            try:
                row["value"] = str(e(cfg.at))
            except PoleError:
                raise UsageError(f"E_{lam} has a pole at z = {cfg.at}; choose another --at")
        if cfg.classical:
            row["classical"] = str(laplace.classical_eigenvalue(lam, cfg.n))
        rows.append(row)
    doc = {"command": "spectrum", "n": cfg.n, "max_boxes": cfg.max_boxes, "rows": rows}
    if cfg.at is not None:
        doc["at"] = str(cfg.at)
    return EXIT_OK, doc


def cmd_verify_metric(cfg: RunConfig):
    _bound((cfg.n * cfg.n) ** 3)
    md = None
    if cfg.negative_control:
        if cfg.n < 2:
            raise UsageError("the negative control needs --n >= 2")
        std = metric.metric_data(cfg.n)
        f2 = list(std.F2)
        f2[0], f2[1] = f2[1], f2[0]
        md = metric.metric_data(cfg.n, F2=tuple(f2))
    report = metric.verify_metric(cfg.n, md)
    checks = _checks(report)
    doc = {"command": "verify-metric", "n": cfg.n, "negative_control": cfg.negative_control,
           "constants": report["_constants"], "checks": checks}
    return _status(checks), doc


def cmd_braid_check(cfg: RunConfig):
    _bound((cfg.n * cfg.n) ** 2)
    report = bimodule.braid_check(cfg.n)
    n = cfg.n
    R = rmatrix.rhat(n)
    ident = OpMatrix.identity(n * n)
    from .linalg import kron
    from .scalar import q_pow

    q = q_pow(n, 1)
    report["hecke"] = (R - ident.scale(q)) @ (R + ident.scale(q.inverse())) == OpMatrix.zeros(n * n, n * n)
    R12, R23 = kron(R, OpMatrix.identity(n)), kron(OpMatrix.identity(n), R)
    report["rhat_braid"] = R12 @ R23 @ R12 == R23 @ R12 @ R23
    checks = _checks(report)
    return _status(checks), {"command": "braid-check", "n": n, "checks": checks}


def cmd_rform(cfg: RunConfig):
    table = rmatrix.rform_table(cfg.n).to_json()
    f, fbar = rmatrix.f_functionals(cfg.n)
    table["f"] = {f"{i},{j}": str(v) for (i, j), v in sorted(f.items())}
    table["fbar"] = {f"{i},{j}": str(v) for (i, j), v in sorted(fbar.items())}
    table["command"] = "rform"
    return EXIT_OK, table


def cmd_hodge(cfg: RunConfig):
    try:
        top = metric.normalized_top_forms(cfg.n)
    except exterior.ResourceLimitError as exc:
        raise Truncated(str(exc))
    n0 = top.n0
    if not 0 <= cfg.k <= n0:
        raise UsageError(f"--k must lie in 0..{n0}")
    h = metric.hodge(cfg.k, cfg.tau, cfg.side, cfg.sign, cfg.n)
    partner = metric.hodge(n0 - cfg.k, -cfg.tau, cfg.side, -cfg.sign, cfg.n)
    ident = OpMatrix.identity(h.cols)
    checks = [{"name": "hodge_round_trip", "pass": partner @ h == ident, "anchor": _anchor("hodge_round_trip")}]
    if cfg.k in (0, 1, n0 - 1, n0):
        other = metric.hodge(cfg.k, cfg.tau, cfg.side, -cfg.sign, cfg.n)
        checks.append({"name": "hodge_sign_independent", "pass": other == h,
                       "anchor": _anchor("hodge_sign_independent")})
    expected = (-1) ** (n0 * (n0 - 1) // 2)
    checks.append({"name": "sigma_top", "pass": top.sigma_eigenvalue == expected, "anchor": _anchor("sigma_top")})
    doc = {"command": "hodge", "n": cfg.n, "n0": n0, "k": cfg.k, "tau": bimodule.sign_str(cfg.tau),
           "side": cfg.side, "sign": bimodule.sign_str(cfg.sign), "matrix": h.to_json(), "checks": checks}
    return _status(checks), doc


def cmd_laplace_oracle(cfg: RunConfig):
    n, m = cfg.n, cfg.m
    if m not in (1, 2):
        raise UsageError("--m must be 1 or 2 (projectors are built from the Hecke relation only)")
    _bound(n ** (m + 1))
    L = laplace.word_laplace(m, n)
    comparisons = []
    if m == 1:
        lam = laplace.YoungDiagram.of([1], n)
        e = laplace.eigenvalue(lam, n)
        comparisons.append({"name": "word_laplacian[1]", "diagram": list(lam.rows), "E": str(e),
                            "pass": L == OpMatrix.identity(n).scale(e), "anchor": _anchor("word_laplacian")})
        gen = metric.laplace_on_generators(n)
        comparisons.append({"name": "generator_laplacian", "diagram": list(lam.rows), "E": str(e),
                            "pass": gen == OpMatrix.identity(n * n).scale(e),
                            "anchor": _anchor("generator_laplacian")})
    else:
        shapes = [("sym", [2])] + ([("anti", [1, 1])] if n >= 2 else [])
        for kind, rows in shapes:
            lam = laplace.YoungDiagram.of(rows, n)
            e = laplace.eigenvalue(lam, n)
            P = laplace.hecke_projector(kind, n)
            comparisons.append({"name": f"word_laplacian[{kind}]", "diagram": list(lam.rows), "E": str(e),
                                "pass": L @ P == P.scale(e), "anchor": _anchor("word_laplacian")})
    return _status(comparisons), {"command": "laplace-oracle", "n": n, "m": m, "checks": comparisons}


COMMANDS = {
    "dims": cmd_dims,
    "spectrum": cmd_spectrum,
    "verify-metric": cmd_verify_metric,
    "braid-check": cmd_braid_check,
    "rform": cmd_rform,
    "hodge": cmd_hodge,
    "laplace-oracle": cmd_laplace_oracle,
}


def run(cfg: RunConfig):
    """Dispatch one command; returns (exit status, document or None, message)."""
    try:
        cfg.validate()
        status, doc = COMMANDS[cfg.command](cfg)
        return status, doc, ""
    except UsageError as exc:
        return EXIT_USAGE, None, str(exc)
    except (Truncated, exterior.ResourceLimitError) as exc:
        return EXIT_TRUNCATED, {"command": cfg.command, "truncated": True, "reason": str(exc)}, str(exc)


# ---------------------------------------------------------------------------
# rendering


def render(doc, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)
    rows = _table_rows(doc)
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), quoting=csv.QUOTE_NONNUMERIC,
                                    lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    # text
    return "\n".join("  ".join(f"{k}={v}" for k, v in row.items()) for row in rows)


def _table_rows(doc) -> list:
    if isinstance(doc, list):
        return [{"k": k, "dim": d} for k, d in enumerate(doc)]
    if "rows" in doc:
        return [{k: (",".join(map(str, v)) if isinstance(v, list) else v) for k, v in row.items()}
                for row in doc["rows"]]
    if "checks" in doc:
        return [{"name": c["name"], "pass": str(c["pass"]).lower(), "anchor": c.get("anchor", "")}
                for c in doc["checks"]]
    return [{"key": k, "value": json.dumps(v, sort_keys=True, ensure_ascii=False)} for k, v in sorted(doc.items())]


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qforms", description="Exact differential-form algebra on SL_q(N).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, default=2, help="N in SL_q(N)")
        p.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
        return p

    p = common(sub.add_parser("dims", help="ranks of the antisymmetrizers"))
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--mode", choices=("exact", "probabilistic"), default="exact")
    p.add_argument("--seed", type=int)
    p.add_argument("--tau", choices=("+", "-"), default="+")

    p = common(sub.add_parser("spectrum", help="Laplace-Beltrami eigenvalues by Young diagram"))
    p.add_argument("--max-boxes", type=int, default=3)
    p.add_argument("--at", type=_fraction)
    p.add_argument("--classical", action="store_true")

    p = common(sub.add_parser("verify-metric", help="σ-metric verification suite"))
    p.add_argument("--negative-control", action="store_true", help="swap two entries of F2 first")

    common(sub.add_parser("braid-check", help="braiding inverse and braid relations"))
    common(sub.add_parser("rform", help="dump the r-form tables"))

    p = common(sub.add_parser("hodge", help="Hodge operator matrix and round-trip check"))
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--tau", choices=("+", "-"), default="+")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--sign", choices=("+", "-"), default="+")

    p = common(sub.add_parser("laplace-oracle", help="compare operator and closed-form eigenvalues"))
    p.add_argument("--m", type=int, default=1)
    return parser


def config_from_args(ns) -> RunConfig:
    values = {k: v for k, v in vars(ns).items() if v is not None}
    for key in ("tau", "sign"):
        if key in values:
            values[key] = bimodule.as_sign(values[key])
    return RunConfig(**values)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cfg = config_from_args(ns)
    status, doc, message = run(cfg)
    if message:
        print(f"qforms: {message}", file=sys.stderr)
    if doc is not None:
        print(render(doc, cfg.fmt))
    return status


if __name__ == "__main__":
    sys.exit(main())
