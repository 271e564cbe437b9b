"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 not Cartan / unclassifiable,
3 verification failure, 4 branch cut.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .factorize import MembershipError, as_symmetry, kak_decompose_ai, kp_decompose, split_propagator
from .io import SCHEMA, InputError, load_config, read_matrix, write_matrix
from .linalg import BranchCutError
from .oddeven import build_odd_even, verify_odd_even
from .subspaces import DEFAULT_CLOSURE_TOL
from .symmetries import (
    CartanInvolution,
    ClassificationError,
    Symmetry,
    classify_involution,
    embed,
    induced_observable_map,
    involution_from_symmetry,
    is_cartan_symmetry,
    spin_operators,
    time_reversal_symmetry,
)

EXIT_OK, EXIT_INPUT, EXIT_NOT_CARTAN, EXIT_VERIFY, EXIT_BRANCH = 0, 1, 2, 3, 4


def _emit(report: dict, out: str | None = None) -> None:
    text = json.dumps(report, indent=2)
    print(text)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")


def cmd_classify(args) -> int:
    x = read_matrix(args.symmetry_file)
    try:
        s = Symmetry(args.kind, x)
    except ValueError as exc:
        raise InputError(f"matrix file: field 'data': {exc}") from exc
    check = is_cartan_symmetry(s)
    report = {"schema": SCHEMA, "is_cartan": check.is_cartan, "phi": check.phi, "type": None,
              "dim_k": None, "dim_p": None, "residual": check.residual}
    if not check.is_cartan:
        _emit(report, args.out)
        return EXIT_NOT_CARTAN
    split = involution_from_symmetry(s)
    report["dim_k"], report["dim_p"] = len(split.k), len(split.p)
    try:
        report["type"] = str(classify_involution(split.involution))
    except ClassificationError as exc:
        report["error"] = str(exc)
        _emit(report, args.out)
        return EXIT_NOT_CARTAN
    _emit(report, args.out)
    return EXIT_OK


def cmd_oddeven(args) -> int:
    cfg = load_config(args.config_file)
    closure_tol = cfg.tolerances.get("closure_tol", DEFAULT_CLOSURE_TOL)
    if args.closure_tol is not None:
        closure_tol = args.closure_tol
    d = build_odd_even(cfg.subsystems)
    seed = args.seed if args.seed is not None else cfg.seed
    rep = verify_odd_even(d, mode=args.verify, samples=args.samples, seed=seed, closure_tol=closure_tol)
    report = {
        "schema": SCHEMA,
        "subsystems": [{"dim": c.dim, "type": c.decomposition_type} for c in d.choices],
        "total_dim": d.total_dim,
        "r": d.r,
        "predicted_type": d.predicted_type,
        **rep.as_dict(),
    }
    _emit(report, args.out)
    return EXIT_OK if rep.passed else EXIT_VERIFY


def _involution_from_args(args, n: int) -> CartanInvolution:
    try:
        if args.type == "AIII":
            if args.p is None or args.q is None:
                raise ValueError("AIII requires --p and --q")
            return CartanInvolution("AIII", n, args.p, args.q)
        return CartanInvolution(args.type, n)
    except ValueError as exc:
        raise InputError(f"--type: {exc}") from exc


def cmd_factor(args) -> int:
    u = read_matrix(args.unitary_file)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    n = u.shape[0]
    if not np.allclose(u @ u.conj().T, np.eye(n), atol=1e-9):
        raise InputError("matrix file: field 'data': matrix is not unitary")
    try:
        if args.mode == "kak":
            if args.type != "AI":
                raise InputError("--type: KAK is only available for AI")
            r = kak_decompose_ai(u)
            factors = {"K1": r.K1, "A": r.A, "K2": r.K2}
            residual = r.residual
            membership = {
                "K1_imag": float(np.max(np.abs(r.K1.imag))),
                "K2_imag": float(np.max(np.abs(r.K2.imag))),
            }
        else:
            inv = _involution_from_args(args, n)
            if args.mode == "kp":
                r = kp_decompose(u, inv)
                factors = {"K": r.K, "P": r.P}
                residual = r.residual
                membership = {"logK": r.membership_residuals[0], "logP": r.membership_residuals[1]}
            else:
                u_a, u_s, h_a, h_s = split_propagator(u, inv)
                factors = {"U_a": u_a, "U_s": u_s, "H_a": h_a, "H_s": h_s}
                residual = float(np.linalg.norm(u_a @ u_s - u))
                s = as_symmetry(inv)
                membership = {
                    "H_a": float(np.linalg.norm(induced_observable_map(s, h_a) + h_a)),
                    "H_s": float(np.linalg.norm(induced_observable_map(s, h_s) - h_s)),
                }
    except BranchCutError as exc:
        print(f"branch cut: {exc}", file=sys.stderr)
        return EXIT_BRANCH
    except MembershipError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    files = {}
    for name, m in factors.items():
        p = out / f"{name}.json"
        write_matrix(p, m)
        files[name] = str(p)
    report = {
        "schema": SCHEMA,
        "mode": args.mode,
        "type": args.type if args.type != "AIII" else f"AIII({args.p},{args.q})",
        "residual": residual,
        "membership_residuals": membership,
        "threshold": args.threshold,
        "files": files,
    }
    _emit(report, out / "report.json")
    return EXIT_OK if residual <= args.threshold else EXIT_VERIFY


def parse_spins(text: str) -> list[Fraction]:
    try:
        spins = [Fraction(tok.strip()) for tok in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"--spins: cannot parse {text!r}") from exc
    for j in spins:
        if j < 0 or (2 * j).denominator != 1:
            raise InputError(f"--spins: {j} is not a nonnegative half-integer")
    return spins


def cmd_timereversal(args) -> int:
    spins = parse_spins(args.spins)
    s = time_reversal_symmetry(spins)
    check = is_cartan_symmetry(s)
    dims = [int(2 * j) + 1 for j in spins]
    sign = (-1) ** int(sum(2 * j for j in spins))
    per_spin = []
    for k, j in enumerate(spins):
        res = max(
            float(np.linalg.norm(induced_observable_map(s, embed(op, k, dims)) + embed(op, k, dims)))
            for op in spin_operators(j)
        )
        per_spin.append({"spin": str(j), "residual": res})
    if args.out:
        write_matrix(args.out, s.X)
    report = {
        "schema": SCHEMA,
        "spins": [str(j) for j in spins],
        "n": s.n,
        "is_cartan": check.is_cartan,
        "phi": check.phi,
        "square_residual": float(np.linalg.norm(s.X @ s.X.conj() - sign * np.eye(s.n))),
        "negation_residuals": per_spin,
        "file": args.out,
    }
    _emit(report, args.report)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cartankit", description="Cartan decompositions of u(n).")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify the involution induced by a symmetry X K or X")
    c.add_argument("symmetry_file")
    c.add_argument("--kind", choices=["unitary", "antiunitary"], required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_classify)

    o = sub.add_parser("oddeven", help="build and verify an odd-even decomposition")
    o.add_argument("config_file")
    o.add_argument("--verify", choices=["exhaustive", "sampled"], default="exhaustive")
    o.add_argument("--samples", type=int, default=2000)
    o.add_argument("--seed", type=int)
    o.add_argument("--closure-tol", type=float)
    o.add_argument("--out")
    o.set_defaults(func=cmd_oddeven)

    f = sub.add_parser("factor", help="KP, KAK or propagator factorization of a unitary")
    f.add_argument("unitary_file")
    f.add_argument("--mode", choices=["kp", "kak", "propagator"], default="kp")
    f.add_argument("--type", choices=["AI", "AII", "AIII"], default="AI")
    f.add_argument("--p", type=int)
    f.add_argument("--q", type=int)
    f.add_argument("--threshold", type=float, default=1e-8)
    f.add_argument("--out", required=True, help="output directory for factor files and report.json")
    f.set_defaults(func=cmd_factor)

    t = sub.add_parser("timereversal", help="time reversal symmetry of a spin network")
    t.add_argument("--spins", required=True, help='comma-separated spins, e.g. "1/2,1,1/2"')
    t.add_argument("--out", help="matrix file for X")
    t.add_argument("--report")
    t.set_defaults(func=cmd_timereversal)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
