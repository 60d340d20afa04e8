"""Batch command line interface.

Exit codes: 0 success, 1 a check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .embeddings import cgs_matrix, omega_matrix, omega_resistance, omega_tilde, x_matrix
from .groves import cgs_plucker, grove_measurements, lagrangian_plucker, lam_plucker
from .lam import crystal_check, invariance_check, symplectic_check
from .linalg import LinalgError, Matrix, format_rational
from .network import NetworkError, Network, check_response, effective_resistance, parse, response_matrix
from .noncrossing import (
    NonCrossingPartition,
    PartitionError,
    enumerate_nc,
    format_extension,
    lagrangian_extension,
)
from .report import CheckReport
from .symplectic import algorithm_factorization, lambda_bar, lambda_form, lambda_tilde, unique_form_solver
from .verify import CHECKS, run_checks, run_checks_on_response


class InputError(Exception):
    """Bad command line input; reported with exit code 2."""


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _is_network_text(text: str) -> bool:
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return line.split()[0] == "enet"
    return False


def load_input(path: str) -> Network | Matrix:
    """A ``.enet`` network, or a plain response matrix (rows of rationals)."""
    text = _read(path)
    if _is_network_text(text):
        return parse(text)
    M = Matrix.from_text(text)
    check_response(M)
    return M


def _need_network(obj, action: str) -> Network:
    if not isinstance(obj, Network):
        raise InputError(f"'{action}' needs a network file, not a response matrix")
    return obj


def _response(obj) -> Matrix:
    return obj if isinstance(obj, Matrix) else response_matrix(obj)


def _partition(text: str, n: int | None) -> NonCrossingPartition:
    return NonCrossingPartition.parse(text, n)


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _print_reports(reports: Sequence[CheckReport], as_json: bool, out: TextIO, verbose: bool = False) -> int:
    """Failed and skipped checks print their lines; passes appear on the summary line."""
    reports = sorted(reports, key=lambda r: r.name)
    for r in reports:
        r.witnesses.sort()
    failed = sum(1 for r in reports if r.status == "fail")
    skipped = sum(1 for r in reports if r.status == "skipped")
    passed = len(reports) - failed - skipped
    if as_json:
        payload = {
            "checks": [r.as_dict() for r in reports],
            "summary": {"passed": passed, "failed": failed, "skipped": skipped},
        }
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return 1 if failed else 0
    for r in reports:
        if verbose or r.status != "pass":
            out.write("\n".join(r.lines()) + "\n")
    names = [r.name + (f" ({r.note})" if r.note else "") for r in reports if r.status == "pass"]
    tail = f"; passed: {', '.join(names)}" if names else ""
    out.write(f"summary: {passed} passed, {failed} failed, {skipped} skipped{tail}\n")
    return 1 if failed else 0


def _matrix_block(title: str, M: Matrix) -> str:
    return f"{title}\n{M.to_text()}\n" if M.nrows else f"{title}\n"


def _symbolic_entry(c) -> str:
    if c == 0:
        return "0"
    if c == 1:
        return "a"
    if c == -1:
        return "-a"
    return f"{format_rational(c)}a"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


EMITTERS = {
    "omega": lambda M: omega_matrix(M),
    "omega-v": lambda M: omega_tilde(M),
    "omega-r": lambda M: omega_resistance(effective_resistance(M)).delete_row(0),
    "cgs": lambda M: cgs_matrix(M),
    "x": lambda M: x_matrix(M),
}

PLUCKER_MAPS = {"lam": lam_plucker, "cgs": cgs_plucker, "lagrangian": lagrangian_plucker}


def cmd_enet(args, out: TextIO) -> int:
    obj = load_input(args.file)
    action = args.action
    if action == "response":
        out.write(_response(obj).to_text() + "\n")
    elif action == "resistance":
        out.write(effective_resistance(_response(obj)).to_text() + "\n")
    elif action == "groves":
        out.write(grove_measurements(_need_network(obj, action)).to_text() + "\n")
    elif action == "plucker":
        gt = grove_measurements(_need_network(obj, action))
        out.write(PLUCKER_MAPS[args.map](gt).to_text() + "\n")
    elif action == "emit":
        out.write(EMITTERS[args.emit](_response(obj)).to_text() + "\n")
    elif action == "verify":
        reports = run_checks(obj, args.checks) if isinstance(obj, Network) else run_checks_on_response(obj, args.checks)
        return _print_reports(reports, args.json, out, args.verbose)
    return 0


def cmd_ncp(args, out: TextIO) -> int:
    action = args.action
    if action == "list":
        n = args.n if args.n is not None else _int(args.partition, "n")
        for s in enumerate_nc(n):
            out.write(f"{s}\n")
        return 0
    if args.partition is None:
        raise InputError(f"'ncp {action}' needs a partition")
    sigma = _partition(args.partition, args.n)
    if action == "dual":
        out.write(f"{sigma.dual}\n")
    elif action == "merge":
        out.write(f"{sigma.merged}\n")
    elif action == "lext":
        out.write(format_extension(lagrangian_extension(sigma)) + "\n")
    elif action == "wedge":
        f = algorithm_factorization(sigma)
        chords = "".join(f"({p} {q})" for blk in f.block_brackets for p, q in blk)
        ordered = "".join(f"({p} {q})" for p, q, _ in f.brackets)
        out.write(f"merged: {sigma.merged}\n")
        out.write(f"brackets: {chords}\n")
        out.write(f"ordered: {ordered}\n")
        out.write(f"signed: {f.bracket_text()}\n")
        out.write(f"v-basis: {f.v_text()}\n")
        out.write("expanded:\n" + f.expand().to_text() + "\n")
    return 0


def _int(text, name: str) -> int:
    try:
        return int(text)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name} must be an integer") from exc


def cmd_sym(args, out: TextIO) -> int:
    n = args.n
    if args.action == "unique-form":
        sol = unique_form_solver(n)
        out.write(f"dimension: {sol.dimension}\n")
        if sol.dimension == 1:
            g = sol.forms[0]
            g = g.scale(1 / g[0, 1])  # parameter a = omega(1,2)
            out.write("omega =\n")
            for row in g.rows:
                out.write(" ".join(_symbolic_entry(c) for c in row) + "\n")
            c = proportionality_of_forms(g, lambda_form(2 * n - 2))
            out.write(f"proportional to Lambda_{2 * n - 2}: {'yes' if c is not None else 'no'}\n")
        return 0 if sol.dimension == 1 else 1
    out.write(_matrix_block(f"Lambda_{2 * n - 2}", lambda_form(2 * n - 2)))
    out.write(_matrix_block(f"Lambda_tilde_{2 * n}", lambda_tilde(n)))
    out.write(_matrix_block(f"Lambda_bar_{2 * n}", lambda_bar(n)))
    return 0


def proportionality_of_forms(A: Matrix, B: Matrix):
    """Scalar c with A = c·B, or None."""
    ratio = None
    for ra, rb in zip(A.rows, B.rows):
        for a, b in zip(ra, rb):
            if b == 0:
                if a != 0:
                    return None
                continue
            if ratio is None:
                ratio = a / b
            elif a != ratio * b:
                return None
    return ratio


def cmd_lam(args, out: TextIO) -> int:
    runner = {"crystal": crystal_check, "invariance": invariance_check, "symplectic": symplectic_check}[args.action]
    return _print_reports([runner(args.n)], args.json, out, args.verbose)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="elnet", description="Exact pipelines for circular planar electrical networks.")
    sub = p.add_subparsers(dest="group", required=True)

    e = sub.add_parser("enet", help="network pipelines")
    e.add_argument("action", choices=["response", "resistance", "groves", "plucker", "verify", "emit"])
    e.add_argument("file")
    e.add_argument("--map", choices=sorted(PLUCKER_MAPS), default="lam")
    e.add_argument("--emit", choices=sorted(EMITTERS), default="omega")
    e.add_argument("--checks", default="all", help=f"'all' or a comma separated subset of: {', '.join(CHECKS)}")
    e.add_argument("--json", action="store_true")
    e.add_argument("--verbose", action="store_true", help="also print a line for each passing check")
    e.set_defaults(func=cmd_enet)

    c = sub.add_parser("ncp", help="non-crossing partitions")
    c.add_argument("action", choices=["list", "dual", "merge", "wedge", "lext"])
    c.add_argument("partition", nargs="?", help="blocks separated by '|', e.g. \"1 4 6|2 3|5\"")
    c.add_argument("--n", type=int)
    c.set_defaults(func=cmd_ncp)

    s = sub.add_parser("sym", help="skew forms")
    s.add_argument("action", choices=["unique-form", "forms"])
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_sym)

    lm = sub.add_parser("lam", help="Lam group action")
    lm.add_argument("action", choices=["crystal", "invariance", "symplectic"])
    lm.add_argument("n", type=int)
    lm.add_argument("--json", action="store_true")
    lm.add_argument("--verbose", action="store_true", help="also print a line for each passing check")
    lm.set_defaults(func=cmd_lam)
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (InputError, NetworkError, PartitionError, LinalgError, ValueError) as exc:
        line = getattr(exc, "line", None)
        where = f" (line {line})" if line is not None and f"line {line}" not in str(exc) else ""
        err.write(f"error: {type(exc).__name__}: {exc}{where}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
