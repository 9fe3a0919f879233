"""Command-line driver: ``braket teleport | verify | kron``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

import numpy as np

from . import verify
from .quantum import Qubit, teleport
from .spaces import BraketError, ket
from .tensor import apply_tensor, commutation_matrix, kron

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
TOL_ENV = "BRAKET_HS_TOL"
FIDELITY_TOL = 1e-9

_NUM = r"(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?"
_COMPLEX = re.compile(
    rf"\s*(?:(?P<im_only>[+-]?({_NUM})?)i|(?P<re>[+-]?{_NUM})(?:(?P<im>[+-]({_NUM})?)i)?)\s*"
)


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``re``, ``imi`` or ``re+imi`` (e.g. ``0.6+0.8i``, ``-i``)."""
    match = _COMPLEX.fullmatch(text)
    if match is None:
        raise UsageError(f"malformed complex literal {text!r}")
    imag_text = match["im_only"] if match["re"] is None else match["im"]
    real = float(match["re"]) if match["re"] else 0.0
    imag = 0.0
    if imag_text is not None:
        imag = float(imag_text + "1") if imag_text in ("", "+", "-") else float(imag_text)
    return complex(real, imag)


def parse_vector(text: str) -> np.ndarray:
    parts = text.split(",")
    if not text.strip() or any(not p.strip() for p in parts):
        raise UsageError(f"malformed coordinate list {text!r}")
    return np.array([parse_complex(p) for p in parts], dtype=np.complex128)


def format_complex(z: complex) -> str:
    re_part, im_part = float(np.real(z)), float(np.imag(z))
    re_part = 0.0 if re_part == 0 else re_part
    if im_part == 0:
        return f"{re_part:.12g}"
    if re_part == 0:
        return f"{im_part:.12g}i"
    return f"{re_part:.12g}{im_part:+.12g}i"


def format_vector(coords) -> str:
    return "(" + ", ".join(format_complex(z) for z in coords) + ")"


def _tolerance(args) -> float | None:
    if args.tol is not None:
        return args.tol
    env = os.environ.get(TOL_ENV)
    if env:
        try:
            return float(env)
        except ValueError:
            raise UsageError(f"{TOL_ENV}={env!r} is not a number")
    return None


def cmd_teleport(args) -> int:
    if args.state == "random":
        state_rng, _ = (np.random.default_rng(s) for s in np.random.SeedSequence(args.seed).spawn(2))
        xi = Qubit.random(state_rng)
    else:
        amps = parse_vector(args.state)
        if amps.shape[0] != 2:
            raise UsageError("--state needs exactly two amplitudes")
        if np.linalg.norm(amps) == 0:
            raise UsageError("the zero vector is not a state")
        xi = Qubit.from_amplitudes(*amps)
    trace = teleport(xi, args.seed)
    ok = trace.fidelity >= 1 - FIDELITY_TOL
    if args.json:
        print(json.dumps(trace.to_dict(), sort_keys=True))
    else:
        print(f"xi            = {format_vector(trace.xi.ket.coords)}")
        if args.show_steps:
            print(f"psi0          = {format_vector(trace.psi0.coords)}")
            print(f"psi1          = {format_vector(trace.psi1.coords)}")
            print(f"psi2          = {format_vector(trace.psi2.coords)}")
        print(f"outcome       = {trace.outcome} (bits {trace.bits[0]}{trace.bits[1]})")
        print(f"bob raw       = {format_vector(trace.bob_raw.coords)}")
        print(f"bob corrected = {format_vector(trace.bob_corrected.ket.coords)}")
        print(f"fidelity      = {trace.fidelity:.15g}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.trials < 0:
        raise UsageError("--trials must be nonnegative")
    results = verify.run(args.suite, trials=args.trials, seed=args.seed, tol=_tolerance(args))
    if args.json:
        print(json.dumps([r.to_dict() for r in results]))
    else:
        for r in results:
            status = "SKIP" if r.skipped else ("PASS" if r.passed else "FAIL")
            print(f"[{status}] {r.suite}.{r.number} {r.name}  residual={r.residual:.3e} tol={r.tol:.0e}")
        failed = sum(not r.passed for r in results)
        print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_kron(args) -> int:
    x, y = ket(parse_vector(args.x)), ket(parse_vector(args.y))
    t = kron(x, y)
    if args.swap:
        # K_{n,m} (x (x) y) = y (x) x
        t = apply_tensor(commutation_matrix(y.dim, x.dim), t, factors=(y.dim, x.dim))
    if args.json:
        print(json.dumps(t.to_dict()))
    else:
        print(format_vector(t.coords))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="braket", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tol", type=float, default=None, help=f"residual tolerance (default 1e-12, env {TOL_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("teleport", parents=[common], help="teleport one qubit")
    p.add_argument("--state", default="1,0", help='two amplitudes "a,b" (e.g. 0.6,0.8i) or "random"')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--show-steps", action="store_true", help="print psi0, psi1, psi2")
    p.set_defaults(func=cmd_teleport)

    p = sub.add_parser("verify", parents=[common], help="run invariant checks")
    p.add_argument("suite", nargs="?", default="all", choices=("all",) + verify.SUITES)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kron", parents=[common], help="Kronecker product of two vectors")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--swap", action="store_true", help="also apply the commutation matrix")
    p.set_defaults(func=cmd_kron)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, BraketError) as exc:
        print(f"braket {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
