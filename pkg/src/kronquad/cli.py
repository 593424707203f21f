"""Command-line front end.

Exit codes: 0 success, 1 property violation, 2 invalid input or
configuration, 3 the answer needs a field extension.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from . import blowdown as bd
from . import serialize as ser
from .campaigns import SUITES, CampaignConfig, format_report, run_campaign
from .errors import NeedsExtension, PreconditionError
from .field import Field, field_from_spec
from .kronecker import det_semiinvariant, e_semiinvariant, epsilon, rho
from .modulimap import det_fiber, eta, eta_inverse, resultant
from .normalform import normal_form
from .stability import is_semistable, is_stable, king_oracle

EXIT_OK, EXIT_VIOLATION, EXIT_INVALID, EXIT_EXTENSION = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID, payload: dict | None = None):
        super().__init__(message)
        self.code = code
        self.payload = payload or {"error": message}


def _read_input(path: str | None) -> Any:
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read input: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON: {exc}") from None


def _resolve_field(args, payload: Any) -> Field:
    header = payload.get("field") if isinstance(payload, dict) else None
    spec = args.field or header or "rational"
    if args.field and header and field_from_spec(args.field) != field_from_spec(header):
        raise CliError(f"--field {args.field} conflicts with the input's field {header}")
    return field_from_spec(spec)


def _emit(args, payload: dict[str, Any], text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _module(args):
    payload = _read_input(args.input)
    field = _resolve_field(args, payload)
    return ser.module_from_json(payload, field), field


def _psi(args):
    payload = _read_input(args.input)
    field = _resolve_field(args, payload)
    return ser.psi_from_json(payload, field), field


def cmd_inv(args) -> int:
    phi, _ = _module(args)
    q = det_semiinvariant(phi)
    e, eps, r = e_semiinvariant(phi), epsilon(phi), rho(phi)
    res = resultant(q)
    ok = eps * eps == r
    payload = {
        "det": ser.quadform_to_json(q),
        "e": ser.scalar_to_json(e),
        "epsilon": ser.scalar_to_json(eps),
        "rho": ser.scalar_to_json(r),
        "res": ser.scalar_to_json(res),
        "epsilon_squared_equals_rho": ok,
    }
    text = f"det = {q}\ne = {e}\nepsilon = {eps}\nrho = {r}\nres(det) = {res}\nepsilon^2 == rho: {str(ok).lower()}"
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_stab(args) -> int:
    phi, _ = _module(args)
    verdict = king_oracle(phi)
    crit = (is_semistable(phi), is_stable(phi))
    agree = (verdict.semistable, verdict.stable) == crit
    payload = {**ser.verdict_to_json(verdict), "criterion_agrees": agree}
    text = f"semistable: {str(crit[0]).lower()}\nstable: {str(crit[1]).lower()}"
    if verdict.witness:
        text += f"\nwitness: {json.dumps(payload['witness'], sort_keys=True)}"
    _emit(args, payload, text)
    return EXIT_OK if agree else EXIT_VIOLATION


def cmd_nf(args) -> int:
    phi, _ = _module(args)
    nf = normal_form(phi, seed=args.seed)
    ok = nf.verify(phi)
    payload = {**ser.normal_form_to_json(nf), "module": ser.module_to_json(nf.module()), "verified": ok}
    text = f"normal form: {nf.module()}\n(lambda, a, b, c, d) = ({nf.lam}, {nf.a}, {nf.b}, {nf.c}, {nf.d})\nreplay: {'ok' if ok else 'FAILED'}"
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_eta(args) -> int:
    """eta of a module, or eta^-1 of a point given as {"q", "p"}."""
    payload = _read_input(args.input)
    field = _resolve_field(args, payload)
    if isinstance(payload, dict) and "q" in payload:
        point = ser.wpoint_from_json(payload, field)
        phi = eta_inverse(point, seed=args.seed)
        _emit(args, {"module": ser.module_to_json(phi)}, str(phi))
        return EXIT_OK
    point = eta(ser.module_from_json(payload, field))
    _emit(args, ser.wpoint_to_json(point), f"q = {point.q}\np = {point.p}")
    return EXIT_OK


def cmd_fiber(args) -> int:
    payload = _read_input(args.input)
    field = _resolve_field(args, payload)
    obj = payload["q"] if isinstance(payload, dict) and "q" in payload else payload
    if isinstance(obj, dict):
        obj = {k: v for k, v in obj.items() if k != "field"}
    points = det_fiber(ser.quadform_from_json(obj, field))
    _emit(
        args,
        {"points": [ser.wpoint_to_json(p) for p in points]},
        "\n".join(f"<{p.q}, {p.p}>" for p in points),
    )
    return EXIT_OK


def cmd_classify(args) -> int:
    psi, _ = _psi(args)
    region = bd.classify(psi)
    _emit(args, {"region": region.value}, region.value)
    return EXIT_INVALID if region is bd.Region.INVALID else EXIT_OK


def cmd_alpha(args) -> int:
    psi, _ = _psi(args)
    phi = bd.alpha(psi)
    _emit(args, {"module": ser.module_to_json(phi)}, str(phi))
    return EXIT_OK


def cmd_beta(args) -> int:
    psi, _ = _psi(args)
    region = bd.classify(psi)
    matrix = bd.beta_matrix(psi)
    point = eta(matrix)
    payload = {"region": region.value, "matrix": ser.module_to_json(matrix), "point": ser.wpoint_to_json(point)}
    _emit(args, payload, f"region: {region.value}\nmatrix: {matrix}\nq = {point.q}\np = {point.p}")
    return EXIT_OK


def cmd_check(args) -> int:
    cfg = CampaignConfig(
        suite=args.suite,
        field_spec=args.field or "rational",
        seed=args.seed,
        trials=args.trials,
        workers=args.workers,
    )
    try:
        result = run_campaign(cfg)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    sys.stdout.write(format_report(result))
    return EXIT_OK if result.ok else EXIT_VIOLATION


COMMANDS: dict[str, tuple[Callable, str]] = {
    "inv": (cmd_inv, "semi-invariants det, e, epsilon, rho and res(det) of a module"),
    "stab": (cmd_stab, "semi-stability and stability with a destabilizing witness"),
    "nf": (cmd_nf, "normal form of a stable module with its certificate"),
    "eta": (cmd_eta, "the point <det, e> of a module, or a module over a given point"),
    "fiber": (cmd_fiber, "points of the moduli hypersurface over a quadric"),
    "beta": (cmd_beta, "blow-down of a psi matrix"),
    "alpha": (cmd_alpha, "the 2x2 module alpha(psi) of a psi in W0"),
    "classify": (cmd_classify, "region W0, W1, W2 or Invalid of a psi matrix"),
    "check": (cmd_check, "run a seeded property campaign"),
}


def _global_options(defaults: bool) -> argparse.ArgumentParser:
    # the same options are accepted before and after the subcommand
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", default=d(None), help="rational (default) or fp:<P>")
    p.add_argument("--seed", type=int, default=d(0), help="64-bit seed (default 0)")
    p.add_argument("--trials", type=int, default=d(100), help="campaign size (default 100)")
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kronquad",
        description="Exact computations with 2x2 Kronecker modules over V = span{x, y, z, w}.",
        parents=[_global_options(True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text, parents=[_global_options(False)])
        if name == "check":
            sp.add_argument("--suite", required=True, choices=sorted(SUITES))
            sp.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")
        else:
            sp.add_argument("input", nargs="?", help="JSON file; standard input if omitted or '-'")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        if args.field is not None:
            field_from_spec(args.field)
        return handler(args)
    except CliError as exc:
        print(json.dumps(exc.payload, sort_keys=True), file=sys.stderr)
        return exc.code
    except NeedsExtension as exc:
        print(json.dumps({"error": "needs-extension", "reason": exc.reason, "detail": exc.detail}, sort_keys=True))
        return EXIT_EXTENSION
    except (PreconditionError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}, sort_keys=True), file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
