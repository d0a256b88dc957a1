"""Command line front end: ``cartier <subcommand> ...``.

Exit codes: 0 ok, 1 a verification suite failed, 2 parse error,
3 precondition violated, 4 indeterminate verdict.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import operators as ops
from . import verify as verify_mod
from . import wronskian as W
from .digit import ContinuousFunc, digit_eval, expand_continuous, orthogonality_sum
from .fq import FieldError, parse_field
from .linbasis import BasisId, LinearFunc, basis_apply, expand, transition
from .padic import PadicInt, mahler_coeffs, padic_cartier, residue_vector
from .series import PrecisionError, parse_series, render, to_text

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRE, EXIT_INDET = 0, 1, 2, 3, 4


class ParseFailure(Exception):
    pass


def _read(arg: str) -> str:
    if arg.startswith("@"):
        with open(arg[1:]) as fh:
            return fh.read()
    if os.path.isfile(arg):
        with open(arg) as fh:
            return fh.read()
    return arg


def _field(args):
    try:
        return parse_field(args.q)
    except (FieldError, ValueError) as exc:
        raise ParseFailure(str(exc)) from None


def _series(F, arg, prec):
    try:
        return parse_series(F, _read(arg).strip(), prec)
    except (ValueError, FieldError) as exc:
        raise ParseFailure(f"cannot parse series {arg!r}: {exc}") from None


def _emit(args, text_lines, payload):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------


def cmd_apply(args):
    F = _field(args)
    x = _series(F, args.series, None if args.exact else args.prec)
    if args.op == "delta":
        if args.m is None:
            raise ops.PreconditionError("--m is required for delta")
        y = ops.cartier_delta(args.n, args.m, x)
    elif args.op == "psi":
        y = ops.psi(args.n, x, extend=args.extend)
    else:
        y = ops.apply_operator(args.op, args.n, x)
    _emit(args, [render(y)], {"result": to_text(y), "human": render(y)})
    return EXIT_OK


def _load_function(F, text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"invalid function JSON: {exc}") from None
    try:
        if "window" in d:
            f = ContinuousFunc.from_json(text)
        else:
            f = LinearFunc.from_json(text)
    except (KeyError, ValueError, FieldError) as exc:
        raise ParseFailure(f"invalid function JSON: {exc}") from None
    if f.field is not F:
        raise ParseFailure(f"function is over GF({f.field.q}), --q says GF({F.q})")
    return f


def cmd_expand(args):
    F = _field(args)
    f = _load_function(F, _read(args.function))
    if isinstance(f, ContinuousFunc):
        b = BasisId.parse(args.basis)
        if b not in (BasisId.CARTIER_PHI, BasisId.CARTIER_PSI):
            raise ops.PreconditionError("continuous tables expand in the digit bases phi or psi only")
        coeffs = expand_continuous(f, b).coeffs
        if args.count is not None:
            coeffs = coeffs[: args.count]
    else:
        coeffs = expand(f, args.basis, args.count).coeffs
    lines = [f"c_{n} = {render(c)}" for n, c in enumerate(coeffs)]
    _emit(args, lines, {"basis": BasisId.parse(args.basis).value, "coeffs": [to_text(c) for c in coeffs]})
    return EXIT_OK


def cmd_eval(args):
    F = _field(args)
    x = _series(F, args.series, None if args.exact else args.prec)
    if args.digit or args.starred:
        y = digit_eval(args.basis, args.n, args.starred, x)
    else:
        y = basis_apply(args.basis, args.n, x)
    _emit(args, [render(y)], {"result": to_text(y), "human": render(y)})
    return EXIT_OK


def cmd_transition(args):
    F = _field(args)
    M = transition(args.src, args.dst, args.size, F)
    lines = ["[" + ", ".join(render(e) for e in row) + "]" for row in M]
    _emit(args, lines, {"matrix": [[to_text(e) for e in row] for row in M]})
    return EXIT_OK


def cmd_digit(args):
    F = _field(args)
    if args.action == "orth":
        n = args.window
        qn = F.q ** n
        table = [[orthogonality_sum(args.base, k, l, n, args.mode, F) for l in range(qn)] for k in range(qn)]
        lines = [" ".join(render(v) for v in row) for row in table]
        _emit(args, lines, {"table": [[to_text(v) for v in row] for row in table]})
        return EXIT_OK
    f = _load_function(F, _read(args.function))
    if not isinstance(f, ContinuousFunc):
        raise ParseFailure("digit expand needs a table with a window")
    coeffs = expand_continuous(f, args.base).coeffs
    lines = [f"c_{n} = {render(c)}" for n, c in enumerate(coeffs)]
    _emit(args, lines, {"coeffs": [to_text(c) for c in coeffs]})
    return EXIT_OK


def _padic(p, text, ndigits):
    text = text.strip()
    try:
        if "," in text:
            x = PadicInt.from_text(p, text)
            return PadicInt(p, x.value, max(ndigits, x.ndigits))
        return PadicInt(p, int(text), ndigits)
    except ValueError as exc:
        raise ParseFailure(f"cannot parse p-adic integer {text!r}: {exc}") from None


def cmd_padic(args):
    p = args.p
    if args.action == "cartier":
        x = _padic(p, args.x, args.digits)
        y = padic_cartier(args.kind, args.n, x)
        _emit(args, [f"{y.value} mod {p}^{y.ndigits}"],
              {"value": y.value, "ndigits": y.ndigits, "digits": y.to_text()})
    elif args.action == "mahler":
        jmax = args.jmax if args.jmax is not None else p ** (args.n + 1)
        row = mahler_coeffs(args.n, jmax, p)
        props = row.properties()
        lines = [f"a_{j} = {a}" for j, a in enumerate(row.coeffs)]
        lines += [f"{k}: {v}" for k, v in props.items()]
        _emit(args, lines, {"coeffs": row.coeffs, "properties": props})
        if not all(props.values()):
            return EXIT_FAIL
    else:
        n = args.n
        images = {}
        for v in range(p ** n):
            images.setdefault(residue_vector(PadicInt(p, v, max(n, 1)), n), []).append(v)
        ok = len(images) == p ** n
        _emit(args, [f"residue map on Z/{p}^{n}: {'bijective' if ok else 'not bijective'}"],
              {"bijective": ok, "size": p ** n})
        if not ok:
            return EXIT_FAIL
    return EXIT_OK


def _fmt_vec(F, vec):
    return "(" + ", ".join(F.format_elem(c) for c in vec) + ")"


def cmd_wronskian(args):
    F = _field(args)
    if len(args.series) < 2:
        raise ParseFailure("wronskian needs at least two series")
    xs = [_series(F, s, None) for s in args.series]
    if args.km is not None:
        kind = "phi" if args.kind == "psi" else args.kind
        cert = W.independent_over_Km(xs, args.km, kind)
    elif args.eps is not None:
        eps = tuple(int(e) for e in args.eps.split(","))
        det = W.wronskian(args.kind, eps, xs)
        _emit(args, [f"eps=({','.join(map(str, eps))}) det={render(det)}"],
              {"eps": list(eps), "det": to_text(det)})
        return EXIT_OK if det.coeffs or det.prec is None else EXIT_INDET
    else:
        if args.kind == "hasse":
            raise ops.PreconditionError("certificate search over the constants uses phi or psi")
        cert = W.find_certificate(args.kind, xs, args.bound)
    if cert.verdict == W.INDEPENDENT:
        eps = ",".join(map(str, cert.eps))
        _emit(args, [f"eps=({eps}) det={render(cert.det)}"],
              {"verdict": cert.verdict, "eps": list(cert.eps), "det": to_text(cert.det)})
        return EXIT_OK
    if cert.verdict == W.DEPENDENT:
        if args.km is not None:
            text = "(" + ", ".join(render(c) for c in cert.dependency) + ")"
            payload = [to_text(c) for c in cert.dependency]
        else:
            text = _fmt_vec(F, cert.dependency)
            payload = [F.format_elem(c) for c in cert.dependency]
        _emit(args, [f"dependent {text}"], {"verdict": cert.verdict, "dependency": payload})
        return EXIT_OK
    _emit(args, [cert.note or "indeterminate"], {"verdict": cert.verdict, "note": cert.note})
    return EXIT_INDET


def cmd_verify(args):
    F = _field(args)
    try:
        report = verify_mod.run(args.suite, F, args.seed)
    except KeyError as exc:
        raise ParseFailure(str(exc)) from None
    print(json.dumps(report, indent=None if args.json else 2, sort_keys=True))
    return EXIT_OK if report["passed"] else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", default="2", help="field size as p^e or q (default 2)")
    common.add_argument("--prec", type=int, default=32, help="precision for inline series without O(T^N)")
    common.add_argument("--depth", type=int, default=16, help="table depth for linear functions")
    common.add_argument("--window", type=int, default=2, help="window w for digit tools")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    ap = argparse.ArgumentParser(prog="cartier", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("apply", parents=[common], help="apply an operator to a series")
    p.add_argument("--op", required=True, choices=["phi", "psi", "hasse", "delta", "shift"])
    p.add_argument("--n", type=int, required=True, help="operator index (r for delta)")
    p.add_argument("--m", type=int, help="m for delta")
    p.add_argument("--extend", action="store_true", help="allow psi on negative valuation")
    p.add_argument("--exact", action="store_true", help="treat inline input as an exact polynomial")
    p.add_argument("series", help="series text, or a file / @file")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("expand", parents=[common], help="expand a function table in a basis")
    p.add_argument("--basis", required=True)
    p.add_argument("--count", type=int)
    p.add_argument("function", help="LinearFunc or ContinuousFunc JSON (file or inline)")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("eval", parents=[common], help="evaluate a basis function")
    p.add_argument("--basis", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--digit", action="store_true", help="digit product F_n instead of f_n")
    p.add_argument("--starred", action="store_true", help="starred digit product F_n*")
    p.add_argument("--exact", action="store_true")
    p.add_argument("series")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("transition", parents=[common], help="transition matrix between bases")
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("digit", help="digit-principle tools")
    dsub = p.add_subparsers(dest="action", required=True)
    d = dsub.add_parser("orth", parents=[common], help="orthogonality table over A_w or monic degree w")
    d.add_argument("--base", default="phi", choices=["phi", "psi", "hasse", "shift", "carlitz"])
    d.add_argument("--mode", default="all_deg_lt_n", choices=["all_deg_lt_n", "monic_deg_n"])
    d.set_defaults(func=cmd_digit)
    d = dsub.add_parser("expand", parents=[common], help="digit expansion of a ContinuousFunc table")
    d.add_argument("--base", default="phi", choices=["phi", "psi"])
    d.add_argument("function")
    d.set_defaults(func=cmd_digit)

    p = sub.add_parser("padic", help="p-adic Cartier tools")
    psub = p.add_subparsers(dest="action", required=True)
    pc = argparse.ArgumentParser(add_help=False, parents=[common])
    pc.add_argument("--p", type=int, default=2)
    pc.add_argument("--n", type=int, default=1)
    d = psub.add_parser("cartier", parents=[pc], help="phi_n or psi_n of a p-adic integer")
    d.add_argument("--kind", default="phi", choices=["phi", "psi"])
    d.add_argument("--digits", type=int, default=16)
    d.add_argument("x", help="integer or comma-separated digits (low first)")
    d.set_defaults(func=cmd_padic)
    d = psub.add_parser("mahler", parents=[pc], help="Mahler coefficients of phi_n")
    d.add_argument("--jmax", type=int)
    d.set_defaults(func=cmd_padic)
    d = psub.add_parser("bijection", parents=[pc], help="check the residue map is bijective")
    d.set_defaults(func=cmd_padic)

    p = sub.add_parser("wronskian", parents=[common], help="Wronskian certificates")
    p.add_argument("--kind", default="phi", choices=["phi", "psi", "hasse"])
    p.add_argument("--bound", type=int, help="largest eps_n to search")
    p.add_argument("--eps", help="evaluate one Wronskian at comma-separated eps")
    p.add_argument("--km", type=int, help="test independence over K_m instead of the constants")
    p.add_argument("series", nargs="+")
    p.set_defaults(func=cmd_wronskian)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", default="all", help="suite name or 'all'")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ops.PreconditionError, PrecisionError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRE


if __name__ == "__main__":
    sys.exit(main())
