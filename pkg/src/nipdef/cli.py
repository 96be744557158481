"""Command line entry point.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import io as sio
from .certificate import (
    Certificate,
    InvalidCertificate,
    compress_type,
    count_types_check,
    make_template,
    verify_certificate,
)
from .corpus import generate, parse_spec
from .experiment import read_specfile, run_experiment, write_csv
from .game import APPROX_TOLERANCE, SkolemTable
from .setsystem import SetSystem, TypeOverA, dual, shattered_witness, vc_dim
from .teaching import isolate, min_teaching_set, t_budget

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def _solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=None, help="cap for the adaptive tuple length")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact-lp", dest="method", action="store_const", const="exact")
    g.add_argument("--approx-lp", dest="method", action="store_const", const="approx")
    p.set_defaults(method="auto")
    p.add_argument("--tolerance", type=_fraction, default=APPROX_TOLERANCE,
                   help="approximate solver only, as p/q (default 1/48)")


def _load(path: str) -> SetSystem:
    try:
        return sio.load(path)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None


def _parse_type(S: SetSystem, text: str) -> TypeOverA:
    if len(text) == S.ncols and set(text) <= {"0", "1"} and S.ncols > 1:
        try:
            return TypeOverA.of_bits(S, [int(c) for c in text])
        except ValueError as e:
            raise InputError(str(e)) from None
    try:
        return TypeOverA.of_row(S, int(text))
    except (ValueError, IndexError):
        raise InputError(f"--type must be a row index or a {S.ncols}-bit string") from None


def cmd_gen(args) -> int:
    try:
        S = generate(parse_spec(args.spec))
    except ValueError as e:
        raise InputError(str(e)) from None
    if args.output:
        sio.save(S, args.output)
    else:
        sys.stdout.write(sio.format_text(S))
    return EXIT_OK


def cmd_vcdim(args) -> int:
    S = _load(args.file)
    print(vc_dim(S))
    if args.verbose:
        print("shattered:", list(shattered_witness(S)))
    return EXIT_OK


def cmd_dual(args) -> int:
    D = dual(_load(args.file))
    if args.output:
        sio.save(D, args.output)
    else:
        sys.stdout.write(sio.format_text(D))
    return EXIT_OK


def cmd_isolate(args) -> int:
    S = _load(args.file).canonical()
    ts = isolate(S)
    out = ts.to_dict()
    out["budget"] = t_budget(vc_dim(S))
    if args.oracle:
        out["min_points"] = list(min_teaching_set(S, ts.concept))
    print(json.dumps(out))
    return EXIT_OK if len(ts.points) <= out["budget"] else EXIT_FAIL


def cmd_compress(args) -> int:
    S = _load(args.file)
    p = _parse_type(S, args.type)
    try:
        cert = compress_type(S, p, max_n=args.max_n, method=args.method, tolerance=args.tolerance, seed=args.seed)
    except ValueError as e:
        raise InputError(str(e)) from None
    text = json.dumps(cert.to_dict())
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    S = _load(args.file)
    try:
        obj = json.loads(Path(args.cert).read_text())
        cert = Certificate.from_dict(obj)
    except FileNotFoundError:
        raise InputError(f"no such file: {args.cert}") from None
    except (json.JSONDecodeError, InvalidCertificate) as e:
        raise InputError(f"{args.cert}: {e}") from None
    rep = verify_certificate(S, cert)
    print(rep)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_template(args) -> int:
    S = _load(args.file)
    if not args.all_types:
        raise InputError("template currently requires --all-types")
    try:
        table = SkolemTable(S, "isolated")
        certs = [
            compress_type(S, p, table=table, max_n=args.max_n, method=args.method,
                          tolerance=args.tolerance, seed=args.seed)
            for p in S.types()
        ]
    except ValueError as e:
        raise InputError(str(e)) from None
    template, _ = make_template(certs)
    rep = count_types_check(S, template.K)
    print(json.dumps(template.to_dict()))
    print(rep)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_experiment(args) -> int:
    try:
        specs = read_specfile(args.specfile)
    except FileNotFoundError:
        raise InputError(f"no such file: {args.specfile}") from None
    except ValueError as e:
        raise InputError(str(e)) from None
    records = run_experiment(specs, seed=args.seed, max_n=args.max_n, method=args.method,
                             tolerance=args.tolerance, timing=args.timing, workers=args.workers)
    if args.output:
        write_csv(records, args.output)
    else:
        write_csv(records, sys.stdout)
    return EXIT_OK if all(r.verification == "pass" for r in records) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nipdef", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a benchmark family")
    p.add_argument("spec", help="e.g. thresholds:n=6")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("vcdim", help="VC dimension of a set system")
    p.add_argument("file")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_vcdim)

    p = sub.add_parser("dual", help="transpose a set system")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("isolate", help="teaching set for one concept")
    p.add_argument("file")
    p.add_argument("--oracle", action="store_true", help="also report a minimum teaching set")
    p.set_defaults(func=cmd_isolate)

    p = sub.add_parser("compress", help="certificate for one type")
    p.add_argument("file")
    p.add_argument("--type", required=True, help="row index or bit string")
    p.add_argument("-o", "--output")
    _solver_flags(p)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("verify", help="check a certificate against a set system")
    p.add_argument("file")
    p.add_argument("cert")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("template", help="uniform template over all types")
    p.add_argument("file")
    p.add_argument("--all-types", action="store_true")
    _solver_flags(p)
    p.set_defaults(func=cmd_template)

    p = sub.add_parser("experiment", help="batch run to CSV")
    p.add_argument("specfile", help="one family spec per line")
    p.add_argument("-o", "--output")
    p.add_argument("--timing", action="store_true", help="fill runtime_ms (output is then not reproducible)")
    p.add_argument("--workers", type=int, default=1)
    _solver_flags(p)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
