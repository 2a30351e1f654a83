"""Command line front end.

Data goes to stdout, diagnostics to stderr.  Exit status: 0 on success or a
passing verdict, 2 on a failing verdict, 1 on any operational error
(including bad usage).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .approx import N_CAP, SeriesSpec, certify_analytic, truncate_series
from .calculus import Poly
from .certifier import (
    CHAIN_TOL,
    chain_tolerance,
    certify_point,
    max_modulus_check,
    sweep_disc,
    sweep_from_csv,
    sweep_to_csv,
)
from .dilation import build_dilation, moment_table
from .errors import FormatError, MaxModError
from .linalg import unitarity_residual, unitary_spectrum

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _pair(c: complex) -> list[float]:
    return [c.real, c.imag]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _read_series(arg: str) -> SeriesSpec:
    path = Path(arg)
    if path.is_file():
        return SeriesSpec.read(path)
    return SeriesSpec.from_text(arg.replace("\\n", "\n"), "<--series>")


def _cmd_dilate(args, out):
    d = build_dilation(complex(*args.z), args.n)
    if args.format == "csv":
        cols = [f"{part}{j}" for j in range(d.dim) for part in ("re", "im")]
        out.write(",".join(cols) + "\n")
        for row in d.matrix:
            out.write(",".join(repr(x) for c in row for x in _pair(complex(c))) + "\n")
    else:
        out.write(_dump({
            "z": {"re": d.z.real, "im": d.z.imag},
            "s": d.s,
            "n": d.n,
            "matrix": [[_pair(complex(c)) for c in row] for row in d.matrix],
        }))
    return EXIT_OK


def _cmd_moments(args, out):
    rows = moment_table(build_dilation(complex(*args.z), args.n))
    if args.format == "csv":
        out.write("k,compression_re,compression_im,zk_re,zk_im,residual\n")
        for k, c, zk, res in rows:
            out.write(f"{k},{c.real!r},{c.imag!r},{zk.real!r},{zk.imag!r},{res!r}\n")
    else:
        out.write(_dump([
            {"k": k, "compression": _pair(c), "zk": _pair(zk), "residual": res}
            for k, c, zk, res in rows
        ]))
    return EXIT_OK


def _cmd_spectrum(args, out):
    d = build_dilation(complex(*args.z), args.n)
    sp = unitary_spectrum(d.matrix)
    if args.format == "csv":
        out.write("re,im,modulus\n")
        for w in sp.eigenvalues:
            out.write(f"{w.real!r},{w.imag!r},{abs(w)!r}\n")
    else:
        out.write(_dump({
            "eigenvalues": [_pair(complex(w)) for w in sp.eigenvalues],
            "reconstruction_residual": sp.reconstruction_residual,
            "frame_unitarity_residual": unitarity_residual(sp.frame),
        }))
    return EXIT_OK


def _cmd_certify(args, out):
    p = Poly.read(args.poly)
    report = certify_point(p, complex(*args.z), sample_count=args.samples,
                           chain_rel=args.chain_tol, seed=args.seed)
    out.write(report.to_json() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_sweep(args, out):
    if (args.poly is None) == (args.records is None):
        raise UsageError("sweep: give exactly one of --poly or --records")
    if args.records is not None:
        path = Path(args.records)
        try:
            text = path.read_text()
        except OSError as exc:
            raise FormatError(f"cannot read: {exc.strerror}", str(path)) from exc
        records = sweep_from_csv(text, str(path))
        tol = args.chain_tol
    else:
        p = Poly.read(args.poly)
        records = sweep_disc(p, args.radial, args.angular)
        tol = chain_tolerance(p, args.chain_tol)
    check = max_modulus_check(records, tol)
    out.write(sweep_to_csv(records))
    out.flush()
    print(check.summary(), file=sys.stderr)
    return EXIT_OK if check.passed else EXIT_FAIL


def _cmd_truncate(args, out):
    spec = _read_series(args.series)
    t = truncate_series(spec, args.eps, args.n_cap)
    out.write(_dump({
        "series": spec.name,
        "degree": t.poly.degree(),
        "tail_bound": t.tail_bound,
        "requested_eps": t.requested_eps,
        "coefficients": [_pair(c) for c in t.poly.coeffs],
    }))
    return EXIT_OK


def _cmd_certify_analytic(args, out):
    spec = _read_series(args.series)
    cert = certify_analytic(spec, complex(*args.z), args.eps, args.n_cap, args.samples)
    out.write(_dump(cert.to_dict()))
    return EXIT_OK if cert.verdict == "pass" else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="maxmod", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized restarts (default 0)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def point(p, fmt=True):
        p.add_argument("--z", nargs=2, type=float, metavar=("RE", "IM"), required=True)
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("dilate", help="print the unitary dilation of z")
    point(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_dilate)

    p = sub.add_parser("moments", help="compare compressions of U^k with z^k")
    point(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("spectrum", help="eigenvalues of the dilation")
    point(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("certify", help="certify the inequality chain at z")
    p.add_argument("--poly", required=True)
    point(p, fmt=False)
    p.add_argument("--samples", type=int)
    p.add_argument("--chain-tol", type=float, default=CHAIN_TOL)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("sweep", help="polar-grid sweep of |p| (CSV)")
    p.add_argument("--poly")
    p.add_argument("--records", help="check a prepared sweep CSV instead")
    p.add_argument("--radial", type=int, default=16)
    p.add_argument("--angular", type=int, default=128)
    p.add_argument("--chain-tol", type=float, default=CHAIN_TOL)
    p.set_defaults(func=_cmd_sweep)

    for name, func, help_ in (
        ("truncate", _cmd_truncate, "truncate a power series"),
        ("certify-analytic", _cmd_certify_analytic, "truncate, then certify at z"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--series", required=True, help="spec file or inline spec")
        p.add_argument("--eps", type=float, required=True)
        p.add_argument("--n-cap", type=int, default=N_CAP)
        if name == "certify-analytic":
            point(p, fmt=False)
            p.add_argument("--samples", type=int)
        p.set_defaults(func=func)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: [usage] {exc}", file=sys.stderr)
    except MaxModError as exc:
        print(f"error: [{exc.code}] {exc}", file=sys.stderr)
    except ValueError as exc:
        print(f"error: [value] {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
