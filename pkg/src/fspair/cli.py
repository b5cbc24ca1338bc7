"""Command-line front door: build pairs, run verifications and sweeps,
emit JSON reports and CSV coefficient tables.

Exit codes: 0 success within the requested tolerances, 1 tolerance
violation (reports are still written), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys

import numpy as np

from . import nevanlinna as nev
from .measures import FSPair, PairSchemaError, load_pair, make_guinand, make_meyer, make_poisson
from .qseries import guinand_coeffs, r3_sequence, theta_coeffs
from .testfn import TestFunctionSpec, verify_pair

DEFAULT_POISSON_TRUNC = 64
DEFAULT_GUINAND_TRUNC = 512
DEFAULT_MEYER_TRUNC = 2000

_COMPLEX_RE = re.compile(r"^([+-]?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)"
                         r"([+-]\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)i$")


def parse_complex(text: str) -> complex:
    """Literal 'a+bi' / 'a-bi' format, whitespace forbidden."""
    m = _COMPLEX_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected a+bi format, got {text!r}")
    return complex(float(m.group(1)), float(m.group(2)))


def _build_pair(args) -> FSPair:
    if args.pair == "poisson":
        t = args.trunc or DEFAULT_POISSON_TRUNC
        return make_poisson(t, t)
    if args.pair == "guinand":
        return make_guinand(args.c if args.c is not None else 0.0,
                            args.trunc or DEFAULT_GUINAND_TRUNC)
    if args.pair == "meyer":
        return make_meyer(args.trunc or DEFAULT_MEYER_TRUNC)
    if args.file is None:
        raise PairSchemaError("--file is required when --pair file is chosen")
    return load_pair(args.file)


def _write_json(path, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_pairs(args) -> int:
    for name in ("poisson", "guinand", "meyer", "file"):
        print(name)
    return 0


def _cmd_verify(args) -> int:
    pair = _build_pair(args)
    kind = "gaussian_diag" if args.testfn == "gaussian" else args.testfn
    spec = TestFunctionSpec(kind, args.scale, args.shift)
    report = verify_pair(pair, spec, args.tol)
    payload = report.to_dict()
    if args.json:
        _write_json(args.json, payload)
    print(f"pair={pair.name} lhs={report.lhs:.12g} rhs={report.rhs:.12g} "
          f"abs_residual={report.abs_residual:.3e}")
    return 0 if report.abs_residual < args.tol else 1


def _cmd_coeffs(args) -> int:
    if args.family == "guinand":
        if args.c is None:
            print("--c is required for the guinand family", file=sys.stderr)
            return 2
        values = guinand_coeffs(args.c, args.n).coeffs
    elif args.family == "theta":
        values = theta_coeffs(args.n).coeffs
    else:
        values = r3_sequence(args.n).values.astype(float)
    rows = [(n, values[n]) for n in range(args.n + 1)]
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "alpha_n"])
            for n, v in rows:
                writer.writerow([n, repr(float(v))])
    else:
        print("n,alpha_n")
        for n, v in rows:
            print(f"{n},{float(v)!r}")
    return 0


def _cmd_bridge(args) -> int:
    pair = _build_pair(args)
    rhs = nev.bridge_rhs(pair, args.k, args.w, args.z)
    sweep = []
    T = 32.0
    Ts = []
    while T < args.tmax:
        Ts.append(T)
        T *= 2.0
    Ts.append(args.tmax)
    if args.sweep:
        for T in Ts:
            s = nev.bridge_sum(pair, args.k, args.w, args.z, T)
            sweep.append({"T": T, "value_re": s.real, "value_im": s.imag,
                          "abs_residual": abs(s - rhs)})
    s = nev.bridge_sum(pair, args.k, args.w, args.z, args.tmax)
    payload = {
        "pair": pair.name, "k": args.k,
        "z": {"re": args.z.real, "im": args.z.imag},
        "w": {"re": args.w.real, "im": args.w.imag},
        "tmax": args.tmax,
        "value_re": s.real, "value_im": s.imag,
        "target_re": rhs.real, "target_im": rhs.imag,
        "abs_residual": abs(s - rhs),
    }
    if args.sweep:
        payload["sweep"] = sweep
    if args.json:
        _write_json(args.json, payload)
    else:
        print(f"bridge_sum={s:.12g} rhs={rhs:.12g} abs_residual={abs(s - rhs):.3e}")
    return 0


def _cmd_efcoef(args) -> int:
    pair = _build_pair(args)
    v = nev.ef_coeff(pair, getattr(args, "lambda"), args.y, args.T)
    payload = {"pair": pair.name, "lambda": getattr(args, "lambda"),
               "y": args.y, "T": args.T,
               "value_re": v.real, "value_im": v.imag}
    if args.json:
        _write_json(args.json, payload)
    else:
        print(f"ef_coeff={v:.12g}")
    return 0


def _cmd_recover(args) -> int:
    pair = _build_pair(args)
    model = nev.build_model(pair, k=args.k)
    value = nev.recover_measure(model, args.a, args.b, args.s)
    payload = {"pair": pair.name, "k": args.k, "a": args.a, "b": args.b,
               "s": args.s, "value_re": value, "value_im": 0.0}
    if args.json:
        _write_json(args.json, payload)
    else:
        print(f"recovered={value!r}")
    return 0


def _cmd_nevindex(args) -> int:
    pair = _build_pair(args)
    model = nev.build_model(pair)
    rng = np.random.default_rng(args.seed)
    pts = [complex(x, y) for x, y in zip(rng.uniform(-2, 2, args.points),
                                         rng.uniform(0.3, 3.0, args.points))]
    idx = nev.neg_index(nev.nev_matrix(model, pts))
    payload = {"pair": pair.name, "points": args.points, "seed": args.seed,
               "neg_index": idx}
    if args.json:
        _write_json(args.json, payload)
    else:
        print(f"neg_index={idx}")
    return 0


def _add_pair_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pair", required=True, choices=["poisson", "guinand", "meyer", "file"])
    p.add_argument("--file", default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--trunc", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fspair",
                                     description="Fourier summation pair toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    pairs = sub.add_parser("pairs", help="pair catalogue")
    pairs_sub = pairs.add_subparsers(dest="pairs_command", required=True)
    pairs_sub.add_parser("list", help="list built-in pairs").set_defaults(func=_cmd_pairs)

    verify = sub.add_parser("verify", help="verify the summation identity")
    _add_pair_flags(verify)
    verify.add_argument("--testfn", required=True, choices=["bump", "plateau", "gaussian"])
    verify.add_argument("--scale", type=float, default=1.0)
    verify.add_argument("--shift", type=float, default=0.0)
    verify.add_argument("--tol", type=float, default=1e-8)
    verify.add_argument("--json", default=None)
    verify.set_defaults(func=_cmd_verify)

    coeffs = sub.add_parser("coeffs", help="export coefficient tables")
    coeffs.add_argument("--family", required=True, choices=["guinand", "theta", "r3"])
    coeffs.add_argument("--c", type=float, default=None)
    coeffs.add_argument("--n", type=int, required=True)
    coeffs.add_argument("--csv", default=None)
    coeffs.set_defaults(func=_cmd_coeffs)

    bridge = sub.add_parser("bridge", help="tapered kernel sum vs measure integral")
    _add_pair_flags(bridge)
    bridge.add_argument("--k", type=int, required=True)
    bridge.add_argument("--z", type=parse_complex, required=True)
    bridge.add_argument("--w", type=parse_complex, required=True)
    bridge.add_argument("--tmax", type=float, required=True)
    bridge.add_argument("--sweep", action="store_true")
    bridge.add_argument("--json", default=None)
    bridge.set_defaults(func=_cmd_bridge)

    efc = sub.add_parser("efcoef", help="line-average coefficient of F")
    _add_pair_flags(efc)
    efc.add_argument("--lambda", type=float, required=True)
    efc.add_argument("--y", type=float, required=True)
    efc.add_argument("--T", type=float, required=True)
    efc.add_argument("--json", default=None)
    efc.set_defaults(func=_cmd_efcoef)

    rec = sub.add_parser("recover", help="recover measure mass on an interval")
    _add_pair_flags(rec)
    rec.add_argument("--k", type=int, required=True)
    rec.add_argument("--a", type=float, required=True)
    rec.add_argument("--b", type=float, required=True)
    rec.add_argument("--s", type=float, required=True)
    rec.add_argument("--json", default=None)
    rec.set_defaults(func=_cmd_recover)

    nevidx = sub.add_parser("nevindex", help="negative index of the Hermitian test matrix")
    _add_pair_flags(nevidx)
    nevidx.add_argument("--points", type=int, required=True)
    nevidx.add_argument("--seed", type=int, default=0)
    nevidx.add_argument("--json", default=None)
    nevidx.set_defaults(func=_cmd_nevindex)
    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (PairSchemaError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
