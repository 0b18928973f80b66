"""Command-line interface.

Subcommands map one-to-one onto the library surface: ``cg``, ``epsilon``,
``dmat``, ``ylm``, ``ylm-grad``, ``rme``, ``we``, ``multipole`` and
``verify``.  Output is JSON by default (``--format csv`` for tabular
results); complex numbers appear as ``[re, im]`` pairs and half-integers are
written as strings like ``"3/2"``.  Exit codes: 0 success, 2 usage error,
1 verification failure.
"""

import argparse
import json
import sys

import numpy as np

from . import harmonics as hm
from . import multipoles as mp
from . import spin_rotations as sr
from . import standard_basis as sb
from . import tensor_core as tc
from . import wigner_eckart as we
from .angular_momentum import HalfInt, cg
from .verify import DEFAULT_SEED, report_to_csv, report_to_json, run_verify


class UsageError(Exception):
    """Bad command-line input detected after argument parsing."""


def _c(z):
    z = complex(z)
    return [z.real, z.imag]


def _parse_vec(s):
    parts = [float(x) for x in s.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated numbers")
    return np.array(parts)


def _parse_complex(s):
    parts = [float(x) for x in s.split(",")]
    if len(parts) == 1:
        return complex(parts[0], 0.0)
    if len(parts) == 2:
        return complex(parts[0], parts[1])
    raise argparse.ArgumentTypeError("expected 're' or 're,im'")


def _emit(args, payload, csv_text=None):
    if getattr(args, "format", "json") == "csv":
        if csv_text is None:
            raise UsageError("csv output is not available for this command")
        sys.stdout.write(csv_text)
    elif getattr(args, "format", "json") == "plain":
        sys.stdout.write(f"{payload}\n" if not isinstance(payload, dict) else json.dumps(payload) + "\n")
    else:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _cmd_cg(args):
    value = cg(args.j1, args.m1, args.j2, args.m2, args.j, args.m)
    if args.format == "plain":
        sys.stdout.write(f"{value!r}\n")
    else:
        _emit(args, {"value": value})
    return 0


def _cmd_epsilon(args):
    if args.basis:
        kind, _, label = args.basis.partition(":")
        if kind == "sym":
            t = sb.sym_basis(args.n, int(label), args.m)
        elif kind == "partial":
            t = sb.partial_basis(args.n, int(label), args.m)
        else:
            raise UsageError(f"unknown basis {args.basis!r}; use sym:S or partial:J")
    else:
        t = sb.epsilon(args.n, args.m, args.method)
    _emit(args, tc.to_json_dict(t))
    return 0


def _cmd_dmat(args):
    if args.euler is not None:
        rot = sr.rotation(euler=tuple(args.euler))
    elif args.axis is not None and args.angle is not None:
        rot = sr.rotation(axis=args.axis, angle=args.angle)
    else:
        raise UsageError("give either --euler a,b,c or both --axis and --angle")
    d = sr.wigner_d(args.l, rot, args.method)
    ms = sr.d_matrix_indices(args.l)
    payload = {
        "l": args.l,
        "row_m_descending": ms,
        "matrix": [[_c(z) for z in row] for row in d],
    }
    csv_lines = ["m_prime,m,re,im"]
    for a, mpv in enumerate(ms):
        for b, mv in enumerate(ms):
            csv_lines.append(f"{mpv},{mv},{d[a, b].real:.17g},{d[a, b].imag:.17g}")
    _emit(args, payload, "\n".join(csv_lines) + "\n")
    return 0


def _cmd_ylm(args):
    v = hm.ylm(args.l, args.m, args.dir, args.method)
    _emit(args, {"value": _c(v)})
    return 0


def _cmd_ylm_grad(args):
    t = hm.ylm_derivatives(args.order, args.l, args.m, args.dir)
    _emit(args, tc.to_json_dict(t))
    return 0


def _cmd_rme(args):
    if args.kind == "ylm":
        r = we.reduced_me_ylm(args.lp, args.n, args.l, cartesian=args.cartesian)
    elif args.kind == "jpow":
        r = we.reduced_me_jpow(args.j, args.n)
    elif args.kind == "gradop":
        r = we.reduced_me_gradient_op(args.lp, args.n, args.q, args.l)
    else:
        raise UsageError(f"unknown reduced-ME kind {args.kind!r}")
    _emit(
        args,
        {
            "kind": r.kind,
            "bra_j": repr(r.bra_j),
            "ket_j": repr(r.ket_j),
            "rank": r.rank,
            "value": _c(r.value),
        },
    )
    return 0


def _cmd_we(args):
    klass = {
        "cito": "cito",
        "rank2": "rank2",
        "totsym": "totally_symmetric",
        "partial": "partially_irreducible",
    }[args.klass]
    values = [(_parse_complex(s)) for s in args.rme]
    if klass == "cito":
        if len(values) != 1:
            raise UsageError("class cito takes exactly one --rme")
        reduced = values[0]
    elif klass == "rank2":
        if len(values) != 3:
            raise UsageError("class rank2 takes three --rme values (s = 2, 1, 0)")
        reduced = {2: values[0], 1: values[1], 0: values[2]}
    elif klass == "totally_symmetric":
        channels = list(range(args.n % 2, args.n + 1, 2))
        if len(values) != len(channels):
            raise UsageError(
                f"class totsym at rank {args.n} takes {len(channels)} --rme values "
                f"for s = {channels}"
            )
        reduced = dict(zip(channels, values))
    else:
        if len(values) != 3:
            raise UsageError("class partial takes three --rme values (j = n-1, n, n+1)")
        reduced = {args.n - 1: values[0], args.n: values[1], args.n + 1: values[2]}
    t = we.we_matrix_element(
        reduced, HalfInt(args.jp), HalfInt(args.mp), HalfInt(args.j), HalfInt(args.m),
        n=args.n, klass=klass,
    )
    _emit(args, tc.to_json_dict(t))
    return 0


def _cmd_multipole(args):
    source = mp.load_source(args.source)
    is_electric = args.kind == "e"
    if is_electric and not isinstance(source, mp.ChargeDistribution):
        raise UsageError("electric multipoles need a charge source")
    if not is_electric and not isinstance(source, mp.CurrentDistribution):
        raise UsageError("magnetic multipoles need a current-loop source")
    moments = (
        mp.electric_moments(source, args.order)
        if is_electric
        else mp.magnetic_moments(source, args.order)
    )
    payload = moments.to_json_dict()
    if args.eval is not None:
        if is_electric:
            val = mp.electric_potential(source, args.eval, args.method, args.order)
            payload["potential"] = val
        else:
            val = mp.vector_potential(source, args.eval, args.method, args.order)
            payload["vector_potential"] = [float(x) for x in val]
        payload["eval_point"] = [float(x) for x in args.eval]
        payload["method"] = args.method
    csv_lines = ["n,m,re,im"]
    for (n, m), v in sorted(moments.spherical.items()):
        csv_lines.append(f"{n},{m},{v.real:.17g},{v.imag:.17g}")
    _emit(args, payload, "\n".join(csv_lines) + "\n")
    return 0


def _cmd_verify(args):
    report = run_verify(module=args.module, seed=args.seed, tolerance=args.tol)
    if args.format == "csv":
        sys.stdout.write(report_to_csv(report))
    else:
        sys.stdout.write(report_to_json(report) + "\n")
    return 0 if report["passed"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="irtensor",
        description="spherical/cartesian irreducible tensor toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p, choices=("json", "csv", "plain")):
        p.add_argument("--format", choices=choices, default="json")

    p = sub.add_parser("cg", help="Clebsch-Gordan coefficient")
    for flag in ("--j1", "--m1", "--j2", "--m2", "--j", "--m"):
        p.add_argument(flag, required=True, type=HalfInt)
    add_format(p)
    p.set_defaults(fn=_cmd_cg)

    p = sub.add_parser("epsilon", help="standard basis tensors")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--m", required=True, type=int)
    p.add_argument(
        "--method", choices=("recursive", "explicit", "harmonic"), default="recursive"
    )
    p.add_argument(
        "--basis", default=None,
        help="sym:S for the symmetric family, partial:J for the partially irreducible one",
    )
    add_format(p, ("json",))
    p.set_defaults(fn=_cmd_epsilon)

    p = sub.add_parser("dmat", help="Wigner D-matrix")
    p.add_argument("--l", required=True, type=int)
    p.add_argument("--axis", type=_parse_vec)
    p.add_argument("--angle", type=float)
    p.add_argument("--euler", type=lambda s: [float(x) for x in s.split(",")])
    p.add_argument(
        "--method", choices=("contraction", "product_expansion"), default="contraction"
    )
    add_format(p, ("json", "csv"))
    p.set_defaults(fn=_cmd_dmat)

    p = sub.add_parser("ylm", help="spherical harmonic value")
    p.add_argument("--l", required=True, type=int)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--dir", required=True, type=_parse_vec)
    p.add_argument("--method", choices=("analytic", "tensorial"), default="analytic")
    add_format(p, ("json",))
    p.set_defaults(fn=_cmd_ylm)

    p = sub.add_parser("ylm-grad", help="derivatives of a spherical harmonic")
    p.add_argument("--order", required=True, type=int)
    p.add_argument("--l", required=True, type=int)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--dir", required=True, type=_parse_vec)
    add_format(p, ("json",))
    p.set_defaults(fn=_cmd_ylm_grad)

    p = sub.add_parser("rme", help="reduced matrix elements")
    p.add_argument("--kind", choices=("ylm", "jpow", "gradop"), required=True)
    p.add_argument("--lp", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--j", type=HalfInt)
    p.add_argument("--cartesian", action="store_true")
    add_format(p, ("json",))
    p.set_defaults(fn=_cmd_rme)

    p = sub.add_parser("we", help="Wigner-Eckart matrix-element tensors")
    p.add_argument(
        "--class", dest="klass", choices=("cito", "rank2", "totsym", "partial"),
        required=True,
    )
    p.add_argument("--jp", required=True)
    p.add_argument("--mp", required=True)
    p.add_argument("--j", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True, type=int)
    p.add_argument(
        "--rme", action="append", required=True,
        help="reduced matrix element 're' or 're,im'; repeat for multi-channel classes",
    )
    add_format(p, ("json",))
    p.set_defaults(fn=_cmd_we)

    p = sub.add_parser("multipole", help="multipole moments and fields")
    p.add_argument("--kind", choices=("e", "m"), required=True)
    p.add_argument("--source", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--eval", type=_parse_vec, default=None)
    p.add_argument(
        "--method", choices=("direct", "spherical", "cartesian"), default="direct"
    )
    add_format(p, ("json", "csv"))
    p.set_defaults(fn=_cmd_multipole)

    p = sub.add_parser("verify", help="run the numerical verification suite")
    p.add_argument("--module", default=None)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    p.add_argument("--tol", type=float, default=None)
    add_format(p, ("json", "csv"))
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
