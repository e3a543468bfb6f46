"""Command-line entry point: ``framebound <subcommand> ...``.

Reports go to stdout as JSON (``--format json``) or as ``key: value``
text.  Any library error exits with status 2 and a one-line message on
stderr.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import bounds, frames, groups, io, moments, symfunc
from .errors import DomainError, FrameboundError
from .linalg import squared_singular_values


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(io.dumps(report) + "\n")
        return
    for key in sorted(report):
        val = report[key]
        if isinstance(val, dict):
            val = io.dumps(val, indent=None)
        elif isinstance(val, (list, tuple)):
            val = io.dumps(list(val), indent=None)
        elif val is None or isinstance(val, bool):
            val = json.dumps(val)
        out.write(f"{key}: {val}\n")


def _group(args):
    if getattr(args, "group_file", None):
        mats = io.read_matrix_list(args.group_file)
        try:
            return groups.FiniteGroup(mats[0].shape[0], mats, provenance=str(args.group_file))
        except DomainError:
            return groups.closure(mats, provenance=str(args.group_file))
    if not args.group:
        raise DomainError("give --group name:param or --group-file path")
    return groups.build_group(args.group)


def _number_list(text: str) -> list:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            out.append(Fraction(tok))
        except ValueError:
            raise DomainError(f"not a number: {tok!r}") from None
    return out


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_fp(args) -> dict:
    T = io.read_matrix(args.matrix)
    p = args.p
    method = args.method
    integer_p = float(p).is_integer() and p >= 1
    if method == "auto":
        method = "exact" if integer_p else ("sphere" if T.shape[1] == 2 else "mc")
    report = {"seed": args.seed, "deviation": None, "verdict": None}
    if method == "exact":
        if not integer_p:
            raise DomainError("exact route needs an integer p")
        report.update(frames.fp_from_matrix(T, int(p)).as_dict())
    elif method == "sphere":
        if T.shape[1] != 2:
            raise DomainError("sphere route is two-dimensional only")
        s2 = squared_singular_values(T)
        report.update({"p": p, "d": 2, "value": frames.fp_sphere_2d(s2, p), "method": "sphere"})
    elif method == "mc":
        est, err = frames.fp_montecarlo(T, p, samples=args.samples, seed=args.seed)
        report.update({"p": p, "d": int(T.shape[1]), "value": est, "method": "mc", "stderr": err})
        if integer_p:
            exact = frames.fp_from_matrix(T, int(p)).value
            z = abs(est - exact) / err if err > 0 else (0.0 if est == exact else math.inf)
            report["deviation"] = z
            report["verdict"] = "consistent" if z <= 4 else "inconsistent"
    else:
        raise DomainError(f"unknown method {method!r}")
    return report


def cmd_verify_frame(args) -> dict:
    G = _group(args)
    T = io.read_matrix(args.matrix) if args.matrix else None
    if T is None:
        T = np.eye(G.dimension)
    res = frames.verify_tight_frame(G, T, args.p, trials=args.trials, tol=args.tol, seed=args.seed)
    return res.as_dict()


def cmd_molien(args) -> dict:
    G = _group(args)
    ms = groups.molien_series(G, args.max_degree)
    return {
        "group": G.provenance,
        "order": G.order,
        "coefficients": list(ms.coefficients),
        "series": ms.to_text(),
        "residual": ms.residual,
    }


def cmd_max_frame_order(args) -> dict:
    G = _group(args)
    return {"group": G.provenance, "order": G.order, "max_frame_order": groups.max_frame_order(G, args.p_max)}


def cmd_chi2(args) -> dict:
    a = _number_list(args.weights)
    val = symfunc.chi2_moment(a, args.p, doubled=args.doubled)
    text = f"{val.numerator}/{val.denominator}" if val.denominator != 1 else str(val.numerator)
    return {"weights": [str(x) for x in a], "p": args.p, "doubled": args.doubled, "value": float(val), "exact": text}


def cmd_moments(args) -> dict:
    if args.shape_json:
        try:
            obj = json.loads(args.shape_json)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid shape JSON ({exc.msg})") from None
    else:
        obj = io.read_json(args.shape)
    shape = moments.shape_from_json(obj)
    report = {"shape": moments.shape_to_json(shape)}
    report.update(moments.moment_report(shape, args.p).as_dict())
    if args.matrix:
        T = io.read_matrix(args.matrix)
        img = moments.image(shape, T)
        report["image"] = moments.moment_report(img, args.p).as_dict()
        if args.p >= 1 and moments.admissible_order(shape) >= args.p:
            report["transformed_moment"] = moments.transformed_moment(shape, T, args.p)
        if args.reciprocity:
            fwd, back = moments.two_dim_reciprocity(shape, T, args.p)
            report["reciprocity"] = {"forward": fwd, "inverse": back}
    return report


def _bounds_matrix(args):
    if args.matrix and args.ratio is not None:
        raise DomainError("give either --matrix or --ratio, not both")
    if args.matrix:
        return io.read_matrix(args.matrix)
    if args.ratio is not None:
        return bounds.ellipse_map(args.ratio)
    raise DomainError("give --matrix file or --ratio r")


def cmd_bounds(args) -> dict:
    kind = args.kind
    if kind == "perimeter":
        if args.a is None or args.b is None:
            raise DomainError("perimeter bound needs --a and --b")
        rep = bounds.fractional_ellipse_perimeter_bound(args.a, args.b, _need(args.alpha, "--alpha"), args.ref)
        return rep.as_dict()
    T = _bounds_matrix(args)
    if kind == "plate":
        rep = bounds.plate_bound(T, args.ref, args.tau, args.order)
    elif kind == "buckling":
        rep = bounds.buckling_bound(T, args.ref, args.order)
    elif kind == "fractional":
        rep = bounds.fractional_bound(T, _need(args.alpha, "--alpha"), args.ref)
    elif kind == "kg":
        rep = bounds.klein_gordon_bound(T, _need(args.mass, "--mass"), args.ref)
    elif kind == "subordinator":
        rep = bounds.subordinator_bound(T, _need(args.beta, "--beta"), args.ref)
    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(f"unknown bound {kind!r}")
    return rep.as_dict()


def _need(value, flag):
    if value is None:
        raise DomainError(f"{flag} is required for this bound")
    return value


def cmd_tables(args):
    table = bounds.plate_table() if args.which == "plate" else bounds.buckling_table()
    return table


def cmd_sandwich(args) -> dict:
    T = io.read_matrix(args.matrix)
    lower, upper = frames.nontight_sandwich(T, args.p)
    value = frames.fp_from_matrix(T, args.p).value
    return {"p": args.p, "d": int(T.shape[1]), "lower": lower, "value": value, "upper": upper,
            "holds": lower <= value * (1 + 1e-12) and value <= upper * (1 + 1e-12)}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_group(p):
    p.add_argument("--group", help="catalog group, e.g. dihedral:5, icosahedral:rot")
    p.add_argument("--group-file", help="JSON list of orthogonal matrices (generators or elements)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="framebound", description="Tight p-frame constants and spectral bounds.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="json")
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fp", parents=[common], help="frame constant F_p(s^2(T))")
    p.add_argument("--matrix", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--method", choices=("auto", "exact", "mc", "sphere"), default="auto")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.set_defaults(func=cmd_fp)

    p = sub.add_parser("verify-frame", parents=[common], help="orbit-average tight frame check")
    _add_group(p)
    p.add_argument("--matrix")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--tol", type=float, default=frames.DEFAULT_TOL)
    p.set_defaults(func=cmd_verify_frame)

    p = sub.add_parser("molien", parents=[common], help="Molien series coefficients")
    _add_group(p)
    p.add_argument("--max-degree", type=int, default=10)
    p.set_defaults(func=cmd_molien)

    p = sub.add_parser("max-frame-order", parents=[common], help="largest admissible frame order")
    _add_group(p)
    p.add_argument("--p-max", type=int, default=16)
    p.set_defaults(func=cmd_max_frame_order)

    p = sub.add_parser("chi2-moment", parents=[common], help="E (sum a_i X_i^2)^p")
    p.add_argument("--weights", required=True, help="comma-separated, e.g. 1,2 or 1/2,3")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--doubled", action="store_true")
    p.set_defaults(func=cmd_chi2)

    p = sub.add_parser("moments", parents=[common], help="moments of mass I_2p")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--shape", help="shape JSON file")
    src.add_argument("--shape-json", help="inline shape JSON")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--matrix")
    p.add_argument("--reciprocity", action="store_true")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("bounds", parents=[common], help="eigenvalue upper bounds")
    p.add_argument("kind", choices=("plate", "buckling", "fractional", "kg", "subordinator", "perimeter"))
    p.add_argument("--matrix")
    p.add_argument("--ratio", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--mass", type=float)
    p.add_argument("--tau", type=float, default=0.0)
    p.add_argument("--order", type=int, choices=(1, 2), default=2)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--ref", type=float, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("tables", help="regenerate the ellipse comparison tables")
    p.add_argument("which", choices=("plate", "buckling"))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("sandwich", parents=[common], help="non-tight bounds around F_p")
    p.add_argument("--matrix", required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_sandwich)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except FrameboundError as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        err.write(f"framebound {args.command}: {msg}\n")
        return 2
    if isinstance(result, bounds.BoundTable):
        if args.format == "json":
            out.write(io.dumps(result.as_dict()) + "\n")
        else:
            out.write(result.to_text())
        return 0
    if "seed" not in result and args.command in ("verify-frame", "fp"):
        result["seed"] = args.seed
    _emit(result, args.format, out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
