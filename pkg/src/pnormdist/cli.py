"""Command-line workbench: every capability as a reproducible file-in/file-out run.

Subcommands: distmat, check-and, embed, find-pn, singular-config, interp,
scan-psi. All floats are printed with 17 significant digits so outputs
round-trip exactly; every command is deterministic for fixed flags and
input files.

Exit codes: 0 on success, 2 for input errors (malformed files, bad flags,
out-of-range parameters), 3 for certification failures (singular systems,
failed certificates, verdict mismatches).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import interpolation, profiles, serialize, singular
from .andmatrix import check_and, schoenberg_embed
from .errors import CertificationError, InputError
from .geometry import (
    build_distance_matrix,
    read_matrix_csv,
    read_points_csv,
    write_matrix_csv,
    write_points_csv,
)
from .serialize import fmt_float

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CERT = 3


def parse_profile(text: str) -> profiles.RadialProfile:
    """Parse a profile flag: JSON, or NAME[:PARAM][@CONVENTION] shorthand."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return profiles.from_json_dict(serialize.loads(text))
        except (ValueError, KeyError) as exc:
            raise InputError(f"bad profile JSON: {exc}") from None
    convention = None
    if "@" in text:
        text, convention = text.split("@", 1)
    name, _, param = text.partition(":")
    try:
        if name == "identity":
            made = profiles.identity()
        elif name == "power":
            made = profiles.power(float(param))
        elif name == "multiquadric":
            made = profiles.multiquadric()
        elif name == "exponential":
            made = profiles.exponential()
        else:
            raise InputError(
                f"unknown profile {name!r} (expected identity, power:TAU, "
                f"multiquadric, exponential, or JSON)"
            )
    except ValueError as exc:
        raise InputError(f"bad profile parameter: {exc}") from None
    if convention is not None:
        if convention not in (
            profiles.DISTANCE,
            profiles.SQUARED_DISTANCE,
            profiles.PTH_POWER_DISTANCE,
        ):
            raise InputError(f"unknown input convention {convention!r}")
        made = made.with_convention(convention)
    return made


def _parse_grid(spec: str) -> np.ndarray:
    """lo:hi:step, endpoints inclusive up to float fuzz; lo > hi gives an empty grid."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise InputError(f"grid must be lo:hi:step, got {spec!r}")
    try:
        lo, hi, step = (float(v) for v in parts)
    except ValueError:
        raise InputError(f"grid values must be numbers: {spec!r}") from None
    if step <= 0:
        raise InputError(f"grid step must be positive, got {step}")
    if lo > hi:
        return np.array([])
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def _tol_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--tol-eig", type=float, default=1e-10, help="eigenvalue tolerance")
    parent.add_argument("--tol-root", type=float, default=1e-12, help="root bracket tolerance")
    parent.add_argument("--tol-cert", type=float, default=1e-8, help="certification tolerance")
    return parent


def cmd_distmat(args) -> int:
    pts = read_points_csv(args.points)
    profile = parse_profile(args.profile)
    dm = build_distance_matrix(pts, args.p, profile)
    write_matrix_csv(args.out, dm)
    return EXIT_OK


def _load_matrix_for_check(args) -> np.ndarray:
    if args.kind == "matrix":
        return read_matrix_csv(args.input)
    pts = read_points_csv(args.input)
    profile = parse_profile(args.profile)
    return build_distance_matrix(pts, args.p, profile).entries


def cmd_check_and(args) -> int:
    A = _load_matrix_for_check(args)
    try:
        report = check_and(A, tol=args.tol_eig)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    text = serialize.dumps(report.to_json_dict())
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return EXIT_OK


def cmd_embed(args) -> int:
    A = read_matrix_csv(args.matrix)
    emb = schoenberg_embed(A, tol=args.tol_eig)
    write_points_csv(args.out, emb.vectors)
    print(serialize.dumps({"n": emb.n, "dimension": emb.vectors.shape[1], "residual": emb.residual}))
    return EXIT_OK


def cmd_find_pn(args) -> int:
    if args.n_min < 2:
        raise InputError(f"--n-min must be >= 2, got {args.n_min}")
    ns = range(args.n_min, args.n_max + 1)
    rows = singular.rate_table(ns, tol=args.tol_root)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("n,p_n,rate\n")
        for n, pn, rate in rows:
            fh.write(f"{n},{fmt_float(pn)},{fmt_float(rate)}\n")
    if args.json_out:
        serialize.write_json(
            args.json_out, [{"n": n, "p_n": pn, "rate": rate} for n, pn, rate in rows]
        )
    return EXIT_OK


def cmd_singular_config(args) -> int:
    if args.p is not None:
        n = args.n if args.n is not None else args.m
        if n is None:
            raise InputError("--n is required")
        if args.m is not None and args.n is not None and args.m != args.n:
            raise InputError("theta scaling applies to equal cubes: --p requires m = n")
        try:
            root = singular.find_theta(n, args.p, tol=args.tol_root)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        config = singular.cube_config(n, n, theta=root.value, p=args.p)
    else:
        if args.m is None or args.n is None:
            raise InputError("need --m and --n (or --n with --p)")
        if args.m < 2 or args.n < 2:
            raise InputError(f"m and n must be >= 2, got m={args.m}, n={args.n}")
        root = singular.find_pmn(args.m, args.n, tol=args.tol_root)
        config = singular.cube_config(args.m, args.n, theta=1.0, p=root.value)
    record = singular.certify_singular(config, tol=args.tol_cert, side_cap=args.cert_cap)
    write_points_csv(args.out_points, config.points)
    serialize.write_json(args.out_cert, record.to_json_dict())
    print(serialize.dumps(record.to_json_dict()))
    return EXIT_OK


def cmd_interp(args) -> int:
    data = read_points_csv(args.data).points
    if data.shape[1] < 2:
        raise InputError(f"{args.data}: need d+1 columns (coordinates then value)")
    centers, values = data[:, :-1], data[:, -1]
    profile = parse_profile(args.profile)
    interp = interpolation.fit(centers, values, args.p, profile, tol=args.tol_cert)
    queries = read_points_csv(args.query_file).points
    if queries.shape[1] != centers.shape[1]:
        raise InputError(
            f"{args.query_file}: query dimension {queries.shape[1]} does not match "
            f"data dimension {centers.shape[1]}"
        )
    out_vals = interp.evaluate_many(queries)
    with open(args.out, "w", encoding="utf-8") as fh:
        for v in out_vals:
            fh.write(fmt_float(v) + "\n")
    fit_residual = float(np.max(np.abs(interp.evaluate_many(centers) - values)))
    print(
        serialize.dumps(
            {
                "n": int(centers.shape[0]),
                "fit_residual": fit_residual,
                "condition_estimate": interp.condition_estimate,
                "guaranteed": interp.guaranteed,
            }
        )
    )
    return EXIT_OK


def cmd_scan_psi(args) -> int:
    try:
        ns = [int(v) for v in args.n.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"--n must be a comma-separated list of integers: {args.n!r}") from None
    if not ns or any(n < 1 for n in ns):
        raise InputError("--n needs at least one integer >= 1")
    grid = _parse_grid(args.p_grid)
    rows = [(float(p), [singular.psi(n, float(p)) for n in ns]) for p in grid]
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("p," + ",".join(f"psi_{n}" for n in ns) + "\n")
        for p, vals in rows:
            fh.write(fmt_float(p) + "," + ",".join(fmt_float(v) for v in vals) + "\n")
    if args.json_out:
        serialize.write_json(
            args.json_out,
            [
                {"p": p, **{f"psi_{n}": v for n, v in zip(ns, vals)}}
                for p, vals in rows
            ],
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pnormdist",
        description="p-norm distance matrix workbench: build, certify, embed, "
        "search singular configurations, interpolate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    tol = _tol_parent()

    sp = sub.add_parser("distmat", parents=[tol], help="points CSV -> distance matrix CSV")
    sp.add_argument("points")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--profile", default="identity")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_distmat)

    sp = sub.add_parser("check-and", parents=[tol], help="AND verdict as JSON")
    sp.add_argument("input")
    sp.add_argument("--kind", choices=["points", "matrix"], default="points")
    sp.add_argument("--p", type=float, default=2.0)
    sp.add_argument("--profile", default="identity")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_check_and)

    sp = sub.add_parser("embed", parents=[tol], help="squared-distance embedding of an AND matrix")
    sp.add_argument("matrix")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("find-pn", parents=[tol], help="critical exponents p_n as CSV")
    sp.add_argument("--n-min", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--json-out", help="also emit the table as JSON")
    sp.set_defaults(func=cmd_find_pn)

    sp = sub.add_parser(
        "singular-config", parents=[tol], help="certified singular configuration"
    )
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--p", type=float, help="target exponent; theta is then solved (m = n)")
    sp.add_argument("--out-points", required=True)
    sp.add_argument("--out-cert", required=True)
    sp.add_argument("--cert-cap", type=int, default=singular.DEFAULT_CERT_SIDE_CAP)
    sp.set_defaults(func=cmd_singular_config)

    sp = sub.add_parser("interp", parents=[tol], help="fit and evaluate an interpolant")
    sp.add_argument("data")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--profile", default="identity")
    sp.add_argument("--query-file", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_interp)

    sp = sub.add_parser("scan-psi", parents=[tol], help="psi_n values on a p grid as CSV")
    sp.add_argument("--n", required=True, help="comma-separated list of n values")
    sp.add_argument("--p-grid", required=True, help="lo:hi:step")
    sp.add_argument("--out", required=True)
    sp.add_argument("--json-out", help="also emit the scan as JSON")
    sp.set_defaults(func=cmd_scan_psi)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CertificationError as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return EXIT_CERT


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
