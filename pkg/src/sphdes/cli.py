"""Command-line interface: ``sphdes <subcommand> ...``.

Exit codes: 0 success, 1 verification negative, 2 input error,
3 construction did not converge.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .catalog import (
    PLATONIC_NAMES,
    TABLE1,
    ProductDesignSpec,
    default_product_spec,
    lower_bound,
    platonic,
    product_design,
)
from .construct import ConstructOptions, minimize
from .cubature import DEFAULT_TOL, monomial_check, strength
from .designio import FORMATS, read_design_file, read_values, write
from .errors import SphdesError
from .harmonics import basis_size
from .optimality import CoefficientVector, criteria, fit, information_matrix, simulate
from .stereogram import StereogramStyle, render

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_NOT_CONVERGED = 3

ORACLE_TOL = 1e-9


class InputError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get("SPHDES_SEED")
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"SPHDES_SEED must be an integer, got {raw!r}") from None


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")


def _load_design(path: str, fmt: str | None):
    label = None if path == "-" else Path(path).name
    return read_design_file(_read_text(path), fmt=fmt, label=label).design


def _emit(args, payload: dict, text: str, stream=None) -> None:
    stream = stream or sys.stdout
    if args.json:
        stream.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        stream.write(text)


def _parse_floats(raw: str) -> list[float]:
    try:
        return [float(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {raw!r}")


# ---------------------------------------------------------------- commands


def cmd_catalog(args) -> int:
    if args.name == "product":
        if args.d is None:
            raise InputError("catalog product needs --d")
        if args.n_theta is None and args.n_phi is None:
            spec = default_product_spec(args.d, args.alpha)
        else:
            base = default_product_spec(args.d) if args.n_theta is None else None
            spec = ProductDesignSpec(
                args.d,
                args.n_theta if args.n_theta is not None else base.n_theta,
                args.n_phi if args.n_phi is not None else 2 * args.d + 1,
                args.alpha,
            )
        design = product_design(spec)
    else:
        design = platonic(args.name)
    comments = [f"# {design.label}: {design.n} points"]
    _write_text(args.output, write(design, args.precision, args.format, comments))
    return EXIT_OK


def cmd_verify(args) -> int:
    design = _load_design(args.file, args.input_format)
    t_max = max(args.t, args.t_max or 0)
    rep = strength(design, t_max, args.tol)
    ok = rep.strength >= args.t
    payload = rep.to_dict()
    payload["target_t"] = args.t
    lines = [
        f"design: {design.label or '-'} ({design.n} points)",
        *(f"  r_{l:<3d} = {r:.3e}" for l, r in enumerate(rep.residuals, start=1)),
        f"strength: {rep.strength} (tol {args.tol:g}, checked up to t={t_max})",
    ]
    if args.oracle:
        dev = monomial_check(design, args.t, trials=args.trials, seed=args.seed)
        oracle_ok = dev < ORACLE_TOL
        payload["monomial_deviation"] = dev
        payload["oracle_agrees"] = oracle_ok == ok
        lines.append(f"monomial oracle: max deviation {dev:.3e} (degree <= {args.t})")
        if oracle_ok != ok:
            lines.append("WARNING: residual and monomial checks disagree")
        ok = ok and oracle_ok
    payload["verified"] = ok
    lines.append(f"spherical {args.t}-design: {'yes' if ok else 'no'}")
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_criteria(args) -> int:
    design = _load_design(args.file, args.input_format)
    rep = criteria(information_matrix(design, args.d), args.p)
    payload = rep.to_dict()
    payload["n"] = design.n
    lines = [
        f"design: {design.label or '-'} ({design.n} points), order d={args.d}, "
        f"{basis_size(args.d)} parameters",
        f"  D-criterion        {rep.D:.12g}",
        f"  A-criterion        {rep.A:.12g}",
        f"  E-criterion        {rep.E:.12g}",
        *(f"  Phi_{p:<14g}{v:.12g}" for p, v in rep.phi.items()),
        f"  max |M - I|        {rep.identity_deviation:.3e}",
        f"  singular           {'yes' if rep.singular else 'no'}",
    ]
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_construct(args) -> int:
    opts = ConstructOptions(
        t=args.t,
        n=args.n,
        starts=args.starts,
        seed=args.seed,
        tol=args.tol,
        max_iters=args.max_iters,
        workers=args.workers,
    )
    out = minimize(opts)
    comments = [
        f"# spherical {args.t}-design candidate, {args.n} points, "
        f"residual {out.residual:.3e}, seed {args.seed}, start {out.start_index}"
    ]
    _write_text(args.output, write(out.design, 17, args.format, comments))
    payload = out.to_dict()
    payload.update(t=args.t, seed=args.seed, tol=args.tol)
    text = (
        f"t={args.t} n={args.n}: residual {out.residual:.3e} after {out.iterations} "
        f"iterations (start {out.start_index} of {args.starts}); "
        f"{'converged' if out.converged else 'NOT converged'}\n"
    )
    report_stream = sys.stderr if args.output in (None, "-") else sys.stdout
    _emit(args, payload, text, report_stream)
    return EXIT_OK if out.converged else EXIT_NOT_CONVERGED


def cmd_stereogram(args) -> int:
    design = _load_design(args.file, args.input_format)
    style = StereogramStyle(size=args.size, marker_radius=args.marker_radius, grid=args.grid)
    _write_text(args.output, render(design, style))
    return EXIT_OK


def cmd_fit(args) -> int:
    design = _load_design(args.design, args.input_format)
    y = read_values(_read_text(args.observations))
    coef = fit(design, y, args.d)
    payload = {
        "d": args.d,
        "n": design.n,
        "coefficients": [{"l": l, "m": m, "value": v} for l, m, v in coef.labelled()],
    }
    lines = ["# l m coefficient"] + [f"{l} {m} {v:.17g}" for l, m, v in coef.labelled()]
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_simulate(args) -> int:
    design = _load_design(args.design, args.input_format)
    k = basis_size(args.d)
    if args.coeffs is not None:
        c = read_values(_read_text(args.coeffs))
        if c.size != k:
            raise InputError(f"--coeffs holds {c.size} values; order {args.d} needs {k}")
    else:
        # coefficients get their own stream so the noise matches simulate(seed)
        c = np.random.default_rng([args.seed, 1]).standard_normal(k)
    coef = CoefficientVector(args.d, c)
    y = simulate(design, coef, args.noise, args.seed)
    payload = {
        "d": args.d,
        "seed": args.seed,
        "noise_sd": args.noise,
        "coefficients": [float(v) for v in coef.c],
        "observations": [float(v) for v in y],
    }
    text = "".join(f"{v:.17g}\n" for v in y)
    if args.json:
        _emit(args, payload, text)
    else:
        _write_text(args.output, text)
    return EXIT_OK


def _table_rows(verify: bool):
    rows = []
    for d, row in TABLE1.items():
        entry = {
            "d": d,
            "n_params": row.n_params,
            "t_min": row.t_min,
            "lower_bound": lower_bound(row.t_min),
            "n_2d": row.n_2d,
            "n_2d1": row.n_2d1,
            "n_min": row.n_min,
            "n_theta": row.n_theta,
            "n_phi": row.n_phi,
            "n_tot_published": row.n_tot,
        }
        if verify:
            design = product_design(default_product_spec(d))
            rep = strength(design, row.t_min + 1)
            entry["n_tot"] = design.n
            entry["strength"] = rep.strength
            entry["max_residual"] = max(rep.residuals[: row.t_min])
        rows.append(entry)
    return rows


def cmd_table(args) -> int:
    rows = _table_rows(not args.no_verify)
    head = "d  (d+1)^2  t_min  bound  n_2d  n_2d+1  n_min | n_theta  n_phi  n_tot"
    if not args.no_verify:
        head += "  strength  max r_l (l<=2d)"
    lines = [head]
    for r in rows:
        s = (
            f"{r['d']:<2d} {r['n_params']:>7d}  {r['t_min']:>5d}  {r['lower_bound']:>5d}  "
            f"{r['n_2d']:>4d}  {r['n_2d1']:>6d}  {r['n_min']:>5d} | "
            f"{r['n_theta']:>7d}  {r['n_phi']:>5d}  "
        )
        if args.no_verify:
            s += f"{r['n_tot_published']:>5d}"
        else:
            s += f"{r['n_tot']:>5d}  {r['strength']:>8d}  {r['max_residual']:.2e}"
        lines.append(s)
    lines.append(
        "n_2d, n_2d+1, n_min: published minimum design sizes; "
        "product columns are generated and verified here."
        if not args.no_verify
        else "all counts as published"
    )
    _emit(args, {"rows": rows}, "\n".join(lines) + "\n")
    verified = args.no_verify or all(
        r["n_tot"] == r["n_tot_published"] and r["strength"] >= r["t_min"] for r in rows
    )
    return EXIT_OK if verified else EXIT_NEGATIVE


def cmd_convert(args) -> int:
    df = read_design_file(_read_text(args.file), fmt=args.input_format)
    _write_text(args.output, write(df.design, args.precision, args.format, df.comments))
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphdes",
        description="Spherical t-designs as optimal designs for spherical harmonic regression.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    def common(p, json_flag=True, input_fmt=True):
        if json_flag:
            p.add_argument("--json", action="store_true", help="emit a JSON report")
        if input_fmt:
            p.add_argument(
                "--input-format", choices=FORMATS, default=None,
                help="override layout auto-detection",
            )

    p = sub.add_parser("catalog", help="emit a built-in design")
    p.add_argument("name", choices=(*PLATONIC_NAMES, "product"))
    p.add_argument("--d", type=int, help="model order (product designs)")
    p.add_argument("--alpha", type=float, default=0.0, help="azimuth offset in radians")
    p.add_argument("--n-theta", type=int, help="polar node count (default: Table 1)")
    p.add_argument("--n-phi", type=int, help="azimuth count (default: 2d+1)")
    p.add_argument("--format", choices=FORMATS, default="triples")
    p.add_argument("--precision", type=int, default=17)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="report cubature strength of a design file")
    p.add_argument("file", help="design file, or - for stdin")
    p.add_argument("--t", type=int, required=True, help="strength to verify")
    p.add_argument("--t-max", type=int, help="report residuals up to this degree")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--oracle", action="store_true", help="also run the monomial check")
    p.add_argument("--trials", type=int, default=None,
                   help="sampled monomials for --oracle (default: all)")
    p.add_argument("--seed", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("criteria", help="information-matrix criteria for order d")
    p.add_argument("file")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=_parse_floats, default=[1.0, 2.0], help="comma-separated p values")
    common(p)
    p.set_defaults(func=cmd_criteria)

    p = sub.add_parser("construct", help="search for a spherical t-design numerically")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--starts", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iters", type=int, default=5000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=FORMATS, default="triples")
    p.add_argument("-o", "--output")
    common(p, input_fmt=False)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("stereogram", help="render an SVG stereogram")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--grid", action="store_true", help="draw meridians and parallels")
    p.add_argument("--size", type=int, default=600)
    p.add_argument("--marker-radius", type=float, default=6.0)
    common(p, json_flag=False)
    p.set_defaults(func=cmd_stereogram)

    p = sub.add_parser("fit", help="least-squares spherical harmonic coefficients")
    p.add_argument("design")
    p.add_argument("observations")
    p.add_argument("--d", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("simulate", help="simulate observations from the regression model")
    p.add_argument("design")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--noise", type=float, default=1.0, help="error standard deviation")
    p.add_argument("--coeffs", help="coefficient file in basis order (default: N(0,1) draws)")
    p.add_argument("-o", "--output")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("table", help="Table 1: product designs vs minimal t-designs")
    p.add_argument("--no-verify", action="store_true", help="skip generating product designs")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("convert", help="rewrite a design file in another layout")
    p.add_argument("file")
    p.add_argument("--format", choices=FORMATS, required=True)
    p.add_argument("--precision", type=int, default=17)
    p.add_argument("-o", "--output")
    p.add_argument("--input-format", choices=FORMATS, default=None)
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = default_seed()
        return args.func(args)
    except (InputError, SphdesError, ValueError) as exc:
        print(f"sphdes {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
