"""Command-line front end.

Subcommands: ``modes``, ``steady``, ``flows``, ``concurrence``, ``sweep``,
``figures``, ``verify``. Sweeps read an INI-style configuration file whose
values any command-line flag overrides; results are written as CSV with
``#`` metadata comments and, when an output file is given, a rendered figure
next to it. Exit codes: 0 success, 1 configuration error, 2 verification
failure, 3 infeasible parameters.
"""

from __future__ import annotations

import argparse
import configparser
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .chain import (ChainSpec, InfeasibleParameters, check_frequency_assumption,
                    frequency_bound, mode_table, require_positive_frequencies)
from .reduced import concurrence as xconcurrence
from .reduced import xstate_coeffs
from .spinrep import DENSE_LIMIT, MinorCache, assemble_density_matrix, sector_eigenvalues
from .steady import BathSpec, steady_factors
from .sweep import (SWEEP_VARIABLES, SweepConfig, columns, format_real,
                    metadata_lines, render_csv, run_sweep)
from .transport import flow_report

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VERIFY = 2
EXIT_INFEASIBLE = 3


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 by default; configuration problems are 1
    def error(self, message):
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _weights(text):
    if text is None:
        return 1.0
    parts = [p for p in str(text).replace(" ", "").split(",") if p]
    vals = [float(p) for p in parts]
    return vals[0] if len(vals) == 1 else tuple(vals)


def _add_chain_args(p, require_n=True):
    p.add_argument("-n", "--n-sites", type=int, required=require_n,
                   help="number of spins (>= 2)")
    p.add_argument("--delta", type=float, help="transverse field strength")
    p.add_argument("--g", type=float, help="hopping strength")
    p.add_argument("--g-frac", type=float,
                   help="hopping as a fraction of the saturation bound "
                        "delta/(2 cos(pi/(n+1))); used when --g is absent "
                        "(default 0.98)")


def _add_bath_args(p):
    p.add_argument("--t-left", type=float, help="left bath temperature")
    p.add_argument("--t-right", type=float, help="right bath temperature")
    p.add_argument("--weight-left", type=_weights, metavar="W[,W...]",
                   help="squared left smearing per mode (scalar broadcasts)")
    p.add_argument("--weight-right", type=_weights, metavar="W[,W...]",
                   help="squared right smearing per mode (scalar broadcasts)")
    p.add_argument("--lambda-sq", type=float, help="dissipative scale (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="openxx", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"openxx {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("modes", help="mode matrix and transition frequencies")
    _add_chain_args(p)
    p.add_argument("--matrix", action="store_true", help="print the mode matrix")

    p = sub.add_parser("steady", help="stationary state in several formats")
    _add_chain_args(p)
    _add_bath_args(p)
    p.add_argument("--format", choices=("factors", "sectors", "dense"),
                   default="factors")

    p = sub.add_parser("flows", help="sink/source terms and heat flows")
    _add_chain_args(p)
    _add_bath_args(p)
    p.add_argument("-o", "--output", type=Path, help="write CSV here")

    p = sub.add_parser("concurrence", help="two-spin X-state coefficients")
    _add_chain_args(p)
    _add_bath_args(p)
    p.add_argument("--pair", action="append", metavar="R,S",
                   help="site pair, repeatable (default: all pairs)")
    p.add_argument("-o", "--output", type=Path, help="write CSV here")

    p = sub.add_parser("sweep", help="one-variable parameter sweep to CSV (+figure)")
    p.add_argument("--config", type=Path, help="INI configuration file")
    _add_chain_args(p, require_n=False)
    _add_bath_args(p)
    p.add_argument("--variable", choices=SWEEP_VARIABLES)
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--outputs", help="comma list: heat, q:<k>, conc:<r>-<s>, factors")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output", type=Path, help="write CSV here (stdout otherwise)")
    p.add_argument("--no-plot", action="store_true",
                   help="skip the figure rendered next to the CSV")

    p = sub.add_parser("figures", help="canned sweep recipes with figures")
    from .figures import PRESETS
    p.add_argument("--outdir", type=Path, default=Path("figures"))
    p.add_argument("--preset", action="append", choices=PRESETS + ("all",),
                   help="repeatable; default all")
    p.add_argument("--points", type=int, help="grid points per curve")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("verify", help="run the dense-oracle verification suite")
    p.add_argument("--max-n", type=int, default=3, help="largest chain size (2..5)")
    p.add_argument("--draws", type=int, default=20, help="random draws per size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timings", action="store_true",
                   help="append (non-deterministic) timing summary")
    p.add_argument("--skip-kernel", action="store_true",
                   help="skip the vectorized-generator kernel solve")
    return parser


def _chain_from_args(args) -> ChainSpec:
    if args.delta is None:
        raise ConfigError("delta is required")
    g = args.g
    if g is None:
        frac = 0.98 if args.g_frac is None else args.g_frac
        g = frac * frequency_bound(ChainSpec(args.n_sites, args.delta, args.delta))
    return ChainSpec(args.n_sites, args.delta, g)


def _baths_from_args(args, n: int) -> BathSpec:
    return BathSpec(
        n,
        args.t_left if args.t_left is not None else 0.0,
        args.t_right if args.t_right is not None else 0.0,
        np.broadcast_to(np.asarray(args.weight_left if args.weight_left is not None
                                   else 1.0, dtype=float), (n,)),
        np.broadcast_to(np.asarray(args.weight_right if args.weight_right is not None
                                   else 1.0, dtype=float), (n,)),
        lambda_sq=args.lambda_sq if args.lambda_sq is not None else 1.0)


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding="utf-8")


def cmd_modes(args) -> int:
    spec = _chain_from_args(args)
    modes = mode_table(spec)
    lines = [f"# openxx {__version__}",
             f"# chain: n_sites={spec.n_sites} delta={format_real(spec.delta)} "
             f"g={format_real(spec.g)}",
             f"# frequency bound: g <= {format_real(frequency_bound(spec))} "
             f"(satisfied: {check_frequency_assumption(spec)})",
             "mode,omega"]
    for l, w in enumerate(modes.omega, start=1):
        lines.append(f"{l},{format_real(w)}")
    if args.matrix:
        lines.append("# mode matrix u (row = mode, column = site)")
        for row in modes.u:
            lines.append("# " + ",".join(format_real(v) for v in row))
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _steady_prelude(args):
    spec = _chain_from_args(args)
    require_positive_frequencies(spec)
    modes = mode_table(spec)
    baths = _baths_from_args(args, spec.n_sites)
    return spec, modes, baths


def cmd_steady(args) -> int:
    spec, modes, baths = _steady_prelude(args)
    factors = steady_factors(modes, baths)
    head = [f"# openxx {__version__}",
            f"# chain: n_sites={spec.n_sites} delta={format_real(spec.delta)} "
            f"g={format_real(spec.g)}",
            f"# baths: t_left={format_real(baths.temp_left)} "
            f"t_right={format_real(baths.temp_right)}"]
    if args.format == "factors":
        lines = head + ["mode,omega,lam0,lam1"]
        for l in range(spec.n_sites):
            lines.append(f"{l + 1},{format_real(modes.omega[l])},"
                         f"{format_real(factors.lam0[l])},{format_real(factors.lam1[l])}")
    elif args.format == "sectors":
        lines = head + ["weight,trace"]
        for p in range(spec.n_sites + 1):
            lines.append(f"{p},{format_real(float(sector_eigenvalues(factors, p).sum()))}")
    else:
        if spec.n_sites > DENSE_LIMIT:
            raise ConfigError(f"dense format limited to n_sites <= {DENSE_LIMIT}")
        rho = assemble_density_matrix(modes, factors, order="tensor")
        lines = head + ["# dense stationary state, standard spin basis"]
        lines += [",".join(format_real(v) for v in row) for row in rho]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_flows(args) -> int:
    spec, modes, baths = _steady_prelude(args)
    report = flow_report(modes, baths)
    lines = [f"# openxx {__version__}",
             f"# chain: n_sites={spec.n_sites} delta={format_real(spec.delta)} "
             f"g={format_real(spec.g)}",
             f"# baths: t_left={format_real(baths.temp_left)} "
             f"t_right={format_real(baths.temp_right)} "
             f"lambda_sq={format_real(baths.lambda_sq)}",
             f"# heat_left: {format_real(report.heat_left)}",
             f"# heat_right: {format_real(report.heat_right)}",
             "site,q_left,q_right"]
    for k in range(spec.n_sites):
        lines.append(f"{k + 1},{format_real(report.q_left[k])},"
                     f"{format_real(report.q_right[k])}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_concurrence(args) -> int:
    spec, modes, baths = _steady_prelude(args)
    factors = steady_factors(modes, baths)
    if args.pair:
        pairs = []
        for text in args.pair:
            try:
                r, s = (int(x) for x in text.split(","))
            except ValueError as exc:
                raise ConfigError(f"bad --pair {text!r}: expected R,S") from exc
            pairs.append((r, s))
    else:
        pairs = [(r, s) for r in range(1, spec.n_sites + 1)
                 for s in range(r + 1, spec.n_sites + 1)]
    cache = MinorCache(modes)
    lines = [f"# openxx {__version__}",
             f"# chain: n_sites={spec.n_sites} delta={format_real(spec.delta)} "
             f"g={format_real(spec.g)}",
             f"# baths: t_left={format_real(baths.temp_left)} "
             f"t_right={format_real(baths.temp_right)}",
             "r,s,a,b,c,d,e,concurrence"]
    for r, s in pairs:
        xc = xstate_coeffs(modes, factors, r, s, cache)
        lines.append(",".join([str(r), str(s)] + [
            format_real(v) for v in (xc.a, xc.b, xc.c, xc.d, xc.e, xconcurrence(xc))]))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


_CONFIG_SCHEMA = {
    ("chain", "n_sites"): int,
    ("chain", "delta"): float,
    ("chain", "g"): float,
    ("chain", "g_frac"): float,
    ("baths", "t_left"): float,
    ("baths", "t_right"): float,
    ("baths", "weight_left"): _weights,
    ("baths", "weight_right"): _weights,
    ("baths", "lambda_sq"): float,
    ("sweep", "variable"): str,
    ("sweep", "start"): float,
    ("sweep", "stop"): float,
    ("sweep", "points"): int,
    ("outputs", "observables"): str,
}


def read_config_file(path: Path) -> dict:
    """Parse the INI sweep configuration into SweepConfig keyword arguments."""
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror or exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    values = {}
    for section in parser.sections():
        for key in parser[section]:
            conv = _CONFIG_SCHEMA.get((section, key))
            if conv is None:
                raise ConfigError(f"{path}: unknown option [{section}] {key}")
            raw = parser[section][key]
            try:
                values[(section, key)] = conv(raw)
            except ValueError as exc:
                raise ConfigError(
                    f"{path}: bad value for [{section}] {key}: {raw!r}") from exc
    kwargs = {}
    rename = {("chain", "n_sites"): "n_sites", ("chain", "delta"): "delta",
              ("chain", "g"): "g", ("chain", "g_frac"): "g_frac",
              ("baths", "t_left"): "t_left", ("baths", "t_right"): "t_right",
              ("baths", "weight_left"): "weight_left",
              ("baths", "weight_right"): "weight_right",
              ("baths", "lambda_sq"): "lambda_sq",
              ("sweep", "variable"): "variable", ("sweep", "start"): "start",
              ("sweep", "stop"): "stop", ("sweep", "points"): "points"}
    for key, val in values.items():
        if key == ("outputs", "observables"):
            kwargs["outputs"] = tuple(
                tok.strip() for tok in val.split(",") if tok.strip())
        else:
            kwargs[rename[key]] = val
    return kwargs


def _sweep_config(args) -> SweepConfig:
    kwargs = read_config_file(args.config) if args.config else {}
    overrides = {
        "n_sites": args.n_sites, "delta": args.delta, "g": args.g,
        "g_frac": args.g_frac, "t_left": args.t_left, "t_right": args.t_right,
        "weight_left": args.weight_left, "weight_right": args.weight_right,
        "lambda_sq": args.lambda_sq, "variable": args.variable,
        "start": args.start, "stop": args.stop, "points": args.points,
    }
    for key, val in overrides.items():
        if val is not None:
            kwargs[key] = val
    if args.outputs is not None:
        kwargs["outputs"] = tuple(
            tok.strip() for tok in args.outputs.split(",") if tok.strip())
    for required in ("n_sites", "delta"):
        if required not in kwargs:
            raise ConfigError(f"sweep needs {required} (config file or flag)")
    try:
        return SweepConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def cmd_sweep(args) -> int:
    config = _sweep_config(args)
    rows = run_sweep(config, workers=args.workers)
    _emit(render_csv(config, rows), args.output)
    if all(row[1] for row in rows):
        raise InfeasibleParameters("every grid point violates the frequency bound")
    if args.output is not None and not args.no_plot:
        from .plotting import render_sweep
        render_sweep(args.output.with_suffix(".png"), config.variable,
                     columns(config), rows)
    return EXIT_OK


def cmd_figures(args) -> int:
    from .figures import PRESETS, run_preset
    names = args.preset or ["all"]
    if "all" in names:
        names = list(PRESETS)
    for name in names:
        paths = run_preset(name, args.outdir, points=args.points,
                           workers=args.workers)
        for p in paths:
            sys.stdout.write(f"{p}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_verify
    if not 2 <= args.max_n <= 5:
        raise ConfigError("--max-n must be in 2..5")
    report = run_verify(max_n=args.max_n, draws=args.draws, seed=args.seed,
                        kernel=not args.skip_kernel)
    sys.stdout.write(report.format(timings=args.timings))
    return EXIT_OK if report.passed else EXIT_VERIFY


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "modes": cmd_modes, "steady": cmd_steady, "flows": cmd_flows,
        "concurrence": cmd_concurrence, "sweep": cmd_sweep,
        "figures": cmd_figures, "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"openxx: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InfeasibleParameters as exc:
        print(f"openxx: infeasible parameters: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        print(f"openxx: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
