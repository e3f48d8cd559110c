"""Command-line experiment runner.

Subcommands:

* ``classify``  regime, eigenvalue and breaking time for one alpha
* ``entropy``   per-alpha entropy series to CSV (plus optional figure)
* ``density``   per-step frequency fields to PGM images with CSV sidecars
* ``lyapunov``  compactified-time Lagrange extrapolation table to CSV

Parameters come from flags, optionally seeded by a flat ``key = value``
config file (``--config``); flags win over the file.  Sweep items run
independently: a failing alpha is recorded in ``manifest.txt`` in the output
directory and the sweep continues.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from .entropy import entropy_series, frequencies
from .lyapunov import (
    breaking_time,
    compactify,
    lagrange_extrapolate,
    theoretical_lyapunov,
)
from .maps import ELLIPTIC, HYPERBOLIC, MapParams, classify_regime, elliptic_period
from . import reports
from .partitions import gen_partition, parse_partition_spec

_CONFIG_KEYS = (
    "alpha",
    "alpha-range",
    "n-grid",
    "partition",
    "seed",
    "steps",
    "engine",
    "out",
    "plot",
)


@dataclass
class ExperimentConfig:
    """Validated parameter set for one sweep."""

    alphas: tuple[float, ...]
    n_grid: int
    partition: str
    steps: int
    seed: int = 0
    engine: str = "auto"
    out: str = "out"
    plot: bool = True

    def __post_init__(self) -> None:
        if not self.alphas:
            raise ValueError("no alpha values given (use --alpha or --alpha-range)")
        if self.n_grid < 2:
            raise ValueError("n-grid must be >= 2")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        parse_partition_spec(self.partition)  # fail early on bad specs


def parse_alpha_range(text: str) -> list[float]:
    """Expand 'a:b:step' into the inclusive list a, a+step, ..., b."""
    try:
        lo_s, hi_s, step_s = text.split(":")
        lo, hi, step = float(lo_s), float(hi_s), float(step_s)
    except ValueError as exc:
        raise ValueError(f"alpha range must be 'a:b:step', got {text!r}") from exc
    if step <= 0:
        raise ValueError("alpha range step must be positive")
    if hi < lo:
        raise ValueError("alpha range needs b >= a")
    out = []
    k = 0
    while True:
        val = lo + k * step
        if val > hi + step * 1e-9:
            break
        out.append(round(val, 10))
        k += 1
    return out


def load_config_file(path: str) -> dict[str, str]:
    """Flat 'key = value' file; '#' starts a comment, blank lines ignored."""
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = value.strip()
    return values


def _resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    """Merge config-file values with CLI flags; flags win."""
    filevals = load_config_file(args.config) if args.config else {}

    def pick(flag_value, key: str, default=None):
        if flag_value is not None:
            return flag_value
        if key in filevals:
            return filevals[key]
        return default

    alphas: list[float] = []
    if args.alpha is not None:
        alphas.extend(args.alpha)
    elif "alpha" in filevals:
        alphas.extend(float(v) for v in filevals["alpha"].split(","))
    if args.alpha_range is not None:
        alphas.extend(parse_alpha_range(args.alpha_range))
    elif args.alpha is None and "alpha-range" in filevals:
        alphas.extend(parse_alpha_range(filevals["alpha-range"]))

    plot = pick(args.plot, "plot", True)
    if isinstance(plot, str):
        plot = plot.lower() in ("1", "true", "yes", "on")

    return ExperimentConfig(
        alphas=tuple(alphas),
        n_grid=int(pick(args.n_grid, "n-grid", 0) or 0),
        partition=str(pick(args.partition, "partition", "") or ""),
        steps=int(pick(args.steps, "steps", 0) or 0),
        seed=int(pick(args.seed, "seed", 0) or 0),
        engine=str(pick(args.engine, "engine", "auto")),
        out=str(pick(args.out, "out", "out")),
        plot=bool(plot),
    )


def _manifest_open(config: ExperimentConfig):
    reports.ensure_dir(config.out)
    return open(os.path.join(config.out, "manifest.txt"), "w", encoding="utf-8")


# ---------------------------------------------------------------------------
# runners
# ---------------------------------------------------------------------------

def run_entropy_sweep(config: ExperimentConfig) -> list[str]:
    """One CSV per alpha: entropy_alpha<a>_N<N>_D<D>.csv; returns written paths."""
    spec = parse_partition_spec(config.partition)
    written: list[str] = []
    collected = {}
    with _manifest_open(config) as manifest:
        for alpha in config.alphas:
            try:
                part = gen_partition(spec, config.n_grid, config.seed)
                params = MapParams(alpha=alpha, grid=config.n_grid)
                series = entropy_series(part, params, config.steps, config.engine)
                name = (
                    f"entropy_alpha{reports.alpha_label(alpha)}"
                    f"_N{config.n_grid}_D{part.size}.csv"
                )
                path = os.path.join(config.out, name)
                reports.write_entropy_csv(path, series)
                collected[alpha] = series
                written.append(path)
                manifest.write(f"alpha={reports.alpha_label(alpha)} status=ok file={name}\n")
            except Exception as exc:  # keep sweeping; record the failure
                manifest.write(
                    f"alpha={reports.alpha_label(alpha)} status=error msg={exc}\n"
                )
    if config.plot and collected:
        fig_path = os.path.join(config.out, f"entropy_N{config.n_grid}.png")
        reports.entropy_figure(fig_path, collected, config.n_grid)
        written.append(fig_path)
    return written


def run_density_maps(config: ExperimentConfig) -> list[str]:
    """Per-step PGM density images plus lossless CSV sidecars (integer alpha)."""
    spec = parse_partition_spec(config.partition)
    written: list[str] = []
    with _manifest_open(config) as manifest:
        for alpha in config.alphas:
            try:
                if not float(alpha).is_integer():
                    raise ValueError(
                        f"density maps need the frequency engine; alpha={alpha} "
                        "is not an integer"
                    )
                part = gen_partition(spec, config.n_grid, config.seed)
                params = MapParams(alpha=alpha, grid=config.n_grid)
                frames = []
                for n in range(1, config.steps + 1):
                    fld = frequencies(part, params, n)
                    stem = (
                        f"nu_alpha{reports.alpha_label(alpha)}"
                        f"_N{config.n_grid}_n{n}"
                    )
                    comment = (
                        f"alpha={reports.alpha_label(alpha)} N={config.n_grid} "
                        f"D={part.size} n={n} partition={spec.label} "
                        f"seed={config.seed} numax={reports.format_float(fld.nu.max())} "
                        f"gray=round(255*nu/numax) axes=l1-right,l2-up"
                    )
                    pgm = os.path.join(config.out, stem + ".pgm")
                    side = os.path.join(config.out, stem + ".csv")
                    reports.write_density_pgm(pgm, fld, comment)
                    reports.write_frequency_csv(side, fld)
                    written.extend([pgm, side])
                    frames.append((n, fld.nu))
                    manifest.write(
                        f"alpha={reports.alpha_label(alpha)} n={n} status=ok "
                        f"file={stem}.pgm\n"
                    )
                if config.plot and frames:
                    fig_path = os.path.join(
                        config.out,
                        f"density_alpha{reports.alpha_label(alpha)}_N{config.n_grid}.png",
                    )
                    reports.density_figure(fig_path, frames)
                    written.append(fig_path)
            except Exception as exc:
                manifest.write(
                    f"alpha={reports.alpha_label(alpha)} status=error msg={exc}\n"
                )
    return written


def run_lyapunov_fit(config: ExperimentConfig) -> list[str]:
    """Extrapolation table alpha,m,l_m,theoretical for m = 2..steps."""
    if config.steps < 2:
        raise ValueError("lyapunov fits need steps >= 2")
    spec = parse_partition_spec(config.partition)
    rows: list[tuple[float, int, float, float | None]] = []
    part_size = None
    with _manifest_open(config) as manifest:
        for alpha in config.alphas:
            try:
                part = gen_partition(spec, config.n_grid, config.seed)
                part_size = part.size
                params = MapParams(alpha=alpha, grid=config.n_grid)
                series = entropy_series(part, params, config.steps, config.engine)
                compact = compactify(series)
                regime = classify_regime(alpha)
                theo = (
                    theoretical_lyapunov(alpha)
                    if regime.tag == HYPERBOLIC
                    else None
                )
                for m in range(2, config.steps + 1):
                    est = lagrange_extrapolate(compact, m)
                    rows.append((alpha, m, est.value, theo))
                manifest.write(f"alpha={reports.alpha_label(alpha)} status=ok\n")
            except Exception as exc:
                manifest.write(
                    f"alpha={reports.alpha_label(alpha)} status=error msg={exc}\n"
                )
    written: list[str] = []
    if rows:
        name = f"lyapunov_N{config.n_grid}_D{part_size}.csv"
        path = os.path.join(config.out, name)
        reports.write_lyapunov_csv(path, rows)
        written.append(path)
        if config.plot:
            fig_path = os.path.join(config.out, f"lyapunov_N{config.n_grid}.png")
            reports.lyapunov_figure(fig_path, rows)
            written.append(fig_path)
    return written


def cmd_classify(alpha: float, n_grid: int | None = None) -> str:
    """One-line regime report for a single alpha."""
    regime = classify_regime(alpha)
    lam = regime.lambda_plus
    lam_text = (
        reports.format_float(lam.real)
        if lam.imag == 0
        else f"{reports.format_float(lam.real)}{lam.imag:+g}j"
    )
    line = (
        f"alpha={reports.alpha_label(alpha)} regime={regime.tag} "
        f"lambda={lam_text} log_lambda={reports.format_float(regime.log_expansion)}"
    )
    if regime.tag == HYPERBOLIC and n_grid is not None:
        line += f" tau_B@N={reports.format_float(breaking_time(alpha, n_grid))}"
    if regime.tag == ELLIPTIC:
        period = elliptic_period(alpha)
        if period is not None:
            line += f" period={period}"
    return line


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_sweep_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--alpha", type=float, action="append",
                     help="dynamical parameter (repeatable)")
    sub.add_argument("--alpha-range", metavar="A:B:STEP",
                     help="inclusive range of alphas")
    sub.add_argument("--n-grid", type=int, help="inverse lattice spacing N")
    sub.add_argument("--partition",
                     help="random:D | cluster:D[:cx,cy] | file:PATH")
    sub.add_argument("--seed", type=int, help="seed for random partitions")
    sub.add_argument("--steps", type=int, help="number of time steps n_max")
    sub.add_argument("--engine", choices=("frequency", "gram", "auto"),
                     help="entropy engine (default auto)")
    sub.add_argument("--out", help="output directory (default ./out)")
    sub.add_argument("--config", help="flat key = value parameter file")
    sub.add_argument("--plot", dest="plot", action="store_true", default=None,
                     help="render figures alongside the data (default)")
    sub.add_argument("--no-plot", dest="plot", action="store_false",
                     help="skip figure rendering")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catent",
        description="Entropy production of discretized torus maps",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_classify = subs.add_parser("classify", help="regime report per alpha")
    p_classify.add_argument("--alpha", type=float, action="append",
                            help="dynamical parameter (repeatable)")
    p_classify.add_argument("--alpha-range", metavar="A:B:STEP",
                            help="inclusive range of alphas")
    p_classify.add_argument("--n-grid", type=int, default=None,
                            help="grid size for the breaking-time column")

    for name, descr in (
        ("entropy", "entropy series sweep to CSV"),
        ("density", "frequency-field PGM images"),
        ("lyapunov", "Lagrange extrapolation of the exponent"),
    ):
        _add_sweep_flags(subs.add_parser(name, help=descr))
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "classify":
        alphas = list(args.alpha or [])
        if args.alpha_range is not None:
            alphas.extend(parse_alpha_range(args.alpha_range))
        if not alphas:
            print("error: classify needs --alpha or --alpha-range", file=sys.stderr)
            return 2
        for alpha in alphas:
            print(cmd_classify(alpha, args.n_grid))
        return 0
    try:
        config = _resolve_config(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    runner = {
        "entropy": run_entropy_sweep,
        "density": run_density_maps,
        "lyapunov": run_lyapunov_fit,
    }[args.command]
    try:
        written = runner(config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(f"wrote {path}")
    print(f"manifest {os.path.join(config.out, 'manifest.txt')}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
