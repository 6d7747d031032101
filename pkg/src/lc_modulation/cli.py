import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import yaml
from pydantic import ValidationError

from .config import (
    BasisConfig,
    ModelConfig,
    RunConfig,
    SimulationConfig,
    SpectrumConfig,
    TuningConfig,
    get_config,
)
from .constants import ExitCode, Normalization, SimulationKind
from .framework.pipeline import ModulationPipeline
from .framework.run_store import read_series


logger = logging.getLogger("lc_modulation.cli")


def parse_floats(text: str) -> List[float]:
    """Comma-separated numbers; an item ``a:b:n`` expands to n equally spaced values from a to b."""
    values: List[float] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ":" in item:
            parts = item.split(":")
            if len(parts) != 3:
                raise ValueError(f"range '{item}' must read start:stop:count")
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 1:
                raise ValueError(f"range '{item}' needs a positive count")
            values.extend(np.linspace(start, stop, count).tolist())
        else:
            values.append(float(item))
    return values


def parse_ints(text: str) -> List[int]:
    return [int(item) for item in text.split(",") if item.strip()]


def parse_tau_groups(text: str) -> List[List[float]]:
    """Groups separated by ';', each a list understood by parse_floats."""
    return [parse_floats(group) for group in text.split(";")]


def _given(**kwargs) -> Dict[str, Any]:
    return {key: value for key, value in kwargs.items() if value is not None}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="YAML or JSON run configuration (a previous run's echo works)")
    parser.add_argument("--output-dir", help="Directory for result files")
    parser.add_argument("--level", type=float, help="Coverage level of the bands (default 0.95)")
    parser.add_argument("--threads", type=int, help="Worker threads")
    parser.add_argument("--log-level", help="Logging level (default from LCMOD_LOG_LEVEL)")


def _add_model_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--freqs", type=parse_floats, help="Harmonic frequencies f1,f2,... (1/d)")
    parser.add_argument("--extra-freqs", type=parse_floats, help="Additional frequencies, e.g. reflections")


def _add_spectrum_args(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--t0", type=float, required=required, help="Grid origin (days)")
    parser.add_argument("--delta", type=float, required=required, help="Grid spacing (days)")
    parser.add_argument("--grid-tol", type=float, help="Absolute tolerance for grid embedding")
    parser.add_argument("--n-grid", type=int, help="Length of the Fourier grid (default: largest index)")
    parser.add_argument("--bandwidth", type=float, help="Gaussian kernel bandwidth h (default 0.3)")
    parser.add_argument("--band", type=parse_floats, help="Angular frequency band low,high for the whiteness check")
    parser.add_argument("--flat-ratio", type=float, help="Largest max/min ratio accepted as white")
    parser.add_argument("--no-presmooth", action="store_true", help="Deconvolve the raw periodogram")
    parser.add_argument("--normalization", choices=[n.value for n in Normalization],
                        help="Final smoothing: count divides by N_lambda, kernel by the weight sum (default)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcmod",
        description="Penalized B-spline fits of time-varying harmonic models and residual spectra "
                    "for unequally spaced light curves.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    fit = subparsers.add_parser("fit", help="Fit one model and write bands and curves")
    _add_common(fit)
    fit.add_argument("--input", help="time,value[,error] file")
    fit.add_argument("--column", help="Value column name or position")
    _add_model_args(fit)
    fit.add_argument("--knots", type=int, help="Number of knot intervals n (J = n + d)")
    fit.add_argument("--degree", type=int, help="Spline degree d")
    fit.add_argument("--penalty-order", type=int, help="Difference order r")
    fit.add_argument("--tau", type=parse_floats, help="One tau, or 2K+1 taus (trend, cos1, sin1, cos2, ...)")
    _add_spectrum_args(fit, required=False)

    tune = subparsers.add_parser("tune", help="Select tau and basis settings by AIC")
    _add_common(tune)
    tune.add_argument("--input", help="time,value[,error] file")
    tune.add_argument("--column", help="Value column name or position")
    _add_model_args(tune)
    tune.add_argument("--knots", type=parse_ints, help="Candidate n values")
    tune.add_argument("--degree", type=parse_ints, help="Candidate degrees")
    tune.add_argument("--penalty-order", type=parse_ints, help="Candidate difference orders")
    tune.add_argument("--harmonics", type=parse_ints, help="Candidate numbers of leading frequencies")
    tune.add_argument("--tau", type=parse_tau_groups,
                      help="Tau candidates, e.g. 0:200:41; groups separated by ';'")
    tune.add_argument("--group-sizes", type=parse_ints, help="Number of consecutive taus in each group")

    spectrum = subparsers.add_parser("spectrum", help="Deconvolved spectral density and whiteness")
    _add_common(spectrum)
    spectrum.add_argument("--input", help="time,value file (e.g. residuals)")
    spectrum.add_argument("--column", help="Value column name or position")
    _add_spectrum_args(spectrum, required=False)

    simulate = subparsers.add_parser("simulate", help="Write a simulated light curve and its truth")
    _add_common(simulate)
    simulate.add_argument("--kind", choices=[kind.value for kind in SimulationKind])
    simulate.add_argument("--seed", type=int, help="Random seed (default 0)")
    simulate.add_argument("--n", type=int, help="Number of observations (grid length for ar2)")
    simulate.add_argument("--sigma2", type=float, help="Noise / innovation variance")
    simulate.add_argument("--n-design", type=int, help="Design grid size for blazhko")
    simulate.add_argument("--n-blocks", type=int, help="Number of blocks for ar2")
    simulate.add_argument("--block-len", type=int, help="Block length for ar2")
    simulate.add_argument("--keep", type=int, help="Blocks retained for ar2")

    return parser


def _load_config_file(path: str) -> Dict[str, Any]:
    with open(path, "r") as f:
        data = yaml.safe_load(f) or {}
    if "command" not in data and isinstance(data.get("config"), dict):
        data = data["config"]
    return data


def _spectrum_config(args: argparse.Namespace) -> Optional[SpectrumConfig]:
    if args.t0 is None and args.delta is None:
        return None
    if args.t0 is None or args.delta is None:
        raise ValueError("--t0 and --delta must be given together")
    return SpectrumConfig(**_given(
        t0=args.t0, delta=args.delta, grid_tol=args.grid_tol, n_grid=args.n_grid,
        bandwidth=args.bandwidth, band=tuple(args.band) if args.band else None,
        flat_ratio=args.flat_ratio, presmooth=False if args.no_presmooth else None,
        normalization=args.normalization,
    ))


def build_run_config(args: argparse.Namespace) -> RunConfig:
    if args.config:
        data = _load_config_file(args.config)
        data["command"] = args.command
        data.update(_given(input=getattr(args, "input", None), output_dir=args.output_dir))
        return RunConfig(**data)

    common = _given(command=args.command, output_dir=args.output_dir or get_config().output_dir,
                    level=args.level, input=getattr(args, "input", None),
                    value_column=getattr(args, "column", None))

    if args.command == "fit":
        basis = BasisConfig(**_given(n_intervals=args.knots, degree=args.degree))
        model = ModelConfig(**_given(frequencies=args.freqs, extra_frequencies=args.extra_freqs,
                                     basis=basis, penalty_order=args.penalty_order, taus=args.tau))
        return RunConfig(model=model, spectrum=_spectrum_config(args), **common)

    if args.command == "tune":
        tau_fields: Dict[str, Any] = {}
        if args.tau is not None:
            if len(args.tau) == 1:
                tau_fields["tau_grid"] = args.tau[0]
            else:
                tau_fields["tau_grids"] = args.tau
        tuning = TuningConfig(**_given(
            frequencies=args.freqs, extra_frequencies=args.extra_freqs, group_sizes=args.group_sizes,
            n_intervals=args.knots, degrees=args.degree, penalty_orders=args.penalty_order,
            harmonic_counts=args.harmonics, threads=args.threads or get_config().threads,
        ), **tau_fields)
        return RunConfig(tuning=tuning, **common)

    if args.command == "spectrum":
        options = _spectrum_config(args)
        if options is None:
            raise ValueError("spectrum needs --t0 and --delta")
        return RunConfig(spectrum=options, **common)

    if args.kind is None:
        raise ValueError("simulate needs --kind")
    simulation = SimulationConfig(**_given(
        kind=args.kind, seed=args.seed, n=args.n, sigma2=args.sigma2, n_design=args.n_design,
        n_blocks=args.n_blocks, block_len=args.block_len, keep=args.keep,
    ))
    return RunConfig(simulation=simulation, **common)


def run(config: RunConfig) -> List[str]:
    pipeline = ModulationPipeline(config)

    if config.command == "simulate":
        return pipeline.save_simulation(pipeline.simulate())

    if not config.input:
        raise ValueError(f"{config.command} needs --input")
    series = read_series(config.input, config.value_column)

    if config.command == "fit":
        return pipeline.save_fit(pipeline.fit(series))
    if config.command == "tune":
        return pipeline.save_tuning(pipeline.tune(series))
    if config.command == "spectrum":
        return pipeline.save_spectrum(pipeline.spectrum(series))
    raise ValueError(f"unknown command '{config.command}'")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        level = (args.log_level or get_config().log_level).upper()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return int(ExitCode.USAGE)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")

    try:
        config = build_run_config(args)
        written = run(config)
    except ArithmeticError as e:
        logger.error(f"Numerical failure: {e}")
        print(f"error: {e}", file=sys.stderr)
        return int(ExitCode.NUMERICAL)
    except (ValidationError, ValueError, OSError, yaml.YAMLError) as e:
        logger.error(f"Invalid input: {e}")
        print(f"error: {e}", file=sys.stderr)
        return int(ExitCode.USAGE)

    for name in written:
        print(name)
    return int(ExitCode.OK)
