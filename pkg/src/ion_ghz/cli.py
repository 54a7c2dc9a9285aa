#!/usr/bin/env python
# -*- coding utf-8 -*-
#
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-06-11
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Console script for ion-ghz."""
from contextlib import contextmanager
import functools
import logging
from pathlib import Path
import sys
import click
import numpy as np
import pandas as pd

from . import __version__
from .circuit import check_equivalence, dumps, read_circuit, transpile
from .core.config import load_config
from .core.exceptions import CircuitParseError, ConfigError, IonGhzError, QubitCountError
from .core.utils import provenance, save
from .experiments import (TABLE1, FidelityReport, calibrate_noise_to_table1, default_phases, direct_fidelity,
                          ghz_coherence, parity_scan_from_state, population_from_state, protocol_check)
from .experiments.calibration import ESTIMATORS
from .ghz import GhzSpec, build_ghz_circuit
from .simulator import simulate


log = logging.getLogger(__name__)

MAX_EQUIVALENCE_QUBITS = 8


@contextmanager
def _exit_codes():
    """Map package errors onto click's exit codes (2 for input errors, 1 otherwise)."""
    try:
        yield
    except (ConfigError, CircuitParseError) as err:
        raise click.UsageError(str(err)) from err
    except OSError as err:
        raise click.UsageError(f"Cannot access file: {err}") from err
    except IonGhzError as err:
        raise click.ClickException(str(err)) from err


def run_options(func):
    """Options shared by all experiment commands."""
    options = [
        click.option("--config", "config_path", type=click.Path(dir_okay=False),
                     help="key=value configuration file."),
        click.option("--n", "ghz_n", type=int, help="Number of ions of the GHZ state."),
        click.option("--circuit", "circuit_file", type=click.Path(dir_okay=False),
                     help="Preparation circuit file instead of the GHZ builder."),
        click.option("--shots", type=int, help="Shots per measurement setting."),
        click.option("--seed", type=int, help="Root seed of the shot sampling."),
        click.option("--exact", is_flag=True, default=False, help="Infinite-shot mode (shots = 0)."),
        click.option("--no-spam-correct", is_flag=True, default=False, help="Do not invert readout errors."),
        click.option("--out", "output_dir", type=click.Path(file_okay=False), help="Output directory."),
        click.option("--progress", is_flag=True, default=False, help="Show progress bars."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _config(config_path, ghz_n, circuit_file, shots, seed, exact, no_spam_correct, output_dir):
    if ghz_n is not None and circuit_file is not None:
        raise ConfigError("Give either --n or --circuit, not both")
    overrides = {
        "ghz_n": ghz_n,
        "circuit_file": circuit_file,
        "shots": 0 if exact else shots,
        "seed": seed,
        "spam_correct": False if no_spam_correct else None,
        "output_dir": output_dir,
    }
    return load_config(config_path, overrides).validate_target()


def _prepare(cfg):
    """The preparation circuit and the GHZ size it targets."""
    if cfg.ghz_n is not None:
        return build_ghz_circuit(GhzSpec(cfg.ghz_n, include_dd=cfg.include_dd)), cfg.ghz_n
    circuit = read_circuit(cfg.circuit_file)
    return circuit, circuit.n_qubits


def _seeds(cfg):
    population_seed, scan_seed = np.random.SeedSequence(cfg.seed).spawn(2)
    return population_seed, scan_seed


def _report(cfg, content):
    return {**content, "noise": cfg.noise.describe(), "config": cfg.to_mapping()}


def experiment_command(func):
    @functools.wraps(func)
    def wrapper(config_path, ghz_n, circuit_file, shots, seed, exact, no_spam_correct, output_dir, progress,
                **kwargs):
        with _exit_codes():
            cfg = _config(config_path, ghz_n, circuit_file, shots, seed, exact, no_spam_correct, output_dir)
            circuit, n = _prepare(cfg)
            log.info(f"Preparing {n}-ion state ({len(circuit)} instructions), shots={cfg.shots or 'exact'}, "
                     f"seed={cfg.seed}")
            rho = simulate(circuit, cfg.noise)
            return func(cfg, circuit, n, rho, progress=progress, **kwargs)
    return wrapper


def _scan(cfg, n, rho, seed, progress):
    phases = default_phases(n, cfg.phase_points)
    return parity_scan_from_state(rho, n, cfg.noise, phases, cfg.shots, seed, cfg.spam_correct, progress)


@click.group()
@click.version_option(__version__, prog_name="ion-ghz")
@click.option("-v", "--verbose", is_flag=True, default=False, help="Debug output.")
@click.option("--quiet", is_flag=True, default=False, help="Warnings and errors only.")
def main(verbose, quiet):
    """Simulate GHZ-state preparation on a trapped-ion processor."""
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


@main.command("ghz-run")
@run_options
@experiment_command
def ghz_run(cfg, circuit, n, rho, progress=False):
    """Population and parity experiment, fidelity and witness."""
    population_seed, scan_seed = _seeds(cfg)
    population = population_from_state(rho, cfg.noise, cfg.shots, population_seed, cfg.spam_correct)
    scan = _scan(cfg, n, rho, scan_seed, progress)
    report = FidelityReport.from_results(population, scan, cfg.seed, direct_fidelity(rho, n))
    difference = protocol_check(report)

    out = Path(cfg.output_dir)
    prov = provenance(cfg)
    save(population.to_frame(), out / "population.csv", provenance=prov)
    save(scan.to_frame(), out / "parity.csv", provenance=prov)
    coherence = ghz_coherence(rho)
    content = {**report.to_dict(), "phi0": scan.fitted_phi0, "rms_residual": scan.rms_residual,
               "protocol_minus_direct": difference, "coherence_abs": abs(coherence)}
    save(_report(cfg, content), out / "report.json", provenance=prov)

    click.echo(f"N = {n}: A = {report.a_value:.6f}, B = {report.b_value:.6f}")
    click.echo(f"F = {report.fidelity:.6f}, <W> = {report.witness:.6f} -> {report.verdict}")
    click.echo(f"direct fidelity = {report.direct_fidelity:.6f}")


@main.command("parity-scan")
@run_options
@experiment_command
def parity_scan_cmd(cfg, circuit, n, rho, progress=False):
    """Parity experiment only."""
    _, scan_seed = _seeds(cfg)
    scan = _scan(cfg, n, rho, scan_seed, progress)
    out = Path(cfg.output_dir)
    prov = provenance(cfg)
    save(scan.to_frame(), out / "parity.csv", provenance=prov)
    content = {"n": n, "b_value": scan.fitted_b, "b_stderr": scan.b_stderr, "phi0": scan.fitted_phi0,
               "rms_residual": scan.rms_residual, "shots": cfg.shots, "seed": cfg.seed,
               "spam_corrected": scan.spam_corrected}
    save(_report(cfg, content), out / "report.json", provenance=prov)
    click.echo(f"N = {n}: B = {scan.fitted_b:.6f} +- {scan.b_stderr:.2g}, phi0 = {scan.fitted_phi0:.4f}")


@main.command("population")
@run_options
@experiment_command
def population_cmd(cfg, circuit, n, rho, progress=False):
    """Population experiment only."""
    population_seed, _ = _seeds(cfg)
    population = population_from_state(rho, cfg.noise, cfg.shots, population_seed, cfg.spam_correct)
    out = Path(cfg.output_dir)
    prov = provenance(cfg)
    save(population.to_frame(), out / "population.csv", provenance=prov)
    content = {"n": n, "a_value": population.a_value, "a_stderr": population.stderr,
               "raw_a_value": population.raw_a_value, "shots": cfg.shots, "seed": cfg.seed,
               "spam_corrected": population.spam_corrected}
    save(_report(cfg, content), out / "report.json", provenance=prov)
    click.echo(f"N = {n}: A = {population.a_value:.6f} +- {population.stderr:.2g}")


def read_table(path):
    """Read target fidelities from a CSV file with columns ``n`` and ``fidelity``."""
    try:
        table = pd.read_csv(path)
    except pd.errors.EmptyDataError:
        raise ConfigError(f"Target table {path} is empty") from None
    if not {"n", "fidelity"} <= set(table.columns) or table.empty:
        raise ConfigError(f"Target table {path} needs rows with columns 'n' and 'fidelity'")
    try:
        sizes = pd.to_numeric(table["n"], errors="raise", downcast="integer")
        fidelities = pd.to_numeric(table["fidelity"], errors="raise")
    except (ValueError, TypeError) as err:
        raise ConfigError(f"Target table {path} has a non-numeric entry: {err}") from None
    if sizes.isna().any() or fidelities.isna().any():
        raise ConfigError(f"Target table {path} has empty cells")
    if (sizes != sizes.round()).any():
        raise ConfigError(f"Target table {path}: column 'n' must hold integers")
    return {int(n): float(f) for n, f in zip(sizes, fidelities)}


@main.command("calibrate")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="key=value configuration file.")
@click.option("--table", "table_path", type=click.Path(dir_okay=False),
              help="CSV with columns n,fidelity (default: the measured GHZ fidelities for N = 2..8).")
@click.option("--estimator", type=click.Choice(ESTIMATORS), default="protocol", show_default=True)
@click.option("--maxiter", type=int, default=150, show_default=True, help="Nelder-Mead iterations.")
@click.option("--out", "output_dir", type=click.Path(file_okay=False), help="Output directory.")
@click.option("--progress", is_flag=True, default=False, help="Show progress bars.")
def calibrate(config_path, table_path, estimator, maxiter, output_dir, progress):
    """Fit p2 and sigma_collective to target GHZ fidelities."""
    with _exit_codes():
        cfg = load_config(config_path, {"output_dir": output_dir})
        targets = read_table(table_path) if table_path is not None else TABLE1
        result = calibrate_noise_to_table1(targets, cfg.noise, estimator=estimator, maxiter=maxiter,
                                           include_dd=cfg.include_dd, progress=progress)
        out = Path(cfg.output_dir)
        prov = provenance(cfg)
        save(result.to_frame(), out / "calibration.csv", provenance=prov)
        env = "".join(f"{k}={v!r}\n" for k, v in result.noise.to_dict().items())
        (out / "fitted_noise.env").write_text(env)
        log.info(f"Saved fitted noise parameters to {out / 'fitted_noise.env'}")
        content = {"rms": result.rms, "converged": result.converged, "n_evaluations": result.n_evaluations,
                   "monotonic": result.is_monotonic, "estimator": estimator,
                   "fitted": {"p2": result.noise.p2, "sigma_collective": result.noise.sigma_collective}}
        save(_report(cfg.replace(**result.noise.to_dict()), content), out / "report.json", provenance=prov)

    click.echo(f"p2 = {result.noise.p2:.6f}, sigma_collective = {result.noise.sigma_collective:.6f}")
    click.echo(f"RMS = {result.rms:.5f} over {len(targets)} sizes"
               f"{'' if result.converged else ' (search did not converge)'}")


@main.command("transpile")
@click.argument("circuit_file", required=False, type=click.Path(dir_okay=False))
@click.option("--n", "ghz_n", type=int, help="Transpile the GHZ preparation of N ions instead of a file.")
@click.option("--no-dd", is_flag=True, default=False, help="GHZ preparation without echo layers.")
@click.option("--no-fold", is_flag=True, default=False, help="Keep RZ rotations as instructions.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="Output file (default: stdout).")
def transpile_cmd(circuit_file, ghz_n, no_dd, no_fold, out_path):
    """Translate a circuit into the native gate set."""
    with _exit_codes():
        if (circuit_file is None) == (ghz_n is None):
            raise ConfigError("Give either a CIRCUIT_FILE or --n")
        if circuit_file is not None:
            circuit = read_circuit(circuit_file)
        else:
            try:
                spec = GhzSpec(ghz_n, include_dd=not no_dd)
            except QubitCountError as err:
                raise ConfigError(str(err)) from None
            circuit = build_ghz_circuit(spec)
        native = transpile(circuit, fold=not no_fold)
        if native.n_qubits <= MAX_EQUIVALENCE_QUBITS:
            check_equivalence(circuit, native)
        else:
            log.warning(f"Skipping the equivalence check for {native.n_qubits} qubits")
        if out_path is not None:
            save(native, out_path)
        else:
            click.echo(dumps(native), nl=False)

    counts = ", ".join(f"{k}: {v}" for k, v in native.gate_counts().items())
    click.echo(f"gate counts: {counts}; total duration {native.total_duration() * 1e6:.1f} us", err=True)


if __name__ == "__main__":
    sys.exit(main())
