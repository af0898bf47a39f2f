"""Command-line interface for LD-Shift."""

import asyncio
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import click
import numpy as np
from dotenv import load_dotenv

from .. import __version__
from ..config import RunConfig, load_run_config, settings
from ..errors import ConfigError, LDShiftError
from ..qshift import WindowFunction
from ..report import (
    SPECTRUM_COLUMNS,
    SWEEP_COLUMNS,
    TRAJECTORY_COLUMNS,
    build_shift_report,
    run_verification,
    spectrum_rows,
    trajectory_rows,
    trajectory_summary,
    write_csv,
    write_json,
)
from ..trajectory import Trajectory, build_trajectory
from ..worker import JobManager, JobStatus

# Load environment variables
load_dotenv()

# Configure logging
logging.basicConfig(
    level=getattr(logging, settings.log_level.upper(), logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


def _execute(action: Callable[[], int]) -> None:
    """Run a command body and map errors to exit codes."""
    try:
        code = action()
    except LDShiftError as e:
        click.echo(f"❌ {type(e).__name__}: {e}", err=True)
        logger.debug(f"Command failed: {e}", exc_info=True)
        sys.exit(e.exit_code)
    if code:
        sys.exit(code)


def _run_config(ctx: click.Context) -> RunConfig:
    """Config file, then command-line overrides."""
    obj = ctx.obj
    config = load_run_config(obj.get('config_path'))
    return config.with_overrides(
        output_dir=obj.get('out'),
        workers=obj.get('workers'),
        formats=list(obj['formats']) if obj.get('formats') else None,
        seed=obj.get('seed'),
    )


def _trajectory(config: RunConfig) -> Trajectory:
    return build_trajectory(config.potential, config.particle, config=config.simulation)


def _output_dir(config: RunConfig) -> Path:
    return Path(config.run.output_dir)


def _parse_values(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(',') if part.strip()]
    except ValueError as e:
        raise ConfigError(f"could not parse sweep values '{text}': {e}", key="values") from e


@click.group()
@click.version_option(version=__version__, prog_name='ld-shift')
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), help='YAML run configuration')
@click.option('--out', help='Output directory')
@click.option('--workers', type=int, help='Worker processes for sweeps')
@click.option('--format', 'formats', multiple=True, type=click.Choice(['csv', 'json']), help='Output formats')
@click.option('--seed', type=int, help='Seed for verification sample points')
@click.option('--verbose', '-v', is_flag=True, help='Verbose output')
@click.option('--quiet', is_flag=True, help='Only report errors')
@click.pass_context
def cli(
    ctx: click.Context,
    config_path: Optional[str],
    out: Optional[str],
    workers: Optional[int],
    formats: Tuple[str, ...],
    seed: Optional[int],
    verbose: bool,
    quiet: bool,
) -> None:
    """LD-Shift - radiation-reaction position shift by classical and quantum routes."""
    ctx.ensure_object(dict)
    ctx.obj.update(config_path=config_path, out=out, workers=workers, formats=formats, seed=seed)

    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    elif quiet:
        logging.getLogger().setLevel(logging.ERROR)


@cli.command()
@click.pass_context
def trajectory(ctx: click.Context) -> None:
    """Sample the worldline and write it with a summary."""

    def action() -> int:
        config = _run_config(ctx)
        traj = _trajectory(config)
        out = _output_dir(config)
        if 'csv' in config.run.formats:
            write_csv(out / 'trajectory.csv', TRAJECTORY_COLUMNS, trajectory_rows(traj))
        summary = trajectory_summary(traj)
        if 'json' in config.run.formats:
            write_json(out / 'trajectory_summary.json', {**summary, 'config': config.echo()})
        click.echo(
            f"✅ Trajectory: t_entry={summary['t_entry']:.10g}, t_exit={summary['t_exit']:.10g}, "
            f"zdot0={summary['zdot0']:.10g}, E={summary['E']:.10g}"
        )
        return 0

    _execute(action)


@cli.command()
@click.option('--no-fd', is_flag=True, help='Skip the finite-difference angular route')
@click.pass_context
def shift(ctx: click.Context, no_fd: bool) -> None:
    """Compute every position-shift route and compare them."""

    def action() -> int:
        config = _run_config(ctx)
        report = build_shift_report(_trajectory(config), include_fd=not no_fd)
        payload = {**report.to_dict(), 'config': config.echo()}
        if 'json' in config.run.formats:
            write_json(_output_dir(config) / 'shift_report.json', payload)
        for name, value in report.values().items():
            click.echo(f"   • {name}: {value:.12e}")
        status = "PASSED" if report.passed else "FAILED"
        click.echo(f"Max pairwise relative difference: {report.max_relative_difference():.3e} ({status})")
        return 0

    _execute(action)


@cli.command()
@click.option('--k-min', default=0.5, type=float, help='Smallest wave number')
@click.option('--k-max', default=10.0, type=float, help='Largest wave number')
@click.option('--k-count', default=10, type=int, help='Wave numbers on the grid')
@click.option('--cos-count', default=10, type=int, help='Direction cosines on the grid')
@click.pass_context
def amplitude(ctx: click.Context, k_min: float, k_max: float, k_count: int, cos_count: int) -> None:
    """Evaluate both amplitude forms on a (k, cos theta) grid."""

    def action() -> int:
        if not 0.0 < k_min <= k_max:
            raise ConfigError("need 0 < k-min <= k-max", key="k-min")
        config = _run_config(ctx)
        traj = _trajectory(config)
        window = WindowFunction.for_trajectory(traj)
        k_values = np.linspace(k_min, k_max, k_count)
        cos_values = np.linspace(-0.95, 0.95, cos_count)
        rows, worst = spectrum_rows(traj, k_values, cos_values, window)
        out = _output_dir(config)
        if 'csv' in config.run.formats:
            write_csv(out / 'spectrum.csv', SPECTRUM_COLUMNS, rows)
        if 'json' in config.run.formats:
            write_json(
                out / 'spectrum.json',
                {'points': len(rows), 'max_form_difference': worst, 'window': window.to_dict(), 'config': config.echo()},
            )
        click.echo(f"✅ Spectrum: {len(rows)} points, largest form difference {worst:.3e}")
        return 0

    _execute(action)


@cli.command()
@click.option('--no-fd', is_flag=True, help='Skip the finite-difference angular route')
@click.pass_context
def verify(ctx: click.Context, no_fd: bool) -> None:
    """Run the verification suite; exit 1 if any check fails."""

    def action() -> int:
        config = _run_config(ctx)
        results = run_verification(config, include_fd=not no_fd)
        write_json(_output_dir(config) / 'verification.json', results)
        for check in results['checks']:
            mark = "✅" if check['passed'] else "❌"
            click.echo(f"{mark} {check['name']}: {check['measured']:.3e} (tolerance {check['tolerance']:.1e})")
        for error in results['errors']:
            click.echo(f"⚠️ {error}")
        return 0 if results['valid'] else 1

    _execute(action)


def _sweep_row(parameter: str, value: float, report: Optional[Dict[str, Any]]) -> List[Any]:
    if report is None:
        return [parameter, value] + [None] * (len(SWEEP_COLUMNS) - 2)
    return [parameter, value] + [report.get(name) for name in SWEEP_COLUMNS[2:]]


@cli.command()
@click.option('--parameter', required=True, help='One of p, alpha_c, V0, Z1, Z2')
@click.option('--values', 'values_text', required=True, help='Comma-separated values')
@click.option('--no-fd', is_flag=True, help='Skip the finite-difference angular route')
@click.pass_context
def sweep(ctx: click.Context, parameter: str, values_text: str, no_fd: bool) -> None:
    """Shift report per parameter value, run as parallel jobs."""

    def action() -> int:
        config = _run_config(ctx)
        values = _parse_values(values_text)
        manager = JobManager(workers=config.run.workers)
        jobs = asyncio.run(manager.run_sweep(config, parameter, values, include_fd=not no_fd))
        out = _output_dir(config)
        if 'csv' in config.run.formats:
            write_csv(out / 'sweep.csv', SWEEP_COLUMNS, [_sweep_row(j.parameter, j.value, j.report) for j in jobs])
        if 'json' in config.run.formats:
            write_json(
                out / 'sweep.json',
                {
                    'parameter': parameter,
                    'values': values,
                    'reports': [j.report for j in jobs],
                    'errors': {j.job_id: j.error for j in jobs if j.error},
                    'config': config.echo(),
                },
            )
        failed = [j for j in jobs if j.status is JobStatus.FAILED]
        click.echo(f"✅ Sweep over {parameter}: {len(jobs) - len(failed)} of {len(jobs)} jobs completed")
        for job in failed:
            click.echo(f"❌ {parameter}={job.value:g}: {job.error}")
        return max((j.exit_code for j in failed), default=0)

    _execute(action)


def main() -> None:
    """Main entry point for the CLI."""
    cli()


if __name__ == '__main__':
    main()
