"""Subcommands of the frenet4 command line."""

import functools
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Optional, Tuple

import click

from frenet4.cli.output import rows_to_csv, schemas_json, to_json, write_output
from frenet4.config import config
from frenet4.exceptions import Frenet4Error, SpecError
from frenet4.models.curve import Curve, ExprCurve, Tolerances, load_curve_spec
from frenet4.models.reports import GridSpec, ItemVerdict
from frenet4.services.classify import classify_service
from frenet4.services.derived_curves import default_c, default_lambda, derived_curves_service
from frenet4.services.frenet import frenet_service
from frenet4.services.theorems import theorem_service

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GEOMETRY = 2
EXIT_VERIFY_FAIL = 3
EXIT_INCONCLUSIVE = 4

_CATEGORY_EXIT = {"usage": EXIT_USAGE, "geometry": EXIT_GEOMETRY}


def _error_json_requested() -> bool:
    ctx = click.get_current_context(silent=True)
    if ctx is None:
        return False
    return bool((ctx.find_root().obj or {}).get("error_json"))


def cli_error_handler(fn: Callable) -> Callable:
    """Map frenet4 errors to exit codes, optionally printing them as JSON on stderr."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except Frenet4Error as e:
            logger.debug(f"{type(e).__name__} in {fn.__name__}", exc_info=True)
            if _error_json_requested():
                click.echo(json.dumps(e.to_dict(), sort_keys=True, default=str), err=True)
            else:
                click.echo(f"Error: {e}", err=True)
            sys.exit(_CATEGORY_EXIT.get(e.category, EXIT_USAGE))
        except Exception as e:
            logger.exception(f"Unexpected error: {e}")
            if _error_json_requested():
                payload = {"error": type(e).__name__, "message": str(e), "details": {}}
                click.echo(json.dumps(payload, sort_keys=True), err=True)
            sys.exit(EXIT_USAGE)

    return wrapper


def load_curve(spec_path: str, samples: Optional[int]) -> Tuple[Curve, GridSpec, Tolerances]:
    """Curve, grid and tolerances of a spec file; ``samples`` overrides the file's count."""
    spec = load_curve_spec(spec_path)
    if samples is not None and samples < config.min_samples:
        raise SpecError(
            f"--samples must be at least {config.min_samples}, got {samples}", samples=samples
        )
    curve = ExprCurve.from_spec(spec, name=Path(spec_path).stem)
    grid = GridSpec(
        t_min=curve.t_min,
        t_max=curve.t_max,
        samples=samples if samples is not None else spec.samples,
    )
    return curve, grid, spec.tolerances


spec_argument = click.argument("spec_path", type=click.Path(dir_okay=False))
samples_option = click.option(
    "--samples", type=int, default=None, help="Grid size; overrides the spec file."
)
out_option = click.option(
    "--out",
    "out",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Write the output to this file instead of stdout.",
)
format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["csv", "json"]),
    default="csv",
    show_default=True,
    help="Output format.",
)
lambda_option = click.option(
    "--lambda", "lam", type=float, default=None, help="Bertrand offset (default 0.1/kappa)."
)
c_option = click.option(
    "--c",
    "c",
    type=float,
    default=None,
    help="Involute constant (default a quarter of the arclength past the end).",
)


@click.command()
@spec_argument
@samples_option
@format_option
@out_option
@cli_error_handler
def analyze(spec_path: str, samples: Optional[int], fmt: str, out: Optional[str]):
    """
    Frenet apparatus of a curve on a uniform grid.

    One row per sample: t, s, the frame T, N, B, E, the curvatures kappa, tau,
    sigma and the harmonic curvatures H1, H2 (empty where sigma vanishes).

    Examples:

        frenet4 analyze specs/w_curve.json

        frenet4 analyze specs/w_curve.json --format json --out w_curve.json
    """
    curve, grid, tol = load_curve(spec_path, samples)
    logger.info(f"analyze {spec_path}")
    report = frenet_service.analyze(curve, grid, tol)
    write_output(rows_to_csv(report.rows) if fmt == "csv" else to_json(report), out)


@click.command()
@spec_argument
@samples_option
@out_option
@cli_error_handler
def classify(spec_path: str, samples: Optional[int], out: Optional[str]):
    """
    Classify a curve: helix, ccr, generalized helix, slant helix, spherical.

    Every predicate answers true, false or inconclusive.
    """
    curve, grid, tol = load_curve(spec_path, samples)
    logger.info(f"classify {spec_path}")
    sampled = frenet_service.sample(curve, grid.samples, tol)
    report = classify_service.classify(sampled, grid, tol)
    write_output(to_json(report), out)


@click.command()
@spec_argument
@lambda_option
@samples_option
@format_option
@out_option
@cli_error_handler
def bertrand(
    spec_path: str, lam: Optional[float], samples: Optional[int], fmt: str, out: Optional[str]
):
    """
    Bertrand mate xi = delta + lambda N of a helix.

    CSV output lists the mate's samples; JSON adds the closed-form coefficients
    and the closed form versus constructed-curve discrepancies.
    """
    curve, grid, tol = load_curve(spec_path, samples)
    delta_samples = frenet_service.sample(curve, grid.samples, tol, with_jets=False)
    if lam is None:
        lam = default_lambda(delta_samples[0].apparatus.kappa)
    logger.info(f"bertrand {spec_path} lambda={lam!r}")
    analysis = derived_curves_service.analyze_bertrand(
        curve, lam, grid.samples, tol, delta_samples=delta_samples
    )
    report = analysis.report
    write_output(rows_to_csv(report.rows) if fmt == "csv" else to_json(report), out)


@click.command()
@spec_argument
@c_option
@samples_option
@format_option
@out_option
@cli_error_handler
def involute(
    spec_path: str, c: Optional[float], samples: Optional[int], fmt: str, out: Optional[str]
):
    """
    Involute xi = delta + (c - s) T of a helix.

    The s column of the involute rows is its arclength from the cusp s = c.
    """
    curve, grid, tol = load_curve(spec_path, samples)
    delta_samples = frenet_service.sample(curve, grid.samples, tol, with_jets=False)
    if c is None:
        c = default_c(delta_samples[-1].s)
    logger.info(f"involute {spec_path} c={c!r}")
    analysis = derived_curves_service.analyze_involute(
        curve, c, grid.samples, tol, delta_samples=delta_samples
    )
    report = analysis.report
    write_output(rows_to_csv(report.rows) if fmt == "csv" else to_json(report), out)


@click.command()
@spec_argument
@lambda_option
@c_option
@samples_option
@out_option
@cli_error_handler
def verify(
    spec_path: str,
    lam: Optional[float],
    c: Optional[float],
    samples: Optional[int],
    out: Optional[str],
):
    """
    Run the helix, Bertrand mate and involute checks against a helix.

    Exits 0 when every item passes, 3 when one fails and 4 when none fails
    but at least one is inconclusive.
    """
    curve, grid, tol = load_curve(spec_path, samples)
    logger.info(f"verify {spec_path}")
    report = theorem_service.verify(curve, grid.samples, tol, lam=lam, c=c)
    write_output(to_json(report), out)
    if report.verdict == ItemVerdict.FAIL:
        sys.exit(EXIT_VERIFY_FAIL)
    if report.verdict == ItemVerdict.INCONCLUSIVE:
        sys.exit(EXIT_INCONCLUSIVE)


@click.command()
@out_option
def schema(out: Optional[str]):
    """Print the JSON schemas of the curve-spec file and of every report."""
    write_output(schemas_json(), out)
