"""
Command-line interface for frenet4.

Usage:
    frenet4 analyze spec.json            # Frenet apparatus table (CSV)
    frenet4 classify spec.json           # Classification report (JSON)
    frenet4 bertrand spec.json --lambda 0.1
    frenet4 involute spec.json --c 20
    frenet4 verify spec.json             # Helix, mate and involute checks
    frenet4 schema                       # JSON schemas of inputs and reports
"""

import sys

import click

from frenet4 import __version__
from frenet4.cli.commands import analyze, bertrand, classify, involute, schema, verify
from frenet4.cli.output import schemas_json, write_output
from frenet4.config import config
from frenet4.utils.logging import configure_logging

__all__ = [
    "cli",
]


@click.group(invoke_without_command=True)
@click.version_option(version=__version__, prog_name="frenet4")
@click.option("--error-json", is_flag=True, help="Print errors as JSON on stderr.")
@click.option("--schema", "show_schema", is_flag=True, help="Print the JSON schemas and exit.")
@click.pass_context
def cli(ctx: click.Context, error_json: bool, show_schema: bool):
    """
    Frenet-Serret apparatus and special curves in Euclidean 4-space.

    A curve is given as a JSON spec file with four component expressions in t,
    named parameters and a domain.

    Examples:

        frenet4 analyze specs/w_curve.json --samples 64

        frenet4 --error-json classify specs/w_curve.json

        frenet4 verify specs/w_curve.json --lambda 0.2
    """
    configure_logging()
    problems = config.validate_config()
    if problems:
        click.echo(f"Error: invalid configuration: {', '.join(problems)}", err=True)
        sys.exit(1)

    ctx.ensure_object(dict)
    ctx.obj["error_json"] = error_json

    if show_schema:
        write_output(schemas_json())
        ctx.exit(0)
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


cli.add_command(analyze)
cli.add_command(classify)
cli.add_command(bertrand)
cli.add_command(involute)
cli.add_command(verify)
cli.add_command(schema)
