"""
Shared option parsing and output for the commands.
"""

import functools
import logging
import re
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import click

from ..config import get_settings
from ..core import pg3
from ..core.gfq import FieldCtx
from ..exceptions import BadLineSpec, CubicOrbitsError
from ..models.reports import OUTPUT_FORMATS, RunConfig
from ..utils.export import render_csv, render_json, save_report

logger = logging.getLogger(__name__)

_FRACTION = re.compile(r"^\s*(-?\d+)\s*/\s*(-?\d+)\s*$")


def handle_errors(func: Callable) -> Callable:
    """Turn package errors into a red message and their exit code"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except CubicOrbitsError as e:
            click.secho(f"❌ {e}", fg="red", err=True)
            sys.exit(e.exit_code)

    return wrapper


def q_option(func):
    return click.option("--q", "q", type=int, required=True, help="Field order (prime power >= 4)")(func)


def format_option(func):
    return click.option(
        "--format", "output_format", type=click.Choice(OUTPUT_FORMATS), default="text", show_default=True,
        help="Report format",
    )(func)


def workers_option(func):
    return click.option(
        "--workers", type=click.IntRange(min=1), default=None,
        help="Worker processes (default: CUBIC_ORBITS_WORKERS or CPU count)",
    )(func)


def max_q_option(func):
    return click.option("--max-q", type=int, default=None, help="Raise the runtime guardrail")(func)


def output_option(func):
    return click.option("--output", "-o", type=click.Path(dir_okay=False), help="Also save the JSON report here")(func)


def resolve_workers(workers: Optional[int]) -> int:
    return workers if workers is not None else get_settings().workers


def run_config(
    command: str,
    q: int,
    workers: Optional[int] = None,
    max_q: Optional[int] = None,
    output_format: str = "text",
    line_spec: Optional[str] = None,
) -> RunConfig:
    """Validated settings of one invocation; environment defaults filled in"""
    config = RunConfig(
        q=q,
        command=command,
        workers=resolve_workers(workers),
        max_q=max_q,
        output_format=output_format,
        line_spec=line_spec,
    )
    logger.debug("%s q=%d workers=%d line=%s", config.command, config.q, config.workers, config.line_spec or "-")
    return config


def parse_vector(field: FieldCtx, text: str, length: int) -> Tuple[int, ...]:
    """Comma-separated element codes"""
    try:
        values = tuple(int(v) for v in text.replace(" ", "").split(","))
    except ValueError:
        raise BadLineSpec(f"'{text}' is not a list of integers")
    if len(values) != length:
        raise BadLineSpec(f"'{text}' needs {length} coordinates, got {len(values)}")
    if any(not 0 <= v < field.q for v in values):
        raise BadLineSpec(f"'{text}' has entries outside GF({field.q})")
    if not any(values):
        raise BadLineSpec(f"'{text}' is the zero vector")
    return values


def parse_mu(field: FieldCtx, token: str) -> int:
    """An element code, or a fraction such as -1/3 or 1/9 evaluated in the field"""
    match = _FRACTION.match(token)
    if match:
        num, den = int(match.group(1)), int(match.group(2))
        if den % field.p == 0:
            raise BadLineSpec(f"{token} is undefined in GF({field.q})")
        return field.from_fraction(num, den)
    try:
        value = int(token)
    except ValueError:
        raise BadLineSpec(f"cannot read mu from '{token}'")
    if not 0 <= value < field.q:
        raise BadLineSpec(f"mu={value} is not an element code of GF({field.q})")
    return value


def parse_seed_line(field: FieldCtx, points: Optional[Sequence[str]], line: Optional[str]) -> pg3.PlueckerLine:
    if points:
        P = pg3.normalize(field, parse_vector(field, points[0], 4))
        Q = pg3.normalize(field, parse_vector(field, points[1], 4))
        return pg3.line_through(field, P, Q)
    L = parse_vector(field, line, 6)
    if not pg3.is_on_quadric(field, L):
        raise BadLineSpec(f"{line} violates the Plücker quadric")
    return pg3.normalize(field, L)


def emit(
    config: RunConfig,
    data: Dict[str, Any],
    rows: List[tuple],
    text: Callable[[Dict[str, Any]], None],
    output: Optional[str] = None,
):
    output_format = config.output_format
    if output_format == "json":
        click.echo(render_json(data))
    elif output_format == "csv":
        click.echo(render_csv(rows), nl=False)
    else:
        text(data)
    if output:
        path = save_report(output, data)
        click.echo(f"💾 Report saved to {path}", err=True)


def rule(title: str):
    click.echo("=" * 60)
    click.echo(title)
    click.echo("=" * 60)
