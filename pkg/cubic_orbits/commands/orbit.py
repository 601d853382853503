"""
Orbit and stabilizer of a single line
"""

import click

from ..config import get_settings
from ..core import pg3
from ..core.context import get_context
from ..exceptions import BadLineSpec
from ..services import families
from ..utils.export import orbit_rows
from .common import emit, format_option, handle_errors, max_q_option, output_option, parse_mu, parse_seed_line, q_option, rule, run_config


@click.command("orbit")
@q_option
@click.option("--points", nargs=2, type=str, default=None, help="Two points, e.g. 1,0,0,1 0,0,1,0")
@click.option("--line", type=str, default=None, help="Plücker coordinates p01,p02,p03,p12,p31,p23")
@click.option("--mu", type=str, default=None, help="The line l_mu; an element code or -1/3, 1/9")
@click.option("--lambda-line", "lambda_line", is_flag=True, help="The line through (1,0,0,1) and (0,0,1,0)")
@max_q_option
@format_option
@output_option
@handle_errors
def orbit(q, points, line, mu, lambda_line, max_q, output_format, output):
    """Compute the G_q-orbit and stabilizer of one line"""
    given = sum(bool(x) for x in (points, line is not None, mu is not None, lambda_line))
    if given != 1:
        raise BadLineSpec("give exactly one of --points, --line, --mu, --lambda-line")
    line_spec = " ".join(points) if points else line or (f"mu={mu}" if mu is not None else "lambda")
    config = run_config("orbit", q, max_q=max_q, output_format=output_format, line_spec=line_spec)
    config.check_guardrail(get_settings().orbit_max_q, "orbit")
    ctx = get_context(config.q)

    if mu is not None:
        L = families.mu_line(q, parse_mu(ctx.field, mu), check=False)
    elif lambda_line:
        L = families.lambda_line(q)
    else:
        L = parse_seed_line(ctx.field, points, line)

    result = ctx.engine.orbit_of_line(L)
    group_id = ctx.group.identify_group(result.stabilizer)
    data = {
        "q": q,
        "line": list(L),
        "class": result.line_class,
        "size": result.size,
        "stabilizer_order": result.stabilizer_order,
        "group_id": str(group_id),
        "representative": result.representative,
        "representative_line": list(pg3.decode(q, result.representative)),
        "stabilizer": [list(r) for r in result.stabilizer],
    }

    def text(d):
        rule(f"🔍 ORBIT OF {tuple(d['line'])} OVER GF({q})")
        click.echo(f"  class:          {d['class']}")
        click.echo(f"  orbit size:     {d['size']}")
        click.echo(f"  stabilizer:     {d['stabilizer_order']} ({d['group_id']})")
        click.echo(f"  representative: {d['representative']} {tuple(d['representative_line'])}")
        click.echo(f"✅ {d['size']} x {d['stabilizer_order']} = {q**3 - q}")

    emit(config, data, orbit_rows(data), text, output)
