"""
Classify every line of PG(3,q)
"""

import click

from ..config import get_settings
from ..core.context import get_context
from ..core.cubic import LineTag, eng_class_size
from ..core.pg3 import line_count
from ..utils.export import class_rows
from .common import emit, format_option, handle_errors, max_q_option, output_option, q_option, rule, run_config, workers_option


@click.command("classify")
@q_option
@workers_option
@max_q_option
@format_option
@output_option
@handle_errors
def classify(q, workers, max_q, output_format, output):
    """Count the lines of PG(3,q) in each class"""
    config = run_config("classify", q, workers, max_q, output_format)
    config.check_guardrail(get_settings().census_max_q, "census")
    ctx = get_context(config.q)
    census = ctx.cubic.class_census(workers=config.workers)
    data = {
        "q": q,
        "total_lines": census.total,
        "expected_total": line_count(q),
        "eng_expected": eng_class_size(q),
        "counts": census.counts,
    }

    def text(d):
        rule(f"📊 LINE CLASSES IN PG(3,{q})")
        for tag, count in d["counts"].items():
            click.echo(f"  {tag:<20} {count:>10}")
        click.echo("-" * 60)
        click.echo(f"  {'total':<20} {d['total_lines']:>10}")
        eng = d["counts"][LineTag.ENG.value]
        if eng == d["eng_expected"]:
            click.echo(f"✅ EnG = {eng} = (q^2-q)(q^2-1)")
        else:
            click.secho(f"❌ EnG = {eng}, expected {d['eng_expected']}", fg="red")

    emit(config, data, class_rows(q, census.counts), text, output)
