"""
Orbit censuses: EnG lines, all lines, and comparison with the predicted table
"""

import click

from ..core.context import get_context
from ..core.orbits import partition_EnG, partition_lines
from ..services import families
from ..utils.export import census_rows
from .common import emit, format_option, handle_errors, max_q_option, output_option, q_option, rule, run_config, workers_option


def _print_lengths(lengths):
    for length, mult in lengths.items():
        click.echo(f"  {mult:>4} orbit(s) of length {length}")


@click.command("census")
@q_option
@click.option("--all-lines", is_flag=True, help="Partition every line, not only EnG lines")
@workers_option
@max_q_option
@format_option
@output_option
@handle_errors
def census(q, all_lines, workers, max_q, output_format, output):
    """Partition the EnG lines (or all lines) into G_q-orbits"""
    config = run_config("census", q, workers, max_q, output_format)
    partition = partition_lines if all_lines else partition_EnG
    result = partition(config.q, config.workers, config.max_q)
    data = result.to_dict()

    def text(d):
        rule(f"📊 {d['class']} ORBIT CENSUS, q={q}")
        _print_lengths({o["length"]: o["multiplicity"] for o in d["orbits"]})
        click.echo(f"  {d['orbit_count']} orbits covering {d['total_lines']} lines")

    emit(config, data, census_rows(data), text, output)


@click.command("explore")
@q_option
@workers_option
@max_q_option
@format_option
@output_option
@handle_errors
def explore(q, workers, max_q, output_format, output):
    """Run the EnG census for q and compare it with the predicted table"""
    config = run_config("explore", q, workers, max_q, output_format)
    result = partition_EnG(config.q, config.workers, config.max_q)
    predicted = families.predicted_census(q)
    measured = result.lengths
    data = {
        "q": q,
        "measured": {str(k): v for k, v in measured.items()},
        "predicted": {str(k): v for k, v in predicted.items()},
        "orbit_count": result.orbit_count,
        "predicted_orbit_count": families.predicted_orbit_count(q),
        "matches": measured == predicted,
        "residues": get_context(config.q).field.residue_facts().to_dict(),
    }
    rows = [(q, "measured", k, v) for k, v in measured.items()]
    rows += [(q, "predicted", k, v) for k, v in predicted.items()]

    def text(d):
        rule(f"🔍 EXPLORE q={q}")
        click.echo("Measured:")
        _print_lengths(measured)
        click.echo("Predicted:")
        _print_lengths(predicted)
        if d["matches"]:
            click.echo(f"✅ census matches the predicted row ({d['orbit_count']} orbits)")
        else:
            click.secho("⚠️  census differs from the predicted row", fg="yellow")

    emit(config, data, rows, text, output)
