"""
Run the verification checks for one q
"""

import sys

import click

from ..services.verification_service import VerificationService
from ..utils.export import verify_rows
from ..utils.progress_tracker import ProgressTracker
from .common import emit, format_option, handle_errors, max_q_option, output_option, q_option, rule, run_config, workers_option

_ICONS = {"pass": "✅", "fail": "❌", "not-applicable": "⏭️ ", "measured": "📏"}


@click.command("verify")
@q_option
@click.option(
    "--check", "--theorem", "checks", multiple=True,
    help="Run only checks whose id starts with this, or that verify this theorem id (repeatable), e.g. char3-orbit-count or 6.5",
)
@click.option("--quiet", is_flag=True, help="No progress lines on stderr")
@workers_option
@max_q_option
@format_option
@output_option
@handle_errors
def verify(q, checks, quiet, workers, max_q, output_format, output):
    """Compare every applicable prediction with the orbit engine"""
    config = run_config("verify", q, workers, max_q, output_format)
    service = VerificationService(config.q, workers=config.workers, max_q=config.max_q, only=checks)
    selected = service.selected_checks()
    if not selected:
        raise click.UsageError(f"no check matches {', '.join(checks)}")
    service.progress = ProgressTracker(f"verify q={q}", len(selected), enabled=not quiet)
    report = service.run()
    data = report.to_dict()

    def text(d):
        rule(f"🔍 VERIFY q={q}")
        for c in d["checks"]:
            click.echo(
                f"{_ICONS.get(c['verdict'], '?')} {c['check_id']:<24} {'[' + c['theorem_id'] + ']':<16} "
                f"{c['verdict']:<15} {c['seconds']:>8.2f}s"
            )
            if c["verdict"] in ("fail", "measured"):
                click.echo(f"     expected: {c['expected']}")
                click.echo(f"     measured: {c['measured']}")
            if c["detail"]:
                click.echo(f"     {c['detail']}")
        click.echo("-" * 60)
        click.echo("📊 " + ", ".join(f"{k}: {v}" for k, v in d["summary"].items()))

    emit(config, data, verify_rows(data), text, output)
    if not report.passed:
        sys.exit(1)
