"""
Step progress for long runs.

Progress goes to stderr so stdout keeps only the requested report.
"""

import time
from typing import Optional

import click


class ProgressTracker:
    """
    Step counter with elapsed time

    Args:
        title: name of the run being tracked
        total_steps: number of steps expected
        enabled: write nothing when False
    """

    def __init__(self, title: str, total_steps: int, enabled: bool = True):
        self.title = title
        self.total_steps = total_steps
        self.enabled = enabled
        self.current_step = 0
        self.start_time = time.time()

    def update(self, message: Optional[str] = None):
        self.current_step += 1
        elapsed = round(time.time() - self.start_time, 1)
        if self.enabled:
            label = message or "Processing..."
            click.echo(f"🔄 [{self.current_step}/{self.total_steps}] {label} ({elapsed}s)", err=True)

    def complete(self):
        elapsed = round(time.time() - self.start_time, 1)
        if self.enabled:
            click.echo(f"✅ {self.title} completed in {elapsed}s", err=True)
        return elapsed
