import logging

import click

from .. import __version__
from . import census, classify, orbit, verify


@click.group(help="Orbits of lines under the stabilizer of the twisted cubic in PG(3,q)")
@click.version_option(__version__, prog_name="cubic-orbits")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging on stderr")
def cli(verbose):
    """Classification, orbit, census and verification commands."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


cli.add_command(classify.classify)
cli.add_command(orbit.orbit)
cli.add_command(census.census)
cli.add_command(census.explore)
cli.add_command(verify.verify)

if __name__ == "__main__":
    cli()
