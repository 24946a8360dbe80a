# toralaut/main.py

import logging
from typing import Annotated, Optional

import typer
from rich.console import Console
from rich.logging import RichHandler

from . import constants
from .cli import assembly, inspection, symmetry
from .config.settings import settings

# Initialize the Typer application
app = typer.Typer(
    name="toral-aut",
    help="Automorphisms of toral varieties given by Laurent polynomial equations.",
    no_args_is_help=True,
    add_completion=False,
)


def configure_logging(level: str) -> None:
    """Send log records to stderr through rich; stdout carries only reports."""
    logging.basicConfig(
        level=level.upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True)],
        force=True,
    )


@app.callback()
def main(
    log_level: Annotated[
        Optional[str],
        typer.Option("--log-level", help="DEBUG, INFO, WARNING or ERROR (default from TORALAUT_LOG_LEVEL)."),
    ] = None,
):
    configure_logging(log_level or settings.log_level)


# --- Register commands ---
app.command("parse", help=constants.COMMAND_HELP["parse"])(inspection.parse_command)
app.command("hx", help=constants.COMMAND_HELP["hx"])(inspection.hx_command)
app.command("split", help=constants.COMMAND_HELP["split"])(inspection.split_command)
app.command("gaff", help=constants.COMMAND_HELP["gaff"])(symmetry.gaff_command)
app.command("lift", help=constants.COMMAND_HELP["lift"])(symmetry.lift_command)
app.command("verify", help=constants.COMMAND_HELP["verify"])(symmetry.verify_command)
app.command("aut", help=constants.COMMAND_HELP["aut"])(assembly.aut_command)
# --- End register commands ---


def run() -> None:
    app()


if __name__ == "__main__":
    run()
