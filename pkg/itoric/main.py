import click

from itoric.cli.galleryargs import gallery_commands
from itoric.cli.geometryargs import geometry_commands
from itoric.cli.hausdorffargs import hausdorff_commands
from itoric.cli.logger import LoggerSetup
from itoric.cli.secondaryargs import secondary_commands
from itoric.cli.toricargs import toric_commands
from itoric.settings import ItoricSettings, LogLevel, NumericSettings, ScalarMode

LOG_LEVELS = [lvl.value.lower() for lvl in LogLevel]


@click.group(
    context_settings={
        "help_option_names": ["-h", "--help"],
        "max_content_width": 120,
        "terminal_width": 120,
    }
)
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default=ItoricSettings().log_level.value.lower(),
    show_default=True,
    help="logging level, e.g. DEBUG, info, WaRnInG, etc.",
)
@click.option(
    "--mode",
    "mode",
    type=click.Choice(ScalarMode.choices(), case_sensitive=False),
    default=NumericSettings().mode.value,
    show_default=True,
    help="exact rational arithmetic or floating point with a tolerance",
)
@click.option(
    "--tolerance",
    "tolerance",
    type=float,
    default=NumericSettings().tolerance,
    show_default=True,
    help="zero test for float mode and for solver residuals",
)
@click.option(
    "--lp-margin",
    "lp_margin",
    type=float,
    default=NumericSettings().lp_margin,
    show_default=True,
    help="margin used by strict feasibility programs",
)
@click.option(
    "--out",
    "out",
    type=click.Path(dir_okay=False),
    default=None,
    help="write the json result here instead of stdout",
)
@click.version_option(version=ItoricSettings().version, prog_name="itoric")
@click.pass_context
def cli(ctx, log_level, mode, tolerance, lp_margin, out):
    """
    itoric: cones, fans, irrational toric varieties and their hausdorff limits
    """
    level_enum = LogLevel[log_level.upper()]
    LoggerSetup(level_enum).setup_logging()

    ctx.ensure_object(dict)
    ctx.obj["log_level"] = level_enum
    ctx.obj["settings"] = {"mode": mode, "tolerance": tolerance, "lp_margin": lp_margin}
    ctx.obj["out"] = out


def register_commands(group: click.Group):
    for command in (
            geometry_commands
            + toric_commands
            + secondary_commands
            + hausdorff_commands
            + gallery_commands):
        group.add_command(command)


def main():
    register_commands(cli)
    cli()


if __name__ == "__main__":
    main()
