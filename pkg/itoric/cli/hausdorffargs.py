import click

from itoric.cli.helpers import input_option, parse_float_list
from itoric.cli.jobs import submit
from itoric.settings import HausdorffSettings, Sampler


@click.command("hausdorff-limit", help="distances from torus translates of Z_A to their limit complex")
@input_option
@click.option(
    "--density",
    "density",
    type=int,
    default=HausdorffSettings().density,
    show_default=True,
    help="sample points per cloud",
)
@click.option(
    "--sampler",
    "sampler",
    type=click.Choice(Sampler.choices(), case_sensitive=False),
    default=HausdorffSettings().sampler.value,
    show_default=True,
    help="pull moment map targets back, or push a torus grid forward",
)
@click.option(
    "--animate",
    "animate",
    type=str,
    metavar="'1,2,4,...'",
    default=None,
    help="s values to sample; writes one csv per value into --frames",
)
@click.option(
    "--frames",
    "frames",
    type=click.Path(file_okay=False),
    default="frames",
    show_default=True,
    help="directory for the --animate csv files",
)
@click.pass_context
def hausdorff_limit(ctx, input_path, density, sampler, animate, frames):
    submit(
        ctx, "hausdorff-limit", input_path,
        overrides={"density": density, "sampler": sampler},
        animate=parse_float_list(animate),
        frames=frames)


hausdorff_commands = [hausdorff_limit]
