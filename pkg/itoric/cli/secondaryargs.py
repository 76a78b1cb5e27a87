import click

from itoric.cli.helpers import input_option
from itoric.cli.jobs import submit
from itoric.settings import SecondarySettings

max_points_option = click.option(
    "--max-points",
    "max_points",
    type=int,
    default=SecondarySettings().max_points,
    show_default=True,
    help="refuse configurations with more points; triangulations are enumerated exhaustively",
)


@click.command("regular-subdivision", help="subdivision induced by a lifting")
@input_option
@click.pass_context
def regular_subdivision(ctx, input_path):
    submit(ctx, "regular-subdivision", input_path)


@click.command("is-regular", help="a lifting inducing the subdivision, or is_regular false")
@input_option
@click.pass_context
def is_regular(ctx, input_path):
    submit(ctx, "is-regular", input_path)


@click.command("triangulations", help="every triangulation of a point configuration")
@input_option
@max_points_option
@click.pass_context
def triangulations(ctx, input_path, max_points):
    submit(ctx, "triangulations", input_path, overrides={"max_points": max_points})


@click.command("secondary-polytope", help="characteristic vectors of all triangulations and their hull")
@input_option
@max_points_option
@click.option(
    "--csv",
    "csv_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="write the vertices as csv",
)
@click.option(
    "--svg",
    "svg_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="draw the vertices, projected to the plane",
)
@click.pass_context
def secondary_polytope(ctx, input_path, max_points, csv_path, svg_path):
    submit(
        ctx, "secondary-polytope", input_path,
        overrides={"max_points": max_points}, csv=csv_path, svg=svg_path)


@click.command("secondary-fan", help="fan of secondary cones, the normal fan of the secondary polytope")
@input_option
@max_points_option
@click.pass_context
def secondary_fan(ctx, input_path, max_points):
    submit(ctx, "secondary-fan", input_path, overrides={"max_points": max_points})


secondary_commands = [regular_subdivision, is_regular, triangulations, secondary_polytope, secondary_fan]
