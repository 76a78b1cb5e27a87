import click

from itoric.cli.helpers import input_option
from itoric.cli.jobs import submit
from itoric.settings import BirchSettings, RecoverySettings


# --- birch-solve subcommand -----------
@click.command("birch-solve", help="the point of X_A with a given moment, by entropy maximization")
@input_option
@click.option(
    "--max-iterations",
    "max_iterations",
    type=int,
    default=BirchSettings().max_iterations,
    show_default=True,
    help="newton iterations before giving up with exit 3",
)
@click.option(
    "--residual-tolerance",
    "residual_tolerance",
    type=float,
    default=BirchSettings().residual_tolerance,
    show_default=True,
    help="stop once the moment residual is below this, relative to the target",
)
@click.pass_context
def birch_solve(ctx, input_path, max_iterations, residual_tolerance):
    submit(
        ctx, "birch-solve", input_path,
        overrides={"max_iterations": max_iterations, "residual_tolerance": residual_tolerance})


@click.command("moment-map", help="algebraic moment map of a point in the simplex on A")
@input_option
@click.pass_context
def moment_map(ctx, input_path):
    submit(ctx, "moment-map", input_path)


@click.command("limit-ops", help="one-parameter limits of the dense point along each direction")
@input_option
@click.pass_context
def limit_ops(ctx, input_path):
    submit(ctx, "limit-ops", input_path)


@click.command("recover-fan", help="rebuild a fan from the orbits its one-parameter limits land in")
@input_option
@click.option(
    "--samples",
    "samples",
    type=int,
    default=RecoverySettings().samples,
    show_default=True,
    help="number of sampled directions",
)
@click.pass_context
def recover_fan(ctx, input_path, samples):
    submit(ctx, "recover-fan", input_path, overrides={"samples": samples})


toric_commands = [birch_solve, moment_map, limit_ops, recover_fan]
