import click

from itoric.cli.helpers import input_option
from itoric.cli.jobs import submit


# --- cones -----------
@click.command("dual", help="dual cone of a ConeDocument")
@input_option
@click.pass_context
def dual(ctx, input_path):
    submit(ctx, "dual", input_path)


@click.command("lineality", help="lineality space of a cone, as a cone")
@input_option
@click.pass_context
def lineality(ctx, input_path):
    submit(ctx, "lineality", input_path)


@click.command("faces", help="face lattice of a cone, or the face exposed by one functional")
@input_option
@click.option(
    "--functional",
    "functional",
    type=str,
    metavar="'1,2/3,...'",
    default=None,
    help="comma separated functional in the dual cone",
)
@click.pass_context
def faces(ctx, input_path, functional):
    submit(ctx, "faces", input_path, functional=functional)


@click.command("separate", help="a functional separating two cones that meet in a common face")
@input_option
@click.pass_context
def separate(ctx, input_path):
    submit(ctx, "separate", input_path)


@click.command("hilbert-basis", help="hilbert basis of the lattice points of the dual cone")
@input_option
@click.option(
    "--functional",
    "functional",
    type=str,
    metavar="'1,0,...'",
    default=None,
    help="integer functional m; report how the face monoid is generated by the cone monoid and -m",
)
@click.pass_context
def hilbert_basis(ctx, input_path, functional):
    submit(ctx, "hilbert-basis", input_path, functional=functional)


@click.command("toric-binomials", help="lattice basis binomials of the toric ideal of a point configuration")
@input_option
@click.pass_context
def toric_binomials(ctx, input_path):
    submit(ctx, "toric-binomials", input_path)


# --- fans -----------
@click.command("normal-fan", help="normal fan of conv(A), cones labelled by faces")
@input_option
@click.pass_context
def normal_fan(ctx, input_path):
    submit(ctx, "normal-fan", input_path)


@click.command("check-fan", help="validate a collection of cones as a fan; exit 2 names the offending pair")
@input_option
@click.pass_context
def check_fan(ctx, input_path):
    submit(ctx, "check-fan", input_path)


@click.command("product-fan", help="product of two fans")
@input_option
@click.pass_context
def product_fan(ctx, input_path):
    submit(ctx, "product-fan", input_path)


@click.command("star", help="star of a cone in a fan, in the quotient by its span")
@input_option
@click.option(
    "--cone",
    "cone",
    type=int,
    default=0,
    show_default=True,
    help="index of the cone in the face-closed fan",
)
@click.pass_context
def star(ctx, input_path, cone):
    submit(ctx, "star", input_path, cone=cone)


@click.command("is-complete", help="whether the support of a fan is the whole space")
@input_option
@click.pass_context
def is_complete(ctx, input_path):
    submit(ctx, "is-complete", input_path)


geometry_commands = [
    dual,
    lineality,
    faces,
    separate,
    hilbert_basis,
    toric_binomials,
    normal_fan,
    check_fan,
    product_fan,
    star,
    is_complete,
]
