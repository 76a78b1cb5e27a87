import click

from itoric.cli.jobs import submit


@click.command("paper-gallery", help="recompute the worked examples and diff them against the goldens")
@click.option(
    "--in",
    "input_path",
    type=click.Path(exists=True, dir_okay=False, allow_dash=True),
    default=None,
    help="GalleryDocument naming the items to run; all items without it",
)
@click.option(
    "--regenerate",
    "regenerate",
    type=click.Path(dir_okay=False),
    default=None,
    help="write fresh goldens to this path instead of comparing",
)
@click.pass_context
def paper_gallery(ctx, input_path, regenerate):
    submit(ctx, "paper-gallery", input_path, regenerate=regenerate)


gallery_commands = [paper_gallery]
