import sys
from pathlib import Path
from typing import List, Optional

import click
from pydantic import ValidationError

from itoric.errors import ItoricError


def format_errors(exc: ValidationError) -> str:
    lines = []
    for err in exc.errors():
        loc = ".".join(str(x) for x in err["loc"])
        lines.append(f"{loc}: {err['msg']}")
    return "Schema error:\n  " + "\n  ".join(lines)


def format_failure(exc: ItoricError) -> str:
    return f"{type(exc).__name__}: {exc.message}"


def read_input(path: str) -> str:
    """the input document; '-' reads stdin"""
    if path == "-":
        return click.get_text_stream("stdin").read()
    return Path(path).read_text()


def emit(text: str, out: Optional[str]):
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text + "\n")
    else:
        click.echo(text)


def fail(message: str, code: int):
    click.secho(message, fg="red", err=True)
    sys.exit(code)


def input_option(fn):
    """--in PATH, the json document of a command; '-' reads stdin"""
    return click.option(
        "--in",
        "input_path",
        type=click.Path(exists=True, dir_okay=False, allow_dash=True),
        default="-",
        show_default=True,
        help="input json document, '-' for stdin",
    )(fn)


def parse_float_list(text: Optional[str]) -> Optional[List[float]]:
    """'1,2,4' -> [1.0, 2.0, 4.0]; a malformed list is a schema error"""
    if text is None:
        return None
    try:
        values = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        fail(f"Schema error:\n  not a list of numbers: {text!r}", 1)
    if not values:
        fail("Schema error:\n  empty list of numbers", 1)
    return values
