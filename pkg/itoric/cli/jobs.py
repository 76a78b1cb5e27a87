"""
one cli invocation as a validated job: parse the input document, run the
command under the job's numeric settings and map failures to exit codes
"""
import logging
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple, Type

import click
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from itoric.cli.helpers import emit, fail, format_errors, format_failure, read_input
from itoric.errors import ItoricError
from itoric.io.documents import Document
from itoric.numeric.scalar import use_numeric
from itoric.settings import JobSettings

logger = logging.getLogger(name=__name__)

EXIT_OK = 0
EXIT_SCHEMA = 1

Handler = Callable[[Any, "Job"], BaseModel]
HANDLERS: Dict[str, Tuple[Type[Document], Handler]] = {}


def handler(name: str, document_cls: Type[Document]):
    """register ``fn(document, job) -> result model`` as the command ``name``"""
    def register(fn: Handler) -> Handler:
        HANDLERS[name] = (document_cls, fn)
        return fn
    return register


class Job(BaseModel):
    model_config = ConfigDict(extra='forbid')
    command: str
    document: str
    settings: JobSettings = Field(default_factory=JobSettings)
    options: Dict[str, Any] = Field(default_factory=dict)
    out: Optional[str] = None

    @field_validator('command')
    def validate_command(cls, v: str) -> str:
        _load_handlers()
        if v not in HANDLERS:
            raise ValueError(f'unknown command {v!r}')
        return v

    def option(self, name: str, default=None):
        return self.options.get(name, default)


@dataclass(frozen=True)
class JobOutcome:
    exit_code: int
    text: Optional[str] = None
    message: Optional[str] = None


def _load_handlers():
    # the handlers register themselves on import
    from itoric.cli import handlers  # noqa: F401


def _verdict_code(result: BaseModel) -> int:
    # verdict models report a failed check with the precondition status
    if getattr(result, 'is_valid', True) is False:
        return ItoricError.exit_code
    return EXIT_OK


def run(job: Job) -> JobOutcome:
    """deterministic given the document and the options"""
    _load_handlers()
    document_cls, fn = HANDLERS[job.command]
    try:
        document = document_cls.model_from_text(job.document)
    except ValidationError as e:
        return JobOutcome(EXIT_SCHEMA, message=format_errors(e))
    s = job.settings
    logger.info(f'running {job.command} in {s.mode.value} mode')
    with use_numeric(s.mode, s.tolerance, s.lp_margin):
        try:
            result = fn(document, job)
        except ItoricError as e:
            logger.debug(f'{job.command} failed: {e.message}')
            return JobOutcome(e.exit_code, message=format_failure(e))
        except ValidationError as e:
            return JobOutcome(EXIT_SCHEMA, message=format_errors(e))
    return JobOutcome(_verdict_code(result), text=result.model_dump_text())


def submit(ctx: click.Context, command: str, input_path: str, overrides: Optional[Dict[str, Any]] = None, **options):
    """build the job from the group and command flags, run it and exit with its status"""
    try:
        settings = JobSettings(**{**ctx.obj.get('settings', {}), **(overrides or {})})
        job = Job(
            command=command,
            document=read_input(input_path) if input_path else '{}',
            settings=settings,
            options={k: v for k, v in options.items() if v is not None},
            out=ctx.obj.get('out'))
    except ValidationError as e:
        fail(format_errors(e), EXIT_SCHEMA)
    outcome = run(job)
    if outcome.text is not None:
        emit(outcome.text, job.out)
    if outcome.message:
        click.secho(outcome.message, fg='red', err=True)
    if outcome.exit_code != EXIT_OK:
        sys.exit(outcome.exit_code)
