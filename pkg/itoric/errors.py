from typing import Optional, Tuple


class ItoricError(Exception):
    """base for everything the cli maps to an exit status"""
    exit_code: int = 2

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class PreconditionError(ItoricError, ValueError):
    """a mathematical precondition of an operation does not hold"""
    exit_code = 2


class ModeMismatchError(PreconditionError):
    pass


class DimensionMismatchError(PreconditionError):
    pass


class NotInDualError(PreconditionError):
    pass


class NotAFaceError(PreconditionError):
    pass


class FanValidationError(PreconditionError):
    def __init__(self, message: str, pair: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.pair = pair


class FanMapError(PreconditionError):
    def __init__(self, message: str, source_cone: Optional[int] = None):
        super().__init__(message)
        self.source_cone = source_cone


class NoLimitError(PreconditionError):
    pass


class NotInConeError(PreconditionError):
    pass


class NotRegularError(PreconditionError):
    pass


class SizeBoundError(PreconditionError):
    pass


class InvalidPointError(PreconditionError):
    pass


class SubdivisionError(PreconditionError):
    pass


class SolverError(ItoricError, RuntimeError):
    """an iterative solver stopped without meeting its tolerance"""
    exit_code = 3

    def __init__(self, message: str, residual: Optional[float] = None):
        super().__init__(message)
        self.residual = residual
