"""Exception hierarchy shared by all modules."""


class SchedulingError(Exception):
    """Base class for every error raised by this package."""


class InputError(SchedulingError, ValueError):
    """Invalid argument values or malformed input structures."""


class VariantError(InputError):
    """The instance shape is not supported by the requested operation."""


class ParseError(InputError):
    """A document could not be parsed into a model object."""


class GuardLimitError(InputError):
    """An oracle guard limit (n, m or slot count) was exceeded."""


class OracleInfeasibleError(SchedulingError):
    """No feasible combination exists at the requested grid resolution."""


class InternalInvariantError(SchedulingError):
    """A guaranteed runtime invariant failed; indicates an implementation bug."""
