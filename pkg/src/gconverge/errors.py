class PreconditionError(ValueError):
    """An operation was called outside its contract (surfaced as exit code 2)."""


class UnsupportedMethod(PreconditionError):
    pass


class GuardError(RuntimeError):
    """A fixed-point iteration or enumeration exceeded its guard."""
