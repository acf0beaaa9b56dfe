"""Exception hierarchy shared by every module of the package."""


class HatDigraphError(Exception):
    """Base class for all errors raised by hatdigraph."""


class ArgumentError(HatDigraphError, ValueError):
    """An argument is out of range or malformed."""


class PreconditionError(HatDigraphError):
    """An operation was called on an input that violates its precondition."""


class CapacityError(HatDigraphError):
    """A search exceeded its configured cap, or needs a complete group it does not have."""


class ClassificationInapplicable(PreconditionError):
    """The classification procedure does not apply (valency not prime, or in != out)."""


class InconsistentVerdict(HatDigraphError):
    """Finite shadows of a periodic digraph (quotients, windows) disagree."""
