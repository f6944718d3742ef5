"""Exception hierarchy shared by all modules."""


class NearEfxError(Exception):
    """Base class for all library errors."""


class InvalidInputError(NearEfxError, ValueError):
    """Malformed or out-of-range input."""


class PreconditionError(NearEfxError, ValueError):
    """A documented precondition of an operation was violated by the caller."""


class InternalInvariantError(NearEfxError, RuntimeError):
    """An invariant that should hold by construction failed; indicates a bug."""


class ResourceLimitError(NearEfxError, RuntimeError):
    """An exhaustive search exceeded its caller-supplied budget."""


class UnsupportedInputError(NearEfxError, ValueError):
    """Input is well-formed but outside the supported range of the operation."""
