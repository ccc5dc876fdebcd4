class KTQError(Exception):
    exit_code = 3


class InputError(KTQError, ValueError):
    """Malformed or out-of-range input supplied by the caller."""

    exit_code = 1


class CapExceeded(KTQError):
    """A basis or search would exceed the configured resource cap."""

    exit_code = 2


class InvariantError(KTQError, RuntimeError):
    """An internal consistency check failed.

    Usually this means the operation handed to a routine does not satisfy
    the nesting axioms, or a diagram convention is broken.
    """

    exit_code = 3
