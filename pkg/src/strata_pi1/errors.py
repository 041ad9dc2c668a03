"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class StrataError(Exception):
    exit_code = 1


class InputError(StrataError):
    """Malformed input data (bad JSON, unparsable word, wrong types)."""

    exit_code = 2


class PreconditionError(StrataError):
    exit_code = 3


class CompositionError(PreconditionError):
    """A composition lies outside Omega_<d] (norm too large or wrong parity)."""


class ClosednessError(PreconditionError):
    pass


class PatternError(PreconditionError):
    """A composition does not have the shape a relation constructor expects."""


class AlphabetError(PreconditionError):
    """A wall letter (i, j) is not valid for the ambient degree."""


class WordError(PreconditionError):
    pass


class ResolutionError(StrataError):
    """Numerical root tracking could not resolve a pattern or crossing."""

    exit_code = 4
