"""Exception types shared by every module.

The CLI maps these onto exit codes: ``ValidationError`` -> 2,
``InconsistencyError`` (and subclasses) -> 3.
"""


class ValidationError(ValueError):
    """Bad user input: malformed complex, out-of-range parameter, failed precondition."""


class InconsistencyError(RuntimeError):
    """An internal consistency check failed (bad specialization, non-cycle, ...)."""


class SpecializationFailure(InconsistencyError):
    """The randomized search for a good functional ran out of retries.

    ``best`` carries whatever partial result the search found, so callers
    can still report it.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
