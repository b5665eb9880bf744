"""Level quotients of Stanley-Reisner rings via random finite-field specialization."""

from .errors import InconsistencyError, SpecializationFailure, ValidationError

__all__ = ["InconsistencyError", "SpecializationFailure", "ValidationError"]
__version__ = "0.1.0"
