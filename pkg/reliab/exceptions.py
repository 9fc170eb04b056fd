# -*- coding: utf-8 -*-
from reliabbase.exceptions import (
    DegenerateSampleError,
    DomainError,
    InputError,
    InsufficientDataError,
)


class ConfigurationError(ValueError):
    """A parameter of a test, plan or simulation is invalid."""

    pass


class ValidationError(ValueError):
    """User supplied cumulants are inconsistent (e.g. ``tau < gamma**2 + 1``)."""

    pass


class IngestionError(ValueError):
    """
    A data file could not be read.

    :param str message: What went wrong
    :param str path: The file that was being read
    :param int line: 1-based line number, if the problem is tied to a line
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = str(path)
            if line is not None:
                location += ":%d" % line
            location += ": "
        super().__init__(location + message)


class NumericError(ArithmeticError):
    """A computation produced a non-finite or otherwise unusable number."""

    pass


#: Exceptions caused by the data rather than by the invocation
DATA_ERRORS = (
    IngestionError,
    InputError,
    InsufficientDataError,
    DegenerateSampleError,
)

#: Exceptions caused by invalid parameters
CONFIG_ERRORS = (ConfigurationError, ValidationError, DomainError)
