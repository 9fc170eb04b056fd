# -*- coding: utf-8 -*-


class DomainError(ValueError):
    """An argument lies outside the domain of a numeric kernel."""

    pass


class InputError(ValueError):
    """An observation was rejected (e.g. it is not finite)."""

    pass


class InsufficientDataError(ValueError):
    """Fewer observations than the estimator requires."""

    pass


class DegenerateSampleError(ValueError):
    """The sample has zero variance (or the pooled standard error vanishes)."""

    pass
