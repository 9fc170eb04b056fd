# -*- coding: utf-8 -*-
from .exceptions import ConfigurationError


METHODS = ("classic", "corrected")


def _split(text, sep=","):
    return [part.strip() for part in str(text).split(sep) if part.strip()]


def distribution_from_string(text):
    """
    Parse a distribution given as ``family:param1,param2,...``.

    .. code-block:: python

        distribution_from_string("lognormal:0,1")
        distribution_from_string("zilognormal:0.1,0,1")
        distribution_from_string("publish-count")   # named preset

    :raises reliab.exceptions.ConfigurationError: on unknown families or
        malformed parameters
    """
    from .distributions import PRESETS, DistributionSpec

    text = str(text).strip()
    if text in PRESETS:
        return PRESETS[text]()
    if ":" not in text:
        raise ConfigurationError(
            "Distribution must look like 'family:p1,p2', got %r" % text
        )
    family, params = text.split(":", 1)
    try:
        values = [float(v) for v in _split(params)]
    except ValueError:
        raise ConfigurationError("Non-numeric distribution parameter in %r" % text)
    return DistributionSpec(family.strip().lower(), *values)


def grid_from_string(text):
    """``"1000,2000,5000"`` -> ``[1000, 2000, 5000]`` (sorted, unique)."""
    try:
        grid = sorted({int(float(v)) for v in _split(text)})
    except ValueError:
        raise ConfigurationError("Grid must be a list of integers, got %r" % text)
    if not grid:
        raise ConfigurationError("Grid is empty")
    return grid


def floats_from_string(text):
    try:
        values = [float(v) for v in _split(text)]
    except ValueError:
        raise ConfigurationError("Expected a list of numbers, got %r" % text)
    if not values:
        raise ConfigurationError("Expected at least one number")
    return values


def methods_from_string(text):
    if isinstance(text, (list, tuple)):
        methods = [str(m).strip().lower() for m in text]
    else:
        methods = [m.lower() for m in _split(text)]
    unknown = [m for m in methods if m not in METHODS]
    if unknown or not methods:
        raise ConfigurationError(
            "Methods must be a subset of %s, got %r" % (", ".join(METHODS), text)
        )
    # keep canonical order, drop duplicates
    return [m for m in METHODS if m in methods]
