# -*- coding: utf-8 -*-
"""
Standard normal kernels.

The CDF and its inverse are taken from :mod:`scipy.special` (``ndtr`` and
``ndtri``), which are accurate to a few ulps in double precision; the density
is the closed form.
"""
import math

from scipy.special import ndtr, ndtri

from .exceptions import DomainError


INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _finite(x):
    try:
        x = float(x)
    except (TypeError, ValueError):
        raise DomainError("Expected a real number, got %r" % (x,))
    if not math.isfinite(x):
        raise DomainError("Expected a finite real number, got %r" % x)
    return x


def phi(x):
    """
    Density of :math:`N(0,1)`.

    :param float x: Point of evaluation
    :raises reliabbase.exceptions.DomainError: if ``x`` is not finite
    """
    x = _finite(x)
    return INV_SQRT_2PI * math.exp(-0.5 * x * x)


def Phi(x):
    """
    Cumulative distribution function of :math:`N(0,1)`.

    :param float x: Point of evaluation
    :raises reliabbase.exceptions.DomainError: if ``x`` is not finite
    """
    return float(ndtr(_finite(x)))


def quantile(p):
    """
    Inverse of :func:`Phi`, i.e. :math:`z_p = \\Phi^{-1}(p)`.

    :param float p: Probability strictly between 0 and 1
    :raises reliabbase.exceptions.DomainError: if ``p`` is not in ``(0, 1)``
    """
    p = _finite(p)
    if not 0.0 < p < 1.0:
        raise DomainError("Quantile requires 0 < p < 1, got %r" % p)
    return float(ndtri(p))


def upper_tail(x):
    """Survival function ``1 - Phi(x)`` without cancellation for large ``x``."""
    return float(ndtr(-_finite(x)))
