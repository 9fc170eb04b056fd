# -*- coding: utf-8 -*-
"""
Cumulants of the mean difference ``D = Ybar - Xbar`` and the
Edgeworth-corrected distribution of the Welch statistic.

The functions take *anything* that exposes ``variance``, ``skewness`` and
``kurtosis``: sample summaries (:class:`reliabbase.moments.GroupSummary`)
for testing, or :class:`reliab.planning.PopulationCumulants` for planning.
"""
import logging
import math

from reliabbase import stdnorm

from .exceptions import DegenerateSampleError, NumericError
from .inference import DesignContext


log = logging.getLogger(__name__)


class DifferenceCumulants(dict):
    """
    Standardised skewness ``gamma_D`` and kurtosis ``tau_D`` of ``D``.

    ``gamma_D`` shrinks like ``N**-0.5`` and ``tau_D - 3`` like ``N**-1``.
    """

    def __init__(self, gamma_D, tau_D):
        dict.__init__(self, gamma_D=float(gamma_D), tau_D=float(tau_D))

    @property
    def gamma_D(self):
        return self["gamma_D"]

    @property
    def tau_D(self):
        return self["tau_D"]

    def json(self):
        return dict(self)


def _variances(x, y):
    sx2, sy2 = float(x.variance), float(y.variance)
    if not (sx2 > 0 and sy2 > 0):
        raise DegenerateSampleError(
            "Group variances must be positive (got %g and %g)" % (sx2, sy2)
        )
    return sx2, sy2


def difference_cumulants(x, y, design):
    """
    Skewness and kurtosis of ``D`` from per-group cumulants.

    .. math::

        \\gamma_D = \\frac{\\sqrt{1+k}}{\\sqrt{Nk}}
            \\frac{\\gamma_y\\sigma_y^3 - k^2\\gamma_x\\sigma_x^3}
                 {(k\\sigma_x^2+\\sigma_y^2)^{3/2}}

        \\tau_D = 3 + \\frac{1+k}{kN}
            \\frac{(\\tau_y-3)\\sigma_y^4 + k^3(\\tau_x-3)\\sigma_x^4}
                 {(\\sigma_y^2+k\\sigma_x^2)^2}

    :param x: Control cumulants
    :param y: Treatment cumulants
    :param reliab.inference.DesignContext design: Group sizes
    :rtype: DifferenceCumulants
    :raises reliab.exceptions.DegenerateSampleError: on a zero variance
    """
    sx2, sy2 = _variances(x, y)
    k, N = design.k, design.N
    sx, sy = math.sqrt(sx2), math.sqrt(sy2)
    spread = k * sx2 + sy2

    gamma_D = (
        math.sqrt(1.0 + k)
        / math.sqrt(N * k)
        * (y.skewness * sy ** 3 - k * k * x.skewness * sx ** 3)
        / spread ** 1.5
    )
    tau_D = 3.0 + (1.0 + k) / (k * N) * (
        (y.kurtosis - 3.0) * sy2 * sy2 + k ** 3 * (x.kurtosis - 3.0) * sx2 * sx2
    ) / (spread * spread)
    return DifferenceCumulants(gamma_D, tau_D)


def q1(z, cum):
    """First-order correction polynomial ``(gamma_D / 6) (2 z^2 + 1)``."""
    return cum.gamma_D / 6.0 * (2.0 * z * z + 1.0)


def q2(z, cum, x_var, y_var, design):
    """
    Second-order correction polynomial.

    Besides ``tau_D`` and ``gamma_D`` it carries a studentisation term
    that depends on the group variances and the design only.

    :param float z: Point of evaluation
    :param DifferenceCumulants cum: Cumulants of ``D``
    :param float x_var: Control variance
    :param float y_var: Treatment variance
    :param reliab.inference.DesignContext design: Group sizes
    """
    k, N = design.k, design.N
    z2 = z * z
    z3 = z2 * z
    z5 = z3 * z2
    spread = k * x_var + y_var
    studentisation = (
        (1.0 + k)
        / (4.0 * N)
        * (
            (k ** 3 * x_var * x_var + y_var * y_var) * (z3 + 3.0 * z)
            + 2.0 * k * (1.0 + k) * x_var * y_var * z
        )
        / (k * spread * spread)
    )
    return (
        (cum.tau_D - 3.0) / 12.0 * (z3 - 3.0 * z)
        - cum.gamma_D ** 2 / 18.0 * (z5 + 2.0 * z3 - 3.0 * z)
        - studentisation
    )


def g_hat(z, cum, x_var, y_var, design):
    """Edgeworth approximation ``Phi(z) + phi(z) (q1(z) + q2(z))`` of ``P(T <= z)``."""
    return stdnorm.Phi(z) + stdnorm.phi(z) * (
        q1(z, cum) + q2(z, cum, x_var, y_var, design)
    )


def g_hat_truncated(z, cum, x_var, y_var, design):
    """:func:`g_hat` clamped to ``[0, 1]``. The result need not be monotone in ``z``."""
    return min(1.0, max(0.0, g_hat(z, cum, x_var, y_var, design)))


class EdgeworthCorrection(object):
    """
    Plug-in Edgeworth distribution of the Welch statistic for one design.

    :param x: Control cumulants (variance, skewness, kurtosis)
    :param y: Treatment cumulants
    :param reliab.inference.DesignContext design: Group sizes

    The difference cumulants are computed once, so the CDF can be evaluated
    at many points cheaply:

    .. code-block:: python

        correction = EdgeworthCorrection.from_summaries(x, y)
        correction.cdf(1.5)
        correction.p_value(T)
    """

    def __init__(self, x, y, design):
        self.x_var, self.y_var = _variances(x, y)
        self.design = design
        self.cumulants = difference_cumulants(x, y, design)

    @classmethod
    def from_summaries(cls, x, y):
        return cls(x, y, DesignContext.from_summaries(x, y))

    def raw_cdf(self, z):
        return g_hat(z, self.cumulants, self.x_var, self.y_var, self.design)

    def cdf(self, z):
        return g_hat_truncated(z, self.cumulants, self.x_var, self.y_var, self.design)

    def p_value(self, T, with_flag=False):
        """
        Two-sided corrected p-value ``2 min(G(T), 1 - G(T))``.

        :param float T: Observed statistic
        :param bool with_flag: Also return whether the CDF was clamped
        :raises reliab.exceptions.NumericError: if the approximation is not
            finite (overflowing cumulants)
        """
        raw = self.raw_cdf(T)
        if not math.isfinite(raw):
            raise NumericError("Edgeworth CDF is not finite at T=%r" % T)
        truncated = raw < 0.0 or raw > 1.0
        G = min(1.0, max(0.0, raw))
        p = min(1.0, 2.0 * min(G, 1.0 - G))
        if truncated:
            log.debug("Edgeworth CDF %.6g clamped at T=%.6g" % (raw, T))
        if with_flag:
            return p, truncated
        return p


def p_value_corrected(T, x, y, design=None):
    """
    Edgeworth-corrected two-sided p-value of an observed Welch statistic.

    :param float T: Observed statistic
    :param x: Control summary
    :param y: Treatment summary
    :param reliab.inference.DesignContext design: Group sizes; taken from
        the summaries' ``n`` when omitted
    """
    if design is None:
        design = DesignContext.from_summaries(x, y)
    return EdgeworthCorrection(x, y, design).p_value(T)
