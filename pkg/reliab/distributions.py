# -*- coding: utf-8 -*-
import logging
import math

import numpy as np

from reliabbase.moments import GroupSummary
from scipy.optimize import brentq

from .exceptions import ConfigurationError
from .planning import PopulationCumulants, lognormal_population_cumulants


log = logging.getLogger(__name__)

#: number of parameters per family (``None``: any positive number)
FAMILIES = {
    "normal": 2,
    "lognormal": 2,
    "gamma": 2,
    "zilognormal": 3,
    "empirical": None,
}


class DistributionSpec(dict):
    """
    A population to draw experiment groups from.

    :param str family: One of ``normal(mu, sigma)``, ``lognormal(mu, sigma)``,
        ``gamma(shape, scale)``, ``zilognormal(p, mu, sigma)`` or
        ``empirical(values...)``
    :param float params: Family parameters
    :raises reliab.exceptions.ConfigurationError: on unknown families or
        invalid parameters

    ``zilognormal`` is a lognormal that is observed with probability ``p``
    and is zero otherwise, the usual shape of per-user engagement metrics.

    .. code-block:: python

        DistributionSpec("lognormal", 0, 1)
        DistributionSpec.empirical([0, 0, 3, 12, 0, 1])
    """

    def __init__(self, family, *params):
        family = str(family).lower()
        if family not in FAMILIES:
            raise ConfigurationError(
                "Unknown distribution family %r (known: %s)"
                % (family, ", ".join(sorted(FAMILIES)))
            )
        params = [float(p) for p in params]
        expected = FAMILIES[family]
        if expected is None:
            if not params:
                raise ConfigurationError("An empirical distribution needs values")
        elif len(params) != expected:
            raise ConfigurationError(
                "%s takes %d parameters, got %d" % (family, expected, len(params))
            )
        if not all(math.isfinite(p) for p in params):
            raise ConfigurationError("%s parameters must be finite" % family)
        self._validate(family, params)
        dict.__init__(self, family=family, params=params)

    @staticmethod
    def _validate(family, params):
        if family in ("normal", "lognormal") and params[1] <= 0:
            raise ConfigurationError("%s needs sigma > 0" % family)
        if family == "gamma" and (params[0] <= 0 or params[1] <= 0):
            raise ConfigurationError("gamma needs shape > 0 and scale > 0")
        if family == "zilognormal":
            if not 0.0 < params[0] <= 1.0:
                raise ConfigurationError("zilognormal needs 0 < p <= 1")
            if params[2] <= 0:
                raise ConfigurationError("zilognormal needs sigma > 0")

    @classmethod
    def empirical(cls, values):
        values = np.asarray(values, dtype=float).ravel()
        return cls("empirical", *values.tolist())

    @property
    def family(self):
        return self["family"]

    @property
    def params(self):
        return list(self["params"])

    def __str__(self):
        if self.family == "empirical":
            return "empirical[%d values]" % len(self["params"])
        return "%s:%s" % (self.family, ",".join("%g" % p for p in self["params"]))

    def json(self):
        if self.family == "empirical":
            # resampled datasets can be large; reports only carry their size
            return {"family": self.family, "count": len(self["params"])}
        return {"family": self.family, "params": self.params}

    def cumulants(self):
        """
        Population mean, variance, skewness and kurtosis.

        Closed forms for the parametric families; the moments of the dataset
        for ``empirical``.

        :rtype: reliab.planning.PopulationCumulants
        """
        p = self["params"]
        if self.family == "normal":
            return PopulationCumulants(p[1] ** 2, 0.0, 3.0, mean=p[0])
        if self.family == "lognormal":
            return lognormal_population_cumulants(p[0], p[1])
        if self.family == "gamma":
            shape, scale = p
            return PopulationCumulants(
                shape * scale * scale,
                2.0 / math.sqrt(shape),
                3.0 + 6.0 / shape,
                mean=shape * scale,
            )
        if self.family == "zilognormal":
            return zilognormal_cumulants(*p)
        return PopulationCumulants.from_summary(GroupSummary.from_values(p))

    def sample(self, n, generator):
        return sample_group(self, n, generator)


def zilognormal_cumulants(p, mu, sigma):
    """Moments of the zero-inflated lognormal from its raw moments ``p exp(r mu + r^2 sigma^2 / 2)``."""
    s2 = sigma * sigma
    # standardised moments do not depend on mu
    m1 = p * math.exp(0.5 * s2)
    m2 = p * math.exp(2.0 * s2)
    m3 = p * math.exp(4.5 * s2)
    m4 = p * math.exp(8.0 * s2)
    var = m2 - m1 * m1
    mu3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 ** 3
    mu4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 ** 4
    scale = math.exp(mu)
    return PopulationCumulants(
        var * scale * scale,
        mu3 / var ** 1.5,
        mu4 / (var * var),
        mean=m1 * scale,
    )


def _lognormal_skewness(sigma):
    w = math.exp(sigma * sigma)
    return (w + 2.0) * math.sqrt(w - 1.0)


def match_cumulants(skewness, kurtosis, mu=0.0):
    """
    Find the zero-inflated lognormal with the given skewness and kurtosis.

    For fixed ``sigma`` the skewness decreases in ``p`` down to the plain
    lognormal value, so ``p`` is solved first; the kurtosis then moves from
    the two-point bound ``skewness**2 + 1`` (``sigma -> 0``) to the
    lognormal kurtosis (``p -> 1``) and ``sigma`` is solved in turn.

    :param float skewness: Target skewness (> 0)
    :param float kurtosis: Target kurtosis
    :param float mu: Log-location of the non-zero part
    :rtype: DistributionSpec
    :raises reliab.exceptions.ConfigurationError: if no zero-inflated
        lognormal attains the targets
    """
    skewness, kurtosis = float(skewness), float(kurtosis)
    if not skewness > 0:
        raise ConfigurationError("Only right-skewed targets can be matched")
    if not kurtosis > skewness * skewness + 1.0:
        raise ConfigurationError(
            "kurtosis must exceed skewness**2 + 1 = %g" % (skewness ** 2 + 1.0)
        )
    sigma_max = brentq(lambda s: _lognormal_skewness(s) - skewness, 1e-8, 4.0, xtol=1e-15)
    kurtosis_max = lognormal_population_cumulants(0.0, sigma_max).kurtosis
    if not kurtosis < kurtosis_max:
        raise ConfigurationError(
            "kurtosis must stay below %g (lognormal with skewness %g)"
            % (kurtosis_max, skewness)
        )

    def p_for(sigma):
        return brentq(
            lambda p: zilognormal_cumulants(p, 0.0, sigma).skewness - skewness,
            1e-12,
            1.0,
            xtol=1e-15,
        )

    def kurtosis_gap(sigma):
        return zilognormal_cumulants(p_for(sigma), 0.0, sigma).kurtosis - kurtosis

    try:
        sigma = brentq(kurtosis_gap, sigma_max * 1e-3, sigma_max * (1.0 - 1e-7), xtol=1e-14)
    except ValueError as e:
        raise ConfigurationError(
            "Cannot match skewness=%g kurtosis=%g: %s" % (skewness, kurtosis, e)
        )
    p = p_for(sigma)
    log.debug("Matched skewness=%g kurtosis=%g with p=%.6g sigma=%.6g" % (skewness, kurtosis, p, sigma))
    return DistributionSpec("zilognormal", p, mu, sigma)


def sample_group(spec, n, generator):
    """
    Draw ``n`` i.i.d. observations.

    :param DistributionSpec spec: Population
    :param int n: Sample size (>= 1)
    :param numpy.random.Generator generator: Random stream
    :rtype: numpy.ndarray
    """
    n = int(n)
    if n < 1:
        raise ConfigurationError("Sample size must be positive, got %d" % n)
    p = spec["params"]
    family = spec.family
    if family == "normal":
        return generator.normal(p[0], p[1], n)
    if family == "lognormal":
        return generator.lognormal(p[0], p[1], n)
    if family == "gamma":
        return generator.gamma(p[0], p[1], n)
    if family == "zilognormal":
        observed = generator.random(n) < p[0]
        return np.where(observed, generator.lognormal(p[1], p[2], n), 0.0)
    return generator.choice(np.asarray(p, dtype=float), size=n, replace=True)


#: Heavy-tailed engagement metrics (skewness, kurtosis) as reported for
#: large production experiments
PRESET_CUMULANTS = {
    "publish-count": (14.94, 490.7),
    "live-duration": (5.09, 41.9),
}

PRESETS = {
    name: (lambda g=g, t=t: match_cumulants(g, t))
    for name, (g, t) in PRESET_CUMULANTS.items()
}
