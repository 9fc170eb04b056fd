# -*- coding: utf-8 -*-
import logging
import math

from reliabbase import stdnorm
from reliabbase.exceptions import DomainError

from .exceptions import ConfigurationError, ValidationError
from .inference import check_alpha


log = logging.getLogger(__name__)

# float slack applied before taking ceilings of threshold formulas
CEILING_DIGITS = 9


class PopulationCumulants(dict):
    """
    Distributional prior of one group.

    :param float variance: Population variance (> 0)
    :param float skewness: Standardised third cumulant
    :param float kurtosis: Standardised fourth moment, at least
        ``skewness**2 + 1``
    :param float mean: Population mean (not used by the planner)
    :raises reliab.exceptions.ValidationError: if the values cannot belong
        to any distribution

    Exposes the same names as :class:`reliabbase.moments.GroupSummary`, so
    it can be passed wherever a summary is accepted.
    """

    def __init__(self, variance, skewness, kurtosis, mean=0.0):
        variance, skewness, kurtosis = float(variance), float(skewness), float(kurtosis)
        for name, value in (
            ("variance", variance),
            ("skewness", skewness),
            ("kurtosis", kurtosis),
        ):
            if not math.isfinite(value):
                raise ValidationError("%s must be finite, got %r" % (name, value))
        if not variance > 0:
            raise ValidationError("variance must be positive, got %r" % variance)
        if kurtosis < skewness * skewness + 1.0 - 1e-9:
            raise ValidationError(
                "kurtosis %g is below skewness**2 + 1 = %g"
                % (kurtosis, skewness * skewness + 1.0)
            )
        dict.__init__(
            self,
            mean=float(mean),
            variance=variance,
            skewness=skewness,
            kurtosis=kurtosis,
        )

    @classmethod
    def from_sigma(cls, sigma, gamma, tau, mean=0.0):
        if not sigma > 0:
            raise ValidationError("sigma must be positive, got %r" % sigma)
        return cls(sigma * sigma, gamma, tau, mean=mean)

    @classmethod
    def from_summary(cls, summary):
        return cls(
            summary.variance, summary.skewness, summary.kurtosis, mean=summary.mean
        )

    @property
    def mean(self):
        return self["mean"]

    @property
    def variance(self):
        return self["variance"]

    @property
    def sigma(self):
        return math.sqrt(self["variance"])

    @property
    def skewness(self):
        return self["skewness"]

    @property
    def kurtosis(self):
        return self["kurtosis"]

    def json(self):
        return dict(self)


class PlanningInputs(dict):
    """
    Everything the threshold formulas depend on.

    :param float alpha: Nominal level in ``(0, 1)``
    :param float epsilon: Tolerated per-tail deviation (> 0)
    :param float k: Allocation ratio ``n_y / n_x`` (> 0)
    :param PopulationCumulants x: Control prior
    :param PopulationCumulants y: Treatment prior
    :raises reliab.exceptions.ConfigurationError: on out-of-range
        parameters
    """

    def __init__(self, alpha, epsilon, k, x, y):
        alpha = check_alpha(alpha)
        epsilon = check_epsilon(epsilon)
        try:
            k = float(k)
        except (TypeError, ValueError):
            raise ConfigurationError("k must be a number, got %r" % (k,))
        if not (math.isfinite(k) and k > 0):
            raise ConfigurationError("k must be positive, got %r" % k)
        if not isinstance(x, PopulationCumulants):
            x = PopulationCumulants.from_summary(x)
        if not isinstance(y, PopulationCumulants):
            y = PopulationCumulants.from_summary(y)

        warnings = []
        if epsilon >= alpha / 2.0:
            msg = (
                "epsilon=%g is not smaller than alpha/2=%g; the tail guarantee "
                "is vacuous" % (epsilon, alpha / 2.0)
            )
            log.warning(msg)
            warnings.append(msg)
        dict.__init__(
            self, alpha=alpha, epsilon=epsilon, k=k, x=x, y=y, warnings=warnings
        )

    @classmethod
    def equal_variance(cls, alpha, epsilon, k, gamma, tau, sigma=1.0):
        """Both groups share ``sigma``, ``gamma`` and ``tau``."""
        prior = PopulationCumulants.from_sigma(sigma, gamma, tau)
        return cls(alpha, epsilon, k, prior, prior)

    @property
    def alpha(self):
        return self["alpha"]

    @property
    def epsilon(self):
        return self["epsilon"]

    @property
    def k(self):
        return self["k"]

    @property
    def x(self):
        return self["x"]

    @property
    def y(self):
        return self["y"]

    @property
    def warnings(self):
        return self["warnings"]

    @property
    def z(self):
        """Lower critical value ``z_{alpha/2}`` (negative)."""
        return stdnorm.quantile(self["alpha"] / 2.0)

    def json(self):
        ret = dict(self)
        ret["x"] = self.x.json()
        ret["y"] = self.y.json()
        ret["warnings"] = list(self.warnings)
        return ret


class PlanningCoefficients(dict):
    def __init__(self, a1, a2):
        dict.__init__(self, a1=float(a1), a2=float(a2))

    @property
    def a1(self):
        return self["a1"]

    @property
    def a2(self):
        return self["a2"]

    def json(self):
        return dict(self)


class SampleSizePlan(dict):
    """
    Result of :func:`plan`.

    Keys: ``inputs``, ``coefficients``, ``n_min_first`` (``None`` when
    ``a1 == 0``), ``n_min_second``, ``n_min_second_conservative``,
    ``deviations`` (one row per queried ``N``) and ``warnings``.
    """

    @property
    def n_min_first(self):
        return self["n_min_first"]

    @property
    def n_min_second(self):
        return self["n_min_second"]

    @property
    def coefficients(self):
        return self["coefficients"]

    @property
    def deviations(self):
        return self["deviations"]

    @property
    def warnings(self):
        return self["warnings"]

    def json(self):
        ret = dict(self)
        ret["inputs"] = self["inputs"].json()
        ret["coefficients"] = self["coefficients"].json()
        ret["deviations"] = [dict(row) for row in self["deviations"]]
        ret["warnings"] = list(self["warnings"])
        return ret


def check_epsilon(epsilon):
    try:
        epsilon = float(epsilon)
    except (TypeError, ValueError):
        raise ConfigurationError("epsilon must be a number, got %r" % (epsilon,))
    if not (math.isfinite(epsilon) and epsilon > 0):
        raise ConfigurationError("epsilon must be positive, got %r" % epsilon)
    return epsilon


def _ceil(value):
    return max(1, int(math.ceil(round(value, CEILING_DIGITS))))


def _skew_numerator(inputs):
    k = inputs.k
    sx, sy = inputs.x.sigma, inputs.y.sigma
    return inputs.y.skewness * sy ** 3 - k * k * inputs.x.skewness * sx ** 3


def coefficient_a1(inputs):
    """
    First-order coefficient of the per-tail deviation.

    .. math::

        a_1 = \\frac{2z^2+1}{6}\\phi(z)\\sqrt{\\frac{1+k}{k}}
              \\frac{\\gamma_y\\sigma_y^3 - k^2\\gamma_x\\sigma_x^3}
                   {(k\\sigma_x^2+\\sigma_y^2)^{3/2}}

    The polynomial is even in ``z``, so either critical value gives the same
    result.
    """
    k = inputs.k
    z = inputs.z
    spread = k * inputs.x.variance + inputs.y.variance
    return (
        (2.0 * z * z + 1.0)
        / 6.0
        * stdnorm.phi(z)
        * math.sqrt((1.0 + k) / k)
        * _skew_numerator(inputs)
        / spread ** 1.5
    )


def coefficient_a2(inputs):
    """
    Second-order coefficient, evaluated at the lower critical value
    ``z_{alpha/2} < 0``. It is ``N * phi(z) * q2(z)`` with the
    ``N``-dependence of ``q2`` factored out.
    """
    k = inputs.k
    z = inputs.z
    z3 = z ** 3
    z5 = z ** 5
    sx2, sy2 = inputs.x.variance, inputs.y.variance
    spread = k * sx2 + sy2

    kurt = (
        (1.0 + k)
        / (12.0 * k)
        * ((inputs.y.kurtosis - 3.0) * sy2 * sy2 + k ** 3 * (inputs.x.kurtosis - 3.0) * sx2 * sx2)
        / (spread * spread)
        * (z3 - 3.0 * z)
    )
    skew = (
        (1.0 + k)
        / (18.0 * k)
        * _skew_numerator(inputs) ** 2
        / spread ** 3
        * (z5 + 2.0 * z3 - 3.0 * z)
    )
    studentisation = (
        (1.0 + k)
        / 4.0
        * ((k ** 3 * sx2 * sx2 + sy2 * sy2) * (z3 + 3.0 * z) + 2.0 * k * (1.0 + k) * sx2 * sy2 * z)
        / (k * spread * spread)
    )
    return stdnorm.phi(z) * (kurt - skew - studentisation)


def coefficients(inputs):
    return PlanningCoefficients(coefficient_a1(inputs), coefficient_a2(inputs))


def n_min_first(a1, epsilon):
    """
    First-order threshold ``ceil((a1 / epsilon)**2)``.

    :returns: ``None`` when ``a1 == 0`` (no first-order deviation to control)
    :raises reliab.exceptions.ConfigurationError: if ``epsilon <= 0``
    """
    epsilon = check_epsilon(epsilon)
    if a1 == 0:
        return None
    return _ceil((a1 / epsilon) ** 2)


def n_min_second(a1, a2, epsilon, conservative=False):
    """
    Second-order threshold.

    .. math::

        N = \\left(\\frac{|a_1| + \\sqrt{a_1^2 - 4|a_2|\\epsilon\\,
            \\mathrm{sign}(a_1^2 - 4|a_2|\\epsilon)}}{2\\epsilon}\\right)^2

    with ``sign(0) = 1``. With ``conservative=True`` the root of
    ``|a1| u + |a2| u**2 = epsilon`` is used instead, which bounds *both*
    predicted tail deviations by ``epsilon`` at the returned size.

    :raises reliab.exceptions.ConfigurationError: if ``epsilon <= 0``
    """
    epsilon = check_epsilon(epsilon)
    if a2 == 0:
        return n_min_first(a1, epsilon)
    a1, a2 = abs(a1), abs(a2)
    if conservative:
        root = math.sqrt(a1 * a1 + 4.0 * a2 * epsilon)
    else:
        disc = a1 * a1 - 4.0 * a2 * epsilon
        sign = 1.0 if disc >= 0 else -1.0
        root = math.sqrt(disc * sign)
    return _ceil(((a1 + root) / (2.0 * epsilon)) ** 2)


def predicted_tail_deviation(N, inputs, order=2, coefs=None):
    """
    Predicted ``(alpha_L - alpha/2, alpha_R - alpha/2)`` at total size ``N``.

    First order: ``(a1/sqrt(N), -a1/sqrt(N))``; second order adds
    ``a2/N`` to both tails.
    """
    N = int(N)
    if N < 1:
        raise ConfigurationError("N must be positive, got %r" % N)
    if coefs is None:
        coefs = coefficients(inputs)
    first = coefs.a1 / math.sqrt(N)
    if order == 1:
        return first, -first
    second = coefs.a2 / N
    return first + second, -first + second


def lognormal_population_cumulants(mu, sigma):
    """
    Closed-form moments of ``LN(mu, sigma**2)``.

    With ``w = exp(sigma**2)``: skewness ``(w + 2) sqrt(w - 1)`` and kurtosis
    ``w**4 + 2 w**3 + 3 w**2 - 3``.

    :raises reliabbase.exceptions.DomainError: if ``sigma <= 0``
    """
    mu, sigma = float(mu), float(sigma)
    if not (math.isfinite(mu) and math.isfinite(sigma)) or sigma <= 0:
        raise DomainError("Lognormal needs finite mu and sigma > 0, got %r, %r" % (mu, sigma))
    w = math.exp(sigma * sigma)
    return PopulationCumulants(
        mean=math.exp(mu + sigma * sigma / 2.0),
        variance=(w - 1.0) * math.exp(2.0 * mu + sigma * sigma),
        skewness=(w + 2.0) * math.sqrt(w - 1.0),
        kurtosis=w ** 4 + 2.0 * w ** 3 + 3.0 * w ** 2 - 3.0,
    )


def inputs_from_summaries(x, y, alpha, epsilon, k=None):
    """
    Plug-in planning from pilot data: the sample cumulants of ``x`` and
    ``y`` act as priors. ``k`` defaults to the pilot allocation.
    """
    if k is None:
        k = y.n / x.n
    return PlanningInputs(
        alpha,
        epsilon,
        k,
        PopulationCumulants.from_summary(x),
        PopulationCumulants.from_summary(y),
    )


def inputs_from_distribution(x_spec, alpha, epsilon, k, y_spec=None):
    """Priors from :class:`reliab.distributions.DistributionSpec` (A/A when ``y_spec`` is omitted)."""
    x = x_spec.cumulants()
    y = x if y_spec is None else y_spec.cumulants()
    return PlanningInputs(alpha, epsilon, k, x, y)


def plan(inputs, query=(), conservative=False):
    """
    Assemble a :class:`SampleSizePlan`.

    :param PlanningInputs inputs: Priors and tolerances
    :param list query: Total sizes at which to report predicted deviations
    :param bool conservative: Report the conservative second-order
        threshold as ``n_min_second``
    """
    coefs = coefficients(inputs)
    first = n_min_first(coefs.a1, inputs.epsilon)
    second_eq = n_min_second(coefs.a1, coefs.a2, inputs.epsilon)
    second_cons = n_min_second(coefs.a1, coefs.a2, inputs.epsilon, conservative=True)
    second = second_cons if conservative else second_eq
    warnings = list(inputs.warnings)

    rows = []
    for N in query:
        dev1_L, dev1_R = predicted_tail_deviation(N, inputs, order=1, coefs=coefs)
        dev_L, dev_R = predicted_tail_deviation(N, inputs, order=2, coefs=coefs)
        rows.append(
            dict(
                N=int(N),
                dev_L_first=dev1_L,
                dev_R_first=dev1_R,
                dev_L=dev_L,
                dev_R=dev_R,
                reliable=second is not None and int(N) >= second,
            )
        )
        if second is not None and int(N) < second:
            msg = "N=%d is below the reliability threshold %d" % (N, second)
            log.warning(msg)
            warnings.append(msg)

    log.info(
        "a1=%.6g a2=%.6g n_min_first=%s n_min_second=%s"
        % (coefs.a1, coefs.a2, first, second)
    )
    return SampleSizePlan(
        inputs=inputs,
        coefficients=coefs,
        n_min_first=first,
        n_min_second=second,
        n_min_second_equation=second_eq,
        n_min_second_conservative=second_cons,
        conservative=bool(conservative),
        deviations=rows,
        warnings=warnings,
    )
