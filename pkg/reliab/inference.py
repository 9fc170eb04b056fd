# -*- coding: utf-8 -*-
import logging
import math

from reliabbase import stdnorm

from .exceptions import ConfigurationError, DegenerateSampleError


log = logging.getLogger(__name__)

REJECT_RIGHT = "reject-right"
REJECT_LEFT = "reject-left"
FAIL_TO_REJECT = "fail-to-reject"


class DesignContext(dict):
    """
    Sizes of a two-group experiment.

    :param int n_x: Control group size
    :param int n_y: Treatment group size
    :raises reliab.exceptions.ConfigurationError: if a group has fewer than
        two observations

    The allocation ratio is treatment over control, ``k = n_y / n_x``, and
    ``N = n_x + n_y``. ``k`` need not be an integer.
    """

    def __init__(self, n_x, n_y):
        n_x, n_y = int(n_x), int(n_y)
        if n_x < 2 or n_y < 2:
            raise ConfigurationError(
                "Both groups need at least 2 observations (n_x=%d, n_y=%d)"
                % (n_x, n_y)
            )
        dict.__init__(self, n_x=n_x, n_y=n_y, k=n_y / n_x, N=n_x + n_y)

    @classmethod
    def from_summaries(cls, x, y):
        return cls(x.n, y.n)

    @property
    def n_x(self):
        return self["n_x"]

    @property
    def n_y(self):
        return self["n_y"]

    @property
    def k(self):
        return self["k"]

    @property
    def N(self):
        return self["N"]

    def swapped(self):
        """The same design with the roles of control and treatment exchanged."""
        return DesignContext(self["n_y"], self["n_x"])

    def json(self):
        return dict(self)


class TestResult(dict):
    """
    Outcome of a two-sample test.

    Keys:

    * ``T``: Welch statistic
    * ``p_classic``: normal-reference two-sided p-value ``p_t``
    * ``p_corrected``: Edgeworth-corrected p-value ``p_c`` (``None`` if not
      computed)
    * ``alpha``: nominal level
    * ``decision``: decision taken on ``p_classic``
    * ``decision_corrected``: decision taken on ``p_corrected``
    * ``truncated``: ``True`` if the plug-in CDF had to be clamped to 0 or 1
      at ``T`` (in which case ``p_corrected`` is 0)
    * ``warnings``: list of human readable warnings
    """

    # keep pytest from collecting this class
    __test__ = False

    def __init__(
        self,
        T,
        p_classic,
        alpha,
        p_corrected=None,
        truncated=False,
        warnings=None,
    ):
        dict.__init__(
            self,
            T=float(T),
            p_classic=float(p_classic),
            p_corrected=None if p_corrected is None else float(p_corrected),
            alpha=float(alpha),
            decision=decide(p_classic, alpha, T),
            decision_corrected=(
                None if p_corrected is None else decide(p_corrected, alpha, T)
            ),
            truncated=bool(truncated),
            warnings=list(warnings or []),
        )

    @property
    def T(self):
        return self["T"]

    @property
    def p_classic(self):
        return self["p_classic"]

    @property
    def p_corrected(self):
        return self["p_corrected"]

    @property
    def alpha(self):
        return self["alpha"]

    @property
    def decision(self):
        return self["decision"]

    @property
    def decision_corrected(self):
        return self["decision_corrected"]

    def json(self):
        return dict(self)


def check_alpha(alpha):
    try:
        alpha = float(alpha)
    except (TypeError, ValueError):
        raise ConfigurationError("alpha must be a number, got %r" % (alpha,))
    if not 0.0 < alpha < 1.0:
        raise ConfigurationError("alpha must lie in (0, 1), got %r" % alpha)
    return alpha


def welch_statistic(x, y):
    """
    Welch's two-sample statistic.

    .. math::

        T = \\frac{\\bar Y - \\bar X}{\\sqrt{\\hat\\sigma_x^2/n_x + \\hat\\sigma_y^2/n_y}}

    :param reliabbase.moments.GroupSummary x: Control summary
    :param reliabbase.moments.GroupSummary y: Treatment summary
    :raises reliab.exceptions.DegenerateSampleError: if the standard error
        vanishes
    """
    se2 = x.variance / x.n + y.variance / y.n
    if not se2 > 0:
        raise DegenerateSampleError("Pooled standard error is zero")
    return (y.mean - x.mean) / math.sqrt(se2)


def p_value_classic(T):
    """
    Two-sided p-value against the standard normal, ``2 (1 - Phi(|T|))``.

    The upper tail is evaluated directly so that p-values of large ``|T|``
    do not cancel to zero.
    """
    return min(1.0, 2.0 * stdnorm.upper_tail(abs(T)))


def decide(p, alpha, T):
    """
    Decision rule with direction.

    The null hypothesis is rejected iff ``p < alpha`` (strictly); the sign of
    ``T`` gives the direction. A rejection with ``T == 0`` cannot be given a
    direction and is reported as :data:`FAIL_TO_REJECT`.

    :param float p: p-value
    :param float alpha: Nominal level in ``(0, 1)``
    :param float T: Test statistic
    :raises reliab.exceptions.ConfigurationError: if ``alpha`` is not in
        ``(0, 1)``
    """
    alpha = check_alpha(alpha)
    if p < alpha:
        if T > 0:
            return REJECT_RIGHT
        if T < 0:
            return REJECT_LEFT
    return FAIL_TO_REJECT


def welch_test(x, y, alpha=0.05, corrected=True):
    """
    Run the classic and the Edgeworth-corrected test on two summaries.

    :param reliabbase.moments.GroupSummary x: Control summary
    :param reliabbase.moments.GroupSummary y: Treatment summary
    :param float alpha: Nominal level
    :param bool corrected: Also compute ``p_corrected``
    :rtype: TestResult
    """
    from .edgeworth import EdgeworthCorrection

    alpha = check_alpha(alpha)
    T = welch_statistic(x, y)
    p_t = p_value_classic(T)
    if not corrected:
        return TestResult(T, p_t, alpha)

    correction = EdgeworthCorrection.from_summaries(x, y)
    p_c, truncated = correction.p_value(T, with_flag=True)
    warnings = []
    if truncated:
        msg = (
            "Edgeworth CDF truncated to [0, 1] at T=%.6g; p_corrected reported as %g"
            % (T, p_c)
        )
        log.warning(msg)
        warnings.append(msg)
    return TestResult(
        T, p_t, alpha, p_corrected=p_c, truncated=truncated, warnings=warnings
    )
