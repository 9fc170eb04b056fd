# -*- coding: utf-8 -*-
import math

import numpy as np

from .exceptions import (
    DegenerateSampleError,
    InputError,
    InsufficientDataError,
)


class GroupSummary(dict):
    """
    Moment summary of one experiment group.

    :param int n: Number of observations
    :param float mean: Sample mean
    :param float variance: Sample variance with divisor ``n``
    :param float skewness: Standardised third central moment
    :param float kurtosis: Standardised fourth central moment (3 for normal data)
    :raises reliabbase.exceptions.InsufficientDataError: if ``n < 2``
    :raises reliabbase.exceptions.DegenerateSampleError: if ``variance <= 0``

    An instance is a dictionary with the keys ``n``, ``mean``, ``variance``,
    ``skewness`` and ``kurtosis``. The same attribute names are exposed by
    :class:`reliab.planning.PopulationCumulants`, so either can be fed into
    the cumulant formulas of :mod:`reliab.edgeworth`.

    .. code-block:: python

        from reliabbase.moments import GroupSummary
        s = GroupSummary.from_values([1, 2, 3, 4, 5])
        s.variance, s.kurtosis      # (2.0, 1.7)
    """

    def __init__(self, n, mean, variance, skewness, kurtosis):
        n = int(n)
        if n < 2:
            raise InsufficientDataError(
                "A group summary needs at least 2 observations, got %d" % n
            )
        if not variance > 0:
            raise DegenerateSampleError("Group variance is zero")
        dict.__init__(
            self,
            n=n,
            mean=float(mean),
            variance=float(variance),
            skewness=float(skewness),
            kurtosis=float(kurtosis),
        )

    @classmethod
    def from_values(cls, values):
        """Summarise a sequence of observations."""
        return MomentAccumulator.from_values(values).finalize()

    @property
    def n(self):
        return self["n"]

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

    def __repr__(self):
        return (
            "<GroupSummary n={n} mean={mean:.6g} variance={variance:.6g} "
            "skewness={skewness:.6g} kurtosis={kurtosis:.6g}>".format(**self)
        )


class MomentAccumulator(object):
    """
    Streaming accumulator of the count, mean and central power sums
    ``M2``, ``M3``, ``M4`` of a sample.

    Observations are added one at a time with :meth:`update` (one-pass
    central-moment recurrences) or in bulk with :meth:`extend` (two-pass over
    the batch, then merged). Two accumulators combine with :meth:`merge` (or
    ``+``) so that partial results of a parallel reduction can be joined in
    any order.

    .. code-block:: python

        acc = MomentAccumulator()
        for x in stream:
            acc.update(x)
        summary = acc.finalize()
    """

    __slots__ = ("n", "mean", "M2", "M3", "M4")

    def __init__(self, n=0, mean=0.0, M2=0.0, M3=0.0, M4=0.0):
        self.n = int(n)
        self.mean = float(mean)
        self.M2 = float(M2)
        self.M3 = float(M3)
        self.M4 = float(M4)

    @classmethod
    def from_values(cls, values):
        return cls().extend(values)

    def copy(self):
        return MomentAccumulator(self.n, self.mean, self.M2, self.M3, self.M4)

    def update(self, x):
        """
        Add a single observation.

        :param float x: Observation
        :raises reliabbase.exceptions.InputError: if ``x`` is not finite
        :returns: the accumulator itself
        """
        try:
            x = float(x)
        except (TypeError, ValueError):
            raise InputError("Observation is not a number: %r" % (x,))
        if not math.isfinite(x):
            raise InputError("Observation is not finite: %r" % x)

        n1 = self.n
        n = n1 + 1
        delta = x - self.mean
        delta_n = delta / n
        delta_n2 = delta_n * delta_n
        term = delta * delta_n * n1

        self.mean += delta_n
        self.M4 += (
            term * delta_n2 * (n * n - 3 * n + 3)
            + 6 * delta_n2 * self.M2
            - 4 * delta_n * self.M3
        )
        self.M3 += term * delta_n * (n - 2) - 3 * delta_n * self.M2
        self.M2 += term
        self.n = n
        return self

    def extend(self, values):
        """
        Add a batch of observations.

        The batch is reduced with a two-pass kernel (mean first, then the
        central sums) and merged into the running state.

        :param values: Iterable or array of observations
        :raises reliabbase.exceptions.InputError: if a value is not finite
        :returns: the accumulator itself
        """
        arr = np.asarray(values, dtype=float).ravel()
        if arr.size == 0:
            return self
        finite = np.isfinite(arr)
        if not finite.all():
            idx = int(np.argmin(finite))
            raise InputError(
                "Observation #%d is not finite: %r" % (idx, float(arr[idx]))
            )
        batch = MomentAccumulator._from_array(arr)
        merged = self.merge(batch)
        self.n, self.mean = merged.n, merged.mean
        self.M2, self.M3, self.M4 = merged.M2, merged.M3, merged.M4
        return self

    @staticmethod
    def _from_array(arr):
        n = int(arr.size)
        if arr.min() == arr.max():
            return MomentAccumulator(n, float(arr[0]))
        mean = float(arr.mean())
        d = arr - mean
        d2 = d * d
        return MomentAccumulator(
            n,
            mean,
            float(d2.sum()),
            float(np.dot(d2, d)),
            float(np.dot(d2, d2)),
        )

    def merge(self, other):
        """
        Combine two accumulators into a new one.

        The combination is symmetric: ``a.merge(b)`` and ``b.merge(a)``
        yield the same state.

        :param MomentAccumulator other: Accumulator over disjoint data
        """
        na, nb = self.n, other.n
        if nb == 0:
            return self.copy()
        if na == 0:
            return other.copy()
        n = na + nb
        nanb = na * nb
        delta = other.mean - self.mean
        delta2 = delta * delta

        mean = (na * self.mean + nb * other.mean) / n
        M2 = self.M2 + other.M2 + delta2 * nanb / n
        M3 = (
            self.M3
            + other.M3
            + delta2 * delta * nanb * (na - nb) / (n * n)
            + 3.0 * delta * (na * other.M2 - nb * self.M2) / n
        )
        M4 = (
            self.M4
            + other.M4
            + delta2 * delta2 * nanb * (na * na - nanb + nb * nb) / (n * n * n)
            + 6.0 * delta2 * (na * na * other.M2 + nb * nb * self.M2) / (n * n)
            + 4.0 * delta * (na * other.M3 - nb * self.M3) / n
        )
        return MomentAccumulator(n, mean, max(M2, 0.0), M3, max(M4, 0.0))

    __add__ = merge

    def finalize(self):
        """
        Turn the sums into a :class:`GroupSummary` with divisor-``n``
        estimators.

        :raises reliabbase.exceptions.InsufficientDataError: if fewer than 2
            observations were seen
        :raises reliabbase.exceptions.DegenerateSampleError: if all
            observations are equal
        """
        if self.n < 2:
            raise InsufficientDataError(
                "At least 2 observations are required, got %d" % self.n
            )
        if not self.M2 > 0:
            raise DegenerateSampleError(
                "All %d observations are equal (zero variance)" % self.n
            )
        variance = self.M2 / self.n
        return GroupSummary(
            n=self.n,
            mean=self.mean,
            variance=variance,
            skewness=self.M3 / (self.n * variance ** 1.5),
            kurtosis=self.M4 / (self.n * variance * variance),
        )

    def json(self):
        return {
            "n": self.n,
            "mean": self.mean,
            "M2": self.M2,
            "M3": self.M3,
            "M4": self.M4,
        }

    def __eq__(self, other):
        if not isinstance(other, MomentAccumulator):
            return NotImplemented
        return self.json() == other.json()

    def __repr__(self):
        return "MomentAccumulator(n={n}, mean={mean!r}, M2={M2!r}, M3={M3!r}, M4={M4!r})".format(
            **self.json()
        )


def update(acc, x):
    """Functional form of :meth:`MomentAccumulator.update` (returns a new accumulator)."""
    return acc.copy().update(x)


def merge(a, b):
    return a.merge(b)


def finalize(acc):
    return acc.finalize()
