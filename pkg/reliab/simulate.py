# -*- coding: utf-8 -*-
import logging
import math

from concurrent.futures import ThreadPoolExecutor, as_completed

import numpy as np

from events import Events
from reliabbase.moments import GroupSummary

from .distributions import sample_group
from .edgeworth import EdgeworthCorrection
from .exceptions import (
    ConfigurationError,
    DegenerateSampleError,
    InsufficientDataError,
    NumericError,
    ValidationError,
)
from .inference import DesignContext, check_alpha, p_value_classic, welch_statistic
from .planning import PlanningInputs, check_epsilon, coefficients, n_min_second
from .utils import METHODS, methods_from_string


log = logging.getLogger(__name__)

#: column of the replication matrix holding each method's p-value
METHOD_COLUMNS = {"classic": 1, "corrected": 2}


def new_seed():
    """Fresh 128 bit seed from OS entropy."""
    return int(np.random.SeedSequence().entropy)


def split_sizes(N, k):
    """
    Split a total size into ``(n_x, n_y)`` with ``n_y / n_x`` close to ``k``.

    :raises reliab.exceptions.ConfigurationError: if ``N < 2 (1 + k)``
    """
    N = int(N)
    k = float(k)
    if not k > 0:
        raise ConfigurationError("k must be positive, got %r" % k)
    if N < 2.0 * (1.0 + k):
        raise ConfigurationError(
            "N=%d is too small for k=%g (need at least %g)" % (N, k, 2.0 * (1.0 + k))
        )
    n_x = int(round(N / (1.0 + k)))
    n_x = min(max(n_x, 2), N - 2)
    return n_x, N - n_x


def auto_grid(n_center, k=None, points=7, spread=5.0):
    """
    Geometric grid ``n_center * spread**((i - 3) / 3)`` over
    ``[n_center / spread, spread * n_center]``.

    Sizes are rounded to multiples of ``1 + k`` when ``k`` is integral, so
    that every size splits exactly, and kept strictly increasing. No size
    falls below ``2 * (1 + k)`` (4 when ``k`` is not given).
    """
    n_center = float(n_center)
    if not n_center > 0:
        raise ConfigurationError("Grid center must be positive, got %r" % n_center)
    step = 1
    floor = 4
    if k is not None:
        k = float(k)
        floor = int(math.ceil(2.0 * (1.0 + k)))
        if k == int(k):
            step = 1 + int(k)
            floor = 2 * step
    half = (points - 1) / 2.0
    grid = []
    for i in range(points):
        value = n_center * spread ** ((i - half) / half)
        value = max(floor, int(round(value / step)) * step)
        if grid and value <= grid[-1]:
            value = grid[-1] + step
        grid.append(value)
    return grid


class SimulationConfig(dict):
    """
    Parameters of a Monte Carlo run.

    :param float alpha: Nominal level
    :param float epsilon: Tolerated per-tail deviation
    :param float k: Allocation ratio ``n_y / n_x``
    :param int B: Replications per grid point (>= 100)
    :param int seed: Master seed; a fresh one is drawn when ``None``
    :param list N_values: Total sizes; ``None`` lets :class:`Simulator`
        build an :func:`auto_grid` around the second-order threshold
    :param methods: Subset of ``classic``, ``corrected``
    :param int workers: Threads
    :param int max_redraws: Limit on degenerate redraws per replication
    """

    def __init__(
        self,
        alpha=0.05,
        epsilon=0.01,
        k=1.0,
        B=10000,
        seed=None,
        N_values=None,
        methods=METHODS,
        workers=1,
        max_redraws=1000,
    ):
        alpha = check_alpha(alpha)
        epsilon = check_epsilon(epsilon)
        k = float(k)
        if not (math.isfinite(k) and k > 0):
            raise ConfigurationError("k must be positive, got %r" % k)
        B = int(B)
        if B < 100:
            raise ConfigurationError("B must be at least 100, got %d" % B)
        if seed is None:
            seed = new_seed()
            log.info("No seed given, using %d" % seed)
        try:
            seed = int(seed)
        except (TypeError, ValueError):
            raise ConfigurationError("seed must be an integer, got %r" % (seed,))
        if seed < 0:
            raise ConfigurationError("seed must be non-negative, got %d" % seed)
        if N_values is not None:
            N_values = sorted({int(N) for N in N_values})
            for N in N_values:
                split_sizes(N, k)
        workers = int(workers)
        if workers < 1:
            raise ConfigurationError("workers must be at least 1, got %d" % workers)
        dict.__init__(
            self,
            alpha=alpha,
            epsilon=epsilon,
            k=k,
            B=B,
            seed=seed,
            N_values=N_values,
            methods=methods_from_string(methods),
            workers=workers,
            max_redraws=int(max_redraws),
        )

    def copy(self, **kwargs):
        values = dict(self)
        values.update(kwargs)
        return SimulationConfig(**values)

    def __getattr__(self, key):
        try:
            return self[key]
        except KeyError:
            raise AttributeError(key)

    def json(self):
        return dict(self)


class ReplicationStream(object):
    """
    Random stream of one replication.

    Attempt ``j`` of replication ``i`` draws from
    ``SeedSequence(seed, spawn_key=(i, j))``, so every replication is
    reproducible on its own regardless of which thread runs it.
    """

    def __init__(self, seed, index, max_redraws=1000):
        self.seed = int(seed)
        self.index = int(index)
        self.max_redraws = max_redraws
        self.attempt = 0

    def generator(self):
        sequence = np.random.SeedSequence(self.seed, spawn_key=(self.index, self.attempt))
        return np.random.Generator(np.random.PCG64(sequence))

    def redraw(self):
        self.attempt += 1
        if self.attempt > self.max_redraws:
            raise NumericError(
                "Replication %d stayed degenerate after %d redraws"
                % (self.index, self.max_redraws)
            )

    @property
    def redraws(self):
        return self.attempt


def run_replication(spec, n_x, n_y, stream):
    """
    One simulated A/A experiment.

    Draws that leave a group constant are redrawn from the stream's next
    substream.

    :returns: ``(T, p_classic, p_corrected)``
    """
    design = DesignContext(n_x, n_y)
    while True:
        generator = stream.generator()
        x = sample_group(spec, n_x, generator)
        y = sample_group(spec, n_y, generator)
        try:
            sx = GroupSummary.from_values(x)
            sy = GroupSummary.from_values(y)
            T = welch_statistic(sx, sy)
        except DegenerateSampleError:
            stream.redraw()
            continue
        p_c = EdgeworthCorrection(sx, sy, design).p_value(T)
        return T, p_value_classic(T), p_c


class TailErrorRow(dict):
    """Empirical tail rates of one method at one total size."""

    def json(self):
        return dict(self)


class TailErrorReport(dict):
    """
    Per ``(method, N)`` tail rates of a simulation.

    Keys: ``config``, ``distribution``, ``rows`` (:class:`TailErrorRow`),
    ``redraws`` and ``warnings``.
    """

    @property
    def rows(self):
        return self["rows"]

    def row(self, method, N):
        for row in self["rows"]:
            if row["method"] == method and row["N"] == N:
                return row
        raise KeyError((method, N))

    def min_passing_n(self, method="corrected", epsilon=None):
        """Smallest grid size at which ``method`` keeps both tails within ``epsilon``."""
        if epsilon is None:
            epsilon = self["config"]["epsilon"]
        passing = [
            row["N"]
            for row in self["rows"]
            if row["method"] == method and row["max_dev"] <= epsilon
        ]
        return min(passing) if passing else None

    def json(self):
        ret = dict(self)
        ret["config"] = dict(self["config"])
        ret["rows"] = [dict(row) for row in self["rows"]]
        ret["warnings"] = list(self["warnings"])
        return ret


def tail_rates(T, p, alpha):
    """Share of left and right rejections: ``p < alpha`` with the sign of ``T``."""
    T = np.asarray(T, dtype=float)
    reject = np.asarray(p, dtype=float) < alpha
    return float(np.mean(reject & (T < 0))), float(np.mean(reject & (T > 0)))


class Simulator(Events):
    """
    Monte Carlo estimation of per-tail Type I errors.

    :param SimulationConfig config: Run parameters
    :param fnt on_row: Called with each finished :class:`TailErrorRow`
    :param fnt on_progress: Called with ``(N, done, B)`` as chunks finish
    :param fnt on_redraw: Called with ``(N, index, redraws)`` for
        replications that needed redraws

    .. code-block:: python

        from reliab.distributions import DistributionSpec
        from reliab.simulate import SimulationConfig, Simulator

        config = SimulationConfig(k=5, B=10000, seed=1, N_values=[600, 6000])
        report = Simulator(config, on_row=print).estimate(
            DistributionSpec("lognormal", 0, 1)
        )
    """

    __events__ = ["on_row", "on_progress", "on_redraw"]

    def __init__(self, config, on_row=None, on_progress=None, on_redraw=None):
        super(Simulator, self).__init__()
        self.config = config
        if on_row:
            self.on_row += on_row
        if on_progress:
            self.on_progress += on_progress
        if on_redraw:
            self.on_redraw += on_redraw

    def _inputs(self, spec):
        try:
            prior = spec.cumulants()
            return PlanningInputs(
                self.config.alpha, self.config.epsilon, self.config.k, prior, prior
            )
        except (ValidationError, DegenerateSampleError, InsufficientDataError) as e:
            log.info("No theoretical prediction for %s: %s" % (spec, e))
            return None

    def grid(self, spec):
        """The configured sizes, or an automatic grid around the second-order threshold."""
        if self.config.N_values:
            return list(self.config.N_values)
        inputs = self._inputs(spec)
        if inputs is None:
            raise ConfigurationError("An explicit grid is needed for %s" % spec)
        coefs = coefficients(inputs)
        center = n_min_second(coefs.a1, coefs.a2, inputs.epsilon)
        if center is None:
            raise ConfigurationError("Threshold not defined for %s; give a grid" % spec)
        grid = auto_grid(center, self.config.k)
        log.info("Automatic grid around N=%d: %s" % (center, grid))
        return grid

    def _run_chunk(self, spec, n_x, n_y, indices):
        out = np.empty((len(indices), 3))
        redraws = {}
        for row, index in enumerate(indices):
            stream = ReplicationStream(self.config.seed, index, self.config.max_redraws)
            out[row] = run_replication(spec, n_x, n_y, stream)
            if stream.redraws:
                redraws[index] = stream.redraws
        return indices[0], out, redraws

    def replicate(self, spec, N):
        """
        Run the ``B`` replications at total size ``N``.

        :returns: ``(matrix, redraws)`` where row ``i`` of the ``B x 3``
            matrix is ``(T, p_classic, p_corrected)`` of replication ``i``
        """
        n_x, n_y = split_sizes(N, self.config.k)
        B = self.config.B
        workers = self.config.workers
        chunk = max(1, int(math.ceil(B / (4.0 * workers))))
        blocks = [list(range(i, min(i + chunk, B))) for i in range(0, B, chunk)]
        results = np.empty((B, 3))
        redraws = 0
        done = 0
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(self._run_chunk, spec, n_x, n_y, block) for block in blocks
            ]
            try:
                for future in as_completed(futures):
                    start, out, extra = future.result()
                    results[start:start + len(out)] = out
                    for index, count in sorted(extra.items()):
                        redraws += count
                        self.on_redraw(N, index, count)
                    done += len(out)
                    self.on_progress(N, done, B)
            except BaseException:
                for future in futures:
                    future.cancel()
                raise
        return results, redraws

    def evaluate(self, N, results, redraws, inputs=None):
        """Turn a replication matrix into one :class:`TailErrorRow` per method."""
        alpha, epsilon, B = self.config.alpha, self.config.epsilon, self.config.B
        n_x, n_y = split_sizes(N, self.config.k)
        predicted = {}
        if inputs is not None:
            coefs = coefficients(inputs)
            a1_term = coefs.a1 / math.sqrt(N)
            a2_term = coefs.a2 / N
            predicted = dict(
                predicted_first_L=a1_term,
                predicted_first_R=-a1_term,
                predicted_second_L=a1_term + a2_term,
                predicted_second_R=-a1_term + a2_term,
            )
        rows = []
        for method in self.config.methods:
            rate_L, rate_R = tail_rates(results[:, 0], results[:, METHOD_COLUMNS[method]], alpha)
            dev_L, dev_R = rate_L - alpha / 2.0, rate_R - alpha / 2.0
            max_dev = max(abs(dev_L), abs(dev_R))
            row = TailErrorRow(
                method=method,
                N=int(N),
                n_x=n_x,
                n_y=n_y,
                alpha_hat_L=rate_L,
                alpha_hat_R=rate_R,
                se_L=math.sqrt(rate_L * (1.0 - rate_L) / B),
                se_R=math.sqrt(rate_R * (1.0 - rate_R) / B),
                dev_L=dev_L,
                dev_R=dev_R,
                total_dev=abs(rate_L + rate_R - alpha),
                max_dev=max_dev,
                redraws=int(redraws),
                predicted_first_L=None,
                predicted_first_R=None,
                predicted_second_L=None,
                predicted_second_R=None,
            )
            row["pass"] = max_dev <= epsilon
            row.update(predicted)
            rows.append(row)
        return rows

    def estimate(self, spec):
        """
        Empirical tail errors over the grid.

        :param reliab.distributions.DistributionSpec spec: Population of
            both groups
        :rtype: TailErrorReport
        """
        inputs = self._inputs(spec)
        grid = self.grid(spec)
        rows = []
        total_redraws = 0
        warnings = list(inputs.warnings) if inputs is not None else []
        for N in grid:
            log.info("Simulating N=%d (B=%d)" % (N, self.config.B))
            results, redraws = self.replicate(spec, N)
            total_redraws += redraws
            for row in self.evaluate(N, results, redraws, inputs):
                rows.append(row)
                self.on_row(row)
        if total_redraws:
            msg = "%d degenerate draws were redrawn" % total_redraws
            log.warning(msg)
            warnings.append(msg)
        return TailErrorReport(
            config=self.config.copy(N_values=grid),
            distribution=spec.json(),
            rows=rows,
            redraws=total_redraws,
            warnings=warnings,
        )

    def statistics(self, spec, N):
        results, _ = self.replicate(spec, N)
        return results[:, 0].copy()


def estimate_tail_errors(config, spec, **callbacks):
    return Simulator(config, **callbacks).estimate(spec)


def sweep_min_n(config, spec, method="corrected", **callbacks):
    """
    Smallest grid size whose simulated tails both stay within ``epsilon``.

    :returns: the size, or ``None`` if no grid point passes
    """
    if method not in METHODS:
        raise ConfigurationError("Unknown method %r" % method)
    config = config.copy(methods=[method])
    report = estimate_tail_errors(config, spec, **callbacks)
    return report.min_passing_n(method)


def collect_statistics(config, spec, N, **callbacks):
    """The ``B`` simulated Welch statistics at total size ``N``."""
    return Simulator(config, **callbacks).statistics(spec, N)


def density_histogram(values, bins=60):
    """
    Normalised histogram of simulated statistics next to the standard
    normal density.

    :returns: list of ``{"left", "right", "density", "normal"}`` rows
    """
    from reliabbase.stdnorm import phi

    values = np.asarray(values, dtype=float)
    values = values[np.isfinite(values)]
    if values.size == 0:
        raise NumericError("No finite statistics to histogram")
    density, edges = np.histogram(values, bins=int(bins), density=True)
    return [
        dict(
            left=float(edges[i]),
            right=float(edges[i + 1]),
            density=float(density[i]),
            normal=phi(0.5 * (edges[i] + edges[i + 1])),
        )
        for i in range(len(density))
    ]
