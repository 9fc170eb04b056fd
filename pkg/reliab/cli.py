# -*- coding: utf-8 -*-
import logging
import os
import statistics
import sys

import click

from . import __version__
from .distributions import DistributionSpec
from .edgeworth import difference_cumulants
from .exceptions import CONFIG_ERRORS, DATA_ERRORS, ConfigurationError
from .inference import DesignContext, welch_test
from .ingest import ingest
from .planning import (
    PlanningInputs,
    PopulationCumulants,
    coefficients,
    inputs_from_distribution,
    inputs_from_summaries,
    n_min_first,
    n_min_second,
    plan as make_plan,
)
from .report import OUTPUT_FORMATS, Report
from .simulate import SimulationConfig, Simulator, density_histogram
from .storage import get_default_config_store
from .utils import (
    distribution_from_string,
    floats_from_string,
    grid_from_string,
)


log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4
EXIT_INTERRUPTED = 130

LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


class ReliabGroup(click.Group):
    """Maps library exceptions to exit codes; messages go to stderr."""

    def invoke(self, ctx):
        try:
            return super(ReliabGroup, self).invoke(ctx)
        except KeyboardInterrupt:
            click.echo("Interrupted", err=True)
            ctx.exit(EXIT_INTERRUPTED)
        except DATA_ERRORS as e:
            click.echo("Error: %s" % e, err=True)
            ctx.exit(EXIT_DATA)
        except CONFIG_ERRORS as e:
            click.echo("Error: %s" % e, err=True)
            ctx.exit(EXIT_CONFIG)
        except ArithmeticError as e:
            click.echo("Numeric error: %s" % e, err=True)
            ctx.exit(EXIT_NUMERIC)


def output_option(f):
    return click.option(
        "--format",
        "output_format",
        type=click.Choice(OUTPUT_FORMATS),
        help="Output format (default: table)",
    )(f)


def source_options(f):
    f = click.option(
        "--data",
        type=click.Path(dir_okay=False),
        help="Resample this one-column file instead of a parametric population",
    )(f)
    f = click.option(
        "--dist",
        help="Population, e.g. lognormal:0,1, gamma:2,1, zilognormal:0.1,0,1, publish-count",
    )(f)
    return f


def simulation_options(f):
    for option in reversed(
        [
            click.option("--k", type=float, help="Allocation ratio n_y / n_x"),
            click.option("--alpha", type=float, help="Nominal level"),
            click.option("--B", "B", type=int, help="Replications per grid point"),
            click.option("--seed", type=int, help="Master seed (env RELIAB_SEED)"),
            click.option("--grid", help="Comma separated total sizes"),
            click.option("--workers", type=int, help="Worker threads"),
        ]
    ):
        f = option(f)
    return f


def _store(ctx):
    return ctx.obj


def _emit(ctx, report, output_format):
    fmt = _store(ctx).resolve("format", output_format)
    report.render(fmt)


def _population(dist, data):
    if dist and data:
        raise ConfigurationError("Give either --dist or --data, not both")
    if data:
        dataset = ingest(data, "values")
        return DistributionSpec.empirical(dataset.values)
    if dist:
        return distribution_from_string(dist)
    raise ConfigurationError("A population is required (--dist or --data)")


def _datasets(control, treatment, paired_file):
    if paired_file:
        if control or treatment:
            raise ConfigurationError("Use either --paired-file or two files")
        return ingest(paired_file, "paired")
    if not (control and treatment):
        raise ConfigurationError("Two files (control, treatment) or --paired-file are required")
    x, y = ingest(control, "values"), ingest(treatment, "values")
    return x, y


def _simulation_config(store, epsilon, k, alpha, B, seed, grid, workers, methods):
    if grid is None:
        grid = store["grid"]
    if isinstance(grid, str):
        grid = grid_from_string(grid)
    return SimulationConfig(
        alpha=store.resolve("alpha", alpha),
        epsilon=epsilon,
        k=store.resolve("k", k),
        B=store.resolve("B", B),
        seed=store.resolve("seed", seed),
        N_values=grid,
        methods=methods,
        workers=store.resolve("workers", workers),
        max_redraws=store["max_redraws"],
    )


def _log_row(row):
    log.info(
        "N=%d %-9s dev_L=%+.4f dev_R=%+.4f pass=%s"
        % (row["N"], row["method"], row["dev_L"], row["dev_R"], row["pass"])
    )


@click.group(cls=ReliabGroup)
@click.option("-v", "--verbose", count=True, help="Repeat for more log output")
@click.option(
    "--config",
    "config_file",
    type=click.Path(dir_okay=False),
    help="YAML file with default values",
)
@click.version_option(__version__)
@click.pass_context
def cli(ctx, verbose, config_file):
    """Reliable two-sample tests for skewed, unequally allocated A/B data."""
    logging.basicConfig(
        stream=sys.stderr,
        level=LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)],
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    store = get_default_config_store()
    if config_file:
        store.update_from_yaml(config_file)
    ctx.obj = store


@cli.command()
@click.argument("control", required=False, type=click.Path(dir_okay=False))
@click.argument("treatment", required=False, type=click.Path(dir_okay=False))
@click.option("--paired-file", type=click.Path(dir_okay=False), help="group,value file")
@click.option("--alpha", type=float, help="Nominal level")
@click.option("--epsilon", type=float, help="Tolerance of the reliability check")
@output_option
@click.pass_context
def analyze(ctx, control, treatment, paired_file, alpha, epsilon, output_format):
    """Welch test with classic and Edgeworth-corrected p-values."""
    store = _store(ctx)
    alpha = store.resolve("alpha", alpha)
    epsilon = store.resolve("epsilon", epsilon)
    x_data, y_data = _datasets(control, treatment, paired_file)
    x, y = x_data.summary(), y_data.summary()
    design = DesignContext.from_summaries(x, y)

    result = welch_test(x, y, alpha=alpha)
    cumulants = difference_cumulants(x, y, design)
    inputs = inputs_from_summaries(x, y, alpha, epsilon)
    coefs = coefficients(inputs)
    threshold = n_min_second(coefs.a1, coefs.a2, epsilon)
    warnings = list(result["warnings"]) + list(inputs.warnings)
    if threshold is not None and design.N < threshold:
        msg = (
            "N=%d is below the plug-in reliability threshold %d; "
            "prefer the corrected p-value" % (design.N, threshold)
        )
        log.warning(msg)
        warnings.append(msg)

    table = [
        dict(method="classic", T=result.T, p_value=result.p_classic, decision=result.decision),
        dict(
            method="corrected",
            T=result.T,
            p_value=result.p_corrected,
            decision=result.decision_corrected,
        ),
    ]
    report = Report(
        "analyze",
        title="Welch test (N=%d, k=%.4g)" % (design.N, design.k),
        results=dict(
            test=result,
            control=dict(x.json(), source=x_data.source),
            treatment=dict(y.json(), source=y_data.source),
            design=design,
            difference_cumulants=cumulants,
            coefficients=coefs,
            n_min_first=n_min_first(coefs.a1, epsilon),
            n_min_second=threshold,
        ),
        table=table,
        metadata=dict(config=dict(alpha=alpha, epsilon=epsilon)),
        warnings=warnings,
    )
    _emit(ctx, report, output_format)


@cli.command()
@click.option("--sigma-x", type=float)
@click.option("--gamma-x", type=float)
@click.option("--tau-x", type=float)
@click.option("--sigma-y", type=float)
@click.option("--gamma-y", type=float)
@click.option("--tau-y", type=float)
@click.option("--gamma", type=float, help="Skewness of both groups")
@click.option("--tau", type=float, help="Kurtosis of both groups")
@click.option("--sigma", type=float, default=1.0, show_default=True)
@click.option("--equal-variance", is_flag=True, help="Both groups share sigma, gamma, tau")
@click.option("--dist", help="Population of both groups")
@click.option("--dist-y", help="Treatment population, if it differs")
@click.option(
    "--from-data",
    multiple=True,
    type=click.Path(dir_okay=False),
    help="Pilot data: a paired file or control and treatment files",
)
@click.option("--alpha", type=float)
@click.option("--epsilon", type=float)
@click.option("--k", type=float, help="Allocation ratio n_y / n_x")
@click.option("--n", "query", type=int, multiple=True, help="Report deviations at N")
@click.option("--conservative", is_flag=True, help="Bound both tails at N_min^(2)")
@output_option
@click.pass_context
def plan(
    ctx,
    sigma_x,
    gamma_x,
    tau_x,
    sigma_y,
    gamma_y,
    tau_y,
    gamma,
    tau,
    sigma,
    equal_variance,
    dist,
    dist_y,
    from_data,
    alpha,
    epsilon,
    k,
    query,
    conservative,
    output_format,
):
    """Minimum total sample sizes and predicted per-tail deviations."""
    store = _store(ctx)
    alpha = store.resolve("alpha", alpha)
    epsilon = store.resolve("epsilon", epsilon)
    explicit = [sigma_x, gamma_x, tau_x, sigma_y, gamma_y, tau_y]

    if from_data:
        if len(from_data) == 1:
            x_data, y_data = ingest(from_data[0], "paired")
        elif len(from_data) == 2:
            x_data, y_data = ingest(from_data[0], "values"), ingest(from_data[1], "values")
        else:
            raise ConfigurationError("--from-data takes one paired file or two files")
        x, y = x_data.summary(), y_data.summary()
        inputs = inputs_from_summaries(x, y, alpha, epsilon, k=k)
    else:
        k = store.resolve("k", k)
        if dist:
            x_spec = distribution_from_string(dist)
            y_spec = distribution_from_string(dist_y) if dist_y else None
            inputs = inputs_from_distribution(x_spec, alpha, epsilon, k, y_spec=y_spec)
        elif gamma is not None or tau is not None or equal_variance:
            if gamma is None or tau is None:
                raise ConfigurationError("--gamma and --tau are both required")
            inputs = PlanningInputs.equal_variance(alpha, epsilon, k, gamma, tau, sigma=sigma)
        elif all(v is not None for v in explicit):
            inputs = PlanningInputs(
                alpha,
                epsilon,
                k,
                PopulationCumulants.from_sigma(sigma_x, gamma_x, tau_x),
                PopulationCumulants.from_sigma(sigma_y, gamma_y, tau_y),
            )
        else:
            raise ConfigurationError(
                "Give --sigma-x/--gamma-x/--tau-x and --sigma-y/--gamma-y/--tau-y, "
                "or --gamma/--tau, or --dist, or --from-data"
            )

    result = make_plan(inputs, query=query, conservative=conservative)
    if query:
        columns = ["N", "dev_L_first", "dev_R_first", "dev_L", "dev_R", "reliable"]
        table = result.deviations
    else:
        columns = ["order", "root", "coefficient", "n_min"]
        table = [
            dict(order="first", root="closed form", coefficient=result.coefficients.a1,
                 n_min=result.n_min_first),
            dict(order="second", root="closed form", coefficient=result.coefficients.a2,
                 n_min=result["n_min_second_equation"]),
            dict(order="second", root="conservative", coefficient=result.coefficients.a2,
                 n_min=result["n_min_second_conservative"]),
        ]
    report = Report(
        "plan",
        title="Sample size plan (alpha=%g, epsilon=%g, k=%g)"
        % (inputs.alpha, inputs.epsilon, inputs.k),
        results=dict(
            a1=result.coefficients.a1,
            a2=result.coefficients.a2,
            n_min_first=result.n_min_first,
            n_min_second=result.n_min_second,
            n_min_second_conservative=result["n_min_second_conservative"],
            plan=result,
        ),
        table=table,
        columns=columns,
        metadata=dict(config=dict(alpha=inputs.alpha, epsilon=inputs.epsilon, k=inputs.k)),
        warnings=result.warnings,
    )
    _emit(ctx, report, output_format)


@cli.command()
@source_options
@simulation_options
@click.option("--epsilon", type=float)
@click.option("--methods", help="classic, corrected or both")
@click.option(
    "--emit-density",
    type=click.Path(dir_okay=False, writable=True),
    help="Write a histogram of the simulated statistics (CSV)",
)
@click.option("--density-n", type=int, help="Total size of the histogram (default: middle of the grid)")
@click.option("--bins", type=int, help="Histogram bins")
@output_option
@click.pass_context
def simulate(
    ctx,
    dist,
    data,
    k,
    alpha,
    B,
    seed,
    grid,
    workers,
    epsilon,
    methods,
    emit_density,
    density_n,
    bins,
    output_format,
):
    """Empirical per-tail Type I errors over a grid of total sizes."""
    store = _store(ctx)
    spec = _population(dist, data)
    config = _simulation_config(
        store,
        store.resolve("epsilon", epsilon),
        k,
        alpha,
        B,
        seed,
        grid,
        workers,
        store.resolve("methods", methods),
    )
    simulator = Simulator(config, on_row=_log_row)
    tails = simulator.estimate(spec)
    warnings = list(tails["warnings"])
    results = dict(tails=tails)

    if emit_density:
        sizes = tails["config"]["N_values"]
        N = density_n or sizes[len(sizes) // 2]
        histogram = density_histogram(
            simulator.statistics(spec, N), bins=store.resolve("bins", bins)
        )
        with open(emit_density, "w") as fid:
            fid.write(Report("density", table=histogram).to_csv())
        log.info("Wrote density of T at N=%d to %s" % (N, emit_density))
        results["density"] = dict(N=N, path=os.path.abspath(emit_density), bins=len(histogram))

    columns = [
        "N",
        "method",
        "alpha_hat_L",
        "se_L",
        "dev_L",
        "alpha_hat_R",
        "se_R",
        "dev_R",
        "total_dev",
        "pass",
        "predicted_second_L",
        "predicted_second_R",
    ]
    report = Report(
        "simulate",
        title="Tail errors, %s, k=%g, B=%d" % (spec, config.k, config.B),
        results=results,
        table=tails.rows,
        columns=columns,
        metadata=dict(seed=config.seed, config=tails["config"], distribution=spec.json()),
        warnings=warnings,
    )
    _emit(ctx, report, output_format)


@cli.command()
@source_options
@simulation_options
@click.option("--epsilon", "epsilons", help="Comma separated tolerances")
@click.option(
    "--method",
    type=click.Choice(["classic", "corrected"]),
    default="corrected",
    show_default=True,
)
@output_option
@click.pass_context
def sweep(ctx, dist, data, k, alpha, B, seed, grid, workers, epsilons, method, output_format):
    """Theoretical thresholds next to the smallest passing simulated size."""
    store = _store(ctx)
    spec = _population(dist, data)
    if epsilons:
        epsilon_values = floats_from_string(epsilons)
    else:
        epsilon_values = [store["epsilon"]]
    config = _simulation_config(
        store,
        statistics.median(epsilon_values),
        k,
        alpha,
        B,
        seed,
        grid,
        workers,
        [method],
    )
    tails = Simulator(config, on_row=_log_row).estimate(spec)
    prior = spec.cumulants()

    table = []
    warnings = list(tails["warnings"])
    for epsilon in epsilon_values:
        inputs = PlanningInputs(config.alpha, epsilon, config.k, prior, prior)
        warnings.extend(w for w in inputs.warnings if w not in warnings)
        coefs = coefficients(inputs)
        table.append(
            dict(
                epsilon=epsilon,
                n_min_first=n_min_first(coefs.a1, epsilon),
                n_min_second=n_min_second(coefs.a1, coefs.a2, epsilon),
                n_min_second_conservative=n_min_second(
                    coefs.a1, coefs.a2, epsilon, conservative=True
                ),
                empirical_min_n=tails.min_passing_n(method, epsilon),
            )
        )
    report = Report(
        "sweep",
        title="Threshold sweep, %s, k=%g, method=%s" % (spec, config.k, method),
        results=dict(tails=tails),
        table=table,
        metadata=dict(seed=config.seed, config=tails["config"], distribution=spec.json()),
        warnings=warnings,
    )
    _emit(ctx, report, output_format)


def main(argv=None):
    return cli.main(args=argv, prog_name="reliab")


if __name__ == "__main__":
    main()
