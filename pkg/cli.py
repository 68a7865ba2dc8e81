"""Command-line front end: enumerate, verify, series, criterion and asymptotics.

Exit codes: 0 on success, 1 when a verification check fails, 2 on bad input.
Results go to stdout (or --output); logs go to stderr.
"""
import csv
import io
import logging
import os
from typing import List, Optional

import click
from pydantic import ValidationError

from config import configure_logging, settings
from core.exceptions import VerificationError, WalkError
from schemas.asymptotics import ComparisonReport
from schemas.criterion import CriterionReport
from schemas.run_config import OutputFormat, RunConfig, SeriesKind, Subcommand
from schemas.series import SeriesReport
from schemas.verification import VerificationReport
from schemas.walks import WalkTableOut
from services.runs import Report, RunService

logger = logging.getLogger(__name__)

EXIT_FAILED = 1
EXIT_BAD_INPUT = 2


def _csv(header: List[str], rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def render_csv(report: Report) -> str:
    if isinstance(report, WalkTableOut):
        if report.values is not None:
            return _csv(["n", "count"], enumerate(report.values))
        return _csv(["n", "i", "j", "count"], ((e.n, e.i, e.j, e.count) for e in report.entries))
    if isinstance(report, ComparisonReport):
        if report.fit is None:
            return _csv(["n"], ([n] for n in report.nonzero_indices))
        return _csv(["n", "a_n", "mu_n", "alpha_n"], ((s.n, s.a_n, s.mu_n, s.alpha_n) for s in report.fit.samples))
    if isinstance(report, VerificationReport):
        return _csv(
            ["name", "status", "order_checked", "detail"],
            ((r.name, r.status.value, "" if r.order_checked is None else r.order_checked, r.detail or "")
             for r in report.results),
        )
    raise click.UsageError("csv output is available for enumerate, verify and asymptotics")


def render_text(report: Report) -> str:
    lines: List[str] = []
    if isinstance(report, WalkTableOut):
        lines.append(f"steps {report.steps} from ({report.start[0]},{report.start[1]})")
        if report.values is not None:
            lines.append(f"{report.aggregate}: {', '.join(report.values)}")
        else:
            lines += [f"n={e.n} ({e.i},{e.j}): {e.count}" for e in report.entries]
    elif isinstance(report, VerificationReport):
        for result in report.results:
            order = "" if result.order_checked is None else f" through t^{result.order_checked}"
            detail = f" ({result.detail})" if result.detail else ""
            lines.append(f"{result.status.value.upper():7} {result.name}{order}{detail}")
        lines.append(f"{report.model}: {'all checks passed' if report.passed else 'FAILED'}")
    elif isinstance(report, SeriesReport):
        lines += [f"{s.name} = {s.text}" for s in report.series]
        for pair in report.orbit:
            flag = "substitutable" if pair.substitutable else "not substitutable"
            lines.append(f"[{pair.produced_by}, {flag}]")
            lines.append(f"  X = {pair.x.text}")
            lines.append(f"  Y = {pair.y.text}")
    elif isinstance(report, CriterionReport):
        for key, value in report.dict().items():
            if value is not None:
                lines.append(f"{key}: {value}")
    elif isinstance(report, ComparisonReport):
        if report.target is not None:
            target = report.target
            lines.append(f"{target.model} {target.aggregate}: expected mu = {target.mu}, alpha = {target.alpha}")
        lines.append(f"terms 0..{report.max_n} from {report.source}")
        if report.fit is None:
            lines.append(f"structural zero; nonzero at n = {report.nonzero_indices}")
        else:
            fit = report.fit
            lines.append(f"mu ~ {fit.mu_estimate}  alpha ~ {fit.alpha_estimate}  ({fit.precision} digits)")
            lines.append(f"support {fit.offset} + {fit.period}k, stride {fit.stride}")
            if report.mu_relative_error is not None:
                lines.append(f"relative mu error {report.mu_relative_error}, alpha error {report.alpha_error}")
            lines.append("mu extrapolation: " + ", ".join(fit.mu_table))
            lines.append("alpha tableau:")
            lines += ["  " + "  ".join(row) for row in fit.alpha_table]
            trend = "shrinking" if fit.monotone else "not shrinking"
            lines.append(f"deviations per doubling window: mu {fit.mu_deviations}, alpha {fit.alpha_deviations} ({trend})")
    return "\n".join(lines) + "\n"


def render(report: Report, output_format: OutputFormat) -> str:
    if output_format == OutputFormat.CSV:
        return render_csv(report)
    if output_format == OutputFormat.TEXT:
        return render_text(report)
    return report.json(indent=2) + "\n"


def _write(text: str, output: Optional[str]) -> None:
    if output is None:
        click.echo(text, nl=False)
        return
    path = output if os.path.isabs(output) else os.path.join(settings.OUTPUT_DIR, output)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    logger.info(f"wrote {path}")


def run(ctx: click.Context, **options) -> None:
    """
    Validate the options, run the subcommand and emit its report.
    """
    try:
        config = RunConfig(**options)
        report = RunService(config).execute()
        _write(render(report, config.format), config.output)
    except ValidationError as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(EXIT_BAD_INPUT)
    except VerificationError as exc:
        click.echo(f"verification error: {exc}", err=True)
        ctx.exit(EXIT_FAILED)
    except WalkError as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(EXIT_BAD_INPUT)
    if isinstance(report, VerificationReport) and not report.passed:
        ctx.exit(EXIT_FAILED)


_formats = click.Choice([f.value for f in OutputFormat])


def source_options(command):
    command = click.option("--start", default=None, help="Start point i,j for a raw step set.")(command)
    command = click.option("--steps", default=None, help='Step set, e.g. "(0,1);(1,0);(0,-1);(-1,0)".')(command)
    command = click.option("--model", default=None, help="Catalog model: square, diagonal, kreweras, knight.")(command)
    return command


def output_options(command):
    command = click.option("--output", "-o", default=None, help="File to write, relative to WALKS_OUTPUT_DIR.")(command)
    command = click.option("--format", "output_format", type=_formats, default="json", show_default=True)(command)
    return command


@click.group()
@click.option("--log-level", default=None, help="Overrides WALKS_LOG_LEVEL.")
def cli(log_level: Optional[str]) -> None:
    """Exact enumeration and kernel-method checks for walks in the quarter plane."""
    configure_logging(log_level)


@cli.command("enumerate")
@source_options
@click.option("--max-len", "max_length", type=int, default=None, help="Largest walk length.")
@click.option("--aggregate", default=None, help="endpoint(i,j), origin, x_axis or free.")
@output_options
@click.pass_context
def enumerate_command(ctx, model, steps, start, max_length, aggregate, output_format, output):
    """Count walks by length and endpoint."""
    run(ctx, subcommand=Subcommand.ENUMERATE, model=model, steps=steps, start=start, max_length=max_length,
        aggregate=aggregate, format=output_format, output=output)


@cli.command("verify")
@click.argument("model", required=False)
@click.option("--steps", default=None, help="Raw step set instead of a catalog model.")
@click.option("--start", default=None)
@click.option("--order", type=int, default=None, help="Truncation order (default from WALKS_DEFAULT_ORDER).")
@output_options
@click.pass_context
def verify_command(ctx, model, steps, start, order, output_format, output):
    """Run every identity and oracle comparison for a model."""
    run(ctx, subcommand=Subcommand.VERIFY, model=model, steps=steps, start=start, order=order,
        format=output_format, output=output)


@cli.command("series")
@source_options
@click.option("--what", type=click.Choice([k.value for k in SeriesKind]), default=SeriesKind.Q.value, show_default=True)
@click.option("--order", type=int, default=None)
@output_options
@click.pass_context
def series_command(ctx, model, steps, start, what, order, output_format, output):
    """Print a series through t^order."""
    run(ctx, subcommand=Subcommand.SERIES, model=model, steps=steps, start=start, what=what, order=order,
        format=output_format, output=output)


@cli.command("criterion")
@source_options
@output_options
@click.pass_context
def criterion_command(ctx, model, steps, start, output_format, output):
    """Check y-symmetry and small horizontal variations."""
    run(ctx, subcommand=Subcommand.CRITERION, model=model, steps=steps, start=start,
        format=output_format, output=output)


@cli.command("asymptotics")
@source_options
@click.option("--aggregate", default="free", show_default=True)
@click.option("--max-n", "max_length", type=int, default=None, help="Largest length to count (default 2000).")
@output_options
@click.pass_context
def asymptotics_command(ctx, model, steps, start, aggregate, max_length, output_format, output):
    """Estimate mu and alpha and compare them with the expected growth."""
    run(ctx, subcommand=Subcommand.ASYMPTOTICS, model=model, steps=steps, start=start, aggregate=aggregate,
        max_length=max_length, format=output_format, output=output)


if __name__ == "__main__":
    cli()
