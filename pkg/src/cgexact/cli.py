"""Command-line interface.

Exit codes are a stable contract: 0 success (including coefficients that are
legitimately zero), 1 verification failure, 2 bad arguments.  Results go to
standard output, progress and diagnostics to standard error.
"""

from __future__ import annotations

import json
import sys

import click

from . import __version__
from .bench import run_benchmark
from .exactval import to_decimal, to_text
from .halfint import (
    CouplingSpec,
    QuantumNumberError,
    TwoJ,
    parse_half_integer,
    parse_projection,
    u_of,
)
from .omega import (
    ROUTES,
    extract_cg,
    lambda_and_v,
    lambda_minus_v_pow,
    omega0,
    omega0_reciprocal,
    omega_n,
    tilde_omega,
)
from .racah import verify_against_oracles
from .tables import FORMATS, build_table, render

MATRIX_KINDS = ("omega", "omega0", "lambda", "v", "lv", "tilde", "reciprocal")


def _usage(exc: Exception) -> click.UsageError:
    return click.UsageError(str(exc))


def _j_arg(text: str, name: str) -> TwoJ:
    try:
        return parse_half_integer(text)
    except QuantumNumberError as exc:
        raise _usage(f"{name}: {exc}") from exc


def _m_arg(text: str, name: str):
    try:
        return parse_projection(text)
    except QuantumNumberError as exc:
        raise _usage(f"{name}: {exc}") from exc


@click.group()
@click.version_option(__version__, prog_name="cgexact")
def cli() -> None:
    """Exact Clebsch-Gordan coefficients from binomial state counting.

    Quantum numbers are half-integer strings such as 2, 3/2 or 1.5.

    \b
    Examples:
      cgexact coeff --j1 3/2 --j2 1 --j 3/2 --m1 -1/2 --m2 1
      cgexact table --j1 1 --j2 1 --format csv
      cgexact omega --j1 3/2 --j2 1 --n 1
      cgexact verify --max-2j 8
      cgexact bench --j1 30 --j2 30
    """


@cli.command()
@click.option("--j1", "j1_text", required=True, metavar="J1", help="First angular momentum.")
@click.option("--j2", "j2_text", required=True, metavar="J2", help="Second angular momentum.")
@click.option("--j", "j_text", required=True, metavar="J", help="Total angular momentum.")
@click.option("--m1", "m1_text", required=True, metavar="M1", help="Projection of J1.")
@click.option("--m2", "m2_text", required=True, metavar="M2", help="Projection of J2.")
@click.option("--route", type=click.Choice(ROUTES), default="product", show_default=True)
@click.option("--digits", type=click.IntRange(min=1), default=None,
              help="Also print a decimal approximation with this many significant digits.")
def coeff(j1_text, j2_text, j_text, m1_text, m2_text, route, digits) -> None:
    """Print one coefficient <(M1,M2)|J,M1+M2> in exact form."""
    j1, j2 = _j_arg(j1_text, "--j1"), _j_arg(j2_text, "--j2")
    total = _j_arg(j_text, "--j")
    m1, m2 = _m_arg(m1_text, "--m1"), _m_arg(m2_text, "--m2")
    try:
        spec = CouplingSpec.from_total(j1, j2, total)
        u1, u2 = u_of(j1, m1), u_of(j2, m2)
    except QuantumNumberError as exc:
        raise _usage(exc)
    value = extract_cg(omega_n(j1, j2, spec.n, route), u1, u2)
    line = to_text(value)
    if digits is not None:
        line += f" ({to_decimal(value, digits)})"
    click.echo(line)


@cli.command()
@click.option("--j1", "j1_text", required=True, metavar="J1", help="First angular momentum.")
@click.option("--j2", "j2_text", required=True, metavar="J2", help="Second angular momentum.")
@click.option("--route", type=click.Choice(ROUTES), default="product", show_default=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="text", show_default=True)
@click.option("--digits", type=click.IntRange(min=1), default=None,
              help="Add a decimal column to json/csv output.")
def table(j1_text, j2_text, route, fmt, digits) -> None:
    """Print the complete decomposition table for a (J1, J2) pair."""
    j1, j2 = _j_arg(j1_text, "--j1"), _j_arg(j2_text, "--j2")
    click.echo(render(build_table(j1, j2, route), fmt, digits), nl=False)


@cli.command()
@click.option("--j1", "j1_text", required=True, metavar="J1", help="First angular momentum.")
@click.option("--j2", "j2_text", required=True, metavar="J2", help="Second angular momentum.")
@click.option("--n", "n", type=click.IntRange(min=0), default=0, show_default=True,
              help="Number of spin-0 pairs (total J = J1+J2-n).")
@click.option("--kind", type=click.Choice(MATRIX_KINDS), default="omega", show_default=True,
              help="Which matrix to print.")
@click.option("--route", type=click.Choice(ROUTES), default="product", show_default=True,
              help="Construction route for --kind omega.")
@click.option("--format", "fmt", type=click.Choice(("text", "json")), default="text",
              show_default=True)
def omega(j1_text, j2_text, n, kind, route, fmt) -> None:
    """Print a construction matrix as comma-separated rows (u1 = 0 first)."""
    j1, j2 = _j_arg(j1_text, "--j1"), _j_arg(j2_text, "--j2")
    try:
        if kind == "omega":
            matrix = omega_n(j1, j2, n, route)
        elif kind == "omega0":
            matrix = omega0(j1, j2)
        elif kind == "lambda":
            matrix = lambda_and_v(j1, j2)[0]
        elif kind == "v":
            matrix = lambda_and_v(j1, j2)[1]
        elif kind == "lv":
            matrix = lambda_minus_v_pow(j1, j2, n)
        elif kind == "tilde":
            matrix = tilde_omega(j1, j2, n)
        else:
            matrix = omega0_reciprocal(j1, j2)
    except QuantumNumberError as exc:
        raise _usage(exc)
    if fmt == "json":
        click.echo(json.dumps(matrix.to_json_dict(), sort_keys=True))
    else:
        click.echo(matrix.to_text())


@cli.command()
@click.option("--max-2j", "bound", type=click.IntRange(min=0), default=12, show_default=True,
              help="Check every pair with 2*J1 <= 2*J2 <= this bound.")
@click.option("--digits", type=click.IntRange(min=30), default=50, show_default=True,
              help="Working precision of the recursion oracle.")
@click.option("--skip-recursion", is_flag=True,
              help="Run only the exact checks, not the numerical recursion.")
@click.option("--format", "fmt", type=click.Choice(("text", "json")), default="text",
              show_default=True)
def verify(bound, digits, skip_recursion, fmt) -> None:
    """Cross-check the matrix engine against both oracles over a sweep."""
    reports = []
    for two_j2 in range(bound + 1):
        for two_j1 in range(two_j2 + 1):
            report = verify_against_oracles(
                TwoJ(two_j1), TwoJ(two_j2), digits, include_recursion=not skip_recursion
            )
            click.echo(
                f"2J1={two_j1} 2J2={two_j2}: {report.checks_run} checks, "
                f"{len(report.failures)} failures",
                err=True,
            )
            reports.append(report)
    failed = [r for r in reports if not r.passed]
    if fmt == "json":
        click.echo(json.dumps([r.to_json_dict() for r in reports], sort_keys=True))
    elif failed:
        for report in failed:
            for failure in report.failures:
                click.echo(f"FAIL pair ({report.two_j1},{report.two_j2}): {failure}")
        click.echo(f"verification failed for {len(failed)} pair(s)")
    else:
        click.echo("all checks passed")
    if failed:
        sys.exit(1)


@cli.command()
@click.option("--j1", "j1_text", default="30", show_default=True, metavar="J1",
              help="First angular momentum.")
@click.option("--j2", "j2_text", default="30", show_default=True, metavar="J2",
              help="Second angular momentum.")
@click.option("--samples", type=click.IntRange(min=1), default=100, show_default=True,
              help="Coefficients to compare for exact equality.")
@click.option("--seed", type=int, default=7041969, show_default=True)
@click.option("--route", type=click.Choice(ROUTES), default="product", show_default=True)
def bench(j1_text, j2_text, samples, seed, route) -> None:
    """Time full-table construction: matrix route vs closed-form route."""
    j1, j2 = _j_arg(j1_text, "--j1"), _j_arg(j2_text, "--j2")
    click.echo(f"building both tables for J1={j1}, J2={j2} ...", err=True)
    report = run_benchmark(j1, j2, samples=samples, seed=seed, route=route)
    click.echo(report.to_text())
    if not report.agreed:
        sys.exit(1)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
