"""
Command-line interface for stanleydist.

Usage:
    stanleydist eval --perm 2,1,3                 # statistic of one permutation
    stanleydist dist --n 10 --format json         # exact counts b_{n,k}
    stanleydist moments --n-range 100:200:10 --out m.csv
    stanleydist fit --input m.csv --moment alpha_4
    stanleydist sample --n 8 --samples 200000 --seed 1 --compare-exact
    stanleydist verify                            # full reproduction suite

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
Setting STANLEYDIST_OUT_DIR makes commands without --out write a default
file name inside that directory instead of printing to stdout.
"""

from __future__ import annotations

import io
import json
import os
import re
import sys
from pathlib import Path

import click

from .asymfit import FitError, FitReport, compare, fit_inverse_powers, fit_odd_scaled
from .distexact import DEFAULT_N_MAX, DistributionTable, ResourceLimitError, distribution_dp, iter_distributions
from .formats import (
    MomentsCSVError,
    histogram_to_csv,
    histogram_to_json,
    read_moments_csv,
    table_to_csv,
    table_to_json,
    write_moments_csv,
)
from .moments import DEFAULT_MAX_MOMENT, gaussian_moment, moments_from_table, paper_even_correction, paper_odd_coeffs
from .montecarlo import empirical_histogram, tv_distance
from .permcore import Convention, Permutation, as_linear
from .verify import run_checks

__all__ = ["main"]

OUT_DIR_ENV = "STANLEYDIST_OUT_DIR"

CONVENTION = click.option(
    "--convention",
    type=click.Choice([c.value for c in Convention]),
    default=Convention.FIRST_STEP_DESCENT.value,
    show_default=True,
    help="Which comparison an alternating subsequence starts with.",
)


def _emit(text: str, out: str | None, default_name: str) -> None:
    if out is None and os.environ.get(OUT_DIR_ENV):
        out = str(Path(os.environ[OUT_DIR_ENV]) / default_name)
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="utf-8")


def parse_n_range(text: str) -> list[int]:
    """'a:b:s' -> [a, a+s, ..., <= b] (stop inclusive)."""
    m = re.fullmatch(r"\s*(\d+):(\d+)(?::(\d+))?\s*", text)
    if not m:
        raise click.BadParameter(f"expected start:stop:step, got {text!r}")
    start, stop, step = int(m[1]), int(m[2]), int(m[3] or 1)
    if start < 1 or step < 1 or stop < start:
        raise click.BadParameter(f"empty or invalid range {text!r}")
    return list(range(start, stop + 1, step))


@click.group()
def main():
    """Exact law and moments of the longest alternating subsequence of a random permutation."""


@main.command("eval")
@click.option("--perm", required=True, help="Comma-separated one-line permutation, e.g. 2,1,3.")
@CONVENTION
def cmd_eval(perm: str, convention: str):
    """Print the longest-alternating-subsequence length of one permutation."""
    try:
        w = Permutation(tuple(int(x) for x in perm.split(",")))
    except ValueError:
        raise click.UsageError(f"not a permutation: {perm!r}")
    click.echo(as_linear(w, Convention.parse(convention)))


@main.command("dist")
@click.option("--n", "n", type=int, required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="json", show_default=True)
@click.option("--n-max", type=int, default=DEFAULT_N_MAX, show_default=True, help="DP size limit.")
@click.option("--out", default=None, help="Output file (default stdout).")
@CONVENTION
def cmd_dist(n: int, fmt: str, n_max: int, out: str | None, convention: str):
    """Exact counts of permutations of length n by statistic value."""
    if n < 1:
        raise click.BadParameter("n must be >= 1", param_hint="--n")
    try:
        t = distribution_dp(n, Convention.parse(convention), n_max=n_max)
    except ResourceLimitError as exc:
        raise click.UsageError(str(exc))
    text = table_to_json(t) if fmt == "json" else table_to_csv(t)
    _emit(text, out, f"dist_{n}.{fmt}")


@main.command("moments")
@click.option("--n-range", "n_range", required=True, help="start:stop:step, stop inclusive.")
@click.option("--max-moment", type=int, default=DEFAULT_MAX_MOMENT, show_default=True)
@click.option("--n-max", type=int, default=DEFAULT_N_MAX, show_default=True, help="DP size limit.")
@click.option("--out", default=None, help="Output CSV (default stdout).")
def cmd_moments(n_range: str, max_moment: int, n_max: int, out: str | None):
    """Exact moments for each n in a range, as a CSV of p/q strings."""
    ns = parse_n_range(n_range)
    if max_moment < 2:
        raise click.BadParameter("must be >= 2", param_hint="--max-moment")
    if ns[-1] > n_max:
        raise click.UsageError(f"n={ns[-1]} exceeds the DP limit n_max={n_max}")
    wanted = set(ns)
    tables = (moments_from_table(t, max_moment) for t in iter_distributions(ns[-1], n_max=n_max) if t.n in wanted)


    buf = io.StringIO()
    write_moments_csv(tables, buf, max_moment)
    _emit(buf.getvalue(), out, "moments.csv")


def _comparisons(kind: str, order: int, series, digits: int):
    r = order // 2
    if kind == "alpha" and r >= 1:
        c0, c1 = series.exact[0], series.exact[1] if series.order >= 1 else None
        rows = [compare("c_0 vs gaussian moment", gaussian_moment(r), c0, digits)]
        if c1 is not None and c0:
            rows.append(compare("c_1/c_0 vs even correction", paper_even_correction(r), c1 / c0, digits))
        return rows
    if kind == "q" and r >= 1:
        pc = paper_odd_coeffs(r)
        rows = [compare("c_0 vs odd leading coefficient", pc.leading(digits), series.coefficients[0], digits)]
        if series.order >= 1:
            rows.append(compare("c_1 vs odd first-order coefficient", pc.first_order(digits), series.coefficients[1], digits))
        return rows
    return []


@main.command("fit")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--moment", required=True, help="Column to fit: alpha_<even>, q_<odd>, or any other column.")
@click.option("--orders", type=int, default=3, show_default=True, help="Highest power J of 1/n.")
@click.option("--precision", type=int, default=64, show_default=True, help="Significant digits.")
@click.option("--window", type=click.Choice(["consecutive", "last2"]), default="consecutive", show_default=True)
@click.option("--n-range", "n_range", default=None, help="Restrict to these n (start:stop:step).")
@click.option("--out", default=None, help="Output JSON (default stdout).")
def cmd_fit(input_path, moment, orders, precision, window, n_range, out):
    """Fit an inverse-power series to one column of a moments CSV.

    q_<odd> columns are fitted as alpha * sqrt(n), which needs m_2 as well.
    """
    m = re.fullmatch(r"(alpha|q)_(\d+)", moment)
    kind, order = (m[1], int(m[2])) if m else ("raw", 0)
    required = [moment] + (["m_2"] if kind == "q" else [])
    try:
        with open(input_path, encoding="utf-8", newline="") as fh:
            rows = read_moments_csv(fh, required)
    except MomentsCSVError as exc:
        raise click.UsageError(str(exc))
    if n_range:
        keep = set(parse_n_range(n_range))
        rows = {n: row for n, row in rows.items() if n in keep}
    rows = {n: row for n, row in sorted(rows.items()) if moment in row}
    try:
        if kind == "q":
            series = fit_odd_scaled(
                {n: row[moment] for n, row in rows.items()},
                {n: row["m_2"] for n, row in rows.items()},
                orders,
                window,
                precision,
            )
        else:
            series = fit_inverse_powers({n: row[moment] for n, row in rows.items()}, orders, window, precision)
    except (FitError, ValueError) as exc:
        raise click.UsageError(str(exc))
    report = FitReport(moment, list(rows), series, _comparisons(kind, order, series, precision))
    _emit(json.dumps(report.to_dict(), indent=2) + "\n", out, f"fit_{moment}.json")


@main.command("sample")
@click.option("--n", "n", type=int, required=True)
@click.option("--samples", type=int, required=True)
@click.option("--seed", type=int, required=True, help="64-bit seed for the PCG64 stream.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="json", show_default=True)
@click.option("--compare-exact", is_flag=True, help="Also report the TV distance to the exact law.")
@click.option("--out", default=None, help="Output file (default stdout).")
@CONVENTION
def cmd_sample(n, samples, seed, fmt, compare_exact, out, convention):
    """Histogram of the statistic over seeded uniform random permutations."""
    if n < 1:
        raise click.BadParameter("n must be >= 1", param_hint="--n")
    if samples < 1:
        raise click.BadParameter("must be >= 1", param_hint="--samples")
    if not 0 <= seed < 2**64:
        raise click.BadParameter("must fit in 64 unsigned bits", param_hint="--seed")
    conv = Convention.parse(convention)
    h = empirical_histogram(n, samples, seed, conv)
    tv = tv_distance(h, distribution_dp(n, conv)) if compare_exact else None
    if fmt == "json":
        _emit(histogram_to_json(h, tv), out, f"sample_{n}.json")
    else:
        _emit(histogram_to_csv(h), out, f"sample_{n}.csv")
        if tv is not None:
            click.echo(f"tv_distance={tv:.6f}", err=True)


def _corrupt(t: DistributionTable) -> DistributionTable:
    if t.n != 4:
        return t
    counts = list(t.counts)
    counts[1], counts[2] = counts[2], counts[1]
    return DistributionTable(t.n, t.convention, tuple(counts))


@main.command("verify")
@click.option("--n-max", type=int, default=200, show_default=True, help="Largest n in the exact checks.")
@click.option("--eval-max-n", type=int, default=9, show_default=True, help="Exhaustive evaluator check up to this n.")
@click.option("--samples", type=int, default=200_000, show_default=True, help="Monte Carlo sample size.")
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--out", default=None, help="Also write the JSON report here.")
@click.option("--inject-fault", is_flag=True, hidden=True)
def cmd_verify(n_max, eval_max_n, samples, seed, fmt, out, inject_fault):
    """Run the reproduction suite; exit 1 if any check fails."""
    if n_max < 1:
        raise click.BadParameter("must be >= 1", param_hint="--n-max")
    if not 1 <= eval_max_n <= 10:
        raise click.BadParameter("must be in 1..10", param_hint="--eval-max-n")
    report = run_checks(n_max, _corrupt if inject_fault else None, eval_max_n, samples, seed)
    doc = json.dumps(report.to_dict(), indent=2) + "\n"
    if out:
        Path(out).write_text(doc, encoding="utf-8")
    click.echo(doc if fmt == "json" else report.render(), nl=False)
    sys.exit(report.exit_status)
