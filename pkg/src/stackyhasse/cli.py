"""Command-line front end.

    stackyhasse decide 3,2,5 [--json] [--height H]
    stackyhasse invariants "(0;2,2)"        or  "(1,2);(1,3)"
    stackyhasse search 1,0,1 --height 10
    stackyhasse scan --a-range -5:5 --b-range -5:5 --c-range -5:5 \\
        --height 1000 --out catalog.csv --workers 8

`decide` exits 0 when an integral point exists, 2 on an obstruction,
3 for a degenerate form and 1 on any error.
"""

from __future__ import annotations

import json
import math
import sys

import click

from .arith import FactorizationBudgetExceeded
from .catalog import ScanJob, parse_range, run_scan, verdict_record
from .decider import Outcome, Verdict, beh_group, decide
from .forms import BinaryQuadraticForm, discriminant, parse_form
from .invariants import (
    Signature,
    d_of_curve,
    genus,
    parse_points,
    parse_signature,
    pic0_group,
    is_simply_connected,
)
from .oracle import search

EXIT_CODES = {
    Outcome.EXISTS: 0,
    Outcome.OBSTRUCTION: 2,
    Outcome.DEGENERATE: 3,
}
EXIT_ERROR = 1

DEFAULT_DECIDE_HEIGHT = 1000

# lets "-1,0,3" through as a FORM rather than an unknown option
_NEGATIVE_OK = {"ignore_unknown_options": True}


def exit_code(verdict: Verdict) -> int:
    return EXIT_CODES[verdict.outcome]


def _form_arg(ctx, param, value) -> BinaryQuadraticForm:
    try:
        return parse_form(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None


def _pretty(f: BinaryQuadraticForm) -> str:
    out = ""
    for coef, mono in ((f.a, "x^2"), (f.b, "xy"), (f.c, "y^2")):
        if coef == 0:
            continue
        mag = "" if abs(coef) == 1 else str(abs(coef))
        if not out:
            out = ("-" if coef < 0 else "") + mag + mono
        else:
            out += (" - " if coef < 0 else " + ") + mag + mono
    return out or "0"


def _ring(f: BinaryQuadraticForm) -> str:
    return f"Z[1/{math.prod(discriminant(f).bad_primes)}]"


def render_verdict(verdict: Verdict, height: int | None = None) -> str:
    f = verdict.form
    lines = [f"form          {_pretty(f)}"]
    if verdict.outcome is Outcome.DEGENERATE:
        lines.append("discriminant  q = 0")
        lines.append("verdict       DEGENERATE (f is a multiple of a square)")
        return "\n".join(lines)
    disc = discriminant(f)
    places = " ".join(["inf"] + [str(p) for p in disc.bad_primes])
    lines.append(f"discriminant  q = {disc.q} (square class {disc.square_class}), bad places: {places}")
    if verdict.beh_order is not None:
        group = beh_group(f)
        lines.append(f"Beh group     order {group.order}: {{{', '.join(map(str, group))}}} mod q")
    if verdict.outcome is Outcome.OBSTRUCTION:
        lines.append(f"verdict       OBSTRUCTION: no {_ring(f)}-point")
        lines.append(f"witness       d = {verdict.witness_class}")
        lines.append("place   eps   d square   d*q square")
        for ev in verdict.evidence:
            lines.append(
                f"{str(ev.place):<7} {ev.epsilon:+d}    {'yes' if ev.d_square else 'no':<10} "
                f"{'yes' if ev.dq_square else 'no'}"
            )
    else:
        lines.append(f"verdict       EXISTS: {_ring(f)}-point")
        if verdict.witness_point is not None:
            x, y = verdict.witness_point
            lines.append(f"point         [{x}:{y}]")
        elif height is not None:
            lines.append(f"point         none found up to height {height} (unresolved; raise --height)")
        if verdict.epsilon:
            eps = ", ".join(f"eps_{v}={e:+d}" for v, e in verdict.epsilon.items())
            lines.append(f"epsilon       {eps}")
    return "\n".join(lines)


@click.group()
def cli():
    """Integral points on root stacks P^1[sqrt f] over Z[1/2q]."""


@cli.command("decide", context_settings=_NEGATIVE_OK)
@click.argument("form", callback=_form_arg)
@click.option("--json", "as_json", is_flag=True, help="Print one JSON record.")
@click.option("--height", default=DEFAULT_DECIDE_HEIGHT, show_default=True, type=click.IntRange(min=1),
              help="Height bound for the witness-point search.")
def decide_cmd(form, as_json, height):
    """Decide whether the root stack of FORM ("a,b,c") has an integral point."""
    verdict = decide(form)
    used_height = None
    if verdict.outcome is Outcome.EXISTS and verdict.witness_point is None:
        report = search(form, height)
        used_height = height
        hit = report.found or report.stacky_hit
        if hit is not None:
            verdict = verdict.with_point((hit.x, hit.y))
    if as_json:
        click.echo(json.dumps(verdict_record(verdict, used_height)))
    else:
        click.echo(render_verdict(verdict, used_height))
    sys.exit(exit_code(verdict))


@cli.command("invariants")
@click.argument("text")
def invariants_cmd(text):
    """Genus, d_X, Pic^0 and simple connectivity of a signature or point list.

    TEXT is "(g; e1,...,er)" or "(deg,e);(deg,e);...".
    """
    try:
        sig = parse_signature(text)
        points = sig.points()
    except ValueError:
        try:
            points = parse_points(text)
        except ValueError as exc:
            raise click.BadParameter(str(exc), param_hint="TEXT") from None
        # a point of residue degree r splits into r geometric stacky points
        sig = Signature(0, tuple(P.stabilizer_order for P in points for _ in range(P.residue_degree)))
    click.echo(f"signature         {sig}")
    click.echo(f"genus             {genus(sig)}")
    if sig.g_coarse == 0:
        click.echo(f"d_X               {d_of_curve(points)}")
        click.echo(f"Pic^0             {pic0_group(points)}")
    else:
        click.echo("Pic^0             (coarse genus > 0: not computed)")
    click.echo(f"simply connected  {'yes' if is_simply_connected(sig) else 'no'}")


@cli.command("search", context_settings=_NEGATIVE_OK)
@click.argument("form", callback=_form_arg)
@click.option("--height", required=True, type=click.IntRange(min=1))
@click.option("--workers", default=1, show_default=True, type=click.IntRange(min=1))
def search_cmd(form, height, workers):
    """Brute-force search for integral points of height <= H."""
    if form.is_degenerate:
        raise click.UsageError("degenerate form (q = 0)")
    report = search(form, height, workers=workers)
    if report.stacky_hit is not None:
        click.echo(f"stacky point {report.stacky_hit} (zero of f)")
    if report.found is not None:
        click.echo(f"integral point {report.found}")
    else:
        click.echo(f"no integral point of height <= {height}")
    click.echo(f"candidates tested: {report.candidates_tested}")


@cli.command("scan")
@click.option("--a-range", required=True)
@click.option("--b-range", required=True)
@click.option("--c-range", required=True)
@click.option("--height", default=10_000, show_default=True, type=click.IntRange(min=1))
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--workers", default=1, show_default=True, type=click.IntRange(min=1))
def scan_cmd(a_range, b_range, c_range, height, out, workers):
    """Decide and cross-validate every form in a coefficient box."""
    try:
        job = ScanJob(parse_range(a_range), parse_range(b_range), parse_range(c_range),
                      height, out, workers)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    rows, summary = run_scan(job)
    click.echo(summary)
    if summary.unresolved:
        click.echo(f"{summary.unresolved} unresolved rows; rerun with a larger --height", err=True)
    if summary.contradiction:
        click.echo(f"{summary.contradiction} CONTRADICTION rows", err=True)
        sys.exit(EXIT_ERROR)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="stackyhasse", standalone_mode=False)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_ERROR
    except click.ClickException as exc:
        exc.show()
        return EXIT_ERROR
    except (FactorizationBudgetExceeded, OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_ERROR
    return 0


if __name__ == "__main__":
    sys.exit(main())
