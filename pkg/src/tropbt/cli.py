"""Command line: ``tropbt compute``, ``tropbt random-suite``, ``tropbt theta-check``.

Exit codes: 0 success, 1 malformed input, 2 the quartic is not smooth or not
generic, 3 an internal invariant failed.
"""

from __future__ import annotations

import os
import random
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from .errors import InputError, NonGenericCurve, NotSmooth, TropBTError
from .quartic import parse_spec

EXIT_INPUT, EXIT_NONGENERIC, EXIT_INVARIANT = 1, 2, 3


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, (NotSmooth, NonGenericCurve)):
        return EXIT_NONGENERIC
    if isinstance(exc, InputError):
        return EXIT_INPUT
    return EXIT_INVARIANT


def threads() -> int:
    try:
        n = int(os.environ.get("TROPBT_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, min(n, os.cpu_count() or 1))


@click.group()
def main():
    """Tropical bitangent classes of plane quartics and their real lifts."""


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--report", "report_path", type=click.Path(dir_okay=False))
@click.option("--svg", "svg_path", type=click.Path(dir_okay=False))
@click.option("--signs-override", "overrides", multiple=True, metavar="sIJ=±",
              help="Replace the sign of one coefficient, e.g. s31=-. Repeatable.")
def compute(input_path, report_path, svg_path, overrides):
    """Classes, shapes, real lifts and the theta check for one quartic."""
    from .pipeline import analyze, override_signs
    from .report import build_report
    from .svg import render_svg

    try:
        spec = override_signs(parse_spec(Path(input_path).read_text(encoding="utf-8")), overrides)
        a = analyze(spec)
    except TropBTError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(_exit_code(exc))
    doc = build_report(spec, a.curve, a.graph, a.classes, a.lifts, a.theta, overrides)
    for k, c in enumerate(a.lifts.classes):
        click.echo(f"({k + 1}) shape {c.label:3s} σ={str(c.sigma):7s} weights "
                   f"{sorted(c.weights.values())} real={'yes' if c.real else 'no'}")
    click.echo(f"complex total {a.lifts.complex_total}, real total {a.lifts.real_total}")
    if report_path:
        Path(report_path).write_text(doc.render(), encoding="utf-8")
    if svg_path:
        Path(svg_path).write_text(render_svg(a.curve, a.classes, [c.weights for c in a.lifts.classes]),
                                  encoding="utf-8")
    if isinstance(a.theta, str):
        click.echo(f"error: BijectionFailure: {a.theta}", err=True)
        sys.exit(EXIT_INVARIANT)


def run_instance(seed: int, index: int) -> dict:
    """One random-suite instance; returns a summary record."""
    from .pipeline import analyze, invariant_failures
    from .sampling import sample_generic

    rng = random.Random(f"{seed}:{index}")
    try:
        sample = sample_generic(rng)
        a = analyze(sample.spec, sample.curve, sample.classes)
    except TropBTError as exc:
        return {"index": index, "ok": False, "attempts": None, "failures": [f"{type(exc).__name__}: {exc}"]}
    fails = invariant_failures(a)
    return {"index": index, "ok": not fails, "attempts": sample.attempts, "failures": fails,
            "labels": [c.label for c in a.lifts.classes], "real": a.lifts.real_total}


@main.command("random-suite")
@click.option("--count", type=click.IntRange(min=1), required=True)
@click.option("--seed", type=int, required=True)
@click.option("--freq-table", "freq_path", type=click.Path(dir_okay=False))
def random_suite(count, seed, freq_path):
    """Check the global invariants on random smooth generic quartics."""
    from .catalog import load_catalog

    n = threads()
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(run_instance, [seed] * count, range(count)))
    else:
        results = [run_instance(seed, k) for k in range(count)]
    freq, reals = Counter(), Counter()
    bad = 0
    for r in results:
        if not r["ok"]:
            bad += 1
            click.echo(f"FAIL seed={seed} index={r['index']}: " + "; ".join(r["failures"]), err=True)
            continue
        freq.update(r["labels"])
        reals[r["real"]] += 1
    attempts = sum(r["attempts"] or 0 for r in results)
    click.echo(f"{count - bad}/{count} pass; {attempts} draws for {count} generic quartics")
    click.echo("real totals: " + ", ".join(f"{t}:{reals[t]}" for t in sorted(reals)))
    labels = list(load_catalog().entries)
    unknown = set(freq) - set(labels)
    if unknown:
        bad += 1
        click.echo(f"FAIL labels outside the catalog: {sorted(unknown)}", err=True)
    table = "".join(f"{lab}\t{freq[lab]}\n" for lab in labels if freq[lab])
    click.echo(table, nl=False)
    if freq_path:
        Path(freq_path).write_text("label\tcount\n" + table, encoding="utf-8")
    sys.exit(EXIT_INVARIANT if bad else 0)


@main.command("theta-check")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
def theta_check(input_path):
    """Match the seven classes with the effective theta characteristics."""
    from .classes import enumerate_classes
    from .newton import dual_curve, skeleton
    from .theta import class_theta_bijection, theta_characteristics

    try:
        curve = dual_curve(parse_spec(Path(input_path).read_text(encoding="utf-8")))
        classes = enumerate_classes(curve)
        g = skeleton(curve)
        thetas = theta_characteristics(g)
        match = class_theta_bijection(classes, curve, g)
    except TropBTError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(_exit_code(exc))
    click.echo(f"skeleton type {g.type_triple}, {len(thetas)} effective theta characteristics")
    for name, d in thetas.items():
        chips = ", ".join(f"{m}·{_point(p)}" for p, m in sorted(d.items(), key=repr))
        click.echo(f"L_{name}: {chips}")
    for k, name in sorted(match.pairs.items()):
        click.echo(f"class ({k + 1}) <-> L_{name}")


def _point(p) -> str:
    if p[0] == "node":
        return f"node {p[1]}"
    return f"edge {p[1]} at {p[2]}"


if __name__ == "__main__":
    main()
