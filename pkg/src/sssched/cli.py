"""Command-line toolkit: solve, validate, gen, bench, gantt, oracle.

Exit codes are part of the contract: 0 success, 1 parse/flag errors, 2
unsupported variant or oracle guard, 3 failed validation or certificate, 4
benchmark assertion failure. Every flag can also be set through environment
variables prefixed SSSCHED_ (e.g. SSSCHED_SOLVE_PREEMPTIVE=1).
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import click

from . import generator, oracle, pipeline, serialize
from .errors import (
    GuardLimitError,
    InputError,
    InternalInvariantError,
    OracleInfeasibleError,
    ParseError,
    VariantError,
)
from .gantt import render_svg
from .model import validate_schedule


@click.group()
def cli() -> None:
    """Energy-minimizing schedules for rigid jobs on speed-scalable processors."""


def _load_instance(path: str):
    try:
        return serialize.load_instance(path)
    except (OSError, ParseError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


def _load_solution(path: str):
    try:
        return serialize.load_solution(path)
    except (OSError, ParseError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


@cli.command()
@click.argument("instance_path", type=click.Path(dir_okay=False))
@click.option("--preemptive/--nonpreemptive", default=False, help="Allow preemption (default: no).")
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False), help="Solution file path.")
def solve(instance_path: str, preemptive: bool, out_path: str | None) -> None:
    """Solve an instance file and write the solution document."""
    instance = _load_instance(instance_path)
    try:
        solution = pipeline.solve(instance, preemptive=preemptive)
    except VariantError as exc:
        click.echo(f"unsupported variant: {exc}", err=True)
        sys.exit(2)
    if out_path is None:
        out_path = str(Path(instance_path).with_suffix("")) + ".solution.json"
    serialize.save_solution(solution, out_path)
    click.echo(
        f"variant={solution.variant.kind.value} n={instance.n} m={instance.m} "
        f"energy={solution.energy:g} lb={solution.lb_energy:g} "
        f"ratio={solution.ratio:g} bound={solution.bound:g}"
    )


@cli.command()
@click.argument("instance_path", type=click.Path(dir_okay=False))
@click.argument("solution_path", type=click.Path(dir_okay=False))
@click.option("--nonpreemptive", is_flag=True, default=False, help="Require one segment per job.")
def validate(instance_path: str, solution_path: str, nonpreemptive: bool) -> None:
    """Check a solution file against its instance; exit 3 on violations."""
    instance = _load_instance(instance_path)
    solution = _load_solution(solution_path)
    report = validate_schedule(instance, solution.schedule, require_nonpreemptive=nonpreemptive)
    if report.ok:
        click.echo("ok")
        return
    for v in report.violations:
        click.echo(f"{v.rule} (job/proc {v.subject}): {v.detail}")
    sys.exit(3)


@cli.command()
@click.option("--seed", default=0, show_default=True)
@click.option("--n", default=10, show_default=True, help="Number of jobs.")
@click.option("--m", default=4, show_default=True, help="Number of processors.")
@click.option("--alpha", default=3.0, show_default=True)
@click.option(
    "--variant",
    default="common-window",
    show_default=True,
    type=click.Choice([k.value for k in pipeline.VariantKind]),
)
@click.option("--work-range", default="0.5:2.0", show_default=True, help="Work drawn uniformly from LO:HI.")
@click.option("--size-dist", default="uniform", show_default=True, type=click.Choice(["uniform", "small"]))
@click.option("--deadline-spread", default=generator.DEFAULT_SPREAD, show_default=True)
@click.option("--out", "out_path", default="-", show_default=True, help="Output path, or - for stdout.")
def gen(seed, n, m, alpha, variant, work_range, size_dist, deadline_spread, out_path) -> None:
    """Generate a random instance file (deterministic for a fixed seed)."""
    try:
        lo_hi = work_range.split(":")
        if len(lo_hi) != 2:
            raise InputError(f"work range must look like LO:HI, got {work_range!r}")
        instance = generator.generate_instance(
            seed=seed,
            n=n,
            m=m,
            alpha=alpha,
            variant=variant,
            work_range=(float(lo_hi[0]), float(lo_hi[1])),
            size_dist=size_dist,
            deadline_spread=deadline_spread,
        )
    except (InputError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    text = serialize.dumps_instance(instance)
    if out_path == "-":
        click.echo(text, nl=False)
    else:
        Path(out_path).write_text(text, encoding="utf-8")


@cli.command()
@click.option("--seed", default=0, show_default=True)
@click.option("--count", default=100, show_default=True, help="Instances to solve.")
@click.option("--n", default=20, show_default=True)
@click.option("--m", default=4, show_default=True)
@click.option("--alpha", default=3.0, show_default=True)
@click.option(
    "--variant",
    default="common-window",
    show_default=True,
    type=click.Choice([k.value for k in pipeline.VariantKind]),
)
@click.option("--preemptive/--nonpreemptive", default=True, show_default=True)
def bench(seed, count, n, m, alpha, variant, preemptive) -> None:
    """Solve seeded random instances and report worst/mean certified ratios.

    Exits 4 (echoing the offending seed) if any ratio exceeds the bound.
    """
    kind = pipeline.VariantKind(variant)
    size_dist = "small" if (kind is not pipeline.VariantKind.COMMON_WINDOW and not preemptive) else "uniform"
    ratios = []
    max_factor = 0.0
    bound = None
    started = time.perf_counter()
    for i in range(count):
        iseed = seed + i
        try:
            instance = generator.generate_instance(
                seed=iseed, n=n, m=m, alpha=alpha, variant=kind, size_dist=size_dist
            )
            solution = pipeline.solve(instance, preemptive=preemptive)
        except (InputError, InternalInvariantError) as exc:
            click.echo(f"FAIL seed={iseed}: {exc}", err=True)
            sys.exit(4)
        bound = solution.bound
        if solution.ratio > bound * (1 + 1e-9):
            click.echo(
                f"FAIL seed={iseed}: ratio {solution.ratio!r} exceeds bound {bound!r}", err=True
            )
            sys.exit(4)
        ratios.append(solution.ratio)
        max_factor = max(max_factor, solution.factor)
    elapsed = time.perf_counter() - started
    if not ratios:
        click.echo("no instances solved")
        return
    click.echo(
        f"count={count} variant={variant} preemptive={preemptive} n={n} m={m} alpha={alpha:g}\n"
        f"worst ratio={max(ratios):.6f} vs bound={bound:.6f}  "
        f"mean ratio={sum(ratios) / len(ratios):.6f}  max factor={max_factor:.6f}  "
        f"runtime={elapsed:.3f}s"
    )


@cli.command()
@click.argument("solution_path", type=click.Path(dir_okay=False))
@click.argument("out_svg_path", type=click.Path(dir_okay=False))
@click.option("--instance", "instance_path", default=None, help="Instance file for deadline tick marks.")
def gantt(solution_path: str, out_svg_path: str, instance_path: str | None) -> None:
    """Render the solution as an SVG chart, one lane per processor."""
    solution = _load_solution(solution_path)
    instance = _load_instance(instance_path) if instance_path else None
    Path(out_svg_path).write_text(render_svg(solution, instance), encoding="utf-8")


@cli.command(name="oracle")
@click.argument("instance_path", type=click.Path(dir_okay=False))
@click.option("--slots", default=4, show_default=True, help="Slots per breakpoint span (max 10).")
@click.option("--preemptive/--nonpreemptive", default=False, show_default=True)
def oracle_cmd(instance_path: str, slots: int, preemptive: bool) -> None:
    """Brute-force a tiny instance and cross-check the pipeline certificate."""
    instance = _load_instance(instance_path)
    try:
        solution = pipeline.solve(instance, preemptive=preemptive)
        value, _witness = oracle.grid_optimal(
            instance, oracle.GridConfig(slots=slots, preemptive=preemptive)
        )
    except (GuardLimitError, VariantError) as exc:
        click.echo(f"oracle guard: {exc}" if isinstance(exc, GuardLimitError) else f"unsupported variant: {exc}", err=True)
        sys.exit(2)
    except OracleInfeasibleError as exc:
        click.echo(f"infeasible at this grid resolution: {exc}", err=True)
        sys.exit(3)
    report = oracle.check_certificate(solution, value)
    status = "ok" if report.ok else "FAIL " + "; ".join(v.rule for v in report.violations)
    click.echo(f"lb={solution.lb_energy:g} oracle={value:g} alg={solution.energy:g} {status}")
    if not report.ok:
        sys.exit(3)


def main() -> None:
    cli(auto_envvar_prefix="SSSCHED")


if __name__ == "__main__":
    main()
