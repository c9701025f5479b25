"""Stage 1: intermediate per-job durations and the induced energy lower bound.

Both allocators assign every job a duration p_j; running job j at constant
speed W_j / p_j gives the lower bound sum of size_j * W_j**alpha * p_j**(1-alpha)
on the energy of any feasible schedule. Stage 2 (see ``schedulers``) then
packs the jobs with exactly these durations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from . import _kernels
from .errors import InputError, InternalInvariantError, VariantError
from .model import Instance, leq, lower_bound_energy

COMMON_WINDOW = "common-window"
COMMON_RELEASE = "common-release"


@dataclass(frozen=True)
class DurationPlan:
    """Per-job durations plus the induced energy lower bound.

    ``variant`` records which allocator produced the plan. Common-window
    plans saturate the whole capacity: sum(p_j * size_j) = m * d. Common-
    release plans satisfy p_i <= d_i and, for every i,
    sum(p_j * size_j over d_j <= d_i) <= m * d_i.
    """

    durations: Mapping[int, float]
    lb_energy: float
    variant: str


def _common_window(instance: Instance) -> tuple[float, float]:
    releases = {job.release for job in instance.jobs}
    deadlines = {job.deadline for job in instance.jobs}
    if len(releases) != 1 or len(deadlines) != 1:
        raise VariantError("all jobs must share one release time and one deadline")
    r = releases.pop()
    if r != 0:
        raise VariantError(f"common release must be 0 (got {r!r}); shift the instance first")
    return r, deadlines.pop()


def _require_zero_releases(instance: Instance) -> None:
    for job in instance.jobs:
        if job.release != 0:
            raise VariantError(f"job {job.id} has release {job.release!r}; all releases must be 0")


def common_window_durations(instance: Instance) -> DurationPlan:
    """Duration allocator for jobs sharing the window [0, d).

    Scans jobs by non-increasing work. While the current job's work is at
    least the average remaining load per free processor, it gets the full
    window (p_i = d) and gives up its processors; the first time the test
    fails, every remaining job l gets the proportional share
    p_l = W_l * m' * d / sum(W_j * size_j). The result saturates capacity:
    sum(p_j * size_j) = m * d.
    """
    if not instance.jobs:
        return DurationPlan({}, 0.0, COMMON_WINDOW)
    _, d = _common_window(instance)

    order = sorted(instance.jobs, key=lambda j: (-j.work, j.id))
    total = 0.0
    for job in order:
        total += job.work * job.size
    m_free = instance.m

    durations: dict[int, float] = {}
    for idx, job in enumerate(order):
        saturates = job.work >= total / m_free - 1e-12
        if saturates and (m_free > job.size or idx == len(order) - 1):
            durations[job.id] = d
            m_free -= job.size
            total -= job.work * job.size
        else:
            for rest in order[idx:]:
                durations[rest.id] = rest.work * m_free * d / total
            break

    return DurationPlan(durations, lower_bound_energy(instance, durations), COMMON_WINDOW)


def max_density_interval(
    works: Sequence[float], releases: Sequence[float], deadlines: Sequence[float]
) -> tuple[float, float, float]:
    """Highest-density interval over jobs with equal releases.

    ``works[i]`` is the load that must be completed inside [releases[i],
    deadlines[i]). With all releases equal to r, the candidates are the
    intervals [r, d) for each distinct deadline d, with density
    sum(works[j] for d_j <= d) / (d - r). Ties prefer the smallest d.
    """
    if not works:
        raise InputError("max_density_interval needs at least one job")
    if len(set(releases)) != 1:
        raise VariantError("max_density_interval requires equal release times")
    r = releases[0]
    order = sorted(range(len(works)), key=lambda i: deadlines[i])
    best = (-1.0, 0.0)
    s = 0.0
    for k, i in enumerate(order):
        if deadlines[i] <= r:
            raise InputError(f"deadline {deadlines[i]!r} does not exceed release {r!r}")
        s += works[i]
        if k + 1 < len(order) and deadlines[order[k + 1]] == deadlines[i]:
            continue
        density = s / (deadlines[i] - r)
        if density > best[0]:
            best = (density, deadlines[i])
    return r, best[1], best[0]


def proxy_durations(instance: Instance) -> dict[int, float]:
    """Single-processor proxy durations for jobs released at 0.

    Treats the instance as one processor with per-job loads size_j * W_j and
    repeatedly consumes highest-density intervals (see the kernel docstring
    for the violator rule). Only the durations matter downstream; the proxy
    placement itself is internal bookkeeping.
    """
    _require_zero_releases(instance)
    if not instance.jobs:
        return {}
    order = sorted(instance.jobs, key=lambda j: (j.deadline, j.id))
    p1 = _kernels.density_interval_durations(
        [job.size * job.work for job in order],
        [job.work for job in order],
        [job.size for job in order],
        [job.deadline for job in order],
        [job.id for job in order],
        instance.m,
    )
    return {job.id: p1[k] for k, job in enumerate(order)}


def lift_durations(p1: Mapping[int, float], instance: Instance) -> DurationPlan:
    """Lift proxy durations to rigid-job durations: p_i = p1_i * m / size_i.

    Verifies the two feasibility conditions the allocator guarantees,
    p_i <= d_i and sum(p_j * size_j over d_j <= d_i) <= m * d_i; their
    violation means a stage-1 bug, not bad input.
    """
    durations: dict[int, float] = {}
    for job in instance.jobs:
        v = p1.get(job.id)
        if v is None:
            raise InputError(f"proxy durations are missing job {job.id}")
        if not v > 0:
            raise InputError(f"proxy duration for job {job.id} must be positive, got {v!r}")
        durations[job.id] = v * instance.m / job.size

    order = sorted(instance.jobs, key=lambda j: (j.deadline, j.id))
    load = 0.0
    for k, job in enumerate(order):
        p = durations[job.id]
        if not leq(p, job.deadline):
            raise InternalInvariantError(
                f"lifted duration {p!r} of job {job.id} exceeds its deadline {job.deadline!r}"
            )
        load += p * job.size
        if k + 1 < len(order) and order[k + 1].deadline == job.deadline:
            continue
        if not leq(load, instance.m * job.deadline):
            raise InternalInvariantError(
                f"cumulative load {load!r} through deadline {job.deadline!r} "
                f"exceeds capacity {instance.m * job.deadline!r}"
            )

    return DurationPlan(durations, lower_bound_energy(instance, durations), COMMON_RELEASE)
