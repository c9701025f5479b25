"""Stage 2: pack jobs with given durations, then compress speeds to meet deadlines.

The three packers place every job j at constant speed W_j / p_j on a fixed
set of size_j processors. Their outputs may overrun deadlines; ``compress``
shrinks time by the tight factor f = max(1, max_j C_j / d_j), multiplying
speeds (and energy by f**(alpha-1)) to restore feasibility. The packers
assert their guaranteed bounds at runtime: makespan <= (2 - 1/m) * d for the
common-window packer and C_i <= (3 - 4/(m+1)) * d_i for the deadline-ordered
ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import _kernels
from .durations import COMMON_WINDOW, DurationPlan
from .errors import InputError, InternalInvariantError, VariantError
from .model import ExecSegment, Instance, Job, JobSchedule, Schedule, leq


@dataclass(frozen=True)
class PackedSchedule:
    """Pre-compression packing: conflict-free and non-migratory, but deadlines
    may be exceeded."""

    schedule: Schedule
    makespan: float
    completion: Mapping[int, float]


def _plan_durations(plan: DurationPlan, instance: Instance) -> dict[int, float]:
    durations = {}
    for job in instance.jobs:
        p = plan.durations.get(job.id)
        if p is None:
            raise InputError(f"duration plan is missing job {job.id}")
        if not p > 0:
            raise InputError(f"duration of job {job.id} must be positive, got {p!r}")
        durations[job.id] = p
    return durations


def _check_deadline_feasible(durations: dict[int, float], instance: Instance) -> None:
    """Input form of the stage-1 guarantees: p_i <= d_i and prefix loads within m*d_i."""
    order = sorted(instance.jobs, key=lambda j: (j.deadline, j.id))
    load = 0.0
    for k, job in enumerate(order):
        p = durations[job.id]
        if not leq(p, job.deadline):
            raise InputError(f"duration {p!r} of job {job.id} exceeds its deadline {job.deadline!r}")
        load += p * job.size
        if k + 1 < len(order) and order[k + 1].deadline == job.deadline:
            continue
        if not leq(load, instance.m * job.deadline):
            raise InputError(
                f"load {load!r} of jobs due by {job.deadline!r} exceeds capacity "
                f"{instance.m * job.deadline!r}"
            )


def _one_segment_entry(job: Job, start: float, p: float, procs: list[int]) -> JobSchedule:
    return JobSchedule(
        job_id=job.id,
        procs=tuple(procs),
        segments=(ExecSegment(start, start + p, job.work / p),),
    )


def _frontier_pack(order: list[Job], durations: dict[int, float], instance: Instance) -> PackedSchedule:
    sizes = [job.size for job in order]
    durs = [durations[job.id] for job in order]
    starts, procs_flat = _kernels.pack_frontier(instance.m, sizes, durs)

    entries = []
    completion: dict[int, float] = {}
    makespan = 0.0
    off = 0
    for k, job in enumerate(order):
        procs = procs_flat[off : off + job.size]
        off += job.size
        entries.append(_one_segment_entry(job, starts[k], durs[k], procs))
        end = starts[k] + durs[k]
        completion[job.id] = end
        if end > makespan:
            makespan = end
    entries.sort(key=lambda e: e.job_id)
    return PackedSchedule(Schedule(tuple(entries)), makespan, completion)


def list_schedule_np(plan: DurationPlan, instance: Instance) -> PackedSchedule:
    """Non-preemptive list packing for a common window [0, d).

    Whenever processors fall idle, starts any queued job that fits, scanning
    by non-increasing size (ties: longer duration first, then id). Requires
    p_j <= d and sum(p_j * size_j) <= m * d, which guarantee the packed
    makespan stays within (2 - 1/m) * d.
    """
    if plan.variant != COMMON_WINDOW:
        raise InputError(f"expected a {COMMON_WINDOW} plan, got {plan.variant!r}")
    if not instance.jobs:
        return PackedSchedule(Schedule(), 0.0, {})
    releases = {job.release for job in instance.jobs}
    deadlines = {job.deadline for job in instance.jobs}
    if len(releases) != 1 or releases != {0} or len(deadlines) != 1:
        raise VariantError("instance must share the window [0, d)")
    d = deadlines.pop()

    durations = _plan_durations(plan, instance)
    load = 0.0
    for job in instance.jobs:
        p = durations[job.id]
        if not leq(p, d):
            raise InputError(f"duration {p!r} of job {job.id} exceeds the window {d!r}")
        load += p * job.size
    if not leq(load, instance.m * d):
        raise InputError(f"total load {load!r} exceeds capacity {instance.m * d!r}")

    order = sorted(instance.jobs, key=lambda j: (-j.size, -durations[j.id], j.id))
    packed = _frontier_pack(order, durations, instance)

    cap = (2.0 - 1.0 / instance.m) * d
    if not leq(packed.makespan, cap):
        raise InternalInvariantError(
            f"packed makespan {packed.makespan!r} exceeds the guaranteed (2 - 1/m)*d = {cap!r}"
        )
    return packed


def edf_list_schedule_np(plan: DurationPlan, instance: Instance) -> PackedSchedule:
    """Non-preemptive deadline-ordered packing for jobs released at 0.

    Same event-driven packing as ``list_schedule_np`` but scanning by
    non-decreasing deadline; only supports size_j <= m/2, for which every
    completion stays within (3 - 4/(m+1)) * d_j.
    """
    for job in instance.jobs:
        if 2 * job.size > instance.m:
            raise VariantError(
                f"job {job.id} has size {job.size} > m/2; the non-preemptive "
                "individual-deadline packer requires size_j <= m/2"
            )
    for job in instance.jobs:
        if job.release != 0:
            raise VariantError(f"job {job.id} has release {job.release!r}; all releases must be 0")
    if not instance.jobs:
        return PackedSchedule(Schedule(), 0.0, {})

    durations = _plan_durations(plan, instance)
    _check_deadline_feasible(durations, instance)

    order = sorted(instance.jobs, key=lambda j: (j.deadline, j.id))
    packed = _frontier_pack(order, durations, instance)
    _assert_completion_bound(packed, instance)
    return packed


def edf_list_schedule_pmtn(plan: DurationPlan, instance: Instance) -> PackedSchedule:
    """Preemptive deadline-ordered packing for jobs released at 0.

    Jobs wider than m/2 run as contiguous blocks appended at the schedule
    end; narrower jobs are placed at the earliest instant where a fixed
    processor set stays free for the whole duration, measured on the timeline
    with wide blocks cut out, so they preempt around those blocks. Every
    completion stays within (3 - 4/(m+1)) * d_j.
    """
    for job in instance.jobs:
        if job.release != 0:
            raise VariantError(f"job {job.id} has release {job.release!r}; all releases must be 0")
    if not instance.jobs:
        return PackedSchedule(Schedule(), 0.0, {})

    durations = _plan_durations(plan, instance)
    _check_deadline_feasible(durations, instance)

    order = sorted(instance.jobs, key=lambda j: (j.deadline, j.id))
    sizes = [job.size for job in order]
    durs = [durations[job.id] for job in order]
    segs_out, procs_out = _kernels.pack_preemptive(instance.m, sizes, durs)

    entries = []
    completion: dict[int, float] = {}
    makespan = 0.0
    for k, job in enumerate(order):
        speed = job.work / durs[k]
        segments = tuple(ExecSegment(a, b, speed) for a, b in segs_out[k])
        entries.append(JobSchedule(job_id=job.id, procs=tuple(procs_out[k]), segments=segments))
        end = segments[-1].end
        completion[job.id] = end
        if end > makespan:
            makespan = end
    entries.sort(key=lambda e: e.job_id)

    packed = PackedSchedule(Schedule(tuple(entries)), makespan, completion)
    _assert_completion_bound(packed, instance)
    return packed


def _assert_completion_bound(packed: PackedSchedule, instance: Instance) -> None:
    factor = 3.0 - 4.0 / (instance.m + 1)
    for job in instance.jobs:
        cap = factor * job.deadline
        c = packed.completion[job.id]
        if not leq(c, cap):
            raise InternalInvariantError(
                f"completion {c!r} of job {job.id} exceeds the guaranteed "
                f"(3 - 4/(m+1))*d_j = {cap!r}"
            )


def compress(packed: PackedSchedule, instance: Instance) -> tuple[Schedule, float]:
    """Shrink time by f = max(1, max_j C_j / d_j): segment [a, b) becomes
    [a/f, b/f) at speed * f. Multiplies energy by exactly f**(alpha-1)."""
    f = 1.0
    for job_id in sorted(packed.completion):
        q = packed.completion[job_id] / instance.by_id[job_id].deadline
        if q > f:
            f = q
    if f == 1.0:
        return packed.schedule, 1.0

    entries = tuple(
        JobSchedule(
            job_id=e.job_id,
            procs=e.procs,
            segments=tuple(ExecSegment(s.start / f, s.end / f, s.speed * f) for s in e.segments),
        )
        for e in packed.schedule
    )
    return Schedule(entries), f
