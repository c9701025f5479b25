"""Problem and schedule data model: jobs, instances, schedules, energy, validation.

Jobs are rigid: job j needs exactly ``size_j`` processors simultaneously, on
any subset of that size, and the subset is fixed for the whole execution
(no migration). A processor running at speed s consumes power s**alpha, so a
job executed at constant speed work/duration on ``size`` processors costs
``size * work**alpha * duration**(1 - alpha)`` energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from .errors import InputError, VariantError

#: Relative tolerance for every equality-style floating-point check.
REL_TOL = 1e-9
#: Absolute tolerance used near zero.
ABS_TOL = 1e-12


def close(a: float, b: float, rel: float = REL_TOL, abs_: float = ABS_TOL) -> bool:
    """True when a and b agree within the package-wide tolerance."""
    return abs(a - b) <= max(rel * max(abs(a), abs(b)), abs_)


def leq(a: float, b: float, rel: float = REL_TOL, abs_: float = ABS_TOL) -> bool:
    """True when a <= b, allowing the package-wide floating-point slack."""
    return a - b <= max(rel * max(abs(a), abs(b)), abs_)


@dataclass(frozen=True)
class Job:
    """One rigid job: work volume, processor requirement and a time window."""

    id: int
    work: float
    size: int
    release: float
    deadline: float

    def __post_init__(self) -> None:
        if not isinstance(self.id, int):
            raise InputError(f"job id must be an integer, got {self.id!r}")
        if not (isinstance(self.work, (int, float)) and math.isfinite(self.work) and self.work > 0):
            raise InputError(f"job {self.id}: work must be a positive finite real, got {self.work!r}")
        if not (isinstance(self.size, int) and self.size >= 1):
            raise InputError(f"job {self.id}: size must be an integer >= 1, got {self.size!r}")
        if not (math.isfinite(self.release) and self.release >= 0):
            raise InputError(f"job {self.id}: release must be a finite real >= 0, got {self.release!r}")
        if not (math.isfinite(self.deadline) and self.release < self.deadline):
            raise InputError(
                f"job {self.id}: deadline must exceed release "
                f"(release={self.release!r}, deadline={self.deadline!r})"
            )


@dataclass(frozen=True)
class Instance:
    """A whole problem input: m identical speed-scalable processors, the power
    exponent alpha and a job set."""

    m: int
    alpha: float
    jobs: tuple[Job, ...]

    def __post_init__(self) -> None:
        if not (isinstance(self.m, int) and self.m >= 1):
            raise InputError(f"m must be an integer >= 1, got {self.m!r}")
        if not (isinstance(self.alpha, (int, float)) and math.isfinite(self.alpha) and self.alpha > 1):
            raise InputError(f"alpha must be a finite real > 1, got {self.alpha!r}")
        object.__setattr__(self, "jobs", tuple(self.jobs))
        seen = set()
        for job in self.jobs:
            if job.id in seen:
                raise InputError(f"duplicate job id {job.id}")
            seen.add(job.id)
            if job.size > self.m:
                raise InputError(f"job {job.id}: size {job.size} exceeds m={self.m}")

    @cached_property
    def by_id(self) -> Mapping[int, Job]:
        return {job.id: job for job in self.jobs}

    @property
    def n(self) -> int:
        return len(self.jobs)


@dataclass(frozen=True)
class ExecSegment:
    """A maximal piece of execution at constant speed.

    Deliberately unvalidated so that the validator can inspect broken
    schedules instead of refusing to represent them.
    """

    start: float
    end: float
    speed: float


@dataclass(frozen=True)
class JobSchedule:
    """Execution record of one job: a fixed processor set and its segments."""

    job_id: int
    procs: tuple[int, ...]
    segments: tuple[ExecSegment, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "procs", tuple(self.procs))
        object.__setattr__(self, "segments", tuple(self.segments))

    @property
    def completion(self) -> float:
        return max(seg.end for seg in self.segments)


@dataclass(frozen=True)
class Schedule:
    """An ordered collection of per-job execution records.

    Kept as a list (not a map) so that structurally broken schedules, e.g. a
    job listed twice with two different processor sets, remain representable
    and the validator can reject them by name.
    """

    entries: tuple[JobSchedule, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))

    def for_job(self, job_id: int) -> JobSchedule:
        for entry in self.entries:
            if entry.job_id == job_id:
                return entry
        raise InputError(f"schedule has no entry for job {job_id}")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


class Violation(NamedTuple):
    rule: str
    subject: int
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(f"{v.rule} (job/proc {v.subject}): {v.detail}" for v in self.violations)


def job_energy(work: float, size: int, duration: float, alpha: float) -> float:
    """Energy of running ``work`` units at constant speed work/duration on
    ``size`` processors for ``duration`` time: size * work**alpha * duration**(1-alpha).
    """
    if not (isinstance(size, int) and size >= 1):
        raise InputError(f"size must be an integer >= 1, got {size!r}")
    if not (math.isfinite(alpha) and alpha > 1):
        raise InputError(f"alpha must be > 1, got {alpha!r}")
    if not (math.isfinite(work) and work > 0):
        raise InputError(f"work must be positive, got {work!r}")
    if not (math.isfinite(duration) and duration > 0):
        raise InputError(f"duration must be positive, got {duration!r}")
    return size * work**alpha * duration ** (1.0 - alpha)


def schedule_energy(schedule: Schedule, instance: Instance) -> float:
    """Total energy of a schedule: sum over segments of size * speed**alpha * length."""
    alpha = instance.alpha
    total = 0.0
    for entry in schedule:
        job = instance.by_id.get(entry.job_id)
        if job is None:
            raise InputError(f"schedule references unknown job {entry.job_id}")
        for seg in entry.segments:
            total += job.size * seg.speed**alpha * (seg.end - seg.start)
    return total


def lower_bound_energy(instance: Instance, plan) -> float:
    """Energy lower bound induced by per-job durations: sum of
    size_j * W_j**alpha * p_j**(1-alpha).

    ``plan`` may be a DurationPlan or a plain mapping job_id -> duration.
    """
    durations = getattr(plan, "durations", plan)
    total = 0.0
    for job in instance.jobs:
        p = durations.get(job.id)
        if p is None:
            raise InputError(f"duration plan is missing job {job.id}")
        total += job_energy(job.work, job.size, p, instance.alpha)
    return total


def validate_schedule(
    instance: Instance, schedule: Schedule, require_nonpreemptive: bool = False
) -> ValidationReport:
    """Check every schedule invariant and report all violations.

    Rules: unknown-job, missing-job, migration-forbidden, bad-segment,
    segment-overlap, proc-set, early-start, deadline-overrun, work-mismatch,
    processor-conflict and, when requested, preemption-forbidden.
    """
    violations: list[Violation] = []
    seen_ids: set[int] = set()
    checked: list[tuple[Job, JobSchedule]] = []

    for entry in schedule:
        job = instance.by_id.get(entry.job_id)
        if job is None:
            violations.append(Violation("unknown-job", entry.job_id, "no such job in the instance"))
            continue
        if entry.job_id in seen_ids:
            violations.append(
                Violation(
                    "migration-forbidden",
                    entry.job_id,
                    "job appears in several entries; a job keeps one processor set",
                )
            )
            continue
        seen_ids.add(entry.job_id)
        checked.append((job, entry))

    for job in instance.jobs:
        if job.id not in seen_ids:
            violations.append(Violation("missing-job", job.id, "job has no schedule entry"))

    for job, entry in checked:
        procs = entry.procs
        if (
            len(procs) != job.size
            or len(set(procs)) != len(procs)
            or any(not (isinstance(q, int) and 0 <= q < instance.m) for q in procs)
        ):
            violations.append(
                Violation(
                    "proc-set",
                    job.id,
                    f"needs {job.size} distinct processors in [0, {instance.m}), got {procs}",
                )
            )

        segments_ok = True
        for seg in entry.segments:
            if not (
                math.isfinite(seg.start)
                and math.isfinite(seg.end)
                and math.isfinite(seg.speed)
                and seg.start < seg.end
                and seg.speed > 0
            ):
                violations.append(
                    Violation("bad-segment", job.id, f"invalid segment [{seg.start}, {seg.end}) at speed {seg.speed}")
                )
                segments_ok = False
        if not segments_ok:
            continue

        for prev, cur in zip(entry.segments, entry.segments[1:]):
            if not leq(prev.end, cur.start):
                violations.append(
                    Violation(
                        "segment-overlap",
                        job.id,
                        f"segments [{prev.start}, {prev.end}) and [{cur.start}, {cur.end}) are not disjoint in order",
                    )
                )

        if require_nonpreemptive and len(entry.segments) != 1:
            violations.append(
                Violation("preemption-forbidden", job.id, f"{len(entry.segments)} segments; exactly one required")
            )

        done = sum(seg.speed * (seg.end - seg.start) for seg in entry.segments)
        if not close(done, job.work):
            violations.append(
                Violation("work-mismatch", job.id, f"executed work {done!r} differs from required {job.work!r}")
            )

        for seg in entry.segments:
            if not leq(job.release, seg.start):
                violations.append(
                    Violation("early-start", job.id, f"segment starts at {seg.start!r} before release {job.release!r}")
                )
            if not leq(seg.end, job.deadline):
                violations.append(
                    Violation(
                        "deadline-overrun", job.id, f"segment ends at {seg.end!r} after deadline {job.deadline!r}"
                    )
                )

    # A processor may run at most one job at a time.
    per_proc: dict[int, list[tuple[float, float, int]]] = {}
    for job, entry in checked:
        for q in entry.procs:
            if isinstance(q, int) and 0 <= q < instance.m:
                for seg in entry.segments:
                    if seg.start < seg.end:
                        per_proc.setdefault(q, []).append((seg.start, seg.end, job.id))
    for q, spans in sorted(per_proc.items()):
        spans.sort()
        for (s0, e0, j0), (s1, e1, j1) in zip(spans, spans[1:]):
            if not leq(e0, s1):
                violations.append(
                    Violation(
                        "processor-conflict",
                        q,
                        f"jobs {j0} and {j1} overlap on processor {q} during [{s1}, {min(e0, e1)})",
                    )
                )

    return ValidationReport(tuple(violations))


def mirror_instance(instance: Instance) -> Instance:
    """Reflect time around the common deadline d: r' = d - d_j, d' = d - r_j.

    Turns a common-deadline instance into a common-release one (and back).
    """
    if not instance.jobs:
        return instance
    deadlines = {job.deadline for job in instance.jobs}
    if len(deadlines) != 1:
        raise VariantError("mirror_instance requires a common deadline")
    d = deadlines.pop()
    mirrored = tuple(
        Job(id=job.id, work=job.work, size=job.size, release=d - job.deadline, deadline=d - job.release)
        for job in instance.jobs
    )
    return Instance(m=instance.m, alpha=instance.alpha, jobs=mirrored)


def mirror_schedule(schedule: Schedule, horizon: float) -> Schedule:
    """Reflect every segment [a, b) to [horizon - b, horizon - a), keeping
    speeds and processor sets."""
    entries = []
    for entry in schedule:
        segs = tuple(
            ExecSegment(start=horizon - seg.end, end=horizon - seg.start, speed=seg.speed)
            for seg in reversed(entry.segments)
        )
        entries.append(JobSchedule(job_id=entry.job_id, procs=entry.procs, segments=segs))
    return Schedule(tuple(entries))


def shift_instance(instance: Instance, delta: float) -> Instance:
    """Translate every job window by delta."""
    if delta == 0:
        return instance
    jobs = tuple(
        Job(id=j.id, work=j.work, size=j.size, release=j.release + delta, deadline=j.deadline + delta)
        for j in instance.jobs
    )
    return Instance(m=instance.m, alpha=instance.alpha, jobs=jobs)


def shift_schedule(schedule: Schedule, delta: float) -> Schedule:
    """Translate every segment by delta."""
    if delta == 0:
        return schedule
    entries = tuple(
        JobSchedule(
            job_id=e.job_id,
            procs=e.procs,
            segments=tuple(ExecSegment(s.start + delta, s.end + delta, s.speed) for s in e.segments),
        )
        for e in schedule
    )
    return Schedule(entries)
