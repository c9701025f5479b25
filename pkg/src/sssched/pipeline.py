"""End-to-end solvers: variant detection, the two-stage pipeline and the
approximation-ratio certificate.

Every solution carries an executable certificate: the achieved energy never
exceeds ``bound * lb_energy``, where lb_energy is a true lower bound on the
optimum, so ``ratio = energy / lb_energy`` certifies the approximation factor
on that instance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .durations import (
    COMMON_RELEASE,
    COMMON_WINDOW,
    DurationPlan,
    common_window_durations,
    lift_durations,
    proxy_durations,
)
from .errors import InputError, InternalInvariantError, VariantError
from .model import (
    Instance,
    Schedule,
    leq,
    mirror_instance,
    mirror_schedule,
    schedule_energy,
    shift_instance,
    shift_schedule,
    validate_schedule,
)
from .schedulers import compress, edf_list_schedule_np, edf_list_schedule_pmtn, list_schedule_np


class VariantKind(str, enum.Enum):
    COMMON_WINDOW = "common-window"
    COMMON_RELEASE = "common-release"
    COMMON_DEADLINE = "common-deadline"


@dataclass(frozen=True)
class Variant:
    kind: VariantKind
    preemptive: bool


@dataclass(frozen=True)
class Solution:
    """A schedule with its certificate: lower bound, achieved energy, the
    compression factor and the theoretical ratio bound."""

    schedule: Schedule
    plan: DurationPlan | None
    energy: float
    lb_energy: float
    factor: float
    bound: float
    ratio: float
    variant: Variant


def detect_variant(instance: Instance, preemptive: bool) -> Variant:
    """Classify the instance into one of the three supported shapes.

    Common window (all releases equal and all deadlines equal) takes
    precedence; otherwise equal releases give common-release and equal
    deadlines give common-deadline. Anything else is unsupported. The
    non-preemptive individual-deadline variants additionally require
    size_j <= m/2 for every job.
    """
    releases = {job.release for job in instance.jobs}
    deadlines = {job.deadline for job in instance.jobs}
    if len(releases) <= 1 and len(deadlines) <= 1:
        kind = VariantKind.COMMON_WINDOW
    elif len(releases) == 1:
        kind = VariantKind.COMMON_RELEASE
    elif len(deadlines) == 1:
        kind = VariantKind.COMMON_DEADLINE
    else:
        raise VariantError(
            "unsupported instance: jobs must share a window, a release time or a "
            "deadline (supported variants: common-window, common-release, common-deadline)"
        )
    if kind is not VariantKind.COMMON_WINDOW and not preemptive:
        for job in instance.jobs:
            if 2 * job.size > instance.m:
                raise VariantError(
                    f"job {job.id} has size {job.size} > m/2 = {instance.m / 2}; the "
                    "non-preemptive individual-deadline variants require size_j <= m/2"
                )
    return Variant(kind, preemptive)


def theoretical_bound(variant: Variant | VariantKind | str, m: int, alpha: float) -> float:
    """Guaranteed energy ratio: (2 - 1/m)**(alpha-1) for a common window,
    (3 - 4/(m+1))**(alpha-1) for a common release time or deadline."""
    if not (isinstance(m, int) and m >= 1):
        raise InputError(f"m must be an integer >= 1, got {m!r}")
    if not alpha > 1:
        raise InputError(f"alpha must be > 1, got {alpha!r}")
    kind = variant.kind if isinstance(variant, Variant) else VariantKind(variant)
    if kind is VariantKind.COMMON_WINDOW:
        return (2.0 - 1.0 / m) ** (alpha - 1.0)
    return (3.0 - 4.0 / (m + 1)) ** (alpha - 1.0)


def solve(instance: Instance, preemptive: bool = True) -> Solution:
    """Run the two-stage pipeline for the detected variant.

    Common window: capacity-saturating durations, then non-preemptive list
    packing. Common release: proxy durations lifted to rigid jobs, then the
    deadline-ordered packer (preemptive or not). Common deadline: mirror
    time, solve as common release, mirror back. The result is compressed to
    feasibility, validated, and certified against the theoretical bound.
    """
    variant = detect_variant(instance, preemptive)
    bound = theoretical_bound(variant, instance.m, instance.alpha)
    if not instance.jobs:
        plan = DurationPlan({}, 0.0, COMMON_WINDOW if variant.kind is VariantKind.COMMON_WINDOW else COMMON_RELEASE)
        return Solution(Schedule(), plan, 0.0, 0.0, 1.0, bound, 1.0, variant)

    if variant.kind is VariantKind.COMMON_DEADLINE:
        horizon = instance.jobs[0].deadline
        work_inst = mirror_instance(instance)
        shift = 0.0
    else:
        shift = instance.jobs[0].release
        work_inst = shift_instance(instance, -shift)

    if variant.kind is VariantKind.COMMON_WINDOW:
        plan = common_window_durations(work_inst)
        packed = list_schedule_np(plan, work_inst)
    else:
        plan = lift_durations(proxy_durations(work_inst), work_inst)
        if preemptive:
            packed = edf_list_schedule_pmtn(plan, work_inst)
        else:
            packed = edf_list_schedule_np(plan, work_inst)

    schedule, factor = compress(packed, work_inst)
    if variant.kind is VariantKind.COMMON_DEADLINE:
        schedule = mirror_schedule(schedule, horizon)
    elif shift != 0:
        schedule = shift_schedule(schedule, shift)

    energy = schedule_energy(schedule, instance)
    lb = plan.lb_energy
    ratio = energy / lb if lb > 0 else 1.0

    report = validate_schedule(instance, schedule, require_nonpreemptive=not preemptive)
    if not report.ok:
        raise InternalInvariantError(f"pipeline produced an invalid schedule:\n{report.summary()}")
    if not leq(ratio, bound):
        raise InternalInvariantError(f"certified ratio {ratio!r} exceeds the theoretical bound {bound!r}")
    factor_cap = bound ** (1.0 / (instance.alpha - 1.0))
    if not leq(factor, factor_cap):
        raise InternalInvariantError(f"compression factor {factor!r} exceeds {factor_cap!r}")

    return Solution(schedule, plan, energy, lb, factor, bound, ratio, variant)
