"""Seeded random instance generation for benchmarks and tests."""

from __future__ import annotations

import random

from .errors import InputError
from .model import Instance, Job
from .pipeline import VariantKind

#: Deadlines of common-release instances are drawn from
#: [horizon * (1 - spread), horizon]; the default 0.75 gives [d/4, d], which
#: keeps the nested deadline structure nontrivial. Common-deadline instances
#: mirror this for releases.
DEFAULT_SPREAD = 0.75


def generate_instance(
    seed: int,
    n: int,
    m: int,
    alpha: float,
    variant: VariantKind | str = VariantKind.COMMON_WINDOW,
    work_range: tuple[float, float] = (0.5, 2.0),
    size_dist: str = "uniform",
    deadline_spread: float = DEFAULT_SPREAD,
    horizon: float = 1.0,
) -> Instance:
    """Deterministically generate an instance of the requested variant.

    ``size_dist`` is "uniform" for sizes in {1..m} or "small" for sizes in
    {1..floor(m/2)} (required by the non-preemptive individual-deadline
    variants).
    """
    kind = VariantKind(variant)
    if n < 0:
        raise InputError(f"n must be >= 0, got {n}")
    if m < 1:
        raise InputError(f"m must be >= 1, got {m}")
    if not alpha > 1:
        raise InputError(f"alpha must be > 1, got {alpha!r}")
    lo, hi = work_range
    if not (0 < lo <= hi):
        raise InputError(f"work range must satisfy 0 < lo <= hi, got {work_range!r}")
    if not (0 < deadline_spread <= 1):
        raise InputError(f"deadline spread must be in (0, 1], got {deadline_spread!r}")
    if not horizon > 0:
        raise InputError(f"horizon must be positive, got {horizon!r}")
    if size_dist == "uniform":
        size_cap = m
    elif size_dist == "small":
        size_cap = m // 2
        if size_cap < 1:
            raise InputError("size_dist='small' needs m >= 2 (no integer size <= m/2 exists for m=1)")
    else:
        raise InputError(f"size_dist must be 'uniform' or 'small', got {size_dist!r}")

    rng = random.Random(seed)
    jobs = []
    for i in range(n):
        work = rng.uniform(lo, hi)
        size = rng.randint(1, size_cap)
        if kind is VariantKind.COMMON_WINDOW:
            release, deadline = 0.0, horizon
        elif kind is VariantKind.COMMON_RELEASE:
            release = 0.0
            deadline = rng.uniform(max(horizon * (1.0 - deadline_spread), horizon * 1e-9), horizon)
        else:
            release = min(rng.uniform(0.0, horizon * deadline_spread), horizon * (1.0 - 1e-9))
            deadline = horizon
        jobs.append(Job(id=i, work=work, size=size, release=release, deadline=deadline))
    return Instance(m=m, alpha=alpha, jobs=tuple(jobs))
