"""Desk-scale brute-force reference on a time grid.

``grid_optimal`` exhaustively minimizes energy over schedules whose execution
is aligned to a slot grid (deadline and release breakpoints refined into
``slots`` pieces each), so its value over-approximates the true optimum:
lb_energy <= OPT <= grid value. That one-sided error is what makes the
sandwich checks in ``check_certificate`` sound.

The search is an exact, pruned reformulation of the naive per-job enumeration
of (slot subset, processor set) pairs:

* preemptive: processor assignments are deduplicated by their pairwise
  conflict graph and only minimal realizable graphs are kept (dropping a
  conflict never increases the optimum); each slot is given to a maximal
  independent set of the jobs whose windows cover it (growing a slot's job
  set never increases energy), so per breakpoint segment the choice is how
  many of its slots go to each maximal set;
* non-preemptive: only the per-job slot run is enumerated; a fixed processor
  assignment exists iff no slot is loaded beyond m (one interval per job),
  and is constructed greedily by start time for the witness.

Both searches use branch-and-bound with the remaining-window energy bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import GuardLimitError, InputError, OracleInfeasibleError
from .model import (
    ABS_TOL,
    ExecSegment,
    Instance,
    JobSchedule,
    Schedule,
    ValidationReport,
    Violation,
    job_energy,
    leq,
)
from .pipeline import Solution

MAX_JOBS = 4
MAX_PROCS = 4
MAX_SLOTS = 10


@dataclass(frozen=True)
class GridConfig:
    """Grid resolution: each span between consecutive release/deadline
    breakpoints is cut into ``slots`` equal slots."""

    slots: int = 4
    preemptive: bool = False
    horizon: float | None = None


def _build_grid(instance: Instance, slots: int):
    breakpoints = sorted({j.release for j in instance.jobs} | {j.deadline for j in instance.jobs})
    slot_start: list[float] = []
    slot_end: list[float] = []
    for x, y in zip(breakpoints, breakpoints[1:]):
        h = (y - x) / slots
        for k in range(slots):
            slot_start.append(x + k * h)
            slot_end.append(x + (k + 1) * h if k + 1 < slots else y)
    slot_len = [e - s for s, e in zip(slot_start, slot_end)]
    index = {bp: i for i, bp in enumerate(breakpoints)}
    return breakpoints, index, slot_start, slot_end, slot_len


def grid_optimal(instance: Instance, cfg: GridConfig) -> tuple[float, Schedule]:
    """Minimum energy over grid-aligned schedules, with one optimal witness.

    Every job gets a slot subset inside its window (a contiguous run when
    non-preemptive) and a fixed processor set; overlapping jobs must use
    disjoint processors. A job allotted total time t runs at constant speed
    W/t (optimal for a fixed time budget), costing size * W**alpha * t**(1-alpha).
    """
    if cfg.slots < 1:
        raise InputError(f"slots must be >= 1, got {cfg.slots!r}")
    if instance.n > MAX_JOBS or instance.m > MAX_PROCS or cfg.slots > MAX_SLOTS:
        raise GuardLimitError(
            f"oracle guard: requires n <= {MAX_JOBS}, m <= {MAX_PROCS}, slots <= {MAX_SLOTS} "
            f"(got n={instance.n}, m={instance.m}, slots={cfg.slots})"
        )
    if not instance.jobs:
        return 0.0, Schedule()

    breakpoints, index, slot_start, slot_end, slot_len = _build_grid(instance, cfg.slots)
    jobs = list(instance.jobs)
    seg_lo = [index[j.release] for j in jobs]
    seg_hi = [index[j.deadline] for j in jobs]

    if cfg.preemptive:
        return _preemptive_optimal(instance, jobs, seg_lo, seg_hi, breakpoints, cfg.slots, slot_start, slot_end)
    return _nonpreemptive_optimal(instance, jobs, seg_lo, seg_hi, cfg.slots, slot_start, slot_end, slot_len)


def _nonpreemptive_optimal(instance, jobs, seg_lo, seg_hi, g, slot_start, slot_end, slot_len):
    n = len(jobs)
    m = instance.m
    alpha = instance.alpha
    nslots = len(slot_len)
    prefix = [0.0] * (nslots + 1)
    for i in range(nslots):
        prefix[i + 1] = prefix[i] + slot_len[i]

    runs_per_job = []
    for j, job in enumerate(jobs):
        lo, hi = seg_lo[j] * g, seg_hi[j] * g
        runs = []
        for a in range(lo, hi):
            for b in range(a + 1, hi + 1):
                t = prefix[b] - prefix[a]
                runs.append((job_energy(job.work, job.size, t, alpha), t, a, b))
        runs.sort(key=lambda r: (r[0], r[2]))
        runs_per_job.append(runs)

    tail = [0.0] * (n + 1)
    for j in range(n - 1, -1, -1):
        tail[j] = tail[j + 1] + runs_per_job[j][0][0]

    load = [0] * nslots
    chosen: list[tuple | None] = [None] * n
    best_value = [float("inf")]
    best_choice: list[list[tuple] | None] = [None]

    def dfs(j: int, acc: float) -> None:
        if acc + tail[j] >= best_value[0]:
            return
        if j == n:
            best_value[0] = acc
            best_choice[0] = list(chosen)
            return
        size = jobs[j].size
        for run in runs_per_job[j]:
            e, _, a, b = run
            if acc + e + tail[j + 1] >= best_value[0]:
                break  # runs are sorted by energy; the rest are no better
            if any(load[s] + size > m for s in range(a, b)):
                continue
            for s in range(a, b):
                load[s] += size
            chosen[j] = run
            dfs(j + 1, acc + e)
            for s in range(a, b):
                load[s] -= size

    dfs(0, 0.0)
    if best_choice[0] is None:
        raise OracleInfeasibleError("no feasible non-preemptive combination at this grid resolution")

    picks = best_choice[0]
    # Fixed processor sets exist because no slot is overloaded; assign them
    # greedily by start slot, lowest free indices first.
    procs: list[tuple[int, ...]] = [()] * n
    for j in sorted(range(n), key=lambda j: (picks[j][2], j)):
        _, _, a, b = picks[j]
        busy = set()
        for k in range(n):
            if k != j and procs[k]:
                _, _, ka, kb = picks[k]
                if ka < b and kb > a:
                    busy.update(procs[k])
        free = [q for q in range(m) if q not in busy]
        procs[j] = tuple(free[: jobs[j].size])

    entries = []
    for j, job in enumerate(jobs):
        e, t, a, b = picks[j]
        entries.append(
            JobSchedule(
                job_id=job.id,
                procs=procs[j],
                segments=(ExecSegment(slot_start[a], slot_end[b - 1], job.work / t),),
            )
        )
    entries.sort(key=lambda entry: entry.job_id)
    return best_value[0], Schedule(tuple(entries))


def _conflict_graphs(jobs, m):
    """Realizable pairwise-conflict graphs, reduced to the minimal ones.

    Returns (pairs, [(mask, processor assignment)]) where bit k of a mask
    means pair k's processor sets intersect. Only masks with no realizable
    proper subset survive: removing a conflict never increases the optimum.
    """
    n = len(jobs)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen: dict[int, tuple] = {}
    options = [[frozenset(c) for c in itertools.combinations(range(m), job.size)] for job in jobs]
    for assignment in itertools.product(*options):
        mask = 0
        for k, (i, j) in enumerate(pairs):
            if assignment[i] & assignment[j]:
                mask |= 1 << k
        if mask not in seen:
            seen[mask] = assignment
    minimal = [
        (mask, seen[mask])
        for mask in sorted(seen)
        if not any(other != mask and other & mask == other for other in seen)
    ]
    return pairs, minimal


def _maximal_independent_sets(members, conflict):
    """Maximal independent sets of the conflict graph induced on ``members``."""
    out = []
    k = len(members)
    for bits in range(1, 1 << k):
        sub = [members[i] for i in range(k) if bits >> i & 1]
        if any(conflict[a][b] for a, b in itertools.combinations(sub, 2)):
            continue
        if any(
            x not in sub and all(not conflict[x][y] for y in sub)
            for x in members
        ):
            continue
        out.append(tuple(sub))
    out.sort()
    return out


def _compositions(total, parts):
    """All splits of ``total`` into ``parts`` non-negative integers."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _preemptive_optimal(instance, jobs, seg_lo, seg_hi, breakpoints, g, slot_start, slot_end):
    n = len(jobs)
    m = instance.m
    alpha = instance.alpha
    nsegs = len(breakpoints) - 1
    seg_h = [(breakpoints[s + 1] - breakpoints[s]) / g for s in range(nsegs)]
    seg_jobs = [[j for j in range(n) if seg_lo[j] <= s < seg_hi[j]] for s in range(nsegs)]

    pairs, graphs = _conflict_graphs(jobs, m)

    best_value = [float("inf")]
    best_witness: list[tuple | None] = [None]

    for mask, assignment in graphs:
        conflict = [[False] * n for _ in range(n)]
        for k, (i, j) in enumerate(pairs):
            if mask >> k & 1:
                conflict[i][j] = conflict[j][i] = True
        mis = [_maximal_independent_sets(seg_jobs[s], conflict) if seg_jobs[s] else [] for s in range(nsegs)]

        rem = [[0.0] * n for _ in range(nsegs + 1)]
        for s in range(nsegs - 1, -1, -1):
            for j in range(n):
                rem[s][j] = rem[s + 1][j] + (g * seg_h[s] if j in seg_jobs[s] else 0.0)

        t = [0.0] * n
        comps: list[tuple] = [()] * nsegs

        def dfs(s: int) -> None:
            value = 0.0
            for j, job in enumerate(jobs):
                avail = t[j] + rem[s][j]
                if avail <= 0.0:
                    return
                value += job_energy(job.work, job.size, avail, alpha)
            if value >= best_value[0]:
                return
            if s == nsegs:
                best_value[0] = value
                best_witness[0] = (assignment, list(comps))
                return
            if not mis[s]:
                comps[s] = ()
                dfs(s + 1)
                return
            h = seg_h[s]
            for comp in _compositions(g, len(mis[s])):
                for idx, cnt in enumerate(comp):
                    if cnt:
                        for j in mis[s][idx]:
                            t[j] += cnt * h
                comps[s] = comp
                dfs(s + 1)
                for idx, cnt in enumerate(comp):
                    if cnt:
                        for j in mis[s][idx]:
                            t[j] -= cnt * h

        dfs(0)

    if best_witness[0] is None:
        raise OracleInfeasibleError("no feasible preemptive combination at this grid resolution")

    assignment, comps = best_witness[0]
    conflict = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if assignment[i] & assignment[j]:
                conflict[i][j] = conflict[j][i] = True

    slots_of: list[list[int]] = [[] for _ in range(n)]
    totals = [0.0] * n
    for s in range(nsegs):
        if not comps[s]:
            continue
        sets = _maximal_independent_sets(seg_jobs[s], conflict)
        base = s * g
        for idx, cnt in enumerate(comps[s]):
            for j in sets[idx]:
                slots_of[j].extend(range(base, base + cnt))
                totals[j] += cnt * seg_h[s]
            base += cnt

    entries = []
    for j, job in enumerate(jobs):
        slots = sorted(slots_of[j])
        speed = job.work / totals[j]
        segments = []
        run_start = slots[0]
        prev = slots[0]
        for s in slots[1:]:
            if s == prev + 1:
                prev = s
                continue
            segments.append(ExecSegment(slot_start[run_start], slot_end[prev], speed))
            run_start = prev = s
        segments.append(ExecSegment(slot_start[run_start], slot_end[prev], speed))
        entries.append(JobSchedule(job_id=job.id, procs=tuple(sorted(assignment[j])), segments=tuple(segments)))
    entries.sort(key=lambda entry: entry.job_id)
    return best_value[0], Schedule(tuple(entries))


def check_certificate(solution: Solution, oracle_energy: float) -> ValidationReport:
    """Sandwich checks implied by lb <= OPT <= oracle value: the lower bound
    must not exceed the oracle value, and the achieved energy must stay
    within bound * oracle value."""
    violations = []
    if not leq(solution.lb_energy, oracle_energy):
        violations.append(
            Violation(
                "lb-exceeds-opt",
                -1,
                f"lower bound {solution.lb_energy!r} exceeds the oracle value {oracle_energy!r}",
            )
        )
    cap = solution.bound * oracle_energy * (1.0 + 1e-6)
    if solution.energy - cap > ABS_TOL:
        violations.append(
            Violation(
                "ratio-exceeds-bound",
                -1,
                f"energy {solution.energy!r} exceeds bound * oracle = {cap!r}",
            )
        )
    return ValidationReport(tuple(violations))
