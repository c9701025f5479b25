"""Pure-Python scheduling kernels.

The compiled twin in ``_core.pyx`` mirrors this file statement for statement
so both backends produce bit-identical floating-point results. Keep the two
in sync when changing anything here.

All kernels are positional: callers pass jobs pre-sorted in the order the
algorithm consumes them and map results back to job ids themselves.
"""

from __future__ import annotations

#: Absolute snap applied before the two boundary comparisons of stage 1.
SNAP = 1e-12


def density_interval_durations(proxy_works, rigid_works, sizes, deadlines, ids, m):
    """Single-processor proxy durations via repeated highest-density intervals.

    Jobs must arrive sorted by (deadline, id) and all share release time 0.
    ``proxy_works[i]`` is size_i * W_i, ``rigid_works[i]`` is W_i. Returns the
    per-job proxy durations aligned with the input positions.

    Each round finds the highest-density interval [0, t') over the current
    (contracted) deadlines. If every covered job i satisfies
    W_i / d_i <= sum(proxy) / (t' * m), the interval is split among them in
    proportion to proxy work and the timeline is contracted past t'.
    Otherwise each violator, in non-decreasing current-deadline order, is
    given the tail [d_i - d_i*size_i/m, d_i) of its own window and that tail
    is deleted from every remaining deadline.
    """
    n = len(proxy_works)
    p1 = [0.0] * n
    dcur = list(deadlines)
    act = list(range(n))

    while act:
        # Highest-density interval [0, t'); candidates are current deadlines.
        # The ascending scan with a strict improvement test keeps the
        # smallest t' on density ties.
        best_density = -1.0
        best_t = 0.0
        best_s = 0.0
        best_k = -1
        s = 0.0
        na = len(act)
        for k in range(na):
            j = act[k]
            s += proxy_works[j]
            if k + 1 < na and dcur[act[k + 1]] == dcur[j]:
                continue
            t_prime = dcur[j]
            density = s / t_prime
            if density > best_density:
                best_density = density
                best_t = t_prime
                best_s = s
                best_k = k

        t_prime = best_t
        total = best_s
        rhs = total / (t_prime * m)
        violators = []
        for k in range(best_k + 1):
            j = act[k]
            if rigid_works[j] / dcur[j] > rhs + SNAP:
                violators.append(j)

        if not violators:
            for k in range(best_k + 1):
                j = act[k]
                p1[j] = proxy_works[j] * t_prime / total
            act = act[best_k + 1 :]
            for j in act:
                dcur[j] = dcur[j] - t_prime
        else:
            violators.sort(key=lambda j: (dcur[j], ids[j]))
            for v in violators:
                dv = dcur[v]
                pv = dv * sizes[v] / m
                p1[v] = pv
                act.remove(v)
                cut = dv - pv
                for j in act:
                    if dcur[j] >= dv:
                        dcur[j] = dcur[j] - pv
                    elif dcur[j] >= cut:
                        dcur[j] = cut
    return p1


def pack_frontier(m, sizes, durations):
    """Event-driven list packing: whenever processors fall idle, start every
    not-yet-started job that fits, scanning the list in the given order.

    Jobs arrive in priority order and all are ready at time 0. Returns
    ``(starts, procs_flat)`` where job i occupies ``procs_flat[off_i : off_i +
    sizes[i]]`` with ``off`` the prefix sums of ``sizes``. Each started job
    takes the lowest-indexed idle processors and holds them for its whole
    duration.
    """
    n = len(sizes)
    starts = [0.0] * n
    off = [0] * n
    acc = 0
    for i in range(n):
        off[i] = acc
        acc += sizes[i]
    procs_flat = [0] * acc

    free = [True] * m
    nfree = m
    pending = list(range(n))
    run_end = []
    run_job = []
    t = 0.0

    while pending:
        survivors = []
        for j in pending:
            sz = sizes[j]
            if sz <= nfree:
                starts[j] = t
                base = off[j]
                k = 0
                for q in range(m):
                    if free[q]:
                        free[q] = False
                        procs_flat[base + k] = q
                        k += 1
                        if k == sz:
                            break
                nfree -= sz
                run_end.append(t + durations[j])
                run_job.append(j)
            else:
                survivors.append(j)
        pending = survivors
        if not pending:
            break
        tmin = run_end[0]
        for e in run_end[1:]:
            if e < tmin:
                tmin = e
        keep_end = []
        keep_job = []
        for idx in range(len(run_end)):
            if run_end[idx] == tmin:
                j = run_job[idx]
                base = off[j]
                for k in range(sizes[j]):
                    free[procs_flat[base + k]] = True
                nfree += sizes[j]
            else:
                keep_end.append(run_end[idx])
                keep_job.append(run_job[idx])
        run_end = keep_end
        run_job = keep_job
        t = tmin

    return starts, procs_flat


def _split_over_blocks(t, p, big_a, big_b):
    """Map the condensed-timeline interval [t, t+p) to real time, splitting
    around the excised blocks [big_a[k], big_b[k])."""
    segs = []
    real = t
    rem = p
    k = 0
    nb = len(big_a)
    while True:
        if k < nb and big_a[k] <= real:
            # Land exactly on the block end when we sit on its start; keep
            # the additive transform otherwise (real is strictly inside the
            # condensed region before the block).
            if real == big_a[k]:
                real = big_b[k]
            else:
                real = real + (big_b[k] - big_a[k])
            k += 1
            continue
        if rem <= 0.0:
            break
        if k < nb:
            gap = big_a[k] - real
            if gap <= 1e-12 * big_a[k]:
                # Rounding residue of the condensed-to-real transform: snap
                # onto (and over) the block instead of emitting an ulp-wide
                # sliver that later stages would collapse to zero length.
                real = big_b[k]
                k += 1
                continue
            if rem < gap:
                chunk = rem
                nxt = real + chunk
            else:
                chunk = gap
                nxt = big_a[k]
        else:
            chunk = rem
            nxt = real + chunk
        if nxt > real:
            # Sub-ulp chunks (rounding residue at block boundaries) are
            # dropped rather than emitted as zero-length segments.
            segs.append((real, nxt))
        real = nxt
        rem = rem - chunk
        if rem <= 0.0:
            break
    return segs


def pack_preemptive(m, sizes, durations):
    """Deadline-ordered packing with wide jobs appended at the schedule end
    and narrow jobs placed earliest on the timeline with wide blocks excised.

    Jobs arrive sorted by (deadline, id), all released at 0. A job with
    2*size > m is wide: it runs as one contiguous block starting at the
    current schedule end on the lowest-indexed processors, and its block is
    removed from the condensed timeline used for narrow jobs. A narrow job
    starts at the earliest condensed instant where some fixed set of ``size``
    processors stays free for its whole duration; mapping back to real time
    splits it around wide blocks. Returns per-job segment lists and processor
    lists.
    """
    n = len(sizes)
    segs_out = [None] * n
    procs_out = [None] * n

    big_a = []
    big_b = []
    placed_s = []
    placed_e = []
    placed_procs = []
    by_s = []
    by_e = []
    sched_end = 0.0

    for i in range(n):
        p = durations[i]
        sz = sizes[i]
        if 2 * sz > m:
            a = sched_end
            b = a + p
            big_a.append(a)
            big_b.append(b)
            segs_out[i] = [(a, b)]
            procs_out[i] = list(range(sz))
            sched_end = b
            continue

        # Candidate starts: 0 and the ends of placed narrow jobs, ascending.
        cands = [0.0]
        for idx in by_e:
            cands.append(placed_e[idx])
        count = [0] * m
        enter = 0
        leave = 0
        np_ = len(by_s)
        chosen = 0.0
        prev = None
        for t in cands:
            if t == prev:
                continue
            prev = t
            while enter < np_ and placed_s[by_s[enter]] < t + p:
                for q in placed_procs[by_s[enter]]:
                    count[q] += 1
                enter += 1
            while leave < np_ and placed_e[by_e[leave]] <= t:
                for q in placed_procs[by_e[leave]]:
                    count[q] -= 1
                leave += 1
            nfree = 0
            for q in range(m):
                if count[q] == 0:
                    nfree += 1
            if nfree >= sz:
                chosen = t
                break

        procs = []
        for q in range(m):
            if count[q] == 0:
                procs.append(q)
                if len(procs) == sz:
                    break

        segs = _split_over_blocks(chosen, p, big_a, big_b)
        segs_out[i] = segs
        procs_out[i] = procs
        end_real = segs[-1][1]
        if end_real > sched_end:
            sched_end = end_real

        idx = len(placed_s)
        placed_s.append(chosen)
        placed_e.append(chosen + p)
        placed_procs.append(procs)
        # Keep the two orderings sorted by insertion (stable on ties).
        pos = len(by_s)
        while pos > 0 and placed_s[by_s[pos - 1]] > chosen:
            pos -= 1
        by_s.insert(pos, idx)
        e_new = chosen + p
        pos = len(by_e)
        while pos > 0 and placed_e[by_e[pos - 1]] > e_new:
            pos -= 1
        by_e.insert(pos, idx)

    return segs_out, procs_out
