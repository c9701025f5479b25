"""JSON documents for instances and solutions.

Both formats are strict: unknown fields are rejected, numbers must be JSON
numbers. Floats are written with Python's shortest round-trip representation,
so load(dump(x)) reproduces every value bit for bit.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import InputError, ParseError
from .model import ExecSegment, Instance, Job, JobSchedule, Schedule
from .pipeline import Solution, Variant, VariantKind

_INSTANCE_KEYS = {"m", "alpha", "jobs"}
_JOB_KEYS = {"id", "work", "size", "release", "deadline"}
_SOLUTION_KEYS = {"variant", "preemptive", "bound", "lb_energy", "energy", "ratio", "factor", "schedule"}
_ENTRY_KEYS = {"job_id", "procs", "segments"}
_SEGMENT_KEYS = {"start", "end", "speed"}


def _require_keys(doc: Any, keys: set[str], what: str) -> None:
    if not isinstance(doc, dict):
        raise ParseError(f"{what} must be an object, got {type(doc).__name__}")
    if set(doc) != keys:
        unknown = sorted(set(doc) - keys)
        missing = sorted(keys - set(doc))
        parts = []
        if unknown:
            parts.append(f"unknown fields {unknown}")
        if missing:
            parts.append(f"missing fields {missing}")
        raise ParseError(f"{what}: " + ", ".join(parts))


def _as_int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer, got {value!r}")
    return value


def _as_real(value: Any, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{what} must be a number, got {value!r}")
    return float(value)


def instance_to_dict(instance: Instance) -> dict:
    return {
        "m": instance.m,
        "alpha": instance.alpha,
        "jobs": [
            {"id": j.id, "work": j.work, "size": j.size, "release": j.release, "deadline": j.deadline}
            for j in instance.jobs
        ],
    }


def instance_from_dict(doc: Any) -> Instance:
    _require_keys(doc, _INSTANCE_KEYS, "instance")
    if not isinstance(doc["jobs"], list):
        raise ParseError("instance: 'jobs' must be an array")
    jobs = []
    for k, jd in enumerate(doc["jobs"]):
        _require_keys(jd, _JOB_KEYS, f"job #{k}")
        try:
            jobs.append(
                Job(
                    id=_as_int(jd["id"], f"job #{k}: id"),
                    work=_as_real(jd["work"], f"job #{k}: work"),
                    size=_as_int(jd["size"], f"job #{k}: size"),
                    release=_as_real(jd["release"], f"job #{k}: release"),
                    deadline=_as_real(jd["deadline"], f"job #{k}: deadline"),
                )
            )
        except InputError as exc:
            raise ParseError(str(exc)) from exc
    try:
        return Instance(m=_as_int(doc["m"], "m"), alpha=_as_real(doc["alpha"], "alpha"), jobs=tuple(jobs))
    except InputError as exc:
        raise ParseError(str(exc)) from exc


def solution_to_dict(solution: Solution) -> dict:
    entries = sorted(solution.schedule, key=lambda e: e.job_id)
    return {
        "variant": solution.variant.kind.value,
        "preemptive": solution.variant.preemptive,
        "bound": solution.bound,
        "lb_energy": solution.lb_energy,
        "energy": solution.energy,
        "ratio": solution.ratio,
        "factor": solution.factor,
        "schedule": [
            {
                "job_id": e.job_id,
                "procs": list(e.procs),
                "segments": [{"start": s.start, "end": s.end, "speed": s.speed} for s in e.segments],
            }
            for e in entries
        ],
    }


def solution_from_dict(doc: Any) -> Solution:
    _require_keys(doc, _SOLUTION_KEYS, "solution")
    try:
        kind = VariantKind(doc["variant"])
    except ValueError as exc:
        raise ParseError(f"unknown variant {doc['variant']!r}") from exc
    if not isinstance(doc["preemptive"], bool):
        raise ParseError("'preemptive' must be a boolean")
    if not isinstance(doc["schedule"], list):
        raise ParseError("'schedule' must be an array")

    entries = []
    for k, ed in enumerate(doc["schedule"]):
        _require_keys(ed, _ENTRY_KEYS, f"schedule entry #{k}")
        if not isinstance(ed["procs"], list) or not isinstance(ed["segments"], list):
            raise ParseError(f"schedule entry #{k}: 'procs' and 'segments' must be arrays")
        segments = []
        for i, sd in enumerate(ed["segments"]):
            _require_keys(sd, _SEGMENT_KEYS, f"entry #{k} segment #{i}")
            segments.append(
                ExecSegment(
                    start=_as_real(sd["start"], f"entry #{k}: start"),
                    end=_as_real(sd["end"], f"entry #{k}: end"),
                    speed=_as_real(sd["speed"], f"entry #{k}: speed"),
                )
            )
        entries.append(
            JobSchedule(
                job_id=_as_int(ed["job_id"], f"entry #{k}: job_id"),
                procs=tuple(_as_int(q, f"entry #{k}: processor") for q in ed["procs"]),
                segments=tuple(segments),
            )
        )
    return Solution(
        schedule=Schedule(tuple(entries)),
        plan=None,
        energy=_as_real(doc["energy"], "energy"),
        lb_energy=_as_real(doc["lb_energy"], "lb_energy"),
        factor=_as_real(doc["factor"], "factor"),
        bound=_as_real(doc["bound"], "bound"),
        ratio=_as_real(doc["ratio"], "ratio"),
        variant=Variant(kind=kind, preemptive=doc["preemptive"]),
    )


def _dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _loads(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what} is not valid JSON: {exc}") from exc


def dumps_instance(instance: Instance) -> str:
    return _dumps(instance_to_dict(instance))


def loads_instance(text: str) -> Instance:
    return instance_from_dict(_loads(text, "instance document"))


def dumps_solution(solution: Solution) -> str:
    return _dumps(solution_to_dict(solution))


def loads_solution(text: str) -> Solution:
    return solution_from_dict(_loads(text, "solution document"))


def load_instance(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_instance(fh.read())


def save_instance(instance: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_instance(instance))


def load_solution(path) -> Solution:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_solution(fh.read())


def save_solution(solution: Solution, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_solution(solution))
