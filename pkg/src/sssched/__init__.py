"""Energy-minimizing schedules for rigid parallel jobs on speed-scalable processors.

Two-stage approximation pipeline with certified ratios: stage 1 computes
per-job durations and a provable energy lower bound, stage 2 list-packs the
jobs and compresses speeds back into the deadlines. A desk-scale brute-force
oracle sandwiches the certificates on tiny instances.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .durations import DurationPlan, common_window_durations, lift_durations, max_density_interval, proxy_durations
from .errors import (
    GuardLimitError,
    InputError,
    InternalInvariantError,
    OracleInfeasibleError,
    ParseError,
    SchedulingError,
    VariantError,
)
from .generator import generate_instance
from .model import (
    ExecSegment,
    Instance,
    Job,
    JobSchedule,
    Schedule,
    ValidationReport,
    job_energy,
    lower_bound_energy,
    mirror_instance,
    mirror_schedule,
    schedule_energy,
    validate_schedule,
)
from .oracle import GridConfig, check_certificate, grid_optimal
from .pipeline import Solution, Variant, VariantKind, detect_variant, solve, theoretical_bound
from .schedulers import (
    PackedSchedule,
    compress,
    edf_list_schedule_np,
    edf_list_schedule_pmtn,
    list_schedule_np,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    "DurationPlan",
    "common_window_durations",
    "lift_durations",
    "max_density_interval",
    "proxy_durations",
    "SchedulingError",
    "InputError",
    "VariantError",
    "ParseError",
    "GuardLimitError",
    "OracleInfeasibleError",
    "InternalInvariantError",
    "generate_instance",
    "ExecSegment",
    "Instance",
    "Job",
    "JobSchedule",
    "Schedule",
    "ValidationReport",
    "job_energy",
    "lower_bound_energy",
    "mirror_instance",
    "mirror_schedule",
    "schedule_energy",
    "validate_schedule",
    "GridConfig",
    "check_certificate",
    "grid_optimal",
    "Solution",
    "Variant",
    "VariantKind",
    "detect_variant",
    "solve",
    "theoretical_bound",
    "PackedSchedule",
    "compress",
    "edf_list_schedule_np",
    "edf_list_schedule_pmtn",
    "list_schedule_np",
]
