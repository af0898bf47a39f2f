"""Worker module for running sweep jobs."""

from .job_manager import JobManager, run_sweep_point
from .models import JobStatus, SweepJob

__all__ = ["JobManager", "JobStatus", "SweepJob", "run_sweep_point"]
