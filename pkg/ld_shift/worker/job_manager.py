"""Job manager for parameter sweeps."""

import asyncio
import logging
from concurrent.futures import Executor, ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..config import SWEEP_PARAMETERS, RunConfig, build_run_config
from ..errors import ConfigError, LDShiftError
from ..report import build_shift_report
from ..trajectory import build_trajectory
from .models import JobStatus, SweepJob

logger = logging.getLogger(__name__)


def run_sweep_point(
    config_data: Dict[str, Any], parameter: str, value: float, include_fd: bool
) -> Tuple[Optional[Dict[str, Any]], Optional[str], int]:
    """
    Compute the shift report for one sweep value.

    Runs in a worker process, so it takes and returns plain data.

    Returns:
        Tuple of (report dict or None, error message or None, exit code)
    """
    try:
        config = build_run_config(config_data).with_parameter(parameter, value)
        traj = build_trajectory(config.potential, config.particle, config=config.simulation)
        return build_shift_report(traj, include_fd=include_fd).to_dict(), None, 0
    except LDShiftError as e:
        return None, str(e), e.exit_code


class JobManager:
    """Runs sweep jobs on a process pool and keeps their lifecycle."""

    def __init__(self, workers: int = 1) -> None:
        self.workers = max(1, workers)
        self.jobs: Dict[str, SweepJob] = {}
        logger.info(f"JobManager initialized with {self.workers} worker(s)")

    def create_jobs(self, parameter: str, values: Sequence[float]) -> List[SweepJob]:
        """One pending job per value, in input order."""
        jobs = []
        for index, value in enumerate(values):
            job = SweepJob(job_id=f"{parameter}-{index:04d}", index=index, parameter=parameter, value=float(value))
            self.jobs[job.job_id] = job
            jobs.append(job)
        logger.info(f"Created {len(jobs)} sweep jobs over {parameter}")
        return jobs

    def get_job(self, job_id: str) -> Optional[SweepJob]:
        return self.jobs.get(job_id)

    async def process_job(
        self, job: SweepJob, config: RunConfig, include_fd: bool, executor: Optional[Executor]
    ) -> SweepJob:
        """Run one job; failures are recorded on the job, not raised."""
        job.set_status(JobStatus.RUNNING, f"{job.parameter}={job.value:g}")
        loop = asyncio.get_running_loop()
        args = (config.model_dump(mode="json"), job.parameter, job.value, include_fd)
        if executor is None:
            report, error, code = run_sweep_point(*args)
        else:
            report, error, code = await loop.run_in_executor(executor, run_sweep_point, *args)
        job.report, job.error, job.exit_code = report, error, code
        if error is None:
            job.set_status(JobStatus.COMPLETED, "Shift report ready")
            logger.info(f"Job {job.job_id} completed")
        else:
            job.set_status(JobStatus.FAILED, error)
            logger.error(f"Job {job.job_id} failed: {error}")
        return job

    async def run_sweep(
        self, config: RunConfig, parameter: str, values: Sequence[float], include_fd: bool = True
    ) -> List[SweepJob]:
        """
        Run every value of the sweep.

        Results come back in input order whatever the completion order.
        """
        if parameter not in SWEEP_PARAMETERS:
            raise ConfigError(
                f"unknown sweep parameter '{parameter}'; choose from {', '.join(SWEEP_PARAMETERS)}", key=parameter
            )
        if not values:
            raise ConfigError("sweep needs at least one value", key="values")
        jobs = self.create_jobs(parameter, values)
        if self.workers == 1:
            for job in jobs:
                await self.process_job(job, config, include_fd, None)
            return jobs
        with ProcessPoolExecutor(max_workers=self.workers) as executor:
            return list(
                await asyncio.gather(*(self.process_job(job, config, include_fd, executor) for job in jobs))
            )
