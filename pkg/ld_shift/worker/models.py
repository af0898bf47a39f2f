"""Worker data models."""

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional


class JobStatus(str, Enum):
    """Status of a sweep job."""
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


@dataclass
class SweepJob:
    """One value of a parameter sweep."""

    job_id: str
    index: int
    parameter: str
    value: float

    status: JobStatus = JobStatus.PENDING
    message: str = ""
    created_at: float = field(default_factory=time.time)
    last_updated: float = field(default_factory=time.time)
    completed_at: Optional[float] = None

    # Results
    report: Optional[Dict[str, Any]] = None
    error: Optional[str] = None
    exit_code: int = 0

    def set_status(self, status: JobStatus, message: str = "") -> None:
        """Update job status and message."""
        self.status = status
        self.message = message
        self.last_updated = time.time()

        if status in [JobStatus.COMPLETED, JobStatus.FAILED]:
            self.completed_at = time.time()

    @property
    def duration(self) -> Optional[float]:
        if self.completed_at is None:
            return None
        return self.completed_at - self.created_at
