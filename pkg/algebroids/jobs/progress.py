import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional

logger = logging.getLogger(__name__)


class JobStage(str, Enum):
    PENDING = "pending"
    LOADING = "loading"
    COMPUTING = "computing"
    REPORTING = "reporting"
    COMPLETE = "complete"
    ERROR = "error"


@dataclass
class JobState:
    task_id: str
    stage: JobStage = JobStage.PENDING
    percent: int = 0
    message: str = "Starting..."
    created_at: float = field(default_factory=time.time)


class ProgressManager:
    """Progress of running jobs, shared by the CLI and the job workers."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._tasks: Dict[str, JobState] = {}
        return cls._instance

    def create_task(self, task_id: str) -> JobState:
        state = JobState(task_id=task_id)
        self._tasks[task_id] = state
        logger.info(f"[{task_id}] Task created")
        return state

    def update(self, task_id: str, stage: JobStage, percent: int, message: str):
        if task_id in self._tasks:
            state = self._tasks[task_id]
            state.stage = stage
            state.percent = percent
            state.message = message
            logger.info(f"[{task_id}] {stage.value}: {percent}% - {message}")

    def fail(self, task_id: str, message: str):
        """Mark a task failed, keeping the percentage it reached."""
        if task_id in self._tasks:
            state = self._tasks[task_id]
            state.stage = JobStage.ERROR
            state.message = message
            logger.info(f"[{task_id}] {JobStage.ERROR.value}: {state.percent}% - {message}")

    def get(self, task_id: str) -> Optional[JobState]:
        return self._tasks.get(task_id)

    def remove(self, task_id: str):
        if task_id in self._tasks:
            del self._tasks[task_id]


# Global instance
progress_manager = ProgressManager()
