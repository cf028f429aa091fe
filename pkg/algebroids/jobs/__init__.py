from .enums import Verb, OutputFormat
from .progress import JobStage, JobState, ProgressManager, progress_manager
from .base import BaseJob, JobOptions, JobReport
from .factory import JobFactory

__all__ = [
    'Verb', 'OutputFormat',
    'JobStage', 'JobState', 'ProgressManager', 'progress_manager',
    'BaseJob', 'JobOptions', 'JobReport',
    'JobFactory',
]
