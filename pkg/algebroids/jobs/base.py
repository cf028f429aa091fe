import logging
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, TypeVar

from .. import catalogue
from ..document import Document, dumps, load_document
from ..errors import AlgebroidError, ParseError, UnknownName
from .enums import OutputFormat, Verb

logger = logging.getLogger(__name__)

T = TypeVar('T')


@dataclass
class JobOptions:
    """Everything a verb may read from the command line."""
    inputs: List[str] = field(default_factory=list)
    endomorphism: Optional[str] = None
    bisection: Optional[str] = None
    multivectors: List[str] = field(default_factory=list)
    morphism: Optional[str] = None
    connection: Optional[str] = None
    seed: Optional[int] = None
    points: Optional[int] = None
    jobs: int = 1
    p: Optional[int] = None
    q: Optional[int] = None
    n: List[int] = field(default_factory=list)
    golden: bool = False
    matrix: bool = False
    compat: bool = False
    output_format: OutputFormat = OutputFormat.TEXT


@dataclass
class JobReport:
    verb: Verb
    verdict: bool
    lines: List[str] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {'verb': self.verb.value, 'verdict': self.verdict, 'report': self.data}

    def render(self, fmt: OutputFormat = OutputFormat.TEXT) -> str:
        if fmt == OutputFormat.JSON:
            return dumps(self.to_dict())
        return "\n".join(self.lines)


class BaseJob(ABC):
    verb: Verb

    def __init__(self, options: JobOptions, progress_callback: Optional[Callable[[str, int, str], None]] = None):
        self.options = options
        self.documents: List[Document] = []
        self._progress_callback = progress_callback

    def _report_progress(self, stage: str, percent: int, message: str):
        """Report progress to callback if available."""
        if self._progress_callback:
            self._progress_callback(stage, percent, message)

    def run(self) -> JobReport:
        """
        Template Method: load inputs, compute, build the report.
        """
        try:
            self._report_progress("loading", 10, f"Loading {len(self.options.inputs)} input(s)...")
            self._load()

            self._report_progress("computing", 40, f"Running {self.verb.value}...")
            report = self._compute()

            self._report_progress("reporting", 90, "Building report...")
            report.lines.append(f"verdict: {'true' if report.verdict else 'false'}")

            self._report_progress("complete", 100, f"{self.verb.value} complete")
            return report
        except AlgebroidError as e:
            logger.error(f"{self.verb.value} failed: {type(e).__name__}: {e}")
            raise

    def _load(self):
        self.documents = [self._load_one(item) for item in self.options.inputs]

    @staticmethod
    def _load_one(item: str) -> Document:
        """A definition document path, or the name of a catalogue algebroid."""
        if item.endswith('.json') or Path(item).exists():
            return load_document(item)
        try:
            return Document(catalogue.build(item), source=item)
        except UnknownName as e:
            raise ParseError(f"'{item}' is neither a document nor a catalogue algebroid", detail=item) from e

    @abstractmethod
    def _compute(self) -> JobReport:
        """Subclasses must implement this specific logic."""
        pass

    # --- helpers shared by the verbs ---

    def _report(self, verdict: bool, lines: List[str], data: Dict[str, Any]) -> JobReport:
        return JobReport(self.verb, verdict, list(lines), data)

    def _require_inputs(self, count: int) -> List[Document]:
        if len(self.documents) < count:
            raise ParseError(f"{self.verb.value} needs {count} input(s), got {len(self.documents)}",
                             detail=self.options.inputs)
        return self.documents[:count]

    def _require(self, value: Optional[str], flag: str) -> str:
        if not value:
            raise ParseError(f"{self.verb.value} needs --{flag}", detail=flag)
        return value

    def _map_instances(self, fn: Callable[[T], Any], instances: Mapping[str, T]) -> Dict[str, Any]:
        """Apply fn to independent instances, merged by instance name."""
        names = sorted(instances)
        if self.options.jobs > 1 and len(names) > 1:
            with ThreadPoolExecutor(max_workers=self.options.jobs) as pool:
                results = list(pool.map(lambda name: fn(instances[name]), names))
        else:
            results = [fn(instances[name]) for name in names]
        return dict(zip(names, results))
