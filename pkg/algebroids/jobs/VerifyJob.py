from ..algebroid import verify_algebroid
from .base import BaseJob, JobReport
from .enums import Verb


class VerifyJob(BaseJob):
    """
    VERIFY: the structure equations of every input algebroid.
    Skewness, anchor homomorphism, Jacobi and tangency of the anchor to the relations.
    """
    verb = Verb.VERIFY

    def _compute(self) -> JobReport:
        self._require_inputs(1)
        algebroids = {doc.algebroid.name: doc.algebroid for doc in self.documents}
        reports = self._map_instances(verify_algebroid, algebroids)
        lines = []
        for name, report in reports.items():
            if report.ok:
                lines.append(f"{name}: structure equations: OK")
            else:
                lines.append(f"{name}: structure equations: FAILED")
                lines.extend(f"  {failure.to_text()}" for failure in report.failures)
        verdict = all(report.ok for report in reports.values())
        return self._report(verdict, lines, {name: r.to_dict() for name, r in reports.items()})
