from ..complexification import integrability_report
from .base import BaseJob, JobReport
from .enums import Verb

CRITERIA = {
    'i': "E^(1,0) closed under the bracket",
    'ii': "E^(0,1) closed under the bracket",
    'iii': "d_E has no (0,2)-part on (1,0)-forms",
    'iv': "d_E = d' + d''",
    'v': "N_J = 0",
}


class IntegrabilityJob(BaseJob):
    """
    INTEGRABILITY: the five equivalent criteria for --endomorphism, each computed independently.
    """
    verb = Verb.INTEGRABILITY

    def _compute(self) -> JobReport:
        (doc,) = self._require_inputs(1)
        J = doc.endomorphism(self._require(self.options.endomorphism, "endomorphism"))
        report = integrability_report(doc.algebroid, J)
        lines = []
        for key, holds in report.items.items():
            line = f"({key}) {CRITERIA[key]}: {'yes' if holds else 'no'}"
            if key in report.witnesses:
                line += f"  [{report.witnesses[key]}]"
            lines.append(line)
        return self._report(report.integrable, lines, report.to_dict())
