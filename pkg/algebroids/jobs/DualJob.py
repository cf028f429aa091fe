from ..document import dump_algebroid
from ..poisson import dual_algebroid
from .base import BaseJob, JobReport
from .enums import Verb


class DualJob(BaseJob):
    """
    DUAL: the cotangent algebroid (E*, pi^#, [.,.]_pi) of a Poisson --bisection.
    """
    verb = Verb.DUAL

    def _compute(self) -> JobReport:
        (doc,) = self._require_inputs(1)
        pi = doc.bisection(self._require(self.options.bisection, "bisection"))
        dual = dual_algebroid(doc.algebroid, pi)
        data = dump_algebroid(dual)
        lines = [f"{dual.name}: rank {dual.rank}, structure equations: OK"]
        lines.extend(f"  {key} = {value}" for key, value in sorted(data['structure'].items()))
        return self._report(True, lines, data)
