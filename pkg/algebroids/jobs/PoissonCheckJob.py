from ..poisson import is_poisson
from .base import BaseJob, JobReport
from .enums import Verb


class PoissonCheckJob(BaseJob):
    """
    POISSON-CHECK: [pi, pi]_E = 0 for --bisection, printing the residual otherwise.
    """
    verb = Verb.POISSON_CHECK

    def _compute(self) -> JobReport:
        (doc,) = self._require_inputs(1)
        name = self._require(self.options.bisection, "bisection")
        check = is_poisson(doc.algebroid, doc.bisection(name))
        if check.ok:
            lines = [f"[{name}, {name}] = 0"]
        else:
            lines = [f"[{name}, {name}] = {check.residual.to_text()}"]
        return self._report(check.ok, lines, check.to_dict())
