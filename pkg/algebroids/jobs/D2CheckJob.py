import logging

from ..algebroid import Algebroid
from ..calculus import d_e
from ..sampling import make_rng, random_form, random_scalar
from .base import BaseJob, JobReport
from .enums import Verb

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 50


class D2CheckJob(BaseJob):
    """
    D2-CHECK: d_E(d_E omega) = 0 on seeded random forms of every degree below the rank.
    """
    verb = Verb.D2_CHECK

    def _compute(self) -> JobReport:
        self._require_inputs(1)
        algebroids = {doc.algebroid.name: doc.algebroid for doc in self.documents}
        results = self._map_instances(self._suite, algebroids)
        lines = []
        for name, result in results.items():
            status = "OK" if not result['failures'] else f"{len(result['failures'])} FAILED"
            lines.append(f"{name}: d_E^2 = 0 on {result['samples']} random forms: {status}")
            lines.extend(f"  d_E^2({text}) != 0" for text in result['failures'])
        verdict = all(not result['failures'] for result in results.values())
        return self._report(verdict, lines, results)

    def _suite(self, A: Algebroid) -> dict:
        rng = make_rng(self.options.seed)
        samples = self.options.points or DEFAULT_SAMPLES
        failures = []
        for k in range(samples):
            degree = k % max(A.rank, 1)
            omega = random_scalar(A.ring, rng) if degree == 0 else random_form(A, degree, rng)
            if d_e(A, d_e(A, omega)):
                failures.append(omega.to_text())
        logger.info(f"{A.name}: d_E^2 checked on {samples} forms, {len(failures)} failures")
        return {'samples': samples, 'failures': failures}
