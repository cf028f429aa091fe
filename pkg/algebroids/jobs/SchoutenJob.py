import logging
from typing import List

from ..algebroid import Algebroid
from ..calculus import schouten, schouten_jacobi_residual, schouten_leibniz_residual, schouten_skew_residual
from ..sampling import make_rng, random_multivector
from .base import BaseJob, JobReport
from .enums import Verb

logger = logging.getLogger(__name__)

DEFAULT_TRIPLES = 30


class SchoutenJob(BaseJob):
    """
    SCHOUTEN: with two --multivector names, print their bracket.
    Without them, run the graded skew / Leibniz / Jacobi suite on random triples.
    """
    verb = Verb.SCHOUTEN

    def _compute(self) -> JobReport:
        (doc,) = self._require_inputs(1)
        names = self.options.multivectors
        if len(names) >= 2:
            A = doc.algebroid
            S, T = doc.multivector(names[0]), doc.multivector(names[1])
            value = schouten(A, S, T)
            line = f"[{names[0]}, {names[1]}] = {value.to_text()}"
            return self._report(True, [line], {'bracket': value.to_text(), 'degree': value.degree})

        algebroids = {d.algebroid.name: d.algebroid for d in self.documents}
        results = self._map_instances(self._suite, algebroids)
        lines = []
        for name, failures in results.items():
            lines.append(f"{name}: graded skew, Leibniz and Jacobi: {'OK' if not failures else 'FAILED'}")
            lines.extend(f"  {failure}" for failure in failures)
        verdict = all(not failures for failures in results.values())
        return self._report(verdict, lines, {name: {'failures': f} for name, f in results.items()})

    def _suite(self, A: Algebroid) -> List[str]:
        rng = make_rng(self.options.seed)
        count = self.options.points or DEFAULT_TRIPLES
        top = max(1, min(A.rank, 2))
        failures = []
        for k in range(count):
            S, T, U = (random_multivector(A, rng.randint(1, top), rng, coefficient_degree=1) for _ in range(3))
            for law, residual in (('skew', schouten_skew_residual(A, S, T)),
                                  ('leibniz', schouten_leibniz_residual(A, S, T, U)),
                                  ('jacobi', schouten_jacobi_residual(A, S, T, U))):
                if residual:
                    failures.append(f"{law} #{k}: residual {residual.to_text()}")
        logger.info(f"{A.name}: Schouten identities on {count} triples, {len(failures)} failures")
        return failures
