from ..poisson import rank_survey
from ..sphere import foliation_rank_survey
from .base import BaseJob, JobReport
from .enums import Verb


def _histogram(counter) -> dict:
    return {str(rank): count for rank, count in sorted(counter.items())}


class RankJob(BaseJob):
    """
    RANK: ranks of the characteristic distribution rho(pi) and of rho o pi^# at --points
    exact sample points. With --n, the sphere bisection Jt, which must sit at rank 2n - 2.
    """
    verb = Verb.RANK

    def _compute(self) -> JobReport:
        if self.options.n:
            return self._sphere()
        (doc,) = self._require_inputs(1)
        name = self._require(self.options.bisection, "bisection")
        survey = rank_survey(doc.algebroid, doc.bisection(name), self.options.points, self.options.seed)
        data = {kind: _histogram(counter) for kind, counter in survey.items()}
        lines = [f"rank rho({name}): {data['distribution']}", f"rank rho o {name}^#: {data['sharp_image']}"]
        return self._report(True, lines, data)

    def _sphere(self) -> JobReport:
        points, seed = self.options.points, self.options.seed
        surveys = self._map_instances(lambda n: foliation_rank_survey(n, points, seed),
                                      {f"n={n}": n for n in self.options.n})
        lines = [f"{name}: rank rho(Jt) {_histogram(s.distribution)}, expected {s.expected}, "
                 f"rank rho o Jt^# {_histogram(s.sharp_image)}" for name, s in surveys.items()]
        verdict = all(s.constant for s in surveys.values())
        return self._report(verdict, lines, {name: s.to_dict() for name, s in surveys.items()})
