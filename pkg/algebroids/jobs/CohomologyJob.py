from ..cohomology import clp_cohomology
from .base import BaseJob, JobReport
from .enums import Verb


class CohomologyJob(BaseJob):
    """
    COHOMOLOGY: dim H^(p,q) of sigma11 for a constant almost complex Poisson pair.
    Without --p/--q every bidegree up to half the rank is computed.
    """
    verb = Verb.COHOMOLOGY

    def _compute(self) -> JobReport:
        (doc,) = self._require_inputs(1)
        A = doc.algebroid
        J = doc.endomorphism(self._require(self.options.endomorphism, "endomorphism"))
        name = self._require(self.options.multivectors[0] if self.options.multivectors else None, "multivector")
        pi20 = doc.multivector(name)

        half = A.rank // 2
        ps = [self.options.p] if self.options.p is not None else range(half + 1)
        qs = [self.options.q] if self.options.q is not None else range(half + 1)
        bidegrees = {f"{p},{q}": (p, q) for p in ps for q in qs}
        results = self._map_instances(lambda pq: clp_cohomology(A, J, pi20, *pq), bidegrees)

        lines = [f"dim H^({key}) = {result.dimension}" for key, result in results.items()]
        return self._report(True, lines, {key: result.to_dict() for key, result in results.items()})
