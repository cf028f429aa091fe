from ..complexification import make_ac_structure, nijenhuis, nijenhuis_torsion
from ..errors import NotAlmostComplex
from .base import BaseJob, JobReport
from .enums import Verb


class NijenhuisJob(BaseJob):
    """
    NIJENHUIS: the Nijenhuis tensor of --endomorphism on frame pairs.
    An almost complex J gets N_J; any other endomorphism gets its Nijenhuis torsion.
    """
    verb = Verb.NIJENHUIS

    def _compute(self) -> JobReport:
        (doc,) = self._require_inputs(1)
        A = doc.algebroid
        G = doc.endomorphism(self._require(self.options.endomorphism, "endomorphism"))
        try:
            make_ac_structure(A, G)
            almost_complex = True
        except NotAlmostComplex:
            almost_complex = False
        N = nijenhuis(A, G) if almost_complex else nijenhuis_torsion(A, G)
        if N.is_zero():
            lines = [f"{N.name} = 0"]
        else:
            lines = [f"{N.name}(e{a}, e{b}) = {N.at(a - 1, b - 1).to_text()}" for a, b in N.nonzero_pairs()]
        data = {'almost_complex': almost_complex, 'zero': N.is_zero(), 'components': N.to_dict()}
        return self._report(N.is_zero(), lines, data)
