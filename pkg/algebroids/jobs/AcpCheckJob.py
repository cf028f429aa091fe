from ..acp import is_acp
from .base import BaseJob, JobReport
from .enums import Verb


class AcpCheckJob(BaseJob):
    """
    ACP-CHECK: (--endomorphism J, --multivector pi20) is almost complex Poisson.
    """
    verb = Verb.ACP_CHECK

    def _compute(self) -> JobReport:
        (doc,) = self._require_inputs(1)
        J = doc.endomorphism(self._require(self.options.endomorphism, "endomorphism"))
        name = self._require(self.options.multivectors[0] if self.options.multivectors else None, "multivector")
        check = is_acp(doc.algebroid, J, doc.multivector(name))
        lines = [
            f"[{name}, {name}] = {check.self_bracket.to_text()}",
            f"[{name}, conj {name}] = {check.mixed_bracket.to_text()}",
        ]
        return self._report(check.ok, lines, check.to_dict())
