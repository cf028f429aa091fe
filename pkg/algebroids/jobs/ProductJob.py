from ..acp import is_acp
from ..complexification import make_ac_structure
from ..document import dump_algebroid
from ..matrices import to_text
from ..products import direct_product
from .base import BaseJob, JobReport
from .enums import Verb


class ProductJob(BaseJob):
    """
    PRODUCT: the direct product of two algebroids.
    With --endomorphism and --multivector present in both documents, also the product
    almost complex structure J1 + J2 and the ACP check of pi1 + pi2.
    """
    verb = Verb.PRODUCT

    def _compute(self) -> JobReport:
        left, right = self._require_inputs(2)
        product = direct_product(left.algebroid, right.algebroid)
        total = product.total
        data = {'algebroid': dump_algebroid(total)}
        lines = [f"{total.name}: rank {total.rank} over {list(total.ring.coordinates)}, structure equations: OK"]
        verdict = True

        if self.options.endomorphism:
            name = self.options.endomorphism
            J = make_ac_structure(total, product.endo(left.endomorphism(name), right.endomorphism(name)))
            data['endomorphism'] = to_text(J.matrix)
            lines.append(f"{J.name}: almost complex")
            if self.options.multivectors:
                pi_name = self.options.multivectors[0]
                pi = product.bivector(left.multivector(pi_name), right.multivector(pi_name))
                check = is_acp(total, J, pi)
                data['acp'] = check.to_dict()
                lines.append(f"{pi_name} + {pi_name}: almost complex Poisson {'yes' if check.ok else 'no'}")
                verdict = check.ok
        return self._report(verdict, lines, data)
