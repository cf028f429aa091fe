import logging
from typing import Dict

from ..prolongation import (
    Connection,
    Prolongation,
    complete_lift_laws,
    curvature_nijenhuis_check,
    example_pi_on_prolongation,
    horizontal_lift_laws,
    lifted_nijenhuis_check,
    prolong,
)
from ..sampling import make_rng, random_connection
from .base import BaseJob, JobReport
from .enums import Verb

logger = logging.getLogger(__name__)

DEFAULT_CONNECTIONS = 3


def _status(ok: bool) -> str:
    return "OK" if ok else "FAILED"


class ProlongJob(BaseJob):
    """
    PROLONG: build the prolongation L^p(E) and check the lift laws.
    Complete lifts always; N_(J^c) = (N_J)^c with --endomorphism; horizontal lifts and
    R = -N_h for --connection, or for the flat and seeded random constant connections.
    Two --multivector sections s1, s2 add the (s1^h - i s1^v) ^ (s2^h - i s2^v) certificate.
    """
    verb = Verb.PROLONG

    def _compute(self) -> JobReport:
        (doc,) = self._require_inputs(1)
        A = doc.algebroid
        P = prolong(A)
        complete = complete_lift_laws(P)
        data: Dict[str, object] = {
            'algebroid': P.total.name,
            'rank': P.total.rank,
            'coordinates': list(P.ring.coordinates),
            'complete_lifts': complete.to_dict(),
        }
        lines = [f"{P.total.name}: rank {P.total.rank}, structure equations: OK",
                 f"complete lifts: {_status(complete.ok)}"]
        verdict = complete.ok

        if self.options.endomorphism:
            lifted = lifted_nijenhuis_check(P, doc.endomorphism(self.options.endomorphism))
            data['lifted_nijenhuis'] = lifted.to_dict()
            lines.append(f"N_(J^c) = (N_J)^c: {_status(lifted.ok)}")
            verdict = verdict and lifted.ok

        connections = self._connections(doc, A)
        results = self._map_instances(lambda nabla: self._horizontal(P, nabla), connections)
        data['connections'] = results
        for name, result in results.items():
            lines.append(f"{name}: horizontal lifts {_status(result['horizontal']['ok'])}, "
                         f"R = -N_h {_status(result['curvature']['ok'])}")
            verdict = verdict and result['horizontal']['ok'] and result['curvature']['ok']

        if len(self.options.multivectors) >= 2:
            s1, s2 = (doc.multivector(name) for name in self.options.multivectors[:2])
            connection = connections[min(connections)]
            certificate = example_pi_on_prolongation(P, connection, s1, s2)
            data['certificate'] = certificate.to_dict()
            lines.append(f"pi20 = {certificate.pi20.to_text()}")
            lines.append(f"sufficient conditions: {_status(certificate.sufficient)}, "
                         f"almost complex Poisson: {'yes' if certificate.acp.ok else 'no'}")
        return self._report(verdict, lines, data)

    def _connections(self, doc, A) -> Dict[str, Connection]:
        if self.options.connection:
            return {self.options.connection: doc.connection(self.options.connection)}
        rng = make_rng(self.options.seed)
        connections = {'nabla0': Connection.zero(A)}
        for k in range(self.options.points or DEFAULT_CONNECTIONS):
            connections[f"nabla{k + 1}"] = random_connection(A, rng)
        return connections

    @staticmethod
    def _horizontal(P: Prolongation, connection: Connection) -> dict:
        return {
            'horizontal': horizontal_lift_laws(P, connection).to_dict(),
            'curvature': curvature_nijenhuis_check(P, connection).to_dict(),
        }
