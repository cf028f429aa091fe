from typing import Dict

from ..catalogue import GraphTriple, graph_triples
from ..products import graph_theorem_check
from .base import BaseJob, JobReport
from .enums import Verb


class GraphCheckJob(BaseJob):
    """
    GRAPH-CHECK: phi is an ACP morphism exactly when its graph is coisotropic.
    Two documents give one triple (--morphism in the source document, --endomorphism and
    --multivector in both); no input runs the catalogue triples.
    """
    verb = Verb.GRAPH_CHECK

    def _compute(self) -> JobReport:
        triples = self._triples()
        results = self._map_instances(
            lambda triple: graph_theorem_check(triple.phi, triple.source, triple.target), triples)
        lines = []
        data = {}
        verdict = True
        for name, report in results.items():
            expected = triples[name].expected
            line = (f"{name}: ACP morphism {'yes' if report.morphism.ok else 'no'}, "
                    f"coisotropic graph {'yes' if report.coisotropy.ok else 'no'}")
            if not report.agree:
                line += "  DISAGREE"
            if expected is not None and report.morphism.ok != expected:
                line += f"  (expected {'yes' if expected else 'no'})"
                verdict = False
            lines.append(line)
            data[name] = dict(report.to_dict(), expected=expected)
            verdict = verdict and report.agree
        return self._report(verdict, lines, data)

    def _triples(self) -> Dict[str, GraphTriple]:
        if not self.documents:
            return graph_triples()
        source, target = self._require_inputs(2)
        J = self._require(self.options.endomorphism, "endomorphism")
        pi = self._require(self.options.multivectors[0] if self.options.multivectors else None, "multivector")
        phi = source.morphism(self._require(self.options.morphism, "morphism"), target=target.algebroid)
        triple = GraphTriple(phi, (source.endomorphism(J), source.multivector(pi)),
                             (target.endomorphism(J), target.multivector(pi)))
        return {phi.name: triple}
