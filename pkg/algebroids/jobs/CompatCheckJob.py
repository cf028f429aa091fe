from ..compatibility import is_compatible
from ..sphere import compat_report
from .base import BaseJob, JobReport
from .enums import Verb


class CompatCheckJob(BaseJob):
    """
    COMPAT-CHECK: Poisson-Nijenhuis compatibility of --bisection F and --endomorphism G.
    With --n, the sphere pair (+-Jt, J) instead: the verdict is then whether the
    concomitant defect and the form bracket formulas are reproduced.
    """
    verb = Verb.COMPAT_CHECK

    def _compute(self) -> JobReport:
        if self.options.n:
            return self._sphere()
        (doc,) = self._require_inputs(1)
        A = doc.algebroid
        F = doc.bisection(self._require(self.options.bisection, "bisection"))
        G = doc.endomorphism(self._require(self.options.endomorphism, "endomorphism"))
        report = is_compatible(A, F, G)
        lines = [
            f"G o {F.name}^# = {F.name}^# o G^*: {'yes' if report.commutes else 'no'}",
            f"C({F.name}, {G.name}) = 0: {'yes' if report.concomitant_vanishes else 'no'}",
        ]
        lines.extend(f"  C(e^{a + 1}, e^{b + 1}) = {v.to_text()}" for (a, b), v in sorted(report.defects.items()))
        return self._report(report.compatible, lines, report.to_dict())

    def _sphere(self) -> JobReport:
        reports = self._map_instances(compat_report, {f"n={n}": n for n in self.options.n})
        lines = []
        verdict = True
        for name, report in reports.items():
            compatible = report.compatible
            lines.append(f"{name}: compatible with +Jt {'yes' if compatible[1] else 'no'}, "
                         f"with -Jt {'yes' if compatible[-1] else 'no'}")
            lines.append(f"{name}: sign-flip residual vanishes for +Jt {'yes' if report.flip_vanishes[1] else 'no'}, "
                         f"for -Jt {'yes' if report.flip_vanishes[-1] else 'no'}")
            lines.append(f"{name}: C(Jt, J)(e^1, e^(1+n)) = {report.defect.to_text()}")
            reproduced = report.defect_matches and all(check.ok for check in report.golden)
            verdict = verdict and reproduced
        return self._report(verdict, lines, {name: report.to_dict() for name, report in reports.items()})
