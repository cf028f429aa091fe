from ..matrices import to_text
from ..sphere import N2_MATRIX, compat_report, n2_matrix_matches, reproduce_n2_matrix, sphere_report
from .base import BaseJob, JobReport
from .enums import Verb


class SphereJob(BaseJob):
    """
    SPHERE: the S^(2n-1) x R^(2n) family for each --n.
    Structure equations, N_J = 0 and [Jt, Jt]; --golden adds the closed bracket formulas,
    --matrix the n = 2 base matrix and --compat the compatibility report.
    """
    verb = Verb.SPHERE

    def _compute(self) -> JobReport:
        ns = self.options.n or [1]
        golden = self.options.golden
        reports = self._map_instances(lambda n: sphere_report(n, golden=golden), {f"n={n}": n for n in ns})
        data = {'sphere': {name: report.to_dict() for name, report in reports.items()}}
        lines = []
        verdict = True
        for name, report in reports.items():
            lines.append(f"{name}: structure equations {'OK' if report.verified else 'FAILED'}, "
                         f"N_J = 0 {'yes' if report.nijenhuis_zero else 'no'}, "
                         f"[Jt, Jt] = 0 {'yes' if report.poisson else 'no'}")
            if golden:
                passed = sum(check.ok for check in report.golden)
                lines.append(f"{name}: golden formulas {passed}/{len(report.golden)}")
                lines.extend(f"  {check.family} {check.label}: {check.computed} != {check.expected}"
                             for check in report.golden if not check.ok)
            verdict = verdict and report.ok

        if self.options.matrix:
            matches = n2_matrix_matches()
            data['matrix'] = {'computed': to_text(reproduce_n2_matrix()), 'expected': [list(r) for r in N2_MATRIX],
                              'matches': matches}
            lines.append(f"n=2 base matrix: {'matches' if matches else 'DIFFERS'}")
            lines.extend(f"  [{', '.join(row)}]" for row in data['matrix']['computed'])
            verdict = verdict and matches

        if self.options.compat:
            compat = self._map_instances(compat_report, {f"n={n}": n for n in ns})
            data['compat'] = {name: report.to_dict() for name, report in compat.items()}
            for name, report in compat.items():
                lines.append(f"{name}: compatible {dict(report.to_dict()['compatible'])}, "
                             f"defect {'matches' if report.defect_matches else 'DIFFERS'}")
                verdict = verdict and report.defect_matches
        return self._report(verdict, lines, data)
