from typing import Callable, Optional

from .AcpCheckJob import AcpCheckJob
from .base import BaseJob, JobOptions
from .CohomologyJob import CohomologyJob
from .CompatCheckJob import CompatCheckJob
from .D2CheckJob import D2CheckJob
from .DualJob import DualJob
from .enums import Verb
from .GraphCheckJob import GraphCheckJob
from .IntegrabilityJob import IntegrabilityJob
from .NijenhuisJob import NijenhuisJob
from .PoissonCheckJob import PoissonCheckJob
from .ProductJob import ProductJob
from .ProlongJob import ProlongJob
from .RankJob import RankJob
from .SchoutenJob import SchoutenJob
from .SphereJob import SphereJob
from .VerifyJob import VerifyJob


class JobFactory:
    @staticmethod
    def get_job(
        verb: Verb,
        options: JobOptions,
        progress_callback: Optional[Callable[[str, int, str], None]] = None
    ) -> BaseJob:
        mapping = {
            # core structure
            Verb.VERIFY: VerifyJob,
            Verb.D2_CHECK: D2CheckJob,
            Verb.SCHOUTEN: SchoutenJob,
            # complex and Poisson structures
            Verb.NIJENHUIS: NijenhuisJob,
            Verb.INTEGRABILITY: IntegrabilityJob,
            Verb.POISSON_CHECK: PoissonCheckJob,
            Verb.ACP_CHECK: AcpCheckJob,
            Verb.DUAL: DualJob,
            Verb.COHOMOLOGY: CohomologyJob,
            Verb.COMPAT_CHECK: CompatCheckJob,
            Verb.RANK: RankJob,
            # constructions
            Verb.PROLONG: ProlongJob,
            Verb.PRODUCT: ProductJob,
            Verb.GRAPH_CHECK: GraphCheckJob,
            # the sphere family
            Verb.SPHERE: SphereJob,
        }

        job_class = mapping[Verb(verb)]
        return job_class(options, progress_callback)
