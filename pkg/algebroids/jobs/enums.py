from enum import Enum


class Verb(str, Enum):
    # --- core structure ---
    VERIFY = "verify"
    D2_CHECK = "d2-check"
    SCHOUTEN = "schouten"

    # --- complex and Poisson structures ---
    NIJENHUIS = "nijenhuis"
    INTEGRABILITY = "integrability"
    POISSON_CHECK = "poisson-check"
    ACP_CHECK = "acp-check"
    DUAL = "dual"
    COHOMOLOGY = "cohomology"
    COMPAT_CHECK = "compat-check"
    RANK = "rank"

    # --- constructions ---
    PROLONG = "prolong"
    PRODUCT = "product"
    GRAPH_CHECK = "graph-check"

    # --- the sphere family ---
    SPHERE = "sphere"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
