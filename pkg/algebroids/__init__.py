from .errors import AlgebroidError, InputError, MathematicalError, InternalInconsistency
from .scalars import CoordinateRing, Scalar, coefficient_text, gaussian
from .algebroid import Algebroid, verify_algebroid
from .tensors import Form, Multivector, wedge, interior, pairing
from .calculus import d_e, schouten, bracket_sections, lie_derivative
from .morphisms import Morphism, check_la_morphism
from .complexification import Endo, make_ac_structure, bigrade, nijenhuis, integrability_report
from .poisson import GeneralBisection, is_poisson, dual_algebroid, form_bracket
from .acp import is_acp, sigma_split
from .cohomology import clp_cohomology
from .compatibility import is_compatible
from .prolongation import Connection, prolong
from .products import direct_product, graph, is_coisotropic, is_acp_morphism
from .sphere import sphere, sphere_report
from .document import load_document, parse_document

__all__ = [
    'AlgebroidError', 'InputError', 'MathematicalError', 'InternalInconsistency',
    'CoordinateRing', 'Scalar', 'coefficient_text', 'gaussian',
    'Algebroid', 'verify_algebroid',
    'Form', 'Multivector', 'wedge', 'interior', 'pairing',
    'd_e', 'schouten', 'bracket_sections', 'lie_derivative',
    'Morphism', 'check_la_morphism',
    'Endo', 'make_ac_structure', 'bigrade', 'nijenhuis', 'integrability_report',
    'GeneralBisection', 'is_poisson', 'dual_algebroid', 'form_bracket',
    'is_acp', 'sigma_split',
    'clp_cohomology',
    'is_compatible',
    'Connection', 'prolong',
    'direct_product', 'graph', 'is_coisotropic', 'is_acp_morphism',
    'sphere', 'sphere_report',
    'load_document', 'parse_document',
]
