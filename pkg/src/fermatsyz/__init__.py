"""fermatsyz: exact witnesses that Frobenius pullbacks of syzygy bundles on
Fermat curves lose semistability, plus the tight-closure counterexample
pipeline built on the same arithmetic.

All computations are over F_p with exact integer/rational arithmetic; the
elimination hot path runs in a compiled kernel when available (see
fermatsyz._kernels.BACKEND).
"""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .bundle import (
    SectionVector,
    SyzygySpec,
    section_space,
    section_space_dim,
)
from .field import FieldElement, PrimeField, binomial_mod_p, inv
from .linalg import MatrixModP, kernel_basis
from .poly import FermatRelation, GradedPoly, Monomial, frobenius_power, multiply, normal_form
from .ring import FermatRing
from .stability import (
    DestabCertificate,
    HNData,
    ParameterChoice,
    certify_destabilization,
    deviation_lower_bound,
    find_parameters,
    hn_data,
    search_destabilization,
    verify_certificate,
)
from .tightclosure import (
    CechClassP1,
    TCParameters,
    TCReport,
    cech_class_curve,
    cech_class_p1,
    formula_star,
    ideal_membership,
    tc_counterexample,
    tc_parameters,
)

__all__ = [
    "BACKEND",
    "CechClassP1",
    "DestabCertificate",
    "FermatRelation",
    "FermatRing",
    "FieldElement",
    "GradedPoly",
    "HNData",
    "MatrixModP",
    "Monomial",
    "ParameterChoice",
    "PrimeField",
    "SectionVector",
    "SyzygySpec",
    "TCParameters",
    "TCReport",
    "__version__",
    "binomial_mod_p",
    "cech_class_curve",
    "cech_class_p1",
    "certify_destabilization",
    "deviation_lower_bound",
    "find_parameters",
    "formula_star",
    "frobenius_power",
    "hn_data",
    "ideal_membership",
    "inv",
    "kernel_basis",
    "multiply",
    "normal_form",
    "search_destabilization",
    "section_space",
    "section_space_dim",
    "tc_counterexample",
    "tc_parameters",
    "verify_certificate",
]
