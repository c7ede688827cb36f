"""pagecert: certified curvature computations for the Page metric and friends.

Reconstructs the Page metric on CP^2 # conj(CP^2) from its closed-form
profiles, computes full curvature data for diagonal cohomogeneity-one
4-metrics in an orthonormal frame, and machine-verifies the headline facts
with interval-arithmetic sign certificates: existence of negative sectional
curvature, the Einstein property, the two-eigenvalue self-dual Weyl spectrum,
and the Euler characteristic via Gauss-Bonnet quadrature.
"""

from ._backend import backend_name
from .analysis import (
    CLAIMS,
    GaussBonnetResult,
    ScanTable,
    SignCertificate,
    certify_sign,
    einstein_scan,
    fprime_positive_certificate,
    gauss_bonnet_chi,
    k01_negative_certificate,
    max_sectional_at,
    min_sectional_at,
    min_sectional_grid,
    scan,
)
from .curvature import (
    FRAME_BRACKET_C,
    STRUCTURE_LAMBDA,
    CurvatureOperator,
    TwoPlane,
    WeylSpectrum,
    curvature_at,
    sectional,
    weyl_minus,
    weyl_plus,
)
from .metrics import (
    ORBIT_VOLUME,
    DiagonalMetric,
    PageParams,
    bundled_metric,
    find_root_a,
    fubini_study_metric,
    k01_closed_form,
    page_metric,
    quartic_f,
    round_s4_metric,
)
from .numerics import Interval, Jet2, Sign

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    "Interval",
    "Jet2",
    "Sign",
    "quartic_f",
    "find_root_a",
    "PageParams",
    "DiagonalMetric",
    "page_metric",
    "round_s4_metric",
    "fubini_study_metric",
    "bundled_metric",
    "k01_closed_form",
    "ORBIT_VOLUME",
    "STRUCTURE_LAMBDA",
    "FRAME_BRACKET_C",
    "CurvatureOperator",
    "TwoPlane",
    "WeylSpectrum",
    "curvature_at",
    "sectional",
    "weyl_plus",
    "weyl_minus",
    "SignCertificate",
    "certify_sign",
    "fprime_positive_certificate",
    "k01_negative_certificate",
    "CLAIMS",
    "min_sectional_at",
    "max_sectional_at",
    "min_sectional_grid",
    "einstein_scan",
    "gauss_bonnet_chi",
    "GaussBonnetResult",
    "ScanTable",
    "scan",
]
