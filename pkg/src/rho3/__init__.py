"""Function theory in the three-dimensional algebra with rho^3 = 0.

Exact arithmetic over the basis {1, rho, rho^2}, coordinate frames with
harmonic bases and radical directions, holomorphic component triples with
their closed-form algebra extensions and Cauchy-integral evaluation, and a
suite of numeric checks for differentiability, Laplace residuals, fiber
constancy, and component recovery.
"""

from .algebra import A3, ONE, RHO, RHO2, ZERO, NotInvertible, scalar_part
from .analysis import (
    DEFAULT_DELTA_SCHEDULE,
    CheckReport,
    ContourOutsideDomain,
    DecompositionResult,
    DegenerateDirections,
    NotHarmonicFrame,
    QuotientEstimate,
    SectionOutsideDomain,
    conjugate_scalar_field,
    decompose,
    directional_quotient,
    extension_uniqueness_check,
    fiber_constancy_check,
    gateaux_check,
    k3_check,
    laplace_residual,
    lorch_check,
    make_section,
)
from .frames import (
    ComplexRect,
    DependentVectors,
    DomainBox,
    Frame,
    NotSurjective,
    OutsideDomain,
    Vec3,
    f_image,
    make_frame,
    melnichenko_frame,
)
from .holomorphic import (
    Contour,
    Exp,
    HoloFn,
    Polynomial,
    Scaled,
    Sum,
    TooFewNodes,
    contour_value_and_derivatives,
    default_contour,
    holo_eval,
    poly_derivative,
)
from .monogenic import (
    ContourTouchesFiber,
    FieldA3,
    MonogenicFn,
    cauchy_eval,
    derivative,
    eval_triple,
    principal_extension,
    resolvent,
)

__version__ = "0.1.0"
