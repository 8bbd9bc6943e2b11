"""Numerical verification of the complex almost contact metric structure
induced on complex hypersurfaces of flat quaternionic space R^{4m}."""

from .connection import (
    ExtrinsicData,
    FDConfig,
    ambient_derivative,
    connection_form_residual,
    covariant_derivative,
    curve_point,
    extend_tangent_field,
    nabla_G,
    nabla_H,
    shape_operator,
    sigma_form,
    skew_derivative_residual,
    structure_derivative_residual,
)
from .hypersurface import (
    HoloPolynomial,
    NonConvergence,
    SingularPoint,
    SurfacePoint,
    ambient_gradient_pair,
    project_to_surface,
    random_tangent,
    tangential_projector,
    unit_normal,
)
from .induced import (
    AdaptedFrame,
    FrameDegeneracy,
    InducedStructure,
    adapted_frame,
    gauge_rotate,
    induced_structure,
    structure_residuals,
)
from .normality import (
    ContactDiagnostic,
    TensorSample,
    S_tensor,
    T_tensor,
    contact_metric_residual,
    lie_bracket,
    nijenhuis_torsion,
    normality_tensors,
)
from .quatlin import (
    QuaternionicStructure,
    apply_J,
    complex_coords,
    make_structure,
    real_coords,
)
from .report import ResidualEntry, ResidualReport, SuiteResult, emit
from .scene import SUITE_NAMES, Scene, SceneError, parse_scene

__version__ = "0.1.0"
