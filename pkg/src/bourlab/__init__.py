"""Helicoidal and rotational surfaces in Euclidean 3-space: fundamental
forms, Gauss maps, curvatures, isometric rotational images, the
same-Gauss-map pairing, and the third-fundamental-form Laplacian."""

__version__ = "0.1.0"

from .bour import (
    BourImage,
    bour_image,
    catenoid_profile,
    natural_parameters,
    same_gauss_pair,
    same_gauss_profile,
)
from .calculus import (
    CumulativeIntegral,
    QuadratureResult,
    central_derivative,
    cumulative,
    integrate,
)
from .expr import DomainError, Jet2, ParseError, eval_jet, parse, to_text
from .forms import (
    DegenerateSurfaceError,
    FirstForm,
    SecondForm,
    ThirdForm,
    first_form,
    gauss_map,
    gaussian_curvature,
    gaussian_curvature_closed,
    mean_curvature,
    mean_curvature_rotational,
    phi_functional,
    second_form,
    third_form,
)
from .lb3 import (
    Lb3Report,
    ParabolicPointError,
    delta3_immersion,
    delta3_scalar,
    iii_minimality_scan,
)
from .surfaces import (
    HelicoidalSurface,
    ProfileCurve,
    RotationalSurface,
    SurfaceJet,
    catenoid,
    constant_map,
    eval_helicoidal,
    eval_rotational,
    quadratic_cubic_helicoid,
    right_helicoid,
    scalar_map,
)
from .verify import (
    CheckReport,
    brioschi_curvature,
    check_curvature_correspondence,
    check_gauss_map_coincidence,
    check_isometry,
    shape_operator_eigen,
    surface_checks,
    tensor_grid,
)
