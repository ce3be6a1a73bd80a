"""Exact-arithmetic engine for matrix-point brane geometry.

Morphisms from rank-r matrix points to presented target algebras:
image ideals, fuzzy-point decompositions, pushforward module lengths,
deformation families with Higgsing events, square-zero deformations and
the conifold probe, and classical/quantum spectral curves of Higgs pairs.
"""

__version__ = "0.1.0"

from .scalars import GaussianRational, parse_scalar, format_scalar, to_approx, qi
from .linalg import (
    ExactMatrix,
    JointSpectrum,
    characteristic_polynomial,
    joint_spectrum,
    kernel_basis,
    minimal_polynomial,
)
from .polys import Poly, OperatorRelation, rational_krylov_relation
from .mpoly import FreePolyBounded, MultiPoly, parse_poly_text
from .ideals import (
    IdealPresentation,
    evaluate_at_tuple,
    nc_normal_form,
    vanishing_ideal,
)
from .targets import (
    AlgebraMap,
    TargetPresentation,
    builtin_target,
    validate_algebra_map,
)
from .morphisms import (
    AzumayaMorphism,
    BraneDecomposition,
    conjugate,
    decompose,
    image_ideal,
    is_cyclic,
    is_punctual,
    make_morphism,
    moduli_datum,
)
from .deformations import (
    MorphismPath,
    SquareZeroDeformation,
    apply_square_zero,
    conifold_probe,
    scan_events,
    search_off_conifold,
    specialize,
)
from .spectral import (
    PlaneCurvePolynomial,
    SpectralPair,
    classical_limit_check,
    quantum_spectral_operator,
    spectral_curve,
    verify_containment,
)
