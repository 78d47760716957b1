"""Twisted Alexander polynomials, twisted cohomology and deformations of abelian
representations of finitely presented groups with first Betti number 1."""
from .deformation import (
    CharacterAlpha,
    CocycleVec,
    CupProduct,
    DeformabilityReport,
    Homomorphism,
    ObstructionResult,
    QuadConePoint,
    Verdict,
    cocycle_eval,
    cocycle_generator,
    cup_obstruction,
    deformability_verdict,
    dim_h1,
    evaluate_character,
    quadratic_cone_membership,
    two_cocycle_is_coboundary,
    zero_order,
)
from .errors import (
    AlexdefError,
    InternalInconsistencyError,
    PreconditionError,
    PresentationSyntaxError,
    ReducibleMinpolyError,
)
from .fields import QQ, FieldDescriptor, cyclotomic_field, cyclotomic_polynomial, parse_minpoly
from .lattice import (
    IntMatrix,
    abelianized_matrix,
    alternate_splitting,
    canonical_splitting,
    h1_structure,
    smith_normal_form_int,
)
from .laurent import (
    LaurentMatrix,
    LaurentPoly,
    laurent_gcd,
    minors_gcd,
    rational_roots,
    root_multiplicity,
    smith_normal_form_laurent,
)
from .linalg import kernel_basis, linear_solve, rank
from .presentation import (
    FreeWord,
    GroupRingElem,
    Presentation,
    fox_derivative,
    fox_jacobian,
    parse_presentation,
    reduce_word,
)
from .twisted import (
    TwistSetup,
    alexander_polynomials,
    alexander_sequence,
    is_symmetric,
    jacobian,
    parse_sigma,
    torsion_order_check,
    twist_polynomial,
)

__version__ = "0.1.0"
