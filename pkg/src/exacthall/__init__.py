"""Hall algebras of exact structures on representations of Dynkin quivers over F_p."""

from .cones import (
    ConeC,
    ConeD,
    K0Presentation,
    cone_C,
    cone_D,
    cone_D_nonempty,
    degree_cone_oracle,
    face_lattice,
    k0_quotient,
    membership,
)
from .degen import (
    Valuation,
    associated_graded,
    classify_valuation,
    endomorphism_quasivaluation_check,
    verify_degeneration,
    verify_valuation_degeneration,
    weight_function,
)
from .errors import (
    BudgetExceeded,
    CyclicQuiverError,
    ExactHallError,
    NotDynkinError,
    QuiverError,
    QuiverParseError,
    StructureOrderError,
)
from .exact import (
    ExactStructure,
    comparable_pairs,
    conflation_in,
    defect_vector,
    enumerate_structures,
    injectives,
    parse_structure,
    projectives,
    structure_with_injectives,
    structure_with_projectives,
)
from .fqrep import ObjClass, RepCategory, category, decompose, ext_count, format_object, parse_object, realize, subobject_count
from .hall import HallAlgebra, HallElement, check_associativity, interpolate_polynomial, multiply, multiply_twisted
from .quiver import ARQuiver, Quiver, ar_quiver, euler_form, indecomposables, knit_ar_quiver, load_quiver, parse_quiver, positive_roots

__version__ = "0.1.0"
