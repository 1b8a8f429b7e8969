"""Exact-arithmetic toolkit for bounded-degree submanifold-algebra questions:
derivation lifting across quotient maps, Kaehler presentations, Poisson
obstructions, and truncated formal star products."""

from .algebra import (
    AlgebraPresentation,
    Polynomial,
    check_pbw_confluence,
    normal_form,
    partial_derivative,
)
from .arith import QI, QQ, GaussianRational, HbarSeries, series_combine
from .derivations import (
    Derivation,
    SolveReport,
    admissibility_check,
    augmentation_quotient_hom,
    check_derivation,
    free_lift,
    is_inner,
    pushforward,
    solve_derivations,
    tensor_lift,
)
from .diffops import DiffOp
from .expressions import parse_polynomial, parse_series, poly_str, series_str
from .ideals import (
    IdealPresentation,
    groebner_basis,
    ideal_member,
    truncated_ideal_basis,
)
from .kaehler import hom_der_correspondence, induced_map, kaehler_presentation
from .morphisms import (
    AlgebraHom,
    FormalHom,
    check_hom,
    compose,
    formal_preimage,
    identity_hom,
    scalars_algebra,
    tensor_product,
)
from .poisson import (
    PoissonStructure,
    QuotientRestriction,
    coisotropy_and_normalizer,
    hamiltonian_vector_field,
    is_hamiltonian,
    jacobi_check,
    poisson_bracket,
    quotient_of,
    solve_poisson_vector_fields,
)
from .starprod import (
    BidiffOperator,
    FormalDerivation,
    StarProduct,
    associator_defect,
    check_hbar_derivation,
    check_star_axioms,
    exp_star,
    extract_poisson_structure,
    solve_order1_derivations,
    star_multiply,
    tangentiality_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
