"""Exact fuzzy Hom-Lie subalgebras and ideals on finite-dimensional Hom-Lie algebras."""

from .errors import *  # noqa: F401,F403
from .exact import (
    RATIONALS,
    FieldSpec,
    Matrix,
    Scalar,
    Subspace,
    contains,
    enumerate_vectors,
    image,
    preimage,
    span,
    subspace_leq,
    sum_subspaces,
)
from .fuzzy import (
    FuzzyFlag,
    FuzzyTable,
    evaluate,
    flag_from_table,
    fuzzy_direct_sum,
    is_fuzzy_ideal,
    is_fuzzy_subalgebra,
    pullback,
    pushforward,
    strong_upper_level,
    table_from_flag,
    upper_level,
)
from .homlie import (
    HomLieAlgebra,
    Mode,
    Morphism,
    bracket,
    check_axioms,
    closure,
    direct_sum_algebras,
    enumerate_morphisms,
    is_ideal,
    is_morphism,
    is_subalgebra,
    standard_example,
)

__version__ = "0.1.0"
