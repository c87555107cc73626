"""Semi-associative 3-algebras over the rationals.

Structure constants are exact :class:`fractions.Fraction` values. The
modules are layered: ``exactlin`` (linear algebra), ``core`` (algebras,
axioms, ideals), ``maps`` (derivations, centroid, operator spans),
``lie_bridge`` (3-Lie algebras and their modules), ``reps_ext`` (double
modules, cocycles, extensions), ``lab`` (generators and the property
harness), ``serialize`` and ``cli``.
"""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    AlgebraError,
    AxiomReport,
    ContractError,
    ThreeAlgebra,
    Violation,
    center,
    check_semi_associative,
    derived_algebra,
    is_semi_associative,
    quotient,
)
from .lie_bridge import ThreeLieAlgebra, check_filippov, sub_adjacent  # noqa: E402
from .maps import (  # noqa: E402
    MapSpace,
    central_derivation_space,
    centroid_space,
    derivation_space,
    span_space,
)
from .reps_ext import (  # noqa: E402
    Cocycle,
    DoubleModule,
    check_cocycle,
    check_double_module,
    cocycle_space,
    double_extension,
    dual_module,
    regular_module,
    semidirect_product,
)

__all__ = [
    "AlgebraError", "AxiomReport", "Cocycle", "ContractError", "DoubleModule", "MapSpace",
    "ThreeAlgebra", "ThreeLieAlgebra", "Violation", "center", "central_derivation_space",
    "centroid_space", "check_cocycle", "check_double_module", "check_filippov",
    "check_semi_associative", "cocycle_space", "derivation_space", "derived_algebra",
    "double_extension", "dual_module", "is_semi_associative", "quotient", "regular_module",
    "semidirect_product", "span_space", "sub_adjacent",
]
