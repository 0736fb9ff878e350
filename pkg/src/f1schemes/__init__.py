"""Exact computations with monoid schemes, semiring schemes and their base changes."""

from .algebra import (FGAbelianGroup, MonoidAlgebra, MonoidAlgebraElement, base_change_N_to_Z,
                      group_completion, monoid_algebra, universal_property_check)
from .cones import (Fan, HalfspaceRep, RationalCone, catalogue_fan, common_face, dual_cone,
                    fan_validate, hilbert_basis)
from .descent import (Cover, FiniteASet, descent_equivalence_check, is_conservative_bounded,
                      is_flat_bounded, sheaf_equalizer_check, tensor_aset)
from .errors import BudgetExceeded, F1Error, InputError, UnsupportedError, VerificationError
from .groups import (GroupPoints, diagonalizable, gln_f1, gln_points_matrix, gm,
                     invertible_over_N)
from .monoids import (AffineMonoid, FiniteMonoid, FPMonoid, MonoidHom, PrimeIdeal,
                      hom_enumerate, is_epimorphism_bounded, localize, monoid_from_json,
                      named_monoid, prime_spectrum, units)
from .rings import FiniteSemiring, boolean_semiring, finite_field, integers_mod
from .schemes import (PointSet, SchemeAtlas, base_change_scheme, count_points_fq, points,
                      validate_atlas)
from .toric import build_toric_atlas, toric_base_change
from .verdicts import Status, Verdict

__all__ = [
    "AffineMonoid", "BudgetExceeded", "Cover", "F1Error", "FGAbelianGroup", "FPMonoid", "Fan",
    "FiniteASet", "FiniteMonoid", "FiniteSemiring", "GroupPoints", "HalfspaceRep", "InputError",
    "MonoidAlgebra", "MonoidAlgebraElement", "MonoidHom", "PointSet", "PrimeIdeal",
    "RationalCone", "SchemeAtlas", "Status", "UnsupportedError", "Verdict", "VerificationError",
    "base_change_N_to_Z", "base_change_scheme", "boolean_semiring", "build_toric_atlas",
    "catalogue_fan", "common_face", "count_points_fq", "descent_equivalence_check",
    "diagonalizable", "dual_cone", "fan_validate", "finite_field", "gln_f1", "gln_points_matrix",
    "gm", "group_completion", "hilbert_basis", "hom_enumerate", "integers_mod",
    "invertible_over_N", "is_conservative_bounded", "is_epimorphism_bounded", "is_flat_bounded",
    "localize", "monoid_algebra", "monoid_from_json", "named_monoid", "points", "prime_spectrum",
    "sheaf_equalizer_check", "tensor_aset", "toric_base_change", "units",
    "universal_property_check", "validate_atlas",
]
