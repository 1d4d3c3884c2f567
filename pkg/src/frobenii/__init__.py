"""Frobenius modules over finite fields, skew polynomials and Witt vectors."""

__version__ = "0.1.0"

from .finite_field import FieldError, FieldElement, FiniteField, embed, extension, make_field  # noqa: E402
from .galois_ring import GaloisRing, make_galois_ring  # noqa: E402
from .skew_poly import SkewLaurent, SkewPoly, left_divmod, right_gcd  # noqa: E402
from .additive import RootSet, roots_of_additive  # noqa: E402
from .frobenius_module import FrobModule, hom_space, is_unit, min_annihilator, unit_part, unitalize  # noqa: E402
from .rh_covariant import EtaleAlgebra, GaloisRep, rh_cov, rh_inv  # noqa: E402
from .rh_contravariant import FiniteAlgebra, LangBoundError, lang_solve, rh_cont_dual, sol_at  # noqa: E402
from .witt import QQ, ZZ, BigWitt, RationalWitt, frobenius_op, ghost_map, verschiebung_op, witt_mul  # noqa: E402

__all__ = [
    "__version__",
    "FieldError", "FieldElement", "FiniteField", "embed", "extension", "make_field",
    "GaloisRing", "make_galois_ring",
    "SkewLaurent", "SkewPoly", "left_divmod", "right_gcd",
    "RootSet", "roots_of_additive",
    "FrobModule", "hom_space", "is_unit", "min_annihilator", "unit_part", "unitalize",
    "EtaleAlgebra", "GaloisRep", "rh_cov", "rh_inv",
    "FiniteAlgebra", "LangBoundError", "lang_solve", "rh_cont_dual", "sol_at",
    "QQ", "ZZ", "BigWitt", "RationalWitt", "frobenius_op", "ghost_map", "verschiebung_op", "witt_mul",
]
