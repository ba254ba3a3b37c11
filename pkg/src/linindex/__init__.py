"""Exact linear-index computations for varieties presented by Picard lattices."""

from .descent import (
    CriterionReport, GaloisActionMatrix, TorsionSearchOutcome, condition_one, matrix_order,
    matrix_power_rank2, stabilizer_torsion_search, theorem_check,
)
from .exactcore import (
    MultiPolynomial, NumericalPolynomial, finite_difference, gcd_all, iterated_difference,
    multi_value_gcd, newton_coefficients, prime_to_p_part, value_gcd,
)
from .index import (
    CurveData, FieldProfile, IndexStatement, curve_linear_index, index_conclusion,
    kollar_curve_lin_index, linear_index,
)
from .picard import (
    ParityError, PicardLattice, build_corpus_lattice, change_basis, chi, degree,
    hilbert_polynomial, is_primitive, twist_difference,
)

__version__ = "0.1.0"
