"""Triangular permutation-polynomial systems over prime fields.

Builds and validates systems whose coordinate maps are linear in their own
variable, certifies that they permute F_p^(m+1), streams the pseudorandom
vectors they generate, and measures what the theory predicts about them:
polynomial degree growth under iteration, collapsing character sums, and
small average-case discrepancy of the scaled output points.
"""

from .errors import BudgetExceededError
from .field import FieldElement, PrimeField, is_prime_u64
from .poly import SparsePoly, parse_poly
from .system import (
    PermutationCheck,
    TriangularSystem,
    chain_parameters,
    check_permutation,
    load_system,
    make_nonresidue_system,
    make_quadratic_system,
    save_system,
    system_from_dict,
    system_to_dict,
    validate_structure,
)
from .iterate import (
    IterateDecomposition,
    decompose,
    degree_growth_report,
    iterate_symbolic,
    predicted_leading_degree,
)
from .generator import Generator, count_step_multiplications
from .spectral import (
    additive_char,
    centered_char_sum,
    expsum_collapsed,
    expsum_direct,
    expsum_envelope,
    vsum,
    vsum_envelope,
    vsum_ratio_table,
)
from .discrepancy import (
    PointSet,
    average_discrepancy_experiment,
    discrepancy_envelope,
    etk_bound,
    star_discrepancy_1d,
    star_discrepancy_grid,
)
from .orbit import CycleStructure, PeriodResult, full_cycle_structure, period_of_seed

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "CycleStructure",
    "FieldElement",
    "Generator",
    "IterateDecomposition",
    "PeriodResult",
    "PermutationCheck",
    "PointSet",
    "PrimeField",
    "SparsePoly",
    "TriangularSystem",
    "additive_char",
    "average_discrepancy_experiment",
    "centered_char_sum",
    "chain_parameters",
    "check_permutation",
    "count_step_multiplications",
    "decompose",
    "degree_growth_report",
    "discrepancy_envelope",
    "etk_bound",
    "expsum_collapsed",
    "expsum_direct",
    "expsum_envelope",
    "full_cycle_structure",
    "is_prime_u64",
    "iterate_symbolic",
    "load_system",
    "make_nonresidue_system",
    "make_quadratic_system",
    "parse_poly",
    "period_of_seed",
    "predicted_leading_degree",
    "save_system",
    "star_discrepancy_1d",
    "star_discrepancy_grid",
    "system_from_dict",
    "system_to_dict",
    "validate_structure",
    "vsum",
    "vsum_envelope",
    "vsum_ratio_table",
]
