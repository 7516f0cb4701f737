"""Symbolic iteration of triangular systems and its degree bookkeeping.

Iterating a triangular system keeps each coordinate linear in its own
variable: the k-th iterate of coordinate i always splits as
X_i * G(X_{i+1}..X_m) + H(X_{i+1}..X_m), and deg G grows only polynomially
in k, like k^{m-i} times the chained leading degrees over (m-i) factorial.
"""

import math
from dataclasses import dataclass, field as dc_field

from .errors import BudgetExceededError
from .poly import SparsePoly
from .system import TriangularSystem

DEFAULT_TERM_BUDGET = 10**6


def iterate_symbolic(sys: TriangularSystem, k: int, term_budget: int = DEFAULT_TERM_BUDGET):
    """The k-fold self-composition of the system map, as m+1 polynomials.

    k = 0 gives the identity tuple (X0..Xm). Raises BudgetExceededError with
    `completed` set to the largest finished depth if the sparse terms blow
    past the budget.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    polys = SparsePoly.variables(sys.field, sys.nvars)
    for depth in range(1, k + 1):
        polys = [fi.compose(polys) for fi in sys.f]
        total = sum(q.term_count() for q in polys)
        if total > term_budget:
            raise BudgetExceededError(
                f"iterate {depth} has {total} terms, budget is {term_budget}",
                budget=term_budget,
                completed=depth - 1,
            )
    return polys


@dataclass
class IterateDecomposition:
    """f_i iterated k times, split as X_i * g + h with g, h in X_{i+1}..X_m."""

    i: int
    k: int
    g: SparsePoly
    h: SparsePoly

    def reconstruct(self) -> SparsePoly:
        xi = SparsePoly.variable(self.g.field, self.g.nvars, self.i)
        return xi * self.g + self.h


def split_linear(poly: SparsePoly, i: int) -> IterateDecomposition:
    """Split a polynomial of X_i-degree <= 1 into its X_i and constant parts.

    Raises RuntimeError when a term has X_i-exponent >= 2 or mentions any
    variable below i; for iterates of a structurally valid system that
    indicates a bug, not bad data.
    """
    g_terms = {}
    h_terms = {}
    for exps, c in poly.terms.items():
        if any(exps[j] for j in range(i)):
            raise RuntimeError(
                f"iterate of coordinate {i} mentions a variable below {i}: {exps}"
            )
        e_i = exps[i]
        if e_i == 0:
            h_terms[exps] = c
        elif e_i == 1:
            stripped = tuple(0 if j == i else e for j, e in enumerate(exps))
            g_terms[stripped] = c
        else:
            raise RuntimeError(f"iterate of coordinate {i} has X{i}-degree {e_i}")
    return IterateDecomposition(
        i=i,
        k=-1,
        g=SparsePoly(poly.field, poly.nvars, g_terms),
        h=SparsePoly(poly.field, poly.nvars, h_terms),
    )


def decompose(sys: TriangularSystem, i: int, k: int,
              term_budget: int = DEFAULT_TERM_BUDGET) -> IterateDecomposition:
    """Decomposition of the k-th iterate of coordinate i."""
    if not 0 <= i <= sys.m:
        raise ValueError(f"coordinate {i} out of range 0..{sys.m}")
    if k < 1:
        raise ValueError("k must be >= 1")
    poly = iterate_symbolic(sys, k, term_budget=term_budget)[i]
    out = split_linear(poly, i)
    out.k = k
    return out


def predicted_leading_degree(sys: TriangularSystem, i: int, k: int) -> float:
    """Leading-order degree of the X_i-cofactor after k iterations."""
    if i == sys.m:
        return 0.0
    prod = 1
    for t in range(i, sys.m):
        prod *= sys.s[t][t + 1]
    return k ** (sys.m - i) * prod / math.factorial(sys.m - i)


@dataclass
class DegreeRow:
    i: int
    k: int
    deg_g: float  # -inf for a zero cofactor
    predicted: float
    residual: float


@dataclass
class CoordinateDegreeSummary:
    i: int
    predicted_coefficient: float
    fitted_coefficient: float | None
    residual_order: int | None  # None when no window of exact polynomial fit exists
    residual_ok: bool


@dataclass
class DegreeReport:
    k_max: int
    rows: list = dc_field(default_factory=list)
    summaries: list = dc_field(default_factory=list)


def _finite_difference_order(values):
    """Smallest d with the (d+1)-th finite differences all zero, else None."""
    seq = list(values)
    for d in range(len(seq)):
        diffs = [b - a for a, b in zip(seq, seq[1:])]
        if all(x == 0 for x in diffs):
            return d
        seq = diffs
    return None


def degree_growth_report(sys: TriangularSystem, k_max: int,
                         term_budget: int = DEFAULT_TERM_BUDGET) -> DegreeReport:
    """Exact cofactor degrees for k = 1..k_max versus the predicted leading term.

    Per coordinate, the residual sequence deg - predicted is reported along
    with its empirical polynomial order on the window k >= 2 (small k can
    carry transients); residual_ok is False when that order reaches m - i.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    report = DegreeReport(k_max=k_max)
    degrees = {i: [] for i in range(sys.m + 1)}
    polys = SparsePoly.variables(sys.field, sys.nvars)
    for k in range(1, k_max + 1):
        polys = [fi.compose(polys) for fi in sys.f]
        total = sum(q.term_count() for q in polys)
        if total > term_budget:
            raise BudgetExceededError(
                f"iterate {k} has {total} terms, budget is {term_budget}",
                budget=term_budget,
                completed=k - 1,
            )
        for i in range(sys.m + 1):
            dec = split_linear(polys[i], i)
            deg = dec.g.total_degree()
            predicted = predicted_leading_degree(sys, i, k)
            degrees[i].append(deg)
            report.rows.append(
                DegreeRow(i=i, k=k, deg_g=deg, predicted=predicted,
                          residual=deg - predicted)
            )
    for i in range(sys.m + 1):
        order = sys.m - i
        window = [
            (k, deg) for k, deg in enumerate(degrees[i], start=1)
            if k >= 2 and deg != float("-inf")
        ]
        fitted = None
        residual_order = None
        if len(window) >= order + 1:
            degs = [deg for _, deg in window]
            # The order-th finite difference of a degree-`order` polynomial
            # is constant = leading coefficient * order!.
            seq = degs
            for _ in range(order):
                seq = [b - a for a, b in zip(seq, seq[1:])]
            if seq and all(x == seq[0] for x in seq):
                fitted = seq[0] / math.factorial(order) if order else float(seq[0])
            residuals = [
                deg - predicted_leading_degree(sys, i, k) for k, deg in window
            ]
            residual_order = _finite_difference_order(residuals)
        residual_ok = residual_order is not None and residual_order < max(order, 1)
        if order == 0:
            # The linear coordinate's cofactor is constant; any nonzero degree fails.
            residual_ok = all(
                deg == 0 or deg == float("-inf") for deg in degrees[i]
            )
        report.summaries.append(
            CoordinateDegreeSummary(
                i=i,
                predicted_coefficient=(
                    0.0 if i == sys.m else
                    _chain_product(sys, i) / math.factorial(order)
                ),
                fitted_coefficient=fitted,
                residual_order=residual_order,
                residual_ok=residual_ok,
            )
        )
    return report


def _chain_product(sys, i):
    prod = 1
    for t in range(i, sys.m):
        prod *= sys.s[t][t + 1]
    return prod
