"""Exact star discrepancy of finite point sets in [0,1)^s, and its bounds.

Point coordinates are exact rationals over one common denominator, so every
discrepancy value is computed in integer arithmetic and returned as a
Fraction: box counts scaled by the denominator power never meet floating
point. The star discrepancy here is anchored at the origin, the supremum of
|count/N - volume| over boxes [0, b1) x ... x [0, bs); suprema reached only
in the limit (upper edges just above a point) are still evaluated exactly
by counting inclusively while charging the closed volume.

Floating point appears only in the character sums of the transform-side
upper bound and in the average-case envelope.
"""

import itertools
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceededError
from .generator import Generator
from .spectral import KahanComplex, char_table

GRID_MAX_POINTS = 300
GRID_MAX_DIM = 3


class PointSet:
    """N points of [0,1)^dim with integer numerators over a common denominator."""

    __slots__ = ("dim", "denom", "nums")

    def __init__(self, nums, denom: int, dim: int = None):
        nums = [tuple(v) for v in nums]
        if not nums:
            raise ValueError("need at least one point")
        if dim is None:
            dim = len(nums[0])
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        if denom < 1:
            raise ValueError("denominator must be >= 1")
        for v in nums:
            if len(v) != dim:
                raise ValueError(f"point {v} does not have dimension {dim}")
            if any(not 0 <= c < denom for c in v):
                raise ValueError(f"point {v} is outside [0,1)^s over denominator {denom}")
        self.dim = dim
        self.denom = denom
        self.nums = nums

    @property
    def n(self) -> int:
        return len(self.nums)

    @classmethod
    def from_fractions(cls, points):
        pts = [tuple(Fraction(c) for c in point) for point in points]
        if not pts:
            raise ValueError("need at least one point")
        denom = 1
        for point in pts:
            for c in point:
                denom = math.lcm(denom, c.denominator)
        nums = [tuple(int(c * denom) for c in point) for point in pts]
        return cls(nums, denom)

    def fractions(self):
        d = self.denom
        return [tuple(Fraction(c, d) for c in v) for v in self.nums]

    def __repr__(self):
        return f"PointSet(n={self.n}, dim={self.dim}, denom={self.denom})"


@dataclass
class DiscrepancyReport:
    value: Fraction
    method: str
    params: dict


def star_discrepancy_1d(points: PointSet) -> Fraction:
    """Exact anchored discrepancy for dim 1 via the sorted two-sided formula.

    With sorted values x_1..x_N, the supremum over [0, b) equals
    max_i max(i/N - x_i, x_i - (i-1)/N); entirely integer arithmetic after
    scaling by N*denom.
    """
    if points.dim != 1:
        raise ValueError(f"1d method requires dimension 1, got {points.dim}")
    d = points.denom
    n = points.n
    xs = sorted(v[0] for v in points.nums)
    best = 0
    for i, x in enumerate(xs, start=1):
        over = i * d - n * x
        under = n * x - (i - 1) * d
        if over > best:
            best = over
        if under > best:
            best = under
    return Fraction(best, n * d)


def _axis_candidates(values, denom):
    """Upper-edge candidates for one axis: (edge numerator, count-inclusive?).

    Exclusive candidates catch boxes stopping at a point; inclusive ones are
    the limits from just above a point, charging the closed volume while
    counting the boundary points in.
    """
    out = []
    for v in sorted(set(values)):
        out.append((v, False))
        out.append((v, True))
    out.append((denom, False))
    return out


def star_discrepancy_grid(points: PointSet,
                          max_points: int = GRID_MAX_POINTS,
                          max_dim: int = GRID_MAX_DIM) -> Fraction:
    """Exact anchored discrepancy by sweeping the critical edge grid.

    Correct for any dimension but exponential in it; refuses above the
    configured size to stay interactive.
    """
    s = points.dim
    n = points.n
    d = points.denom
    if s > max_dim or n > max_points:
        raise BudgetExceededError(
            f"grid method budget is dim <= {max_dim}, N <= {max_points}; "
            f"got dim {s}, N {n}",
            budget=max_points,
        )
    if s == 1:
        xs = sorted(v[0] for v in points.nums)
        best = 0
        for edge, inclusive in _axis_candidates(xs, d):
            count = bisect_right(xs, edge) if inclusive else bisect_left(xs, edge)
            val = abs(count * d - n * edge)
            if val > best:
                best = val
        return Fraction(best, n * d)

    axes = [
        _axis_candidates([v[j] for v in points.nums], d) for j in range(s)
    ]
    best = 0
    scale = d**s
    for corner in itertools.product(*axes):
        count = 0
        for v in points.nums:
            for (edge, inclusive), c in zip(corner, v):
                if c > edge or (c == edge and not inclusive):
                    break
            else:
                count += 1
        vol_num = math.prod(edge for edge, _ in corner)
        val = abs(count * scale - n * vol_num)
        if val > best:
            best = val
    return Fraction(best, n * scale)


@dataclass
class TransformBound:
    """Right-hand side of the transform-side discrepancy bound (an O(.) bound,
    so only ratios against exact values are meaningful)."""

    total: float
    resolution_term: float  # 1/L
    sum_term: float
    L: int


def coefficient_weight(a) -> int:
    """prod max(|a_j|, 1) over the coefficient vector."""
    return math.prod(max(abs(c), 1) for c in a)


def etk_bound(points: PointSet, L: int) -> TransformBound:
    """Discrepancy upper bound from character sums up to max-norm L.

    Evaluates 1/L + (1/N) * sum over nonzero integer vectors |a| <= L of
    |sum_n e(a . x_n)| / weight(a). Phases are exact integers over the common
    denominator before the single trig call per term.
    """
    if L <= 1:
        raise ValueError("L must be > 1")
    s = points.dim
    n = points.n
    d = points.denom
    table = char_table(d) if d <= 1 << 20 else None
    sum_term = 0.0
    parts = []
    for a in itertools.product(range(-L, L + 1), repeat=s):
        if not any(a):
            continue
        acc = KahanComplex()
        for v in points.nums:
            phase = sum(c * x for c, x in zip(a, v)) % d
            acc.add(table[phase] if table is not None else
                    complex(math.cos(2 * math.pi * phase / d),
                            math.sin(2 * math.pi * phase / d)))
        parts.append(abs(acc.value()) / coefficient_weight(a))
    sum_term = math.fsum(parts) / n
    return TransformBound(
        total=1.0 / L + sum_term,
        resolution_term=1.0 / L,
        sum_term=sum_term,
        L=L,
    )


def discrepancy_envelope(N: int, p: int, m: int) -> float:
    """Average-case decay envelope: N^(-1/2) * (log N)^(m+1) * log p up to the
    N ~ p^(1/(m+1)) crossover, constant in N beyond it. Natural logarithms."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if N <= p ** (1.0 / (m + 1)):
        lead = N**-0.5
    else:
        lead = p ** (-1.0 / (2 * (m + 1)))
    return lead * math.log(N) ** (m + 1) * math.log(p)


@dataclass
class SeedAverageRow:
    N: int
    envelope: float
    mean: float
    minimum: float
    quartile_low: float
    median: float
    quartile_high: float
    maximum: float
    exceedance: dict  # threshold multiplier -> fraction of seeds above t*envelope


@dataclass
class SeedAverageExperiment:
    p: int
    m: int
    thresholds: tuple
    rows: list
    values: dict  # N -> list of per-seed discrepancies (floats)


def average_discrepancy_experiment(sys, N_values, thresholds=(0.5, 1.0, 2.0, 4.0),
                                   budget: int = 10**7,
                                   keep_values: bool = True) -> SeedAverageExperiment:
    """Exact per-seed discrepancy distribution over every initial vector.

    For each seed of F_p^(m+1), the first max(N) emitted points are scored by
    the grid method at each window length N; rows aggregate mean, spread, and
    the fraction of seeds exceeding t * envelope for each threshold t. The
    envelope has unknown constants, so the exceedance table is reporting,
    not a pass/fail judgment.
    """
    from .spectral import _all_states  # same odometer enumeration

    N_values = sorted(set(int(N) for N in N_values))
    if not N_values or N_values[0] < 1:
        raise ValueError("window lengths must be positive")
    p = sys.p
    m = sys.m
    total = sys.state_count()
    if total * N_values[-1] > budget:
        raise BudgetExceededError(
            f"experiment needs {total * N_values[-1]} orbit steps, budget {budget}",
            budget=budget,
        )
    per_n = {N: [] for N in N_values}
    n_max = N_values[-1]
    for seed in _all_states(p, m + 1):
        gen = Generator(sys, seed)
        vectors = gen.raw_vectors(n_max)
        for N in N_values:
            ps = PointSet(vectors[:N], p, dim=m)
            per_n[N].append(float(star_discrepancy_grid(ps)))
    rows = []
    for N in N_values:
        values = sorted(per_n[N])
        env = discrepancy_envelope(N, p, m)
        count = len(values)
        exceed = {}
        for t in thresholds:
            cut = t * env
            exceed[t] = sum(1 for v in values if v > cut) / count
        rows.append(
            SeedAverageRow(
                N=N,
                envelope=env,
                mean=math.fsum(values) / count,
                minimum=values[0],
                quartile_low=values[count // 4],
                median=values[count // 2],
                quartile_high=values[(3 * count) // 4],
                maximum=values[-1],
                exceedance=exceed,
            )
        )
    return SeedAverageExperiment(
        p=p,
        m=m,
        thresholds=tuple(thresholds),
        rows=rows,
        values=per_n if keep_values else {},
    )
