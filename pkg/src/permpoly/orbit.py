"""Period and cycle-structure measurement of the state map on F_p^(m+1).

For permutation systems the functional graph is a disjoint union of cycles,
so every seed has preperiod 0; planted-zero systems grow rho-shaped tails,
which the exhaustive sweep detects and reports instead of cycle counts
alone. Nothing here predicts periods, it only measures them.
"""

from dataclasses import dataclass, field as dc_field

from .errors import BudgetExceededError
from .field import FieldElement
from .system import TriangularSystem

DEFAULT_STEP_BUDGET = 10**7
DEFAULT_STATE_BUDGET = 10**7


@dataclass
class PeriodResult:
    seed: tuple
    period: int
    preperiod: int
    projection_period: int | None = None  # period of the emitted m coordinates


def _canonical_seed(sys, seed):
    p = sys.p
    if len(seed) != sys.nvars:
        raise ValueError(f"seed needs {sys.nvars} components, got {len(seed)}")
    return tuple(v.value if isinstance(v, FieldElement) else int(v) % p for v in seed)


def period_of_seed(sys: TriangularSystem, seed, max_steps: int = DEFAULT_STEP_BUDGET,
                   projection: bool = False) -> PeriodResult:
    """Brent cycle detection from one seed: (period, preperiod).

    Raises BudgetExceededError carrying the proven lower bound when the cycle
    is not closed within max_steps map evaluations.
    """
    seed = _canonical_seed(sys, seed)
    step = sys.as_map()

    steps_used = 0

    def advance(x):
        nonlocal steps_used
        steps_used += 1
        if steps_used > max_steps:
            # proven period lower bound for preperiod-0 maps: every offset up
            # to the last completed search window was tested without a match
            raise BudgetExceededError(
                f"no cycle closed within {max_steps} steps",
                budget=max_steps,
                lower_bound=max(power // 2, lam - 1),
            )
        return step(x)

    power = 1
    lam = 1
    tortoise = seed
    hare = step(seed)
    steps_used = 1
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = advance(hare)
        lam += 1

    # locate the first repetition to get the preperiod
    tortoise = hare = seed
    for _ in range(lam):
        hare = step(hare)
    mu = 0
    while tortoise != hare:
        tortoise = step(tortoise)
        hare = step(hare)
        mu += 1
        if mu > max_steps:
            raise BudgetExceededError(
                f"preperiod exceeds {max_steps}", budget=max_steps, lower_bound=lam
            )

    proj = None
    if projection:
        proj = _projection_period(sys, seed, lam, mu, step)
    return PeriodResult(seed=seed, period=lam, preperiod=mu, projection_period=proj)


def _projection_period(sys, seed, lam, mu, step):
    """Smallest divisor of lam shifting the emitted m-coordinate cycle onto itself."""
    m = sys.m
    u = seed
    for _ in range(mu):
        u = step(u)
    cycle = []
    for _ in range(lam):
        cycle.append(u[:m])
        u = step(u)
    for t in sorted(_divisors(lam)):
        if all(cycle[n] == cycle[(n + t) % lam] for n in range(lam)):
            return t
    return lam


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


@dataclass
class CycleStructure:
    p: int
    m: int
    total_states: int
    cycles: list  # sorted (length, count) pairs
    tail_states: int  # states not on any cycle (0 for permutations)
    is_bijective: bool
    max_period: int
    is_maximal: bool  # one cycle through every state

    def cycle_state_count(self) -> int:
        return sum(length * count for length, count in self.cycles)


def full_cycle_structure(sys: TriangularSystem,
                         budget: int = DEFAULT_STATE_BUDGET) -> CycleStructure:
    """Exact cycle decomposition by sweeping every state once.

    Encodes states as base-p integers and walks unvisited ones; bijectivity
    falls out of whether any walk lands on a previously visited non-cycle
    node.
    """
    p = sys.p
    m = sys.m
    total = sys.state_count()
    if total > budget:
        raise BudgetExceededError(
            f"{total} states exceed budget {budget}", budget=budget
        )
    step = sys.as_map()
    radix = [p**i for i in range(m + 1)]

    def encode(x):
        return sum(v * r for v, r in zip(x, radix))

    def decode(idx):
        out = []
        for _ in range(m + 1):
            idx, v = divmod(idx, p)
            out.append(v)
        return tuple(out)

    # 0 = unseen, 1 = on current walk, 2 = finished
    color = bytearray(total)
    cycle_counts = {}
    tail_states = 0
    for start in range(total):
        if color[start]:
            continue
        path = []
        pos = {}
        idx = start
        while color[idx] == 0:
            color[idx] = 1
            pos[idx] = len(path)
            path.append(idx)
            idx = encode(step(decode(idx)))
        if color[idx] == 1:
            # closed a new cycle; everything before its entry point is tail
            entry = pos[idx]
            length = len(path) - entry
            cycle_counts[length] = cycle_counts.get(length, 0) + 1
            tail_states += entry
        else:
            tail_states += len(path)
        for node in path:
            color[node] = 2
    cycles = sorted(cycle_counts.items())
    max_period = max((length for length, _ in cycles), default=0)
    return CycleStructure(
        p=p,
        m=m,
        total_states=total,
        cycles=cycles,
        tail_states=tail_states,
        is_bijective=tail_states == 0,
        max_period=max_period,
        is_maximal=cycles == [(total, 1)],
    )
