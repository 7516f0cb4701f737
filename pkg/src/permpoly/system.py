"""Triangular polynomial systems and their permutation property.

A system over F_p in variables X0..Xm consists of

    f_i = X_i * g_i(X_{i+1}..X_m) + h_i(X_{i+1}..X_m)   for i < m,
    f_m = a * X_m + b                                    with a != 0,

where each g_i is monic in a componentwise-maximal monomial and every other
monomial of g_i stays strictly below it in each variable it uses, while h_i
never exceeds those per-variable degrees. The induced map permutes F_p^{m+1}
exactly when no g_i has a zero over its domain.
"""

import itertools
import json

from .errors import BudgetExceededError
from .field import FieldElement, PrimeField
from .poly import SparsePoly, parse_poly

DEFAULT_PERMUTATION_BUDGET = 10**7


class TriangularSystem:
    """Validated-shape container; call validate_structure for the full check."""

    __slots__ = ("field", "m", "g", "h", "a", "b", "s", "f")

    def __init__(self, field: PrimeField, g, h, a, b):
        m = len(g)
        if m < 1:
            raise ValueError("need m >= 1 (at least one nonlinear coordinate)")
        if len(h) != m:
            raise ValueError(f"g has {m} entries but h has {len(h)}")
        nvars = m + 1
        for name, polys in (("g", g), ("h", h)):
            for i, poly in enumerate(polys):
                if poly.nvars != nvars:
                    raise ValueError(f"{name}[{i}] has nvars {poly.nvars}, want {nvars}")
                if poly.field.p != field.p:
                    raise ValueError(f"{name}[{i}] modulus {poly.field.p} != {field.p}")
        self.field = field
        self.m = m
        self.g = list(g)
        self.h = list(h)
        self.a = int(a) % field.p
        self.b = int(b) % field.p

        # Degree matrix rows: s[i][j] is the leading exponent of Xj in g_i.
        self.s = []
        for gi in self.g:
            lead = gi.max_exponents()
            self.s.append(list(lead) if lead is not None else [0] * nvars)

        xs = SparsePoly.variables(field, nvars)
        self.f = [xs[i] * self.g[i] + self.h[i] for i in range(m)]
        self.f.append(xs[m] * self.a + self.b)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return self.m + 1

    def subdiagonal_product(self) -> int:
        """Product s_{0,1} * s_{1,2} * ... * s_{m-1,m} of chained leading degrees."""
        out = 1
        for i in range(self.m):
            out *= self.s[i][i + 1]
        return out

    def state_count(self) -> int:
        return self.p ** (self.m + 1)

    def as_map(self):
        """The evaluation map F_p^{m+1} -> F_p^{m+1} on canonical residue tuples."""
        chain = chain_parameters(self)
        if chain is not None:
            alist, blist, a, b = chain
            p = self.p
            m = self.m

            def step(x):
                u = list(x)
                for i in range(m):
                    xi1 = u[i + 1]
                    u[i] = (x[i] * (xi1 * xi1 - alist[i] + p) + blist[i]) % p
                u[m] = (a * x[m] + b) % p
                return tuple(u)

            return step

        fs = self.f

        def step(x):
            return tuple(fi.evaluate(x).value for fi in fs)

        return step

    def __eq__(self, other):
        if not isinstance(other, TriangularSystem):
            return NotImplemented
        return (
            self.p == other.p
            and self.g == other.g
            and self.h == other.h
            and self.a == other.a
            and self.b == other.b
        )

    def __repr__(self):
        return f"TriangularSystem(p={self.p}, m={self.m})"


def validate_structure(sys: TriangularSystem):
    """Check the triangular-shape conditions; returns a list of violation strings."""
    violations = []
    m = sys.m
    if sys.a == 0:
        violations.append("a = 0 (the linear coordinate must be invertible)")
    for i in range(m):
        gi = sys.g[i]
        hi = sys.h[i]
        allowed = set(range(i + 1, m + 1))
        bad = gi.variables_used() - allowed
        if bad:
            violations.append(f"g[{i}] uses forbidden variables {sorted(bad)}")
        bad = hi.variables_used() - allowed
        if bad:
            violations.append(f"h[{i}] uses forbidden variables {sorted(bad)}")
        if gi.is_zero():
            violations.append(f"g[{i}] is zero (no leading monomial)")
            continue
        lead = gi.max_exponents()
        coeff = gi.terms.get(lead)
        if coeff is None:
            violations.append(
                f"g[{i}] has no unique leading monomial (componentwise max "
                f"{_mono_str(lead)} is not a term)"
            )
            continue
        if coeff != 1:
            violations.append(
                f"g[{i}] leading coefficient is {coeff}, want 1 ({_mono_str(lead)})"
            )
        for exps in gi.terms:
            if exps == lead:
                continue
            for j in range(i + 1, m + 1):
                if lead[j] > 0 and exps[j] >= lead[j]:
                    violations.append(
                        f"g[{i}] term {_mono_str(exps)} reaches deg_X{j} = "
                        f"{exps[j]} >= s[{i}][{j}] = {lead[j]}"
                    )
        for exps in hi.terms:
            for j in range(i + 1, m + 1):
                if exps[j] > lead[j]:
                    violations.append(
                        f"h[{i}] term {_mono_str(exps)} has deg_X{j} = "
                        f"{exps[j]} > s[{i}][{j}] = {lead[j]}"
                    )
    return violations


def _mono_str(exps):
    factors = [f"X{j}^{e}" if e > 1 else f"X{j}" for j, e in enumerate(exps) if e]
    return "*".join(factors) if factors else "1"


class PermutationCheck:
    """Outcome of a permutation test: certified, refuted, or unknown."""

    __slots__ = ("status", "method", "witnesses", "counterexample", "detail")

    def __init__(self, status, method=None, witnesses=None, counterexample=None, detail=""):
        self.status = status  # "certified" | "refuted" | "unknown"
        self.method = method  # "nonresidue-form" | "exhaustive" | None
        self.witnesses = witnesses
        self.counterexample = counterexample
        self.detail = detail

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def __repr__(self):
        return f"PermutationCheck({self.status}, method={self.method}, {self.detail})"


def _quadratic_product_form(gi: SparsePoly):
    """If g_i == prod_{j in S} (Xj^2 - c_j) syntactically, return {j: c_j}."""
    field = gi.field
    lead = gi.max_exponents()
    if lead is None:
        return None
    if gi.is_constant():
        return {} if gi.constant_value() == 1 else None
    support = [j for j, e in enumerate(lead) if e]
    if any(lead[j] != 2 for j in support):
        return None
    consts = {}
    for j in support:
        # Coefficient of the monomial with X_j dropped from the lead gives -c_j.
        probe = tuple(0 if t == j else e for t, e in enumerate(lead))
        c = gi.terms.get(probe, 0)
        consts[j] = field.neg(c)
    rebuilt = SparsePoly.constant(field, gi.nvars, 1)
    for j in support:
        xj = SparsePoly.variable(field, gi.nvars, j)
        rebuilt = rebuilt * (xj * xj - consts[j])
    if rebuilt != gi:
        return None
    return consts


def check_permutation(sys: TriangularSystem, budget: int = DEFAULT_PERMUTATION_BUDGET):
    """Certify that every g_i has no zeros, refute with a zero, or give up.

    The syntactic path recognizes products of (Xj^2 - c) factors and certifies
    when every c is a quadratic nonresidue. Otherwise the domains are swept
    exhaustively if the total evaluation count fits the budget.
    """
    p = sys.p
    m = sys.m

    witnesses = []
    syntactic_ok = True
    for i in range(m):
        consts = _quadratic_product_form(sys.g[i])
        if consts is None:
            syntactic_ok = False
            break
        for j, c in sorted(consts.items()):
            if sys.field.legendre(c) != -1:
                syntactic_ok = False
                break
            witnesses.append((i, j, c))
        if not syntactic_ok:
            break
    if syntactic_ok:
        return PermutationCheck(
            "certified",
            method="nonresidue-form",
            witnesses=witnesses,
            detail=f"{len(witnesses)} nonresidue factors",
        )

    work = sum(p ** (m - i) for i in range(m))
    if work > budget:
        return PermutationCheck(
            "unknown",
            detail=f"exhaustive check needs {work} evaluations, budget is {budget}",
        )
    for i in range(m):
        gi = sys.g[i]
        prefix = (0,) * (i + 1)
        for tail in itertools.product(range(p), repeat=m - i):
            if gi.evaluate(prefix + tail).value == 0:
                return PermutationCheck(
                    "refuted",
                    method="exhaustive",
                    counterexample=(i, tail),
                    detail=f"g[{i}] vanishes at X_{i + 1}..X_{m} = {tail}",
                )
    return PermutationCheck(
        "certified", method="exhaustive", detail=f"{work} evaluations, no zeros"
    )


def make_quadratic_system(field, m, constants, b_consts=None, a=1, b=1):
    """Build g_i = prod_j (X_{i+j}^2 - constants[i][j-?]) with constant h_i.

    constants[i] lists the subtracted constants for variables X_{i+1}..X_{i+len}.
    Useful both for the nonresidue families and for planting zeros in tests.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    nvars = m + 1
    if b_consts is None:
        b_consts = [1] * m
    if len(constants) != m or len(b_consts) != m:
        raise ValueError("need one constants row and one h constant per i < m")
    g = []
    h = []
    for i in range(m):
        row = constants[i]
        if not 1 <= len(row) <= m - i:
            raise ValueError(f"constants[{i}] must cover 1..{m - i} variables")
        gi = SparsePoly.constant(field, nvars, 1)
        for j, c in enumerate(row, start=1):
            xj = SparsePoly.variable(field, nvars, i + j)
            gi = gi * (xj * xj - int(c))
        g.append(gi)
        h.append(SparsePoly.constant(field, nvars, int(b_consts[i])))
    return TriangularSystem(field, g, h, a, b)


def make_nonresidue_system(field, m, variant="chain", b_consts=None, a=1, b=1):
    """The fast permutation families: quadratic factors shifted by a nonresidue.

    variant "chain" uses g_i = X_{i+1}^2 - r; "full-product" multiplies one
    such factor for every remaining variable. r is the least nonresidue.
    """
    r = field.smallest_nonresidue().value
    if variant == "chain":
        constants = [[r] for _ in range(m)]
    elif variant == "full-product":
        constants = [[r] * (m - i) for i in range(m)]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return make_quadratic_system(field, m, constants, b_consts=b_consts, a=a, b=b)


def chain_parameters(sys: TriangularSystem):
    """(a_list, b_list, a, b) when every g_i = X_{i+1}^2 - a_i and h_i is constant."""
    p = sys.p
    alist = []
    blist = []
    for i in range(sys.m):
        gi = sys.g[i]
        hi = sys.h[i]
        if not hi.is_constant():
            return None
        lead = tuple(2 if j == i + 1 else 0 for j in range(sys.nvars))
        rest = dict(gi.terms)
        if rest.pop(lead, None) != 1:
            return None
        const = rest.pop((0,) * sys.nvars, 0)
        if rest:
            return None
        alist.append(sys.field.neg(const))
        blist.append(hi.constant_value())
    return alist, blist, sys.a, sys.b


# ----- system file I/O -----


def system_to_dict(sys: TriangularSystem) -> dict:
    return {
        "p": sys.p,
        "m": sys.m,
        "g": [str(gi) for gi in sys.g],
        "h": [str(hi) for hi in sys.h],
        "a": sys.a,
        "b": sys.b,
    }


def system_from_dict(data: dict) -> TriangularSystem:
    try:
        p = int(data["p"])
        m = int(data["m"])
        g_texts = data["g"]
        h_texts = data["h"]
        a = int(data["a"])
        b = int(data["b"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed system file: {exc}") from exc
    if len(g_texts) != m or len(h_texts) != m:
        raise ValueError(f"system file needs {m} g and h entries")
    field = PrimeField(p)
    nvars = m + 1
    g = [parse_poly(t, field, nvars) for t in g_texts]
    h = [parse_poly(t, field, nvars) for t in h_texts]
    return TriangularSystem(field, g, h, a, b)


def save_system(sys: TriangularSystem, path):
    with open(path, "w") as fh:
        json.dump(system_to_dict(sys), fh, indent=2)
        fh.write("\n")


def load_system(path) -> TriangularSystem:
    with open(path) as fh:
        return system_from_dict(json.load(fh))
