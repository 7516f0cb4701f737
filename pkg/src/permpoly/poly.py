"""Sparse multivariate polynomials over a prime field.

A polynomial in variables X0..X{nvars-1} is a map from exponent tuples to
nonzero canonical coefficients. Zero coefficients are never stored, so two
equal polynomials always have identical term maps regardless of how they
were built.
"""

import re

from .field import FieldElement, PrimeField

# Per-variable exponent cap; exceeding it raises instead of wrapping because
# degree bookkeeping downstream depends on exact exponents.
EXPONENT_CAP = (1 << 16) - 1

NEG_INFINITY = float("-inf")

_TERM_RE = re.compile(r"[+-]?[^+-]+")
_VAR_RE = re.compile(r"^X(\d+)(?:\^(\d+))?$")


def _check_exponents(exps):
    for e in exps:
        if e > EXPONENT_CAP:
            raise OverflowError(f"exponent {e} exceeds cap {EXPONENT_CAP}")


class SparsePoly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: PrimeField, nvars: int, terms: dict):
        """Build from {exponent-tuple: coefficient}; reduces and prunes zeros."""
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        p = field.p
        clean = {}
        for exps, c in terms.items():
            if len(exps) != nvars:
                raise ValueError(f"exponent tuple {exps} has wrong length, want {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            _check_exponents(exps)
            c %= p
            if c:
                clean[tuple(exps)] = c
        self.field = field
        self.nvars = nvars
        self.terms = clean

    # ----- constructors -----

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, {})

    @classmethod
    def constant(cls, field, nvars, c):
        if isinstance(c, FieldElement):
            c = c.value
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field, nvars, j):
        if not 0 <= j < nvars:
            raise ValueError(f"variable index {j} out of range 0..{nvars - 1}")
        exps = tuple(1 if i == j else 0 for i in range(nvars))
        return cls(field, nvars, {exps: 1})

    @classmethod
    def variables(cls, field, nvars):
        return [cls.variable(field, nvars, j) for j in range(nvars)]

    # ----- structure -----

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(exps) for exps in self.terms)

    def constant_value(self) -> int:
        """Coefficient of the constant monomial (0 if absent)."""
        return self.terms.get((0,) * self.nvars, 0)

    def degree_in(self, j: int):
        """Max exponent of Xj; -inf for the zero polynomial."""
        if not self.terms:
            return NEG_INFINITY
        return max(exps[j] for exps in self.terms)

    def total_degree(self):
        if not self.terms:
            return NEG_INFINITY
        return max(sum(exps) for exps in self.terms)

    def max_exponents(self):
        """Componentwise max of all exponent tuples; None for the zero polynomial."""
        if not self.terms:
            return None
        out = [0] * self.nvars
        for exps in self.terms:
            for j, e in enumerate(exps):
                if e > out[j]:
                    out[j] = e
        return tuple(out)

    def variables_used(self):
        return {j for exps in self.terms for j in range(self.nvars) if exps[j]}

    def term_count(self) -> int:
        return len(self.terms)

    # ----- arithmetic -----

    def _check_compatible(self, other):
        if self.field.p != other.field.p:
            raise ValueError(f"mixed moduli: {self.field.p} vs {other.field.p}")
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = SparsePoly.constant(self.field, self.nvars, int(other))
        self._check_compatible(other)
        p = self.field.p
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            nc = (terms.get(exps, 0) + c) % p
            if nc:
                terms[exps] = nc
            else:
                terms.pop(exps, None)
        return self._wrap(terms)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return self._wrap({exps: p - c for exps, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = SparsePoly.constant(self.field, self.nvars, int(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c = int(other) % self.field.p
            if c == 0:
                return SparsePoly.zero(self.field, self.nvars)
            p = self.field.p
            return self._wrap({exps: cc * c % p for exps, cc in self.terms.items()})
        self._check_compatible(other)
        return self._wrap(_mul_terms(self.terms, other.terms, self.field.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = SparsePoly.constant(self.field, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def _wrap(self, terms):
        out = SparsePoly.__new__(SparsePoly)
        out.field = self.field
        out.nvars = self.nvars
        out.terms = terms
        return out

    # ----- evaluation and composition -----

    def evaluate(self, point) -> FieldElement:
        """Value at a point given as ints or FieldElements, length nvars."""
        if len(point) != self.nvars:
            raise ValueError(f"point length {len(point)} != nvars {self.nvars}")
        p = self.field.p
        xs = [v.value if isinstance(v, FieldElement) else v % p for v in point]
        acc = 0
        for exps, c in self.terms.items():
            t = c
            for j, e in enumerate(exps):
                if e:
                    t = t * pow(xs[j], e, p) % p
            acc += t
        return self.field.element(acc)

    def compose(self, subs) -> "SparsePoly":
        """Substitute subs[j] for Xj; subs must all share field and nvars."""
        if len(subs) != self.nvars:
            raise ValueError(f"need {self.nvars} substitutions, got {len(subs)}")
        for s in subs:
            self._check_compatible(s)
        p = self.field.p
        one = {(0,) * self.nvars: 1}
        pow_memo = {}

        def var_power(j, e):
            key = (j, e)
            got = pow_memo.get(key)
            if got is not None:
                return got
            if e == 1:
                result = subs[j].terms
            else:
                half = var_power(j, e // 2)
                result = _mul_terms(half, half, p)
                if e & 1:
                    result = _mul_terms(result, subs[j].terms, p)
            pow_memo[key] = result
            return result

        acc = {}
        for exps, c in self.terms.items():
            prod = one
            for j, e in enumerate(exps):
                if e:
                    prod = _mul_terms(prod, var_power(j, e), p)
            for mono, cc in prod.items():
                nc = (acc.get(mono, 0) + c * cc) % p
                if nc:
                    acc[mono] = nc
                else:
                    acc.pop(mono, None)
        return self._wrap(acc)

    # ----- ordering, equality, text form -----

    def sorted_terms(self):
        """Terms in graded lexicographic order (highest first); deterministic."""
        return sorted(
            self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True
        )

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return (
            self.field.p == other.field.p
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field.p, self.nvars, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = [f"X{j}^{e}" if e > 1 else f"X{j}" for j, e in enumerate(exps) if e]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"SparsePoly({self!s} mod {self.field.p})"


def _mul_terms(a: dict, b: dict, p: int) -> dict:
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            exps = tuple(x + y for x, y in zip(ea, eb))
            c = (out.get(exps, 0) + ca * cb) % p
            if c:
                out[exps] = c
            else:
                out.pop(exps, None)
    for exps in out:
        _check_exponents(exps)
    return out


def parse_poly(text: str, field: PrimeField, nvars: int) -> SparsePoly:
    """Parse the text form: sum of terms like `3*X0^2*X1`, `X2`, or `7`.

    Whitespace is ignored; unit coefficients and exponents may be omitted.
    A leading or separating `-` negates the following term.
    """
    compact = "".join(text.split())
    if not compact:
        raise ValueError("empty polynomial text")
    if compact == "0":
        return SparsePoly.zero(field, nvars)
    terms = {}
    p = field.p
    for chunk in _TERM_RE.findall(compact):
        sign = 1
        if chunk[0] == "+":
            chunk = chunk[1:]
        elif chunk[0] == "-":
            sign = -1
            chunk = chunk[1:]
        if not chunk:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = 1
        exps = [0] * nvars
        for factor in chunk.split("*"):
            if not factor:
                raise ValueError(f"empty factor in term {chunk!r}")
            m = _VAR_RE.match(factor)
            if m:
                j = int(m.group(1))
                e = int(m.group(2)) if m.group(2) else 1
                if j >= nvars:
                    raise ValueError(f"variable X{j} out of range (nvars={nvars})")
                if e > EXPONENT_CAP:
                    raise OverflowError(f"exponent {e} exceeds cap {EXPONENT_CAP}")
                exps[j] += e
            else:
                try:
                    coeff = coeff * int(factor)
                except ValueError:
                    raise ValueError(f"bad factor {factor!r} in term {chunk!r}") from None
        key = tuple(exps)
        _check_exponents(key)
        c = (terms.get(key, 0) + sign * coeff) % p
        if c:
            terms[key] = c
        else:
            terms.pop(key, None)
    return SparsePoly(field, nvars, terms)
