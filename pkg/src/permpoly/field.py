"""Arithmetic in prime fields F_p for odd primes p below 2^63.

Values are kept as canonical residues in [0, p) at every module boundary;
Python's arbitrary-precision ints make the double-width intermediate of a
63-bit modular product exact without any special casing.
"""

# Deterministic Miller-Rabin witnesses covering all n < 2^64
# (sourced from the usual verified witness table).
_MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

MAX_MODULUS_BITS = 63


def is_prime_u64(n: int) -> bool:
    """Deterministic primality test, correct for all 0 <= n < 2^64."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    s = 0
    while d & 1 == 0:
        d >>= 1
        s += 1
    for w in _MR_WITNESSES:
        a = w % n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """An odd prime modulus p with p < 2^63, plus arithmetic on residues."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int):
            raise TypeError(f"modulus must be an int, got {type(p).__name__}")
        if p.bit_length() > MAX_MODULUS_BITS:
            raise ValueError(f"modulus {p} exceeds {MAX_MODULUS_BITS} bits")
        if p < 3 or p % 2 == 0:
            raise ValueError(f"modulus must be an odd prime >= 3, got {p}")
        if not is_prime_u64(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value % self.p, self)

    def __call__(self, value: int) -> "FieldElement":
        return self.element(value)

    # Residue-level arithmetic; inputs must already lie in [0, p).
    def add(self, x: int, y: int) -> int:
        s = x + y
        return s - self.p if s >= self.p else s

    def sub(self, x: int, y: int) -> int:
        d = x - y
        return d + self.p if d < 0 else d

    def mul(self, x: int, y: int) -> int:
        return x * y % self.p

    def neg(self, x: int) -> int:
        return self.p - x if x else 0

    def pow(self, x: int, e: int) -> int:
        # pow(0, 0) == 1 by convention
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        return pow(x, e, self.p)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(x, self.p - 2, self.p)

    def legendre(self, x: int) -> int:
        """Quadratic character: 0 for x = 0, +1 for nonzero squares, -1 otherwise."""
        if x % self.p == 0:
            return 0
        r = pow(x, (self.p - 1) // 2, self.p)
        return 1 if r == 1 else -1

    def smallest_nonresidue(self) -> "FieldElement":
        """Least positive quadratic nonresidue; exists for every odd prime."""
        a = 2
        while self.legendre(a) != -1:
            a += 1
        return self.element(a)


class FieldElement:
    """A canonical residue in [0, p) tied to its PrimeField."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        if not 0 <= value < field.p:
            raise ValueError(f"{value} is not a canonical residue mod {field.p}")
        self.value = value
        self.field = field

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field.p != self.field.p:
                raise ValueError(
                    f"mixed moduli: {self.field.p} vs {other.field.p}"
                )
            return other
        if isinstance(other, int):
            return self.field.element(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field.add(self.value, o.value), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field.sub(self.value, o.value), self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field.sub(o.value, self.value), self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field.mul(self.value, o.value), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def __pow__(self, e: int):
        return FieldElement(self.field.pow(self.value, e), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field.mul(self.value, self.field.inv(o.value)), self.field)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def legendre(self) -> int:
        return self.field.legendre(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field.p == other.field.p
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value}"
