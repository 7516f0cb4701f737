import pytest
from hypothesis import given, strategies as st

from permpoly import FieldElement, PrimeField, is_prime_u64

M61 = (1 << 61) - 1


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}
    for n in range(32):
        assert is_prime_u64(n) == (n in primes)


def test_is_prime_known_values():
    assert is_prime_u64(M61)  # Mersenne prime
    assert not is_prime_u64(1)
    assert not is_prime_u64(561)  # Carmichael, 3 * 11 * 17
    assert not is_prime_u64(M61 - 1)
    assert is_prime_u64(2**61 + 15)


def test_is_prime_against_sieve():
    limit = 20000
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    for n in range(limit + 1):
        assert is_prime_u64(n) == bool(sieve[n]), n


def test_field_rejects_bad_moduli():
    with pytest.raises(ValueError):
        PrimeField(2)  # quadratic-nonresidue machinery needs odd p
    with pytest.raises(ValueError):
        PrimeField(9)
    with pytest.raises(ValueError):
        PrimeField(1 << 63)  # needs 63 bits or fewer
    with pytest.raises(ValueError):
        PrimeField(-7)


def test_basic_arithmetic():
    F = PrimeField(5)
    assert F(3) * F(4) == 2  # 12 = 2 mod 5
    assert F(4) + F(1) == 0  # additive inverse p-1 + 1
    assert (-F(2)).value == 3
    assert F(2) - F(4) == 3


def test_wide_mul_exact():
    F = PrimeField(M61)
    # 2^31 * 2^31 = 2^62 = 2*(2^61-1) + 2
    assert F(1 << 31) * F(1 << 31) == 2
    # cross-check against the big-integer oracle on a few wide products
    for x, y in [(M61 - 1, M61 - 1), (M61 // 2, M61 // 3), (12345678901234567, 987654321)]:
        assert (F(x) * F(y)).value == (x * y) % M61


def test_pow():
    F = PrimeField(7)
    assert F(2) ** 4 == 2  # 16 = 2 mod 7
    assert F(3) ** 3 == 6  # 27 = 6 mod 7
    assert F(0) ** 0 == 1
    for x in range(1, 7):
        assert F(x) ** 6 == 1  # Fermat


def test_mixed_moduli_rejected():
    a = PrimeField(5)(2)
    b = PrimeField(7)(2)
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(ValueError):
        a * b


def test_legendre_mod7():
    F = PrimeField(7)
    squares = {(x * x) % 7 for x in range(1, 7)}
    assert squares == {1, 2, 4}
    assert F.legendre(0) == 0
    assert F.legendre(2) == 1
    assert F.legendre(3) == -1
    for x in range(7):
        expected = 0 if x == 0 else (1 if x in squares else -1)
        assert F.legendre(x) == expected


def test_smallest_nonresidue():
    assert PrimeField(3).smallest_nonresidue() == 2
    assert PrimeField(5).smallest_nonresidue() == 2
    assert PrimeField(7).smallest_nonresidue() == 3


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 101])
def test_nonresidue_count(p):
    # exactly (p-1)/2 residues are nonsquares
    F = PrimeField(p)
    assert sum(1 for x in range(p) if F.legendre(x) == -1) == (p - 1) // 2


@pytest.mark.parametrize("p", [5, 13, 101])
def test_legendre_multiplicative(p):
    F = PrimeField(p)
    for x in range(1, p):
        for y in range(1, p):
            assert F.legendre(x * y % p) == F.legendre(x) * F.legendre(y)


@given(st.integers(0, 100), st.integers(0, 100), st.integers(0, 100))
def test_field_axioms(x, y, z):
    F = PrimeField(101)
    a, b, c = F(x), F(y), F(z)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    if x % 101:
        assert a * a ** 99 == 1  # x * x^(p-2) = 1


@given(st.integers(1, 2**61 - 2))
def test_inverse_matches_pow(x):
    F = PrimeField(M61)
    assert (F(x) * F(x).inverse()).value == 1
