"""Brute-force additive character sums along generator orbits.

Everything here enumerates exactly (no sampling): full-domain sums of
character values of iterate differences, computed both directly and through
the structural collapse onto the zero set of a single cofactor difference,
and the seed-aggregated squared window sums whose growth the analysis
bounds. Complex accumulation is compensated so that sums of up to ~1e8
unit-modulus terms hold a 1e-6 relative error budget.
"""

import cmath
import math

from .errors import BudgetExceededError
from .generator import Generator
from .iterate import decompose
from .system import TriangularSystem

DEFAULT_ENUMERATION_BUDGET = 10**8

TWO_PI = 2.0 * math.pi


def additive_char(z: int, modulus: int) -> complex:
    """exp(2*pi*i*z/modulus), with z reduced mod modulus before the trig call."""
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    return cmath.exp(2j * math.pi * (z % modulus) / modulus)


def char_table(modulus: int):
    """All values exp(2*pi*i*t/modulus) for t in [0, modulus)."""
    return [cmath.exp(2j * math.pi * t / modulus) for t in range(modulus)]


class KahanComplex:
    """Compensated complex accumulator."""

    __slots__ = ("re", "im", "cre", "cim")

    def __init__(self):
        self.re = self.im = 0.0
        self.cre = self.cim = 0.0

    def add(self, z: complex):
        y = z.real - self.cre
        t = self.re + y
        self.cre = (t - self.re) - y
        self.re = t
        y = z.imag - self.cim
        t = self.im + y
        self.cim = (t - self.im) - y
        self.im = t

    def value(self) -> complex:
        return complex(self.re, self.im)


def centered_char_sum(b: int, modulus: int) -> int:
    """Sum of exp(2*pi*i*a*b/modulus) over the centered window of all residues.

    The window runs over integers -(modulus-1)/2 <= a <= modulus/2, one full
    set of residues, so the sum is modulus when b is divisible and 0 otherwise.
    Computed numerically, checked against that closed form, and returned
    rounded; drift beyond 1e-6*modulus raises ArithmeticError.
    """
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    acc = KahanComplex()
    for a in range(-((modulus - 1) // 2), modulus // 2 + 1):
        acc.add(additive_char(a * b, modulus))
    z = acc.value()
    expected = modulus if b % modulus == 0 else 0
    if abs(z - expected) > 1e-6 * modulus:
        raise ArithmeticError(
            f"character sum drifted: got {z}, expected {expected} (modulus {modulus})"
        )
    return expected


def _check_coeffs(sys: TriangularSystem, coeffs):
    m = sys.m
    if len(coeffs) != m:
        raise ValueError(f"coefficient vector needs {m} entries (coordinate m excluded)")
    out = tuple(int(c) % sys.p for c in coeffs)
    if not any(out):
        raise ValueError("coefficient vector must be nonzero")
    return out


def _all_states(p, n):
    """All tuples of [0,p)^n in odometer order (avoids itertools.product memory spikes)."""
    state = [0] * n
    while True:
        yield tuple(state)
        j = n - 1
        while j >= 0:
            state[j] += 1
            if state[j] < p:
                break
            state[j] = 0
            j -= 1
        if j < 0:
            return


def expsum_direct(sys: TriangularSystem, coeffs, k: int, l: int,
                  budget: int = DEFAULT_ENUMERATION_BUDGET) -> complex:
    """Full-domain character sum of sum_i a_i*(step-k value - step-l value).

    Enumerates every starting point of F_p^{m+1} and runs the orbit, which by
    the semigroup law evaluates the iterate difference without any symbolic
    work.
    """
    a = _check_coeffs(sys, coeffs)
    if k < l or l < 0:
        raise ValueError("need k >= l >= 0")
    p = sys.p
    total = sys.state_count()
    if total * max(k, 1) > budget:
        raise BudgetExceededError(
            f"direct enumeration needs {total * max(k, 1)} orbit steps, budget {budget}",
            budget=budget,
        )
    table = char_table(p)
    step = sys.as_map()
    m = sys.m
    acc = KahanComplex()
    for start in _all_states(p, m + 1):
        u = start
        u_l = start if l == 0 else None
        for n in range(1, k + 1):
            u = step(u)
            if n == l:
                u_l = u
        phase = 0
        for i in range(m):
            phase += a[i] * (u[i] - u_l[i])
        acc.add(table[phase % p])
    return acc.value()


def expsum_collapsed(sys: TriangularSystem, coeffs, k: int, l: int,
                     term_budget=None) -> complex:
    """Same sum via the structural collapse.

    Writing each iterate as X_i*g + h, every variable below the first index s
    with a_s != 0 sums freely to a factor p, and the X_s sum vanishes except
    where the cofactor difference g(step k) - g(step l) is zero. What remains
    is p^(s+1) times a character sum over that zero set in F_p^(m-s).
    """
    a = _check_coeffs(sys, coeffs)
    if k < l or l < 0:
        raise ValueError("need k >= l >= 0")
    p = sys.p
    m = sys.m
    s = next(i for i in range(m) if a[i])

    kwargs = {} if term_budget is None else {"term_budget": term_budget}
    dec_k = {i: decompose(sys, i, k, **kwargs) for i in range(s, m)} if k >= 1 else None
    dec_l = {i: decompose(sys, i, l, **kwargs) for i in range(s, m)} if l >= 1 else None

    def parts(dec, i, point):
        # (g value, h value) of coordinate i's iterate at the point; depth 0
        # means the identity iterate X_i = X_i*1 + 0.
        if dec is None:
            return 1, 0
        d = dec[i]
        return d.g.evaluate(point).value, d.h.evaluate(point).value

    table = char_table(p)
    acc = KahanComplex()
    prefix = (0,) * (s + 1)
    for tail in _all_states(p, m - s):
        point = prefix + tail
        gk, hk = parts(dec_k, s, point)
        gl, hl = parts(dec_l, s, point)
        if (gk - gl) % p != 0:
            continue
        phase = a[s] * (hk - hl)
        for i in range(s + 1, m):
            gki, hki = parts(dec_k, i, point)
            gli, hli = parts(dec_l, i, point)
            x_i = point[i]
            phase += a[i] * (x_i * (gki - gli) + (hki - hli))
        acc.add(table[phase % p])
    return acc.value() * p ** (s + 1)


def expsum_envelope(k: int, p: int, m: int) -> float:
    """Reference growth envelope k^m * p^m for the iterate-difference sum."""
    return float(k**m * p**m)


def vsum(sys: TriangularSystem, coeffs, c: int, M: int, N: int,
         window_start: int = 0, budget: int = DEFAULT_ENUMERATION_BUDGET) -> float:
    """Sum over every seed of |window character sum along the orbit|^2.

    The inner sum runs n over [window_start, window_start+N), weighting the
    phase of sum_j a_j*u_{n,j} by the twist exp(2*pi*i*c*n/M).
    """
    a = _check_coeffs(sys, coeffs)
    if N < 1:
        raise ValueError("N must be >= 1")
    if M < 1:
        raise ValueError("M must be >= 1")
    if window_start < 0:
        raise ValueError("window_start must be >= 0")
    p = sys.p
    m = sys.m
    total = sys.state_count()
    if total * (window_start + N) > budget:
        raise BudgetExceededError(
            f"seed sweep needs {total * (window_start + N)} orbit steps, budget {budget}",
            budget=budget,
        )
    p_table = char_table(p)
    m_table = char_table(M)
    step = sys.as_map()
    out = []
    for seed in _all_states(p, m + 1):
        u = seed
        for _ in range(window_start):
            u = step(u)
        inner = KahanComplex()
        for n in range(window_start, window_start + N):
            phase = 0
            for j in range(m):
                phase += a[j] * u[j]
            z = p_table[phase % p] * m_table[c * n % M]
            inner.add(z)
            u = step(u)
        z = inner.value()
        out.append(z.real * z.real + z.imag * z.imag)
    return math.fsum(out)


def vsum_envelope(N: int, p: int, m: int) -> float:
    """Growth envelope: N*p^(m+1) up to the N ~ p^(1/(m+1)) crossover, then
    N^2 * p^(m(m+2)/(m+1))."""
    if N <= p ** (1.0 / (m + 1)):
        return float(N) * p ** (m + 1)
    return float(N) ** 2 * p ** (m * (m + 2) / (m + 1))


def vsum_ratio_table(sys: TriangularSystem, coeffs, c: int, M: int, N_values,
                     budget: int = DEFAULT_ENUMERATION_BUDGET):
    """Rows (N, vsum, envelope, ratio) across a sweep of window lengths.

    The envelope carries an unknown constant, so nothing here passes or fails;
    the ratio column is the deliverable and should merely stay bounded.
    """
    rows = []
    for N in N_values:
        v = vsum(sys, coeffs, c, M, N, budget=budget)
        env = vsum_envelope(N, sys.p, sys.m)
        rows.append((N, v, env, v / env))
    return rows
