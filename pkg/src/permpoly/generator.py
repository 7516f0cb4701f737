"""Streaming vector generator driven by a triangular system.

Each step applies every coordinate polynomial to the *previous* state
vector simultaneously. Emitted points scale the first m coordinates to
[0,1) as exact rationals u/p; the linear coordinate m is internal state
only and never leaves the generator.

Systems whose g_i are single shifted squares (X_{i+1}^2 - a_i with constant
h_i) take a fast path costing one squaring and one multiplication per
nonlinear component per step.
"""

import json
import struct
from fractions import Fraction

from .field import FieldElement
from .system import TriangularSystem, chain_parameters

STREAM_FORMATS = ("csv", "ndjson", "u64le")


class Generator:
    """Mutable orbit state: the current vector u in [0,p)^{m+1} and step count n."""

    __slots__ = ("sys", "u", "n", "_chain", "_map")

    def __init__(self, sys: TriangularSystem, seed, n: int = 0):
        if len(seed) != sys.nvars:
            raise ValueError(f"seed needs {sys.nvars} components, got {len(seed)}")
        p = sys.p
        self.sys = sys
        self.u = tuple(
            v.value if isinstance(v, FieldElement) else int(v) % p for v in seed
        )
        self.n = n
        self._chain = chain_parameters(sys)
        self._map = None if self._chain else sys.as_map()

    def clone(self) -> "Generator":
        return Generator(self.sys, self.u, self.n)

    def step(self) -> "Generator":
        self.jump(1)
        return self

    def jump(self, k: int) -> "Generator":
        """Advance k sequential steps."""
        if k < 0:
            raise ValueError("cannot step backwards")
        if k == 0:
            return self
        if self._chain is not None:
            self._run_chain(k, None)
        else:
            u = self.u
            for _ in range(k):
                u = self._map(u)
            self.u = u
        self.n += k
        return self

    def _run_chain(self, k, collect):
        """Fast path; optionally appends the first m coordinates per step."""
        alist, blist, a, b = self._chain
        p = self.sys.p
        m = self.sys.m
        u = list(self.u)
        if collect is None:
            for _ in range(k):
                for i in range(m):
                    x = u[i + 1]
                    u[i] = (u[i] * (x * x - alist[i] + p) + blist[i]) % p
                u[m] = (a * u[m] + b) % p
        else:
            for _ in range(k):
                collect(tuple(u[:m]))
                for i in range(m):
                    x = u[i + 1]
                    u[i] = (u[i] * (x * x - alist[i] + p) + blist[i]) % p
                u[m] = (a * u[m] + b) % p
        self.u = tuple(u)

    def raw_vectors(self, count: int):
        """The next `count` output vectors (coordinates 0..m-1), advancing state."""
        if count < 0:
            raise ValueError("count must be >= 0")
        out = []
        if count == 0:
            return out
        if self._chain is not None:
            self._run_chain(count, out.append)
            self.n += count
            return out
        m = self.sys.m
        u = self.u
        for _ in range(count):
            out.append(u[:m])
            u = self._map(u)
        self.u = u
        self.n += count
        return out

    def emit(self, count: int):
        """The next `count` points of [0,1)^m as exact rationals u/p."""
        p = self.sys.p
        return [
            tuple(Fraction(v, p) for v in vec) for vec in self.raw_vectors(count)
        ]

    def emit_floats(self, count: int):
        p = self.sys.p
        return [tuple(v / p for v in vec) for vec in self.raw_vectors(count)]

    def raw_stream(self, count: int, fmt: str):
        """Serialize the next `count` output vectors; bytes for u64le, str otherwise."""
        if fmt not in STREAM_FORMATS:
            raise ValueError(f"unknown format {fmt!r}, want one of {STREAM_FORMATS}")
        start = self.n
        vectors = self.raw_vectors(count)
        if fmt == "u64le":
            m = self.sys.m
            pack = struct.Struct("<" + "Q" * m).pack
            return b"".join(pack(*vec) for vec in vectors)
        if fmt == "csv":
            return "".join(",".join(map(str, vec)) + "\n" for vec in vectors)
        return "".join(
            json.dumps({"n": start + idx, "u": list(vec)}, separators=(",", ":")) + "\n"
            for idx, vec in enumerate(vectors)
        )


def count_step_multiplications(sys: TriangularSystem, state=None):
    """Field multiplications one step performs, per coordinate, by instrumented replay.

    Replays the same arithmetic the step paths execute, with every modular
    product routed through a counter: the fast family costs a squaring plus
    one product for each nonlinear coordinate (and one product for the linear
    one); generic systems are charged for their power ladders and term
    assembly. Returns a list of counts indexed by coordinate.
    """
    p = sys.p
    if state is None:
        state = tuple((i + 1) % p for i in range(sys.nvars))
    muls = 0

    def mul(x, y):
        nonlocal muls
        muls += 1
        return x * y % p

    counts = []
    chain = chain_parameters(sys)
    if chain is not None:
        alist, blist, a, b = chain
        for i in range(sys.m):
            before = muls
            sq = mul(state[i + 1], state[i + 1])
            mul(state[i], (sq - alist[i]) % p)
            counts.append(muls - before)
        before = muls
        mul(a, state[sys.m])
        counts.append(muls - before)
        return counts

    def ladder(x, e):
        # left-to-right binary exponentiation: bitlen-1 squarings + popcount-1 products
        v = x
        for bit in bin(e)[3:]:
            v = mul(v, v)
            if bit == "1":
                v = mul(v, x)
        return v

    for fi in sys.f:
        before = muls
        powers = {}
        acc = 0
        for exps, c in fi.terms.items():
            t = c
            for j, e in enumerate(exps):
                if not e:
                    continue
                key = (j, e)
                if key not in powers:
                    powers[key] = ladder(state[j], e)
                t = mul(t, powers[key])
            acc = (acc + t) % p
        counts.append(muls - before)
    return counts
