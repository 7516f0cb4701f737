"""Shared builders for randomized tests."""

import random

from permpoly import PrimeField, SparsePoly, TriangularSystem


def random_system(rng: random.Random, p: int, m: int, max_s: int = 2,
                  extra_terms: int = 2, force_chain_degrees: bool = True):
    """A random structurally valid system.

    Each g_i gets a random monic leading monomial with per-variable degrees up
    to max_s (the subdiagonal one forced positive unless told otherwise) plus
    random strictly-dominated terms; h_i stays within the leading degrees.
    """
    field = PrimeField(p)
    nvars = m + 1
    g = []
    h = []
    for i in range(m):
        lead = [0] * nvars
        for j in range(i + 1, m + 1):
            lead[j] = rng.randint(0, max_s)
        if force_chain_degrees and lead[i + 1] == 0:
            lead[i + 1] = rng.randint(1, max_s)
        terms = {tuple(lead): 1}
        for _ in range(rng.randint(0, extra_terms)):
            exps = [0] * nvars
            for j in range(i + 1, m + 1):
                exps[j] = rng.randint(0, lead[j] - 1) if lead[j] > 0 else 0
            key = tuple(exps)
            if key == tuple(lead):
                continue
            terms[key] = rng.randint(1, p - 1)
        g.append(SparsePoly(field, nvars, terms))

        h_terms = {}
        for _ in range(rng.randint(0, extra_terms)):
            exps = [0] * nvars
            for j in range(i + 1, m + 1):
                exps[j] = rng.randint(0, lead[j])
            h_terms[tuple(exps)] = rng.randint(1, p - 1)
        h.append(SparsePoly(field, nvars, h_terms))
    a = rng.randint(1, p - 1)
    b = rng.randint(0, p - 1)
    return TriangularSystem(field, g, h, a, b)


def random_nonzero_coeffs(rng: random.Random, p: int, m: int):
    while True:
        a = tuple(rng.randrange(p) for _ in range(m))
        if any(a):
            return a
