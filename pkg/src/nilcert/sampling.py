"""Seeded random generators for matrices and tables over small Gaussian rationals.

Entries are drawn uniformly from {-2,-1,0,1,2} + i*{-1,0,1} (the documented
distribution for all randomized probes), with rejection on singularity.
Sub-generators are derived from the run seed and a label through sha256 so
parallel and sequential runs see identical streams.
"""

from __future__ import annotations

import hashlib
import random

from .algebra import GAUSSIAN_FIELD, StructureTable
from .linalg import det
from .scalars import GaussianRational

RE_POOL = (-2, -1, 0, 1, 2)
IM_POOL = (-1, 0, 1)


def derive_rng(seed: int, label: str) -> random.Random:
    """A reproducible generator tied to (seed, label), stable across processes."""
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def random_gaussian(rng: random.Random) -> GaussianRational:
    return GaussianRational(rng.choice(RE_POOL), rng.choice(IM_POOL))


def random_vector(rng: random.Random, dim: int):
    return [random_gaussian(rng) for _ in range(dim)]


def random_invertible(rng: random.Random, dim: int):
    """Random matrix over the small Gaussian pool, rejected until det != 0."""
    zero, one = GAUSSIAN_FIELD.zero, GAUSSIAN_FIELD.one
    while True:
        m = [random_vector(rng, dim) for _ in range(dim)]
        if det(m, zero, one) != zero:
            return m


def random_borel_matrix(rng: random.Random, dim: int):
    """Random basis change preserving the flag tails <e_i, ..., e_n>.

    Row i is supported on columns >= i with a nonzero diagonal; as an operator
    on column vectors this is an invertible lower-triangular matrix.
    """
    zero = GAUSSIAN_FIELD.zero
    m = []
    for i in range(dim):
        row = [zero] * dim
        diag = zero
        while diag == zero:
            diag = random_gaussian(rng)
        row[i] = diag
        for j in range(i + 1, dim):
            row[j] = random_gaussian(rng)
        m.append(row)
    return m


def random_sparse_table(rng: random.Random, dim: int, max_entries: int = 8,
                        symmetric: bool = True) -> StructureTable:
    """A random sparse structure table (not necessarily associative)."""
    entries = {}
    for _ in range(rng.randrange(1, max_entries + 1)):
        i, j, k = (rng.randrange(dim) for _ in range(3))
        c = random_gaussian(rng)
        if not c:
            continue
        entries[(i, j, k)] = c
        if symmetric:
            entries[(j, i, k)] = c
    return StructureTable(dim, entries, GAUSSIAN_FIELD)
