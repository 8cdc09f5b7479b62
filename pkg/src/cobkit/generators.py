"""Seeded random presentations that are semi-Lagrangian by construction."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .linalg import IntMatrix, determinant, invert_rational
from .triplet import TripletPresentation

RNG_ALGORITHM = "python-random-mt19937"


@dataclass(frozen=True)
class GeneratorParams:
    family: str = "Z"          # "Z" or "Q"
    g_bottom: int = 1
    g_top: int = 1
    n_link: int = 2
    entry_bound: int = 3
    seed: int = 0

    def __post_init__(self):
        if self.family.upper() not in ("Z", "Q"):
            raise ValueError(f"family must be Z or Q, got {self.family!r}")
        object.__setattr__(self, "family", self.family.upper())
        for name in ("g_bottom", "g_top", "n_link"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.entry_bound < 1:
            raise ValueError("entry_bound must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 unsigned bits")


def _rand_matrix(rng: random.Random, rows: int, cols: int, bound: int) -> IntMatrix:
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)],
                     rows, cols)


def random_unimodular(rng: random.Random, n: int, steps: int | None = None) -> IntMatrix:
    """A product of elementary transvections and sign flips (det ±1)."""
    M = IntMatrix.identity(n).tolist()
    if n == 0:
        return IntMatrix.zeros(0, 0)
    for _ in range(steps if steps is not None else 2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            c = rng.choice((-1, 1))
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
        else:
            M[i] = [-a for a in M[i]]
    return IntMatrix(M, n, n)


def random_symmetric(rng: random.Random, n: int, bound: int) -> IntMatrix:
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.randint(-bound, bound)
    return IntMatrix(rows, n, n)


def random_symmetric_unimodular(rng: random.Random, n: int) -> IntMatrix:
    """``P diag(±1) P^T`` for a random unimodular ``P``."""
    P = random_unimodular(rng, n)
    S = IntMatrix.diagonal([rng.choice((-1, 1)) for _ in range(n)])
    return P @ S @ P.T


def random_nonsingular_symmetric(rng: random.Random, n: int, bound: int) -> IntMatrix:
    while True:
        A = random_symmetric(rng, n, bound)
        if determinant(A) != 0:
            return A


def gen_semilagrangian(params: GeneratorParams, rng: random.Random | None = None
                       ) -> TripletPresentation:
    """Draw a presentation satisfying the semi-Lagrangian block identities.

    Z family: ``A`` symmetric unimodular, ``B``, ``C``, ``E`` random,
    ``D = B A^-1 B^T`` and ``F = C A^-1 C^T`` (integral since ``A^-1`` is).
    Q family: ``A`` symmetric nonsingular, ``B = M1 A``, ``C = M2 A``,
    ``D = M1 A M1^T``, ``F = M2 A M2^T`` for random integer ``M1``, ``M2``;
    then ``B A^-1 C^T = M1 A M2^T`` is integral too.
    """
    if rng is None:
        rng = random.Random(params.seed)
    n, g1, g2, k = params.n_link, params.g_bottom, params.g_top, params.entry_bound
    E = _rand_matrix(rng, g2, g1, k)
    if params.family == "Z":
        A = random_symmetric_unimodular(rng, n)
        B = _rand_matrix(rng, g1, n, k)
        C = _rand_matrix(rng, g2, n, k)
        Ainv = invert_rational(A).to_int()
        D = B @ Ainv @ B.T
        F = C @ Ainv @ C.T
    else:
        A = random_nonsingular_symmetric(rng, n, k)
        M1 = _rand_matrix(rng, g1, n, k)
        M2 = _rand_matrix(rng, g2, n, k)
        B, C = M1 @ A, M2 @ A
        D, F = M1 @ A @ M1.T, M2 @ A @ M2.T
    return TripletPresentation(g1, g2, n, A, B, C, D, E, F)


def random_params(rng: random.Random, family: str | None = None, max_n: int = 8,
                  max_g: int = 5, g_bottom: int | None = None, g_top: int | None = None,
                  entry_bound: int = 3) -> GeneratorParams:
    fam = family or rng.choice(("Z", "Q"))
    return GeneratorParams(
        family=fam,
        g_bottom=rng.randint(0, max_g) if g_bottom is None else g_bottom,
        g_top=rng.randint(0, max_g) if g_top is None else g_top,
        n_link=rng.randint(0, max_n),
        entry_bound=entry_bound,
        seed=rng.getrandbits(64),
    )


def random_pair(rng: random.Random, max_n: int = 8, max_g: int = 5, entry_bound: int = 3,
                family: str | None = None):
    """Two generated presentations that can be glued (shared interface genus)."""
    g = rng.randint(0, max_g)
    p1 = random_params(rng, family, max_n, max_g, g_top=g, entry_bound=entry_bound)
    p2 = random_params(rng, family, max_n, max_g, g_bottom=g, entry_bound=entry_bound)
    return gen_semilagrangian(p1), gen_semilagrangian(p2)
