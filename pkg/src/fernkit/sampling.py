"""Seeded random instances: matrices and weakly admissible phi-modules.

Every generator takes a ``random.Random``; :func:`trial_rng` derives an
independent stream per (seed, label, trial) so trial batches can be split
or reordered without changing any individual trial.
"""

from __future__ import annotations

import logging
import random
from fractions import Fraction

from .errors import DomainError, GeneratorExhausted
from .exactlin import RMatrix, flag_of_matrix
from .weyl import Permutation, longest

log = logging.getLogger(__name__)

__all__ = [
    "trial_rng", "random_gl", "random_upper", "random_unipotent", "random_permutation",
    "generate_random_wa", "MAX_ATTEMPTS",
]

MAX_ATTEMPTS = 10_000


def trial_rng(seed: int, label: str = "", trial: int = 0) -> random.Random:
    return random.Random(f"fernkit:{seed}:{label}:{trial}")


def _entry(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound))


def random_gl(rng: random.Random, n: int, bound: int = 3) -> RMatrix:
    while True:
        g = RMatrix([[_entry(rng, bound) for _ in range(n)] for _ in range(n)], n)
        if g.is_invertible():
            return g


def random_upper(rng: random.Random, n: int, bound: int = 3) -> RMatrix:
    """Invertible upper triangular matrix with small integer entries."""
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if j < i:
                row.append(Fraction(0))
            elif j == i:
                row.append(Fraction(rng.choice([-2, -1, 1, 2, 3])))
            else:
                row.append(_entry(rng, bound))
        rows.append(row)
    return RMatrix(rows, n)


def random_unipotent(rng: random.Random, n: int, bound: int = 1, density: float = 0.6) -> RMatrix:
    """``L U`` with L, U unipotent and sparse small entries."""
    def tri(lower):
        return RMatrix([
            [
                Fraction(1) if i == j
                else (_entry(rng, bound) if (j < i if lower else j > i) and rng.random() < density else Fraction(0))
                for j in range(n)
            ]
            for i in range(n)
        ], n)
    return tri(True) @ tri(False)


def random_permutation(rng: random.Random, n: int) -> Permutation:
    img = list(range(1, n + 1))
    rng.shuffle(img)
    return Permutation(tuple(img))


def _split(rng: random.Random, total: int, n: int, spread: int) -> list[int]:
    parts = [rng.randint(-spread, spread) for _ in range(n - 1)]
    base = total // n
    parts = [base + x for x in parts]
    parts.append(total - sum(parts))
    return parts


def generate_random_wa(n: int, seed: int, p: int = 2):
    """A weakly admissible, phi-generic, HT-regular module of rank n (e = f = 1).

    Jumps have gaps in [1, 50]; the Hodge flag is ``u w0 E`` for a random
    sparse unipotent u; valuations split ``tH`` of the whole space into n
    integer parts.  Candidates are rejected until weakly admissible.
    """
    from .phimod import Embedding, FilteredPhiModule, weak_admissibility

    if not 1 <= n <= 6:
        raise DomainError("generate_random_wa supports 1 <= n <= 6")
    rng = trial_rng(seed, f"wa{n}")
    w0 = longest(n).matrix()
    units = [1 + p * k for k in range(n)]
    for attempt in range(1, MAX_ATTEMPTS + 1):
        gaps = [rng.randint(1, 50) for _ in range(n - 1)]
        jumps = [rng.randint(-20, 20)]
        for gap in gaps:
            jumps.append(jumps[-1] + gap)
        flag = flag_of_matrix(random_unipotent(rng, n) @ w0)
        vals = _split(rng, sum(jumps), n, spread=max(jumps) - min(jumps) + 1)
        # distinct units make every eigenvalue ratio avoid 1 and p^f exactly
        eig = [Fraction(u) * Fraction(p) ** v for u, v in zip(units, vals)]
        D = FilteredPhiModule(n=n, p=p, e=1, f=1, valuations=None,
                              embeddings=(Embedding(tuple(jumps), flag),), eigenvalues=tuple(eig))
        if weak_admissibility(D).is_weakly_admissible:
            log.debug("generate_random_wa(n=%d, seed=%d): accepted after %d attempts", n, seed, attempt)
            return D
    raise GeneratorExhausted(f"no weakly admissible module of rank {n} after {MAX_ATTEMPTS} attempts")
