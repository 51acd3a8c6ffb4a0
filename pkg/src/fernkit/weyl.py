"""Type A_{n-1} Weyl group combinatorics.

Permutations are 1-based in one-line notation and compose as functions,
``(u * w)(i) = u(w(i))``.  The permutation matrix of ``w`` sends ``e_i`` to
``e_{w(i)}``, so ``w·E`` (E the standard flag) is the flag spanned by
``e_{w(1)}, e_{w(2)}, ...`` and matrix products follow permutation products.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import DomainError, SchemaError
from .exactlin import Flag, RMatrix, dim_sum

__all__ = [
    "Permutation", "identity", "simple_reflection", "longest", "length", "full_cycles", "full_cycle",
    "bruhat_leq", "reduced_word", "word_to_permutation", "is_distinct_simple_product",
    "cycle_count", "relpos", "all_permutations", "parse_permutation",
]


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise DomainError(f"not a permutation of 1..{len(images)}: {list(images)}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise DomainError(f"cannot compose elements of S_{self.n} and S_{other.n}")
        return Permutation(tuple(self.images[other.images[i] - 1] for i in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, wi in enumerate(self.images, start=1):
            inv[wi - 1] = i
        return Permutation(tuple(inv))

    def matrix(self) -> RMatrix:
        n = self.n
        return RMatrix([[1 if self.images[j] == i + 1 else 0 for j in range(n)] for i in range(n)], n)

    def is_identity(self) -> bool:
        return all(w == i for i, w in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple]:
        """Nontrivial cycles, each started at its largest element."""
        seen = set()
        out = []
        for start in range(self.n, 0, -1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return sorted(out, key=lambda c: min(c))

    def cycle_notation(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def to_json(self) -> list:
        return list(self.images)

    def __str__(self):
        return f"[{','.join(map(str, self.images))}]"


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def simple_reflection(i: int, n: int) -> Permutation:
    if not 1 <= i < n:
        raise DomainError(f"s_{i} does not exist in S_{n}")
    img = list(range(1, n + 1))
    img[i - 1], img[i] = img[i], img[i - 1]
    return Permutation(tuple(img))


def all_permutations(n: int):
    for p in itertools.permutations(range(1, n + 1)):
        yield Permutation(p)


def from_cycles(cycles, n: int) -> Permutation:
    img = list(range(1, n + 1))
    touched = set()
    for cyc in cycles:
        for a in cyc:
            if not 1 <= a <= n or a in touched:
                raise DomainError(f"bad cycle {cyc} for S_{n}")
            touched.add(a)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b
    return Permutation(tuple(img))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(obj, n: int | None = None) -> Permutation:
    """Accept a JSON image list, ``"[2,1,3]"``, ``"(2 1)"``-style cycles or ``"id"``."""
    if isinstance(obj, Permutation):
        return obj
    if isinstance(obj, (list, tuple)):
        try:
            return Permutation(tuple(obj))
        except (TypeError, ValueError):
            raise SchemaError(f"bad permutation {obj!r}") from None
    if not isinstance(obj, str):
        raise SchemaError(f"bad permutation {obj!r}")
    text = obj.strip()
    if text.startswith("["):
        body = text.strip("[]").replace(",", " ").split()
        return parse_permutation([int(x) for x in body])
    if n is None:
        raise SchemaError("cycle notation needs the rank n")
    if text in ("id", "()", "1", ""):
        return identity(n)
    if _CYCLE_RE.sub("", text).strip():
        raise SchemaError(f"cannot parse cycle notation {obj!r}")
    cycles = [[int(x) for x in m.replace(",", " ").split()] for m in _CYCLE_RE.findall(text)]
    return from_cycles([c for c in cycles if c], n)


def length(w: Permutation) -> int:
    """Number of inversions."""
    im = w.images
    return sum(1 for a in range(w.n) for b in range(a + 1, w.n) if im[a] > im[b])


def longest(n: int) -> Permutation:
    if n < 1:
        raise DomainError("longest element needs n >= 1")
    return Permutation(tuple(range(n, 0, -1)))


def full_cycle(i: int, j: int, n: int) -> Permutation:
    """``c_{i,j} = (i, i-1, ..., j)``: sends i to i-1, ..., j+1 to j, j to i."""
    if not 1 <= j <= i <= n:
        raise DomainError(f"c_{{{i},{j}}} needs 1 <= j <= i <= {n}")
    img = list(range(1, n + 1))
    for a in range(j + 1, i + 1):
        img[a - 1] = a - 1
    img[j - 1] = i
    return Permutation(tuple(img))


def full_cycles(n: int) -> list[Permutation]:
    """The set of cycles c_{i,j}, i >= j, deduplicated (identity listed first)."""
    if n < 1:
        raise DomainError("full_cycles needs n >= 1")
    out = [identity(n)]
    for i in range(1, n + 1):
        for j in range(1, i):
            out.append(full_cycle(i, j, n))
    return out


def _check_same_n(u: Permutation, w: Permutation):
    if u.n != w.n:
        raise DomainError(f"size mismatch: S_{u.n} vs S_{w.n}")


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """Bruhat order by rank matrices: u <= w iff u's counts dominate w's."""
    _check_same_n(u, w)
    n = u.n
    ru = [0] * (n + 1)
    rw = [0] * (n + 1)
    for i in range(n):
        # ru[j] = #{a <= i : u(a) <= j}, updated one row at a time
        for j in range(u.images[i], n + 1):
            ru[j] += 1
        for j in range(w.images[i], n + 1):
            rw[j] += 1
        if any(ru[j] < rw[j] for j in range(1, n + 1)):
            return False
    return True


def reduced_word(w: Permutation) -> list[int]:
    """A reduced word ``[a1, ..., ak]`` with ``w = s_a1 * ... * s_ak``."""
    img = list(w.images)
    word = []
    while True:
        for i in range(len(img) - 1):
            if img[i] > img[i + 1]:
                # w = (w s_i) s_i and w s_i is shorter
                img[i], img[i + 1] = img[i + 1], img[i]
                word.append(i + 1)
                break
        else:
            break
    word.reverse()
    return word


def word_to_permutation(word, n: int) -> Permutation:
    w = identity(n)
    for a in word:
        w = w * simple_reflection(a, n)
    return w


def is_distinct_simple_product(w: Permutation) -> bool:
    # such a product is automatically reduced, so the test is length == support size
    word = reduced_word(w)
    return len(word) == len(set(word))


def cycle_count(w: Permutation) -> int:
    """Number of cycles, fixed points included."""
    seen = [False] * (w.n + 1)
    count = 0
    for start in range(1, w.n + 1):
        if seen[start]:
            continue
        count += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = w(j)
    return count


def relpos(F: Flag, G: Flag) -> Permutation:
    """Relative position of two complete flags.

    With ``d[i][j] = dim(F_i ∩ G_j)`` the answer sends j to the unique i
    where the second difference of ``d`` jumps.  ``relpos(u·E, w·E)`` is
    ``u^-1 * w`` and opposite flags give the longest element.
    """
    if F.n != G.n:
        raise DomainError(f"flags live in Q^{F.n} and Q^{G.n}")
    n = F.n
    d = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            d[i][j] = i + j - dim_sum(F[i], G[j])
    images = [0] * n
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            if d[i][j] - d[i - 1][j] - d[i][j - 1] + d[i - 1][j - 1] == 1:
                images[j - 1] = i
                break
    return Permutation(tuple(images))
