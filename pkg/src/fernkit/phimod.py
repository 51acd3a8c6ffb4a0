"""Filtered phi-modules with a diagonalised, generic Frobenius.

Conventions
-----------
* The module is ``Q^n`` with Frobenius eigenbasis ``f_1, ..., f_n``; only the
  p-adic valuations of the eigenvalues of the linearised Frobenius enter.
* Each embedding carries filtration *jumps* ``j_1 < ... < j_n`` (Hodge-Tate
  weights are their negatives) and a Hodge flag ``H_1 ⊂ ... ⊂ H_n`` where
  ``H_m`` is the step carrying the m largest jumps (``H_1`` is the deepest
  line).
* ``tN(I) = sum of v_p(phi_i), i in I`` and ``tH(S) = (1/e) * sum over
  embeddings of the jumps induced on S``.  Weak admissibility is
  ``tN = tH`` on the whole module and ``tN >= tH`` on every phi-stable
  subspace; by genericity those are the coordinate subspaces ``span{f_i : i in I}``.
* A refinement is a permutation ``sigma`` with ``F_i = span{f_sigma(1), ..., f_sigma(i)}``.
  Permutations act on refinements by left composition (:func:`act`).  The
  action depends on how the eigenlines are labelled; :func:`act_in_frame`
  relabels first so that a base refinement ``r0`` becomes the standard
  ordering, which gives ``r0.sigma * c``.  The orbit report uses the latter.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .errors import DomainError, PreconditionError, SchemaError, ValidationError
from .exactlin import Flag, Subspace, dim_intersection, flag_of_matrix, format_rational, to_rational, vp
from .weyl import (
    Permutation, all_permutations, full_cycles, is_distinct_simple_product, longest, parse_permutation, relpos,
)

__all__ = [
    "Embedding", "FilteredPhiModule", "Refinement", "AdmissibilityVerdict", "OrbitRow",
    "refinements", "coordinate_subspace", "induced_jumps", "tN", "tH", "weak_admissibility",
    "is_irreducible", "sum_criterion_irreducible", "relative_position", "is_noncritical",
    "noncritical_by_jumps", "is_distinct_transposition_associated", "act", "act_in_frame",
    "cn_orbit_report", "numerical_margins", "numerically_noncritical", "example4", "EXAMPLE4_NONCRITICAL",
]


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class Embedding:
    jumps: tuple
    hodge_flag: Flag

    def __post_init__(self):
        jumps = tuple(int(j) for j in self.jumps)
        object.__setattr__(self, "jumps", jumps)
        if any(a >= b for a, b in zip(jumps, jumps[1:])):
            raise ValidationError(f"jumps must be strictly increasing: {list(jumps)}")
        if len(jumps) != self.hodge_flag.n:
            raise ValidationError("one jump per flag step is required")


@dataclass(frozen=True)
class FilteredPhiModule:
    n: int
    p: int
    e: int
    f: int
    valuations: tuple
    embeddings: tuple
    eigenvalues: tuple | None = None
    # "verified" when exact eigenvalues were checked, "assumed" otherwise
    genericity: str = field(default="assumed", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("rank must be at least 1")
        if not _is_prime(self.p):
            raise ValidationError(f"p = {self.p} is not prime")
        if self.e < 1 or self.f < 1:
            raise ValidationError("e and f must be positive")
        object.__setattr__(self, "embeddings", tuple(self.embeddings))
        if self.eigenvalues is not None:
            eig = tuple(to_rational(x) for x in self.eigenvalues)
            object.__setattr__(self, "eigenvalues", eig)
            if len(eig) != self.n or any(x == 0 for x in eig):
                raise ValidationError("need n nonzero eigenvalues")
            pf = Fraction(self.p) ** self.f
            for a, b in itertools.permutations(range(self.n), 2):
                if eig[a] / eig[b] in (1, pf):
                    raise ValidationError(f"eigenvalues {a + 1} and {b + 1} violate phi-genericity")
            derived = tuple(Fraction(vp(x, self.p)) for x in eig)
            if self.valuations is not None and tuple(to_rational(v) for v in self.valuations) != derived:
                raise ValidationError("valuations disagree with the eigenvalues")
            object.__setattr__(self, "valuations", derived)
            object.__setattr__(self, "genericity", "verified")
        else:
            object.__setattr__(self, "genericity", "assumed")
        if self.valuations is None:
            raise ValidationError("need eigenvalues or their valuations")
        vals = tuple(to_rational(v) for v in self.valuations)
        object.__setattr__(self, "valuations", vals)
        if len(vals) != self.n:
            raise ValidationError(f"need {self.n} valuations, got {len(vals)}")
        if len(self.embeddings) != self.e * self.f:
            raise ValidationError(f"need e*f = {self.e * self.f} embeddings, got {len(self.embeddings)}")
        for emb in self.embeddings:
            if emb.hodge_flag.n != self.n:
                raise ValidationError("Hodge flag lives in the wrong dimension")

    @classmethod
    def from_dict(cls, obj: dict) -> "FilteredPhiModule":
        if not isinstance(obj, dict):
            raise SchemaError("module must be a JSON object")
        for key in ("n", "p", "embeddings"):
            if key not in obj:
                raise SchemaError(f"missing field {key!r}", field=key)
        embeddings = []
        for k, emb in enumerate(obj["embeddings"]):
            where = f"embeddings[{k}]"
            if not isinstance(emb, dict) or "jumps" not in emb or "hodge_flag" not in emb:
                raise SchemaError("embedding needs 'jumps' and 'hodge_flag'", field=where)
            try:
                flag = Flag.from_vectors(emb["hodge_flag"], int(obj["n"]))
            except ValueError as exc:
                raise SchemaError(f"bad hodge_flag: {exc}", field=f"{where}.hodge_flag") from None
            embeddings.append(Embedding(tuple(emb["jumps"]), flag))
        eig = obj.get("eigenvalues")
        vals = obj.get("eigenvalue_valuations")
        if eig is None and vals is None:
            raise SchemaError("give 'eigenvalues' or 'eigenvalue_valuations'", field="eigenvalue_valuations")
        return cls(
            n=int(obj["n"]),
            p=int(obj["p"]),
            e=int(obj.get("e", 1)),
            f=int(obj.get("f", 1)),
            valuations=None if vals is None else tuple(to_rational(v) for v in vals),
            embeddings=tuple(embeddings),
            eigenvalues=None if eig is None else tuple(to_rational(x) for x in eig),
        )

    def to_dict(self) -> dict:
        out = {
            "schema_version": 1,
            "n": self.n,
            "p": self.p,
            "e": self.e,
            "f": self.f,
            "eigenvalue_valuations": [format_rational(v) for v in self.valuations],
            "embeddings": [
                {
                    "jumps": list(emb.jumps),
                    "hodge_flag": [[format_rational(x) for x in v] for v in _flag_vectors(emb.hodge_flag)],
                }
                for emb in self.embeddings
            ],
        }
        if self.eigenvalues is not None:
            out["eigenvalues"] = [format_rational(x) for x in self.eigenvalues]
        out["genericity"] = self.genericity
        return out


def _flag_vectors(F: Flag) -> list:
    """One new vector per step so that the first m span ``F_m`` (last step dropped)."""
    vecs = []
    for m in range(1, F.n):
        prev = F[m - 1]
        for v in F[m].vectors():
            if not prev.contains(v):
                vecs.append(v)
                break
    return vecs


@dataclass(frozen=True, order=True)
class Refinement:
    sigma: Permutation

    def flag(self) -> Flag:
        return flag_of_matrix(self.sigma.matrix())

    def to_json(self) -> dict:
        return {"sigma": self.sigma.to_json(), "cycles": self.sigma.cycle_notation()}


@dataclass(frozen=True)
class AdmissibilityVerdict:
    tN_total: Fraction
    tH_total: Fraction
    is_weakly_admissible: bool
    violations: tuple
    crystalline_subobjects: tuple

    def to_json(self) -> dict:
        return {
            "tN_total": format_rational(self.tN_total),
            "tH_total": format_rational(self.tH_total),
            "is_weakly_admissible": self.is_weakly_admissible,
            "violations": [
                {"I": list(I), "tN": format_rational(a), "tH": format_rational(b)} for I, a, b in self.violations
            ],
            "crystalline_subobjects": [list(I) for I in self.crystalline_subobjects],
        }


def refinements(D: FilteredPhiModule) -> list[Refinement]:
    return [Refinement(s) for s in all_permutations(D.n)]


def coordinate_subspace(I, n: int) -> Subspace:
    return Subspace.span([[int(k == i) for k in range(1, n + 1)] for i in I], n)


def induced_jumps(emb: Embedding, S: Subspace) -> list[int]:
    """Jumps of the filtration induced on S, ascending, read off ``dim(S ∩ H_m)``."""
    n = emb.hodge_flag.n
    out = []
    prev = 0
    for m in range(1, n + 1):
        d = dim_intersection(S, emb.hodge_flag[m])
        if d > prev:
            out.append(emb.jumps[n - m])
        prev = d
    return sorted(out)


def tN(D: FilteredPhiModule, I) -> Fraction:
    return sum((D.valuations[i - 1] for i in I), Fraction(0))


def tH(D: FilteredPhiModule, S: Subspace) -> Fraction:
    if S.dim == 0:
        raise DomainError("tH is defined on nonzero subspaces")
    return Fraction(sum(sum(induced_jumps(emb, S)) for emb in D.embeddings), D.e)


def _proper_subsets(n: int):
    for k in range(1, n):
        yield from itertools.combinations(range(1, n + 1), k)


def weak_admissibility(D: FilteredPhiModule) -> AdmissibilityVerdict:
    full = tuple(range(1, D.n + 1))
    tn_total = tN(D, full)
    th_total = tH(D, Subspace.full(D.n))
    violations = []
    crystalline = []
    for I in _proper_subsets(D.n):
        a = tN(D, I)
        b = tH(D, coordinate_subspace(I, D.n))
        if a < b:
            violations.append((I, a, b))
        elif a == b:
            crystalline.append(I)
    ok = tn_total == th_total and not violations
    return AdmissibilityVerdict(tn_total, th_total, ok, tuple(violations), tuple(crystalline))


def is_irreducible(D: FilteredPhiModule, force: bool = False) -> bool:
    verdict = weak_admissibility(D)
    if not verdict.is_weakly_admissible and not force:
        raise PreconditionError("module is not weakly admissible (pass force=True to override)")
    return not verdict.crystalline_subobjects


def sum_criterion_irreducible(D: FilteredPhiModule) -> bool:
    """Sufficient test: no valuation subset sum equals a jump subset sum of the same size."""
    for k in range(1, D.n):
        nsums = {sum(c, Fraction(0)) for c in itertools.combinations(D.valuations, k)}
        hsums = {0}
        for emb in D.embeddings:
            local = {sum(c) for c in itertools.combinations(emb.jumps, k)}
            hsums = {a + b for a in hsums for b in local}
        if nsums & {Fraction(h, D.e) for h in hsums}:
            return False
    return True


def relative_position(D: FilteredPhiModule, r: Refinement) -> list[Permutation]:
    F = r.flag()
    return [relpos(F, emb.hodge_flag) for emb in D.embeddings]


def is_noncritical(D: FilteredPhiModule, r: Refinement) -> bool:
    w0 = longest(D.n)
    return all(w == w0 for w in relative_position(D, r))


def noncritical_by_jumps(D: FilteredPhiModule, r: Refinement) -> bool:
    """Non-criticality read off jumps: each ``F_i`` carries the i smallest jumps."""
    F = r.flag()
    return all(
        induced_jumps(emb, F[i]) == list(emb.jumps[:i]) for emb in D.embeddings for i in range(1, D.n + 1)
    )


def is_distinct_transposition_associated(D: FilteredPhiModule, r: Refinement) -> bool:
    w0 = longest(D.n)
    return all(is_distinct_simple_product(w0 * w) for w in relative_position(D, r))


def act(c: Permutation, r: Refinement) -> Refinement:
    """Left action on orderings: ``(c . r).sigma = c * r.sigma``."""
    return Refinement(c * r.sigma)


def act_in_frame(c: Permutation, r0: Refinement) -> Refinement:
    """Act by c in the eigenbasis reordered by r0, so r0 plays the standard flag.

    Equals ``act(r0 c r0^-1, r0)``; the two actions agree when r0 is the identity.
    """
    return Refinement(r0.sigma * c)


@dataclass(frozen=True)
class OrbitRow:
    cycle: Permutation
    refinement: Refinement
    positions: tuple
    noncritical: bool
    distinct_transposition: bool

    def to_json(self) -> dict:
        return {
            "c": self.cycle.cycle_notation(),
            "refinement": self.refinement.to_json(),
            "relative_positions": [w.to_json() for w in self.positions],
            "noncritical": self.noncritical,
            "distinct_transposition_associated": self.distinct_transposition,
        }


_ACTIONS = {"frame": act_in_frame, "left": act}


def cn_orbit_report(D: FilteredPhiModule, r0: Refinement, action: str = "frame") -> list[OrbitRow]:
    """One row per full cycle c, for the refinement obtained by moving r0 by c.

    ``action="left"`` uses plain left composition instead of the frame action.
    """
    if action not in _ACTIONS:
        raise DomainError(f"unknown action {action!r}")
    move = _ACTIONS[action]
    if not is_noncritical(D, r0):
        raise PreconditionError(f"refinement {r0.sigma.cycle_notation()} is critical")
    rows = []
    w0 = longest(D.n)
    for c in full_cycles(D.n):
        r = move(c, r0)
        pos = tuple(relative_position(D, r))
        rows.append(OrbitRow(
            cycle=c,
            refinement=r,
            positions=pos,
            noncritical=all(w == w0 for w in pos),
            distinct_transposition=all(is_distinct_simple_product(w0 * w) for w in pos),
        ))
    return rows


def numerical_margins(D: FilteredPhiModule, r: Refinement) -> list[tuple[Fraction, Fraction]]:
    """Per i < n: (partial sum of v_p(phi_r(j)) - (1/e) * smallest jumps, (1/e) * min gap)."""
    out = []
    acc = Fraction(0)
    for i in range(1, D.n):
        acc += D.valuations[r.sigma(i) - 1]
        acc -= Fraction(sum(emb.jumps[i - 1] for emb in D.embeddings), D.e)
        gap = min(emb.jumps[i] - emb.jumps[i - 1] for emb in D.embeddings)
        out.append((acc, Fraction(gap, D.e)))
    return out


def numerically_noncritical(D: FilteredPhiModule, r: Refinement) -> bool:
    return all(lhs < gap for lhs, gap in numerical_margins(D, r))


def example4() -> FilteredPhiModule:
    """The bundled rank-4 module with valuations (16,16,16,12) and jumps (0,10,20,30)."""
    text = resources.files("fernkit").joinpath("data/example4.json").read_text(encoding="utf-8")
    return FilteredPhiModule.from_dict(json.loads(text))


EXAMPLE4_NONCRITICAL = frozenset(parse_permutation(s, 4) for s in ("()", "(2 3)", "(1 4)", "(1 4)(2 3)"))

