"""Seeded property runs behind the ``envelope`` and ``selftest`` commands.

Each runner returns a plain dict (JSON-ready) with a ``verdicts`` entry of
named booleans.  Trials draw from :func:`fernkit.sampling.trial_rng`, so a
run is reproducible from ``(seed, n, trials)`` alone.
"""

from __future__ import annotations

from .borel import aij_matrix, envelope_witness, graded_w0_intersection, verify_envelope
from .exactlin import RMatrix
from .localmodel import LocalModelPoint, stratum, tangent_sweep
from .sampling import random_gl, random_permutation, random_upper, trial_rng
from .weyl import (
    all_permutations, bruhat_leq, cycle_count, full_cycle, full_cycles, is_distinct_simple_product,
    length, longest,
)

__all__ = [
    "envelope_run", "aij_run", "tangent_run", "carter_run", "full_cycles_run", "bruhat_closure_run",
    "merge_verdicts",
]


def envelope_run(n: int, trials: int, seed: int, form: str = "random") -> dict:
    """``form="random"``: g in GL_n; ``form="w0b"``: g = w0 b with b upper triangular."""
    if form not in ("random", "w0b"):
        raise ValueError(f"unknown form {form!r}")
    w0 = longest(n).matrix()
    failures = []
    witnesses = {}
    identity_witness = 0
    for t in range(trials):
        rng = trial_rng(seed, f"envelope-{form}-{n}", t)
        g = random_gl(rng, n) if form == "random" else w0 @ random_upper(rng, n)
        rep = verify_envelope(g, envelope_witness(g))
        key = rep.witness.cycle_notation()
        witnesses[key] = witnesses.get(key, 0) + 1
        identity_witness += rep.witness.is_identity()
        if not rep.verified:
            failures.append({"trial": t, "g": g.to_json(), "report": rep.to_json()})
    verdicts = {"envelope_verified_all": not failures}
    if form == "w0b":
        verdicts["witness_identity_all"] = identity_witness == trials
    return {
        "n": n,
        "trials": trials,
        "seed": seed,
        "form": form,
        "verified": trials - len(failures),
        "witness_counts": dict(sorted(witnesses.items())),
        "failures": failures,
        "verdicts": verdicts,
    }


def aij_run(n: int, trials: int, seed: int) -> dict:
    """Shape, membership and diagonal checks for every ``a^{i,j}``."""
    w0 = longest(n).matrix()
    bad = []
    for t in range(trials):
        b = random_upper(trial_rng(seed, f"aij-{n}", t), n)
        binv = b.inverse()
        for i in range(1, n + 1):
            for j in range(1, i + 1):
                a = aij_matrix(b, i, j)
                h = full_cycle(i, j, n).matrix() @ binv
                support_ok = all(
                    a[r, c] == 0 for r in range(n) for c in range(n) if not (r == i - 1 and j - 1 <= c <= i - 1)
                )
                member = graded_w0_intersection(w0, h).contains(a.flatten())
                conj = h @ a @ h.inverse()
                # same trace, hence the same diagonal, carried by (i, i) alone
                diag_ok = (
                    conj.diagonal() == a.diagonal()
                    and all(x == 0 for k, x in enumerate(a.diagonal()) if k != i - 1)
                )
                if not (support_ok and a[i - 1, j - 1] == 1 and member and diag_ok):
                    bad.append({"trial": t, "i": i, "j": j})
    return {"n": n, "trials": trials, "seed": seed, "failures": bad, "verdicts": {"aij_audit": not bad}}


def tangent_run(n: int) -> dict:
    rows = [r.to_json() for r in tangent_sweep(n)]
    formula = all(r["fiber_tangent_dim"] == r["formula_dim"] for r in rows)
    sharp = all(r["equality_with_Xw0"] == r["distinct_simple"] for r in rows)
    return {
        "n": n,
        "rows": rows,
        "verdicts": {"tangent_formula_matches": formula, "tangent_equality_iff_distinct_simple": sharp},
    }


def carter_run(n: int) -> dict:
    checked = 0
    ok = True
    for w in all_permutations(n):
        if is_distinct_simple_product(w):
            checked += 1
            ok = ok and cycle_count(w) == n - length(w)
    return {"n": n, "distinct_simple_products": checked, "verdicts": {"carter_identity": ok}}


def full_cycles_run(n: int) -> dict:
    cycles = full_cycles(n)
    ok = len(set(cycles)) == len(cycles) == 1 + n * (n - 1) // 2
    ok = ok and all(length(full_cycle(i, j, n)) == i - j for i in range(1, n + 1) for j in range(1, i + 1))
    return {"n": n, "count": len(cycles), "verdicts": {"full_cycles_count": ok}}


def bruhat_closure_run(n: int, trials: int, seed: int) -> dict:
    bad = []
    zero = RMatrix.zeros(n, n)
    for t in range(trials):
        rng = trial_rng(seed, f"closure-{n}", t)
        w1, w2 = random_permutation(rng, n), random_permutation(rng, n)
        b = random_upper(rng, n)
        x = LocalModelPoint(w1.matrix(), zero, b @ w2.matrix())
        w = stratum(x)
        if not bruhat_leq(w1.inverse() * w2, w):
            bad.append({"trial": t, "w1": w1.to_json(), "w2": w2.to_json(), "stratum": w.to_json()})
    return {"n": n, "trials": trials, "seed": seed, "failures": bad, "verdicts": {"bruhat_closure": not bad}}


def merge_verdicts(parts) -> dict:
    """AND together equal-named verdicts across several runs, keeping first-seen order."""
    out = {}
    for part in parts:
        for k, v in part["verdicts"].items():
            out[k] = out.get(k, True) and v
    return out
