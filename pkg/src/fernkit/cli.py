"""fernkit command line: JSON in, JSON (or text) reports out.

Every report carries ``schema_version``, the subcommand, a digest of the
inputs, a results payload and a dict of named boolean verdicts.  The exit
status is 0 exactly when every verdict holds, 1 when some verdict fails and
2 when an error object was emitted instead.  Output is a pure function of the
arguments and input files; ``--timing`` adds a wall-clock field and is the
only way to make two runs differ.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .borel import verify_envelope
from .errors import FernkitError, SchemaError
from .exactlin import RMatrix
from .localmodel import LocalModelPoint, tangent_fiber_dim
from .phimod import (
    EXAMPLE4_NONCRITICAL, FilteredPhiModule, Refinement, cn_orbit_report, example4, is_distinct_transposition_associated,
    is_irreducible, is_noncritical, noncritical_by_jumps, numerically_noncritical, refinements, relative_position,
    sum_criterion_irreducible, weak_admissibility,
)
from .sampling import generate_random_wa
from .suites import (
    aij_run, bruhat_closure_run, carter_run, envelope_run, full_cycles_run, merge_verdicts, tangent_run,
)
from .weyl import (
    Permutation, bruhat_leq, cycle_count, full_cycles, is_distinct_simple_product, length, parse_permutation,
    reduced_word,
)

SCHEMA_VERSION = 1


@dataclass
class RunConfig:
    subcommand: str
    seed: int = 0
    trials: int = 0
    n: int = 0
    input_path: str | None = None
    output_format: str = "json"
    options: dict = field(default_factory=dict)


@dataclass
class Report:
    subcommand: str
    inputs_digest: str
    results: dict
    verdicts: dict
    elapsed: float | None = None

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "subcommand": self.subcommand,
            "inputs_digest": self.inputs_digest,
            "results": self.results,
            "verdicts": self.verdicts,
        }
        if self.elapsed is not None:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out


# --------------------------------------------------------------------------
# input helpers


def _read_input(path: str) -> tuple[object, bytes]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(raw.decode("utf-8")), raw
    except UnicodeDecodeError:
        raise SchemaError(f"{path} is not UTF-8") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None


def _field(obj, key, required=True):
    if not isinstance(obj, dict):
        raise SchemaError("top-level JSON value must be an object")
    if key not in obj:
        if required:
            raise SchemaError(f"missing field {key!r}", field=key)
        return None
    return obj[key]


def _matrix(obj, key) -> RMatrix:
    try:
        return RMatrix.from_json(_field(obj, key))
    except SchemaError as exc:
        raise SchemaError(str(exc), field=exc.field or key) from None


def _digest(config: RunConfig, raw: bytes = b"") -> str:
    h = hashlib.sha256()
    payload = {
        "subcommand": config.subcommand,
        "seed": config.seed,
        "trials": config.trials,
        "n": config.n,
        "options": config.options,
    }
    h.update(json.dumps(payload, sort_keys=True).encode())
    h.update(raw)
    return "sha256:" + h.hexdigest()


def _perm(text, n=None) -> Permutation:
    return parse_permutation(text, n)


def _perm_json(w: Permutation) -> dict:
    return {"one_line": w.to_json(), "cycles": w.cycle_notation()}


# --------------------------------------------------------------------------
# subcommands


def run_envelope(config: RunConfig) -> Report:
    if config.input_path:
        obj, raw = _read_input(config.input_path)
        g = _matrix(obj, "g")
        wp = _field(obj, "w_prime", required=False)
        w_prime = None if wp is None else _perm(wp, g.rows)
        rep = verify_envelope(g, w_prime)
        return Report("envelope", _digest(config, raw), rep.to_json(), {"envelope_verified": rep.verified})
    res = envelope_run(config.n, config.trials, config.seed, config.options.get("form", "random"))
    verdicts = res.pop("verdicts")
    return Report("envelope", _digest(config), res, verdicts)


def run_tangent(config: RunConfig) -> Report:
    k = config.options.get("embeddings", 1)
    if config.input_path:
        obj, raw = _read_input(config.input_path)
        g1, g2 = _matrix(obj, "g1"), _matrix(obj, "g2")
        x = LocalModelPoint(g1, RMatrix.zeros(g1.rows, g1.rows), g2)
        rep = tangent_fiber_dim(x).to_json()
        # one independent copy of the computation per embedding
        rep["embeddings"] = k
        rep["total_fiber_tangent_dim"] = k * rep["fiber_tangent_dim"]
        rep["total_dim_G"] = k * rep["dim_G"]
        verdicts = {
            "tangent_formula_matches": rep["fiber_tangent_dim"] == rep["formula_dim"],
            "tangent_equality_iff_distinct_simple": rep["equality_with_Xw0"] == rep["distinct_simple"],
        }
        return Report("tangent", _digest(config, raw), rep, verdicts)
    res = tangent_run(config.n)
    verdicts = res.pop("verdicts")
    res["embeddings"] = k
    return Report("tangent", _digest(config), res, verdicts)


def run_weyl(config: RunConfig) -> Report:
    op = config.options["op"]
    n = config.n or None
    verdicts = {}
    if op == "cycles":
        if not n:
            raise SchemaError("--op cycles needs --n", field="n")
        cyc = full_cycles(n)
        results = {"n": n, "count": len(cyc), "cycles": [_perm_json(c) for c in cyc]}
        verdicts["full_cycles_count"] = len(cyc) == 1 + n * (n - 1) // 2
    elif op == "bruhat":
        u = _perm(config.options.get("u") or _missing("--u"), n)
        w = _perm(config.options.get("w") or _missing("--w"), u.n)
        results = {"u": _perm_json(u), "w": _perm_json(w), "leq": bruhat_leq(u, w)}
    else:
        w = _perm(config.options.get("perm") or _missing("--perm"), n)
        results = {"perm": _perm_json(w), "length": length(w)}
        if op == "distinct":
            word = reduced_word(w)
            results.update(
                reduced_word=word,
                support=sorted(set(word)),
                distinct_simple=is_distinct_simple_product(w),
                cycle_count=cycle_count(w),
            )
    results["op"] = op
    return Report("weyl", _digest(config), results, verdicts)


def _missing(flag):
    raise SchemaError(f"this operation needs {flag}", field=flag.lstrip("-"))


def _load_module(config: RunConfig) -> tuple[FilteredPhiModule, bytes]:
    if config.options.get("random_wa"):
        D = generate_random_wa(config.n, config.seed)
        return D, b""
    if not config.input_path:
        raise SchemaError("phimod needs --input FILE (or --random-wa with --n/--seed)", field="input")
    obj, raw = _read_input(config.input_path)
    if isinstance(obj, dict) and obj.get("schema_version", 1) != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {obj.get('schema_version')!r}", field="schema_version")
    return FilteredPhiModule.from_dict(obj), raw


def _refinement_rows(D) -> list[dict]:
    rows = []
    for r in refinements(D):
        pos = relative_position(D, r)
        rows.append({
            "sigma": _perm_json(r.sigma),
            "relative_positions": [_perm_json(w) for w in pos],
            "noncritical": is_noncritical(D, r),
            "noncritical_by_jumps": noncritical_by_jumps(D, r),
            "distinct_transposition_associated": is_distinct_transposition_associated(D, r),
            "numerically_noncritical": numerically_noncritical(D, r),
        })
    return rows


def _check_payload(D, force) -> dict:
    verdict = weak_admissibility(D)
    out = {"module": D.to_dict(), "admissibility": verdict.to_json()}
    out["sum_criterion_irreducible"] = sum_criterion_irreducible(D)
    if verdict.is_weakly_admissible or force:
        out["irreducible"] = is_irreducible(D, force=True)
    return out


def run_phimod(config: RunConfig) -> Report:
    action = config.options["action"]
    if action == "example4":
        return run_example4(config)
    D, raw = _load_module(config)
    digest = _digest(config, raw)
    force = config.options.get("force", False)
    if action == "check":
        res = _check_payload(D, force)
        verdicts = {"weakly_admissible": res["admissibility"]["is_weakly_admissible"]}
        if "irreducible" in res and res["sum_criterion_irreducible"]:
            verdicts["sum_criterion_implies_irreducible"] = res["irreducible"]
        return Report("phimod check", digest, res, verdicts)
    if action == "refinements":
        rows = _refinement_rows(D)
        verdicts = {
            "jump_profile_agrees": all(r["noncritical"] == r["noncritical_by_jumps"] for r in rows),
            "noncritical_implies_distinct_transposition": all(
                r["distinct_transposition_associated"] for r in rows if r["noncritical"]
            ),
        }
        if weak_admissibility(D).is_weakly_admissible:
            verdicts["numerical_implies_noncritical"] = all(r["noncritical"] for r in rows if r["numerically_noncritical"])
        return Report("phimod refinements", digest, {"n": D.n, "count": len(rows), "rows": rows}, verdicts)
    if action == "orbit":
        text = config.options.get("refinement")
        r0 = Refinement(_perm(text, D.n)) if text else Refinement(_perm("id", D.n))
        rows = cn_orbit_report(D, r0, config.options.get("orbit_action", "frame"))
        verdicts = {
            "orbit_row_count": len(rows) == 1 + D.n * (D.n - 1) // 2,
            "orbit_distinct_transposition_all": all(r.distinct_transposition for r in rows),
        }
        res = {"r0": _perm_json(r0.sigma), "action": config.options.get("orbit_action", "frame"),
               "rows": [r.to_json() for r in rows]}
        return Report("phimod orbit", digest, res, verdicts)
    raise SchemaError(f"unknown phimod action {action!r}")


def run_example4(config: RunConfig) -> Report:
    D = example4()
    rows = _refinement_rows(D)
    found = frozenset(Permutation(tuple(r["sigma"]["one_line"])) for r in rows if r["noncritical"])
    verdict = weak_admissibility(D)
    flagged = [v for v in verdict.violations if v[0] == (1, 4)]
    results = {
        "module": D.to_dict(),
        "refinement_count": len(rows),
        "noncritical": [_perm_json(w) for w in sorted(found)],
        "expected_noncritical": [_perm_json(w) for w in sorted(EXAMPLE4_NONCRITICAL)],
        "admissibility": verdict.to_json(),
        "irreducible_forced": is_irreducible(D, force=True),
        "sum_criterion_irreducible": sum_criterion_irreducible(D),
        "rows": rows,
    }
    verdicts = {
        "noncritical_set_matches": len(rows) == 24 and found == EXAMPLE4_NONCRITICAL,
        "crystalline_subobjects_empty": not verdict.crystalline_subobjects,
        "wa_violation_reported": bool(flagged) and flagged[0][1] == 28 and flagged[0][2] == 30,
    }
    return Report("example4", _digest(config), results, verdicts)


def run_selftest(config: RunConfig) -> Report:
    n, trials, seed = config.n, config.trials, config.seed
    parts = [
        envelope_run(n, trials, seed, "random"),
        envelope_run(n, trials, seed, "w0b"),
        aij_run(n, max(1, trials // 10), seed),
        tangent_run(n),
        carter_run(n),
        full_cycles_run(n),
        bruhat_closure_run(n, trials, seed),
    ]
    names = ["envelope", "envelope_w0b", "aij", "tangent", "carter", "full_cycles", "bruhat_closure"]
    summary = {}
    for name, part in zip(names, parts):
        summary[name] = {k: v for k, v in part.items() if k not in ("rows", "verdicts")}
    return Report("selftest", _digest(config), summary, merge_verdicts(parts))


RUNNERS = {
    "envelope": run_envelope,
    "tangent": run_tangent,
    "weyl": run_weyl,
    "phimod": run_phimod,
    "example4": run_example4,
    "selftest": run_selftest,
}


def run(config: RunConfig) -> Report:
    return RUNNERS[config.subcommand](config)


# --------------------------------------------------------------------------
# text rendering


def _fmt(x) -> str:
    if isinstance(x, dict) and "one_line" in x:
        return f"{x['cycles']} {x['one_line']}"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, list):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    return str(x)


def _table(rows, columns) -> list[str]:
    cells = [[_fmt(r[c]) for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[k]) for row in cells)) for k, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in cells]
    return lines


def render_text(report: Report) -> str:
    lines = [f"fernkit {report.subcommand}  ({report.inputs_digest[:19]})"]
    res = dict(report.results)
    rows = res.pop("rows", None)
    res.pop("module", None)
    for key, val in res.items():
        if isinstance(val, dict) and "one_line" not in val:
            lines.append(f"{key}:")
            lines += [f"  {k}: {_fmt(v)}" for k, v in val.items()]
        else:
            lines.append(f"{key}: {_fmt(val)}")
    if rows:
        if "sigma" in rows[0]:
            cols = ["sigma", "relative_positions", "noncritical", "distinct_transposition_associated",
                    "numerically_noncritical"]
        elif "c" in rows[0]:
            rows = [dict(r, sigma=r["refinement"]["cycles"]) for r in rows]
            cols = ["c", "sigma", "noncritical", "distinct_transposition_associated"]
        else:
            cols = ["stratum_cycles", "w0_winv", "fiber_tangent_dim", "formula_dim", "distinct_simple",
                    "equality_with_Xw0"]
        lines.append("")
        lines += _table(rows, cols)
    lines.append("")
    for name, ok in report.verdicts.items():
        lines.append(f"[{'PASS' if ok else 'FAIL'}] {name}")
    if report.elapsed is not None:
        lines.append(f"elapsed: {report.elapsed:.3f}s")
    return "\n".join(lines)


def emit(report: Report, fmt: str) -> str:
    if fmt == "text":
        return render_text(report)
    return json.dumps(report.to_json(), indent=2, sort_keys=False, ensure_ascii=False)


def error_object(subcommand: str, exc: Exception) -> dict:
    err = {"kind": getattr(exc, "kind", "error"), "message": str(exc)}
    for attr in ("field", "line"):
        val = getattr(exc, attr, None)
        if val is not None:
            err[attr] = val
    return {"schema_version": SCHEMA_VERSION, "subcommand": subcommand, "error": err}


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS so a flag given before the subcommand is not reset by the subparser
    common.add_argument("--format", dest="output_format", choices=["json", "text"], default=argparse.SUPPRESS,
                        help="output format (default json)")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="add elapsed seconds to the report")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS,
                        help="debug logging on stderr")

    parser = argparse.ArgumentParser(prog="fernkit", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("envelope", parents=[common], help="verify Borel envelopes")
    p.add_argument("--input", dest="input_path", help='JSON {"g": matrix, "w_prime": optional permutation}')
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--form", choices=["random", "w0b"], default="random",
                   help="sample g from GL_n, or g = w0 b with b upper triangular")

    p = sub.add_parser("tangent", parents=[common], help="tangent dimensions over A = 0")
    p.add_argument("--input", dest="input_path", help='JSON {"g1": matrix, "g2": matrix}')
    p.add_argument("--sweep", type=int, metavar="N", help="all w in S_N at (B, 0, wB)")
    p.add_argument("--embeddings", type=int, default=1, help="number of embeddings (counts multiply)")

    p = sub.add_parser("weyl", parents=[common], help="permutation combinatorics")
    p.add_argument("--op", choices=["length", "cycles", "bruhat", "distinct"], required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--perm", help='permutation, "[2,1,3]" or "(2 1)" with --n')
    p.add_argument("--u")
    p.add_argument("--w")

    p = sub.add_parser("phimod", parents=[common], help="filtered phi-modules")
    p.add_argument("action", choices=["check", "refinements", "orbit", "example4"])
    p.add_argument("--input", dest="input_path")
    p.add_argument("--force", action="store_true", help="decide irreducibility without weak admissibility")
    p.add_argument("--refinement", help="base refinement for orbit (default identity)")
    p.add_argument("--action", dest="orbit_action", choices=["frame", "left"], default="frame",
                   help="how a full cycle moves the base refinement")
    p.add_argument("--random-wa", action="store_true", help="use a generated weakly admissible module")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)

    sub.add_parser("example4", parents=[common], help="the bundled rank-4 fixture")

    p = sub.add_parser("selftest", parents=[common], help="run every property suite at one size")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    return parser


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(
        subcommand=args.subcommand,
        seed=getattr(args, "seed", 0),
        trials=getattr(args, "trials", 0),
        n=getattr(args, "n", 0),
        input_path=getattr(args, "input_path", None),
        output_format=getattr(args, "output_format", "json"),
    )
    if args.subcommand == "envelope":
        cfg.options["form"] = args.form
        if cfg.input_path:
            cfg.trials = cfg.n = cfg.seed = 0
    elif args.subcommand == "tangent":
        cfg.options["embeddings"] = args.embeddings
        if cfg.input_path is None:
            if args.sweep is None:
                raise SchemaError("tangent needs --sweep N or --input FILE", field="sweep")
            cfg.n = args.sweep
    elif args.subcommand == "weyl":
        cfg.options.update(op=args.op, perm=args.perm, u=args.u, w=args.w)
    elif args.subcommand == "phimod":
        cfg.options.update(action=args.action, force=args.force, refinement=args.refinement,
                           orbit_action=args.orbit_action, random_wa=args.random_wa)
        if not args.random_wa:
            cfg.n = cfg.seed = 0
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    verbose = getattr(args, "verbose", False)
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, stream=sys.stderr,
                        format="%(name)s: %(message)s")
    fmt = getattr(args, "output_format", "json")
    try:
        config = config_from_args(args)
        t0 = time.perf_counter()
        report = run(config)
        if getattr(args, "timing", False):
            report.elapsed = time.perf_counter() - t0
    except (FernkitError, ValueError) as exc:
        err = error_object(args.subcommand, exc)
        if fmt == "text":
            print(f"error ({err['error']['kind']}): {err['error']['message']}", file=sys.stderr)
        else:
            print(json.dumps(err, indent=2, ensure_ascii=False))
        return 2
    print(emit(report, fmt))
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
