"""The bundled rank-4 module: refinements, criticality and the admissibility check."""

from fernkit.phimod import example4, is_noncritical, numerically_noncritical, refinements, weak_admissibility


def main():
    D = example4()
    print(f"n={D.n} p={D.p} valuations={[str(v) for v in D.valuations]} jumps={list(D.embeddings[0].jumps)}")
    for r in refinements(D):
        flags = []
        if is_noncritical(D, r):
            flags.append("non-critical")
        if numerically_noncritical(D, r):
            flags.append("numerical")
        print(f"  {r.sigma.cycle_notation():<14}{', '.join(flags)}")
    v = weak_admissibility(D)
    print(f"weakly admissible: {v.is_weakly_admissible}")
    for I, tn, th in v.violations:
        print(f"  I={set(I)}: tN={tn} < tH={th}")


if __name__ == "__main__":
    main()
