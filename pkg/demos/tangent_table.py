"""Print fiber tangent dimensions over every stratum for one n."""

import argparse

from fernkit.localmodel import tangent_sweep
from fernkit.weyl import cycle_count, length, longest


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    args = ap.parse_args()
    n = args.n
    print(f"{'w':<14}{'w0 w^-1':<14}{'cyc':>4}{'len':>4}{'dim':>6}  smooth")
    for rep in tangent_sweep(n):
        v = longest(n) * rep.stratum.inverse()
        mark = "yes" if rep.fiber_tangent_dim == n * n else ""
        print(f"{rep.stratum.cycle_notation():<14}{v.cycle_notation():<14}"
              f"{cycle_count(v):>4}{length(v):>4}{rep.fiber_tangent_dim:>6}  {mark}")


if __name__ == "__main__":
    main()
