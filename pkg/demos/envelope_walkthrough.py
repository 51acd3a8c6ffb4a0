"""Walk through one Borel envelope: witness, summands, and the span they cover."""

import argparse

from fernkit.borel import envelope_summands, envelope_witness, verify_envelope
from fernkit.exactlin import RMatrix
from fernkit.sampling import random_gl, trial_rng
from fernkit.weyl import parse_permutation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    g = random_gl(trial_rng(args.seed, "demo", 0), args.n)
    print("g =")
    for row in g.to_json():
        print("   ", " ".join(f"{x:>5}" for x in row))
    w = envelope_witness(g)
    print(f"witness w' = {w.cycle_notation()}")
    for c, S in envelope_summands(g, w):
        print(f"  c = {c.cycle_notation():<12} summand dim {S.dim}")
    rep = verify_envelope(g, w)
    print(f"span dim {rep.total_span_dim} (Borel dim {args.n * (args.n + 1) // 2}), verified: {rep.verified}")

    # the witness matters: this g is covered by w' = id but not by (3 1 2) or w0
    h = RMatrix([[3, 0, 3], [0, -3, -1], [1, 0, 0]])
    for cand in ("id", "[3,1,2]", "[3,2,1]"):
        r = verify_envelope(h, parse_permutation(cand, 3))
        print(f"  fixed g, w' = {cand:<8} span dim {r.total_span_dim}, verified {r.verified}")


if __name__ == "__main__":
    main()
