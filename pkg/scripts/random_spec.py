#!/usr/bin/env python3
"""Emit a random Hamiltonian as a JSON input document for the CLI.

Example:
    python scripts/random_spec.py --seed 7 --n 4 --k 2 | rfhquad rfh -
"""

import argparse
import json
import sys

import numpy as np

from rfhquad.samples import random_hyperbolic_blocks


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--freq-lo", type=float, default=0.5)
    ap.add_argument("--freq-hi", type=float, default=5.0)
    args = ap.parse_args()
    if not 1 <= args.k <= args.n - 1:
        ap.error("need 1 <= k <= n-1")

    rng = np.random.default_rng(args.seed)
    freqs = sorted(rng.uniform(args.freq_lo, args.freq_hi, size=args.k))
    blocks = random_hyperbolic_blocks(rng, args.n - args.k).blocks
    doc = {
        "n": args.n,
        "k": args.k,
        "a0": {"frequencies": [round(f, 12) for f in freqs]},
        "a1": {"blocks": [
            {"kind": b.kind, "m": b.m, "re": b.lam.real, "im": b.lam.imag}
            for b in blocks
        ]},
    }
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
