"""Survey admissible frame orders across the built-in group catalog.

For every group: order, the first Molien coefficients, the largest p for
which p-frames exist, and an orbit-average check at that p and at p+1
using one fixed anisotropic transformation.

Usage: python3 scripts/frame_order_survey.py [--seed 0] [--max-degree 12]
"""
import argparse

import numpy as np

from framebound.frames import verify_tight_frame
from framebound.groups import build_group, max_frame_order, molien_series
from framebound.linalg import random_orthogonal

CATALOG = [f"dihedral:{n}" for n in range(3, 11)] + [
    "hyperoctahedral:2", "hyperoctahedral:3", "hyperoctahedral:4",
    "simplex:2", "simplex:3", "simplex:4", "simplex-rot:3",
    "icosahedral:rot", "icosahedral:full",
]


def anisotropic(d, rng):
    s = np.linspace(1.0, 2.5, d)
    return random_orthogonal(d, rng) @ np.diag(s) @ random_orthogonal(d, rng).T


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-degree", type=int, default=12)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"seed: {args.seed}")
    header = f"{'group':<20}{'|G|':>6}  {'p*':>3}  {'tight@p*':>9}  {'dev@p*+1':>9}  molien"
    print(header)
    print("-" * len(header))
    for name in CATALOG:
        G = build_group(name)
        top = max_frame_order(G)
        T = anisotropic(G.dimension, rng)
        at = verify_tight_frame(G, T, top, seed=args.seed).verdict if top else "-"
        above = verify_tight_frame(G, T, top + 1, seed=args.seed).max_deviation if top < 16 else float("nan")
        coeffs = molien_series(G, args.max_degree).coefficients
        print(f"{name:<20}{G.order:>6}  {top:>3}  {at:>9}  {above:>9.2e}  {list(coeffs)}")


if __name__ == "__main__":
    main()
