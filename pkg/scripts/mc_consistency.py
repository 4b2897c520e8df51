"""Repeat the sampled protocol over many seeds and summarise estimator coverage.

    python3 scripts/mc_consistency.py [--reps 100] [--samples 100000] [--config ideal|PATH]
"""
import argparse

import numpy as np

from discordlab.imperfections import ImperfectionConfig, load_config
from discordlab.montecarlo import SampleConfig, mc_protocol_check


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--v", type=float, default=10.0)
    ap.add_argument("--vs", type=float, default=9.1)
    ap.add_argument("--reps", type=int, default=100)
    ap.add_argument("--samples", type=int, default=10**5)
    ap.add_argument("--config", default="ideal")
    args = ap.parse_args()

    optics = None if args.config == "ideal" else load_config(args.config)
    z, excess = [], []
    for seed in range(args.reps):
        r = mc_protocol_check(SampleConfig(args.v, args.vs, args.samples, seed, optics))
        z.append((r.estimate.value - r.analytic) / r.estimate.std_error)
        excess.append(r.significance)
    z = np.array(z)
    print(f"analytic rate {r.analytic:.5f} bits, incoherent limit {r.incoherent_limit:.5f} bits")
    print(f"{np.sum(np.abs(z) < 3)}/{args.reps} estimates within 3 standard errors "
          f"(mean z {z.mean():+.3f}, sd {z.std(ddof=1):.3f})")
    print(f"advantage over the incoherent limit: median {np.median(excess):.1f} standard errors")
    if optics is not None and optics != ImperfectionConfig.ideal():
        print("imperfect chain: analytic rate from the matrix-propagation model")


if __name__ == "__main__":
    main()
