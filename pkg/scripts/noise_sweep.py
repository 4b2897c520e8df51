"""Sweep the discording noise V at fixed signal variance and tabulate all rates.

    python3 scripts/noise_sweep.py [--vs 9.1] [--v-max 30] [--steps 61] [--config configs/experiment_default.json]
"""
import argparse
from pathlib import Path

import numpy as np

from discordlab.cli import emit_csv, protocol_row
from discordlab.imperfections import load_config


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--vs", type=float, default=9.1)
    ap.add_argument("--v-max", type=float, default=30.0)
    ap.add_argument("--steps", type=int, default=61)
    ap.add_argument("--config", default="configs/experiment_default.json")
    ap.add_argument("--out", type=Path, default=Path("results/noise_sweep.csv"))
    args = ap.parse_args()

    cfg = load_config(args.config)
    rows = [protocol_row(v, args.vs, cfg) for v in np.linspace(0.0, args.v_max, args.steps)]
    args.out.parent.mkdir(parents=True, exist_ok=True)
    emit_csv(rows, args.out)

    print(f"{'V':>6} {'d_delta':>9} {'I_c':>8} {'I_q':>8} {'I_q_prot':>9} {'I_q_model':>9} {'dI':>8}")
    for r in rows[:: max(1, len(rows) // 12)]:
        print(f"{r['v']:6.2f} {r['discord_consumed']:9.4f} {r['i_c']:8.4f} {r['i_q']:8.4f} "
              f"{r['i_q_prot']:9.4f} {r['i_q_model']:9.4f} {r['delta_i']:8.4f}")
    best = max(rows, key=lambda r: r["delta_i"])
    print(f"largest advantage dI = {best['delta_i']:.4f} bits at V = {best['v']:.2f}; wrote {args.out}")


if __name__ == "__main__":
    main()
