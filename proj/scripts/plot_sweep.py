#!/usr/bin/env python3
"""Plot per-mechanism means from an edge-assign sweep CSV."""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

METRICS = ["completed_pct", "avg_energy", "avg_utility", "offloaded_pct"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("--x", choices=["N", "M", "app"], default="N")
    ap.add_argument("--metric", choices=METRICS, default="completed_pct")
    ap.add_argument("--out", default="sweep.png")
    args = ap.parse_args()

    df = pd.read_csv(args.csv)
    means = df.groupby(["mechanism", args.x], sort=False)[args.metric].mean().unstack(0)
    ax = means.plot(marker="o")
    ax.set_xlabel(args.x)
    ax.set_ylabel(args.metric)
    ax.grid(alpha=0.3)
    plt.tight_layout()
    plt.savefig(args.out, dpi=150)


if __name__ == "__main__":
    main()
