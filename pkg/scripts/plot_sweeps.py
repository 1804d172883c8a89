#!/usr/bin/env python3
"""Render sweep CSVs as log-scale outage plots (secondary tooling).

Usage:
    python scripts/plot_sweeps.py out_we1.csv out_we3.csv --out figure.png

Each CSV is one curve family (scheme x method); files are overlaid so the
two misalignment regimes can share a figure, mirroring the usual
rate-sweep / SNR-sweep presentation.
"""

import argparse
import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

STYLES = {
    "exact": dict(linestyle="-", marker=""),
    "asymptotic": dict(linestyle="--", marker=""),
    "mc": dict(linestyle="", marker="o", markerfacecolor="none"),
    "convolution": dict(linestyle=":", marker=""),
}


def load(path):
    rows = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(r for r in fh if not r.startswith("#")):
            if row["p_out"] in ("", "error"):
                continue
            rows.append(
                (
                    float(row["variable_value"]),
                    row["scheme"],
                    row["method"],
                    float(row["p_out"]),
                )
            )
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csvs", nargs="+", help="sweep CSV files")
    ap.add_argument("--out", default="sweep.png", help="output image path")
    ap.add_argument("--xlabel", default=None)
    args = ap.parse_args()

    fig, ax = plt.subplots(figsize=(7, 5))
    for path in args.csvs:
        rows = load(path)
        series = {}
        for x, scheme, method, p in rows:
            series.setdefault((scheme, method), []).append((x, p))
        for (scheme, method), pts in sorted(series.items()):
            pts.sort()
            xs = [p[0] for p in pts]
            ys = [max(p[1], 1e-300) for p in pts]
            ax.semilogy(
                xs, ys, label=f"{scheme} {method} [{path}]", **STYLES.get(method, {})
            )
    ax.set_xlabel(args.xlabel or "swept variable")
    ax.set_ylabel("outage probability")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
