#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Generates data/notable_models_fixture.csv.

Named records carry published compute estimates. The remaining records are
synthetic: each group is a set of log-spaced sizes scaled to a target mass
inside a size band, so yearly totals, largest models and threshold counts
land where the fixture needs them. Run with --check to print the derived
aggregates instead of writing the file.
"""
import argparse
import csv
import math
import pathlib
import sys

# (count, lower bound exclusive, upper bound inclusive, total mass or None, max spread in OOM)
# With mass None the sizes are log-spaced from upper down to lower.
YEARS = {
    2017: {
        "named": [("Transformer (big)", 2.3e19), ("ResNeXt-101 32x48d", 8.0e20)],
        "excluded": [("AlphaGo Zero", 3.41e23), ("AlphaGo Master", 2.0e23)],
        "groups": [
            (6, 8e19, 8e20, 1.6e21, 0.3),
            (8, 8e18, 8e19, 2.2e20, 0.3),
            (14, 1e16, 8e18, None, 0.0),
        ],
    },
    2018: {
        "named": [("ResNet-101 (ImageNet-21k)", 3.0e21), ("BERT-Large", 2.9e20)],
        "excluded": [],
        "groups": [
            (8, 3e19, 2.8e20, 5.0e20, 0.4),
            (6, 3e18, 3e19, 6.0e19, 0.3),
            (19, 1e15, 1e18, None, 0.0),
        ],
    },
    2019: {
        "named": [("T5-11B", 4.05e22), ("Megatron-LM (8.3B)", 9.1e21), ("GPT-2 (1.5B)", 1.5e21)],
        "excluded": [],
        "groups": [
            (6, 4.05e21, 4.0e22, 5.0e22, 0.4),
            (10, 4.05e20, 4.05e21, 1.0e22, 0.3),
            (21, 1e17, 4.05e20, None, 0.0),
        ],
    },
    2020: {
        "named": [("GPT-3 175B (davinci)", 3.14e23), ("Meena", 1.12e23)],
        "excluded": [],
        "groups": [
            (1, 9.93e22, 1.0e23, 9.96e22, 0.0),
            (4, 3.14e22, 9.93e22, 1.26e23, 0.15),
            (4, 9.93e21, 3.14e22, 4.0e22, 0.1),
            (29, 1e17, 1.0e21, None, 0.0),
        ],
    },
    2021: {
        "named": [("Gopher (280B)", 6.31e23)],
        "excluded": [],
        "groups": [
            (3, 1.995e23, 6.3e23, 7.5e23, 0.15),
            (3, 1.0e23, 1.995e23, 3.6e23, 0.05),
            (12, 6.31e22, 1.0e23, 8.6e23, 0.1),
            (8, 1.995e22, 6.31e22, 2.8e23, 0.2),
            (18, 1e18, 1.0e22, None, 0.0),
        ],
    },
    2022: {
        "named": [("Minerva (540B)", 2.74e24), ("PaLM (540B)", 2.53e24)],
        "excluded": [],
        "groups": [
            (3, 1.0e24, 2.5e24, 5.4e24, 0.1),
            (11, 2.74e23, 8.66e23, 6.05e24, 0.2),
            (4, 1.0e23, 2.74e23, 7.2e23, 0.1),
            (2, 8.66e22, 1.0e23, 1.84e23, 0.02),
            (28, 1e19, 7.0e22, None, 0.0),
        ],
    },
    2023: {
        "named": [("Gemini 1.0 Ultra", 5.0e25), ("GPT-4", 2.1e25)],
        "excluded": [],
        "groups": [
            (2, 1.58e25, 2.0e25, 3.2e25, 0.0),
            (3, 5.0e24, 1.0e25, 1.9e25, 0.05),
            (7, 1.58e24, 5.0e24, 1.16e25, 0.1),
            (11, 1.0e23, 5.0e23, 1.36e24, 0.15),
            (10, 5.0e21, 5.0e22, 1.43e23, 0.3),
            (21, 1e18, 5.0e21, None, 0.0),
        ],
    },
}


def group_sizes(count, lower, upper, mass, spread):
    if mass is None:
        hi, lo = math.log10(upper), math.log10(lower) + 0.5
        return [10 ** (hi - (hi - lo) * j / max(count - 1, 1)) for j in range(count)]
    # Narrow the spread until every size fits in the band.
    while True:
        offsets = [spread * (2 * j / max(count - 1, 1) - 1) for j in range(count)] if count > 1 else [0.0]
        base = mass / sum(10**o for o in offsets)
        sizes = [base * 10**o for o in offsets]
        if all(lower < s <= upper for s in sizes):
            return sizes
        if spread < 1e-3:
            raise SystemExit(f"mass {mass:.3e} over {count} models does not fit ({lower:.3e}, {upper:.3e}]")
        spread *= 0.8


def round_sig(x, sig=4):
    return float(f"{x:.{sig - 1}e}")


def build():
    rows = []
    for year, spec in YEARS.items():
        sizes = [(name, c) for name, c in spec["named"]]
        serial = 0
        for group in spec["groups"]:
            try:
                gs = group_sizes(*group)
            except SystemExit as e:
                raise SystemExit(f"{year} group {group}: {e}")
            for s in gs:
                serial += 1
                sizes.append((f"synthetic-{year}-{serial:03d}", round_sig(s)))
        sizes.sort(key=lambda r: -r[1])
        for i, (name, c) in enumerate(sizes):
            month = 1 + (i * 5) % 12
            day = 1 + (i * 7) % 28
            rows.append((name, f"{year}-{month:02d}-{day:02d}", c, 0))
        for i, (name, c) in enumerate(spec["excluded"]):
            rows.append((name, f"{year}-{10 + i:02d}-18", c, 1))
    rows.sort(key=lambda r: (r[1], r[0]))
    return rows


def fit_k(sizes):
    sizes = sorted(sizes)
    total = sum(sizes)
    m = sizes[-1]
    run = 0.0
    sxy = sxx = 0.0
    for s in sizes[:-1]:
        run += s
        x = math.log10(s / m)
        y = math.log10(run / total)
        if x == 0.0:
            continue
        sxy += x * y
        sxx += x * x
    return sxy / sxx


def check(rows):
    kept = [r for r in rows if r[3] == 0]
    by_year = {}
    for r in kept:
        by_year.setdefault(int(r[1][:4]), []).append(r[2])
    print(f"included records 2017-2023: {sum(len(v) for v in by_year.values())}")
    for y in sorted(by_year):
        v = by_year[y]
        t = sum(v)
        print(f"{y}: n={len(v)} total={t:.3e} max={max(v):.3e} lms={max(v) / t:.3f} k={fit_k(v):.3f}")
    frontier = 0.0
    for y in range(2017, 2020):
        frontier = max(frontier, max(by_year[y]))
    cum = {1e23: 0, 1e24: 0, 1e25: 0}
    for y in range(2020, 2024):
        v = by_year[y]
        for t in cum:
            cum[t] += sum(1 for s in v if s > t)
        frontier = max(frontier, max(v))
        fr = [sum(1 for s in v if s >= frontier * 10**-d) for d in (0.5, 1.0, 1.5)]
        print(f"{y}: cumulative >1e23,1e24,1e25 = {list(cum.values())}  frontier 0.5/1/1.5 = {fr}")
    small = sum(s for s in by_year[2021] if s <= 1e22) / sum(by_year[2021])
    print(f"2021 A(1e22) = {small:.4f}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "notable_models_fixture.csv"))
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args()
    rows = build()
    if args.check:
        check(rows)
        return
    with open(args.out, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["name", "release_date", "training_compute_flop", "excluded"])
        for name, date, c, ex in rows:
            w.writerow([name, date, f"{c:.4g}".replace("e+", "e"), ex])
    print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
