#!/usr/bin/env python3
"""Sweep target loads and report the achieved loads across seeds.

Useful when tuning the admission loop: achieved loads should sit tightly
below the target (never above) at every setting.
"""

from __future__ import annotations

import argparse

import numpy as np

from pragen.feasibility import WardConfig
from pragen.generator import GeneratorConfig, generate
from pragen.model import Horizon


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--days", type=int, default=56)
    parser.add_argument("--rooms", default="2,2,2,2,2,2,2,2")
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument(
        "--targets", default="0.5,0.7,0.85,0.95", help="comma-separated load targets"
    )
    parser.add_argument("--no-guarantee", action="store_true")
    args = parser.parse_args()

    ward = WardConfig(tuple(int(c) for c in args.rooms.split(",")))
    print(f"ward={ward.capacities} days={args.days} seeds={args.seeds}")
    print("target  min      mean     max      shortfall(mean)")
    for target in (float(t) for t in args.targets.split(",")):
        achieved = []
        for seed in range(args.seeds):
            config = GeneratorConfig(
                ward=ward,
                horizon=Horizon(args.days),
                target_load=target,
                ensure_feasibility=not args.no_guarantee,
                seed=seed,
            )
            achieved.append(generate(config)[0].meta["achieved_load"])
        arr = np.asarray(achieved)
        print(
            f"{target:5.2f}  {arr.min():.4f}  {arr.mean():.4f}  {arr.max():.4f}  "
            f"{target - arr.mean():+.4f}"
        )
        if arr.max() > target + 1e-9:
            print("  WARNING: achieved load exceeded the target")


if __name__ == "__main__":
    main()
