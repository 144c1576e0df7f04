#!/usr/bin/env python3
"""Measure how annealing wall time scales with sweeps and with problem size.

Sweeps enter linearly (each sweep is one Metropolis pass); problem size
enters quadratically per chain because every one of the n proposals in a
sweep recomputes an O(n) energy delta. The size exponent is measured with a
large chain batch so the per-proposal arithmetic dominates fixed dispatch
overhead.
"""

import argparse
import sys

import numpy as np

from clutchopt import annealing_penalty, build_qubo, deviations, generate_instance
from clutchopt.solvers import default_schedule, simulated_anneal


def wall_time(nd, ns, sweeps, samples, repeats, seed=11):
    devs = deviations(generate_instance(nd, ns, seed=seed))
    model = build_qubo(devs, annealing_penalty(devs), gauge_fixed=True)
    times = [
        simulated_anneal(
            model, default_schedule(model, sweeps), samples=samples, seed=seed + rep
        ).wall_time
        for rep in range(repeats)
    ]
    return float(np.median(times))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=1024, help="chains for the size scan")
    parser.add_argument("--repeats", type=int, default=2)
    args = parser.parse_args()

    print("sweep scan at 42 variables, 35 chains:")
    sweep_grid = np.array([500, 1500, 4500])
    sweep_times = np.array([wall_time(2, 42, s, 35, args.repeats) for s in sweep_grid])
    for s, t in zip(sweep_grid, sweep_times):
        print(f"  sweeps {s:>5d}  {t:.3f}s")
    slope, intercept = np.polyfit(sweep_grid, sweep_times, 1)
    predicted = slope * sweep_grid + intercept
    r_squared = 1 - ((sweep_times - predicted) ** 2).sum() / ((sweep_times - sweep_times.mean()) ** 2).sum()
    print(f"  linear fit R^2 = {r_squared:.4f}")

    print(f"\nsize scan at 120 sweeps, {args.samples} chains:")
    grid = [(2, 42), (3, 42), (5, 42), (7, 42)]
    n_vars = np.array([(nd - 1) * ns for nd, ns in grid])
    times = np.array([wall_time(nd, ns, 120, args.samples, args.repeats) for nd, ns in grid])
    for n, t in zip(n_vars, times):
        print(f"  n_vars {n:>4d}  {t:.3f}s")
    exponent = np.polyfit(np.log(n_vars), np.log(times), 1)[0]
    print(f"  log-log slope = {exponent:.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
