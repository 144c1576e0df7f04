"""Approximate solver: optimize disk subsets exactly, then rotate subsets.

The disks are split into K contiguous subsets, K chosen as the smallest
value >= 3 keeping floor(n_disks / K) at 8 disks or fewer; the first K - 1
subsets get floor(n_disks / K) disks and the last one the remainder. Each
subset's internal shifts are solved exactly, the optimized subset collapses
to one rigid super-profile (its segment-wise sum), and the K super-profiles
are rotated against each other with the same exact solver. Only a fraction
of the full space is searched, so optimality is not guaranteed.
"""

from __future__ import annotations

import time

import numpy as np

from ..stack import DeviationMatrix, apply_shifts, canonicalize_shifts, range_metric, stddev
from .exact import _bnb_core
from .result import SolveResult

MAX_SUBSET_DISKS = 8
MIN_SUBSETS = 3


def split_disk_blocks(n_disks: int) -> list[list[int]]:
    k = MIN_SUBSETS
    while n_disks // k > MAX_SUBSET_DISKS:
        k += 1
    size = n_disks // k
    blocks = [list(range(g * size, (g + 1) * size)) for g in range(k - 1)]
    blocks.append(list(range((k - 1) * size, n_disks)))
    return blocks


def block_approximate(devs: DeviationMatrix, budget_seconds: float | None = None) -> SolveResult:
    """Block-decomposition search; delegates to the exact solver below 4 disks."""
    b = devs.devs
    ns = devs.n_segments
    t0 = time.perf_counter()
    deadline = None if budget_seconds is None else t0 + float(budget_seconds)

    if devs.n_disks < 4:
        shifts, _, leaves, completed = _bnb_core(b, deadline)
        delegated = True
    else:
        delegated = False
        completed = True
        leaves = 0
        blocks = split_disk_blocks(devs.n_disks)
        internal: list[tuple[int, ...]] = []
        super_rows = np.empty((len(blocks), ns))
        for g, block in enumerate(blocks):
            sub_shifts, _, sub_leaves, sub_done = _bnb_core(b[block], deadline)
            internal.append(sub_shifts)
            leaves += sub_leaves
            completed = completed and sub_done
            profile = np.zeros(ns)
            for k, s in zip(block, sub_shifts):
                profile += np.roll(b[k], -s)
            super_rows[g] = profile
        rot, _, rot_leaves, rot_done = _bnb_core(super_rows, deadline)
        leaves += rot_leaves
        completed = completed and rot_done
        out = [0] * devs.n_disks
        for g, block in enumerate(blocks):
            for k, s in zip(block, internal[g]):
                out[k] = (s + rot[g]) % ns
        shifts = tuple(out)

    wall = time.perf_counter() - t0
    canon = canonicalize_shifts(shifts, ns)
    profile = apply_shifts(devs, canon)
    return SolveResult(
        solver_id="approx",
        shifts=canon,
        sigma=stddev(profile),
        range=range_metric(profile),
        wall_time=wall,
        nodes_explored=leaves,
        optimal=delegated and completed,
        params={"delegated": delegated, "budget_seconds": budget_seconds},
    )
