"""Disk stack model: thickness matrices, rotations, and quality metrics.

A stack holds n_disks rotatable disks divided into n_segments angular
positions. Rotating disk k by shift s moves its elements s segments to the
left, indices wrapping around. Configuration quality is judged on the
per-segment sums of mean-centered element heights: their standard deviation
and their range (highest minus lowest).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidInputError
from .rng import stream_rng

DEFAULT_TARGET_THICKNESS = 2.0
DEFAULT_MAX_VARIATION = 0.1

ShiftVector = tuple[int, ...]


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=np.float64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class DiskStack:
    """Element thickness matrix (n_disks x n_segments) plus generation metadata."""

    heights: np.ndarray
    target_thickness: float = DEFAULT_TARGET_THICKNESS
    max_variation: float = DEFAULT_MAX_VARIATION
    seed: int | None = None

    def __post_init__(self) -> None:
        h = np.asarray(self.heights, dtype=np.float64)
        if h.ndim != 2 or h.shape[0] < 1 or h.shape[1] < 1:
            raise InvalidInputError("heights must be a non-empty 2-D matrix")
        if not np.all(np.isfinite(h)):
            raise InvalidInputError("heights must be finite")
        if self.max_variation < 0:
            raise InvalidInputError("max_variation must be >= 0")
        object.__setattr__(self, "heights", _freeze(h))

    @property
    def n_disks(self) -> int:
        return self.heights.shape[0]

    @property
    def n_segments(self) -> int:
        return self.heights.shape[1]


@dataclass(frozen=True, eq=False)
class DeviationMatrix:
    """Mean-centered element heights; the only input any solver needs."""

    devs: np.ndarray

    def __post_init__(self) -> None:
        d = np.asarray(self.devs, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] < 1 or d.shape[1] < 1:
            raise InvalidInputError("devs must be a non-empty 2-D matrix")
        if not np.all(np.isfinite(d)):
            raise InvalidInputError("devs must be finite")
        scale = float(np.abs(d).max())
        if abs(float(d.sum())) > 1e-9 * d.size * scale:
            raise InvalidInputError("devs must sum to zero (mean-centered heights)")
        object.__setattr__(self, "devs", _freeze(d))

    @property
    def n_disks(self) -> int:
        return self.devs.shape[0]

    @property
    def n_segments(self) -> int:
        return self.devs.shape[1]


@dataclass(frozen=True, eq=False)
class SegmentProfile:
    """Per-segment sum of shifted deviations; mean-zero by construction."""

    deviations: np.ndarray

    def __post_init__(self) -> None:
        d = np.asarray(self.deviations, dtype=np.float64)
        if d.ndim != 1 or d.shape[0] < 1:
            raise InvalidInputError("profile must be a non-empty vector")
        if not np.all(np.isfinite(d)):
            raise InvalidInputError("profile must be finite")
        object.__setattr__(self, "deviations", _freeze(d))

    @property
    def n_segments(self) -> int:
        return self.deviations.shape[0]


def deviations(stack: DiskStack) -> DeviationMatrix:
    """Center all heights on the global mean over every element in the stack."""
    devs = stack.heights - stack.heights.mean()
    # second centering pass removes the O(ulp * height) residual of the first
    # so the mean-zero contract holds relative to the deviation scale
    devs = devs - devs.mean()
    return DeviationMatrix(devs)


def _as_shift_vector(shifts, n_disks: int, n_segments: int) -> ShiftVector:
    try:
        out = tuple(int(s) for s in shifts)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"shifts must be a sequence of integers: {exc}") from None
    if len(out) != n_disks:
        raise InvalidInputError(f"expected {n_disks} shifts, got {len(out)}")
    for s, raw in zip(out, shifts):
        if not isinstance(raw, (int, np.integer)):
            raise InvalidInputError(f"shift {raw!r} is not an integer")
        if not 0 <= s < n_segments:
            raise InvalidInputError(f"shift {s} outside [0, {n_segments})")
    return out


def apply_shifts(devs: DeviationMatrix, shifts) -> SegmentProfile:
    """Rotate each disk by its shift number and sum the deviations per segment."""
    b = devs.devs
    s = _as_shift_vector(shifts, b.shape[0], b.shape[1])
    profile = np.zeros(b.shape[1])
    for k, shift in enumerate(s):
        profile += np.roll(b[k], -shift)
    return SegmentProfile(profile)


def _profile_values(profile) -> np.ndarray:
    if isinstance(profile, SegmentProfile):
        return profile.deviations
    arr = np.asarray(profile, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise InvalidInputError("profile must be a non-empty vector")
    return arr


def stddev(profile) -> float:
    """Root mean square of the profile (its mean is zero, so no recentering)."""
    d = _profile_values(profile)
    return float(np.sqrt(np.sum(d * d) / d.shape[0]))


def range_metric(profile) -> float:
    """Highest minus lowest segment deviation; always >= 0."""
    d = _profile_values(profile)
    return float(d.max() - d.min())


def ln_norm(profile, n) -> float:
    """Standard L_n norm of the profile; n = math.inf gives max absolute value."""
    d = _profile_values(profile)
    if n == math.inf:
        return float(np.abs(d).max())
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise InvalidInputError("norm order must be a positive integer or math.inf")
    if n == 1:
        return float(np.abs(d).sum())
    if n == 2:
        return float(np.sqrt(np.sum(d * d)))
    return float(np.sum(np.abs(d) ** n) ** (1.0 / n))


def shift_metrics(devs: DeviationMatrix, shifts) -> tuple[float, float]:
    """Convenience: (stddev, range) of the profile produced by the shifts."""
    profile = apply_shifts(devs, shifts)
    return stddev(profile), range_metric(profile)


def canonicalize_shifts(shifts, n_segments: int) -> ShiftVector:
    """Rotate all disks so the first one sits at shift 0.

    Global rotations change neither metric, so every shift vector has an
    equivalent canonical form. Solvers report the canonical form, ties broken
    lexicographically, so all of them agree on a unique reportable optimum.
    """
    if n_segments < 1:
        raise InvalidInputError("n_segments must be >= 1")
    out = tuple(int(s) for s in shifts)
    for s in out:
        if not 0 <= s < n_segments:
            raise InvalidInputError(f"shift {s} outside [0, {n_segments})")
    base = out[0]
    return tuple((s - base) % n_segments for s in out)


def generate_instance(
    n_disks: int,
    n_segments: int,
    target_thickness: float = DEFAULT_TARGET_THICKNESS,
    max_variation: float = DEFAULT_MAX_VARIATION,
    seed: int | None = None,
) -> DiskStack:
    """Draw every element height i.i.d. uniform on the target thickness band.

    The band is [target - max_variation/2, target + max_variation/2]. The same
    seed reproduces the identical matrix bit for bit; heights come from the
    dedicated "instance" stream so they never overlap annealer randomness.
    """
    if n_disks < 1 or n_segments < 1:
        raise InvalidInputError("need n_disks >= 1 and n_segments >= 1")
    if max_variation < 0:
        raise InvalidInputError("max_variation must be >= 0")
    rng = stream_rng("instance", seed)
    low = target_thickness - max_variation / 2.0
    high = target_thickness + max_variation / 2.0
    heights = rng.uniform(low, high, size=(n_disks, n_segments))
    return DiskStack(heights, target_thickness, max_variation, seed)


def format_instance(stack: DiskStack) -> str:
    """Serialize a stack to the line-oriented instance format.

    Line 1: "ND NS". Line 2: "A0 DELTA SEED" with "-" for a missing seed.
    Then one line of 17-significant-digit heights per disk (full round trip).
    """
    lines = [f"{stack.n_disks} {stack.n_segments}"]
    seed_txt = "-" if stack.seed is None else str(int(stack.seed))
    lines.append(f"{stack.target_thickness:.17g} {stack.max_variation:.17g} {seed_txt}")
    for row in stack.heights:
        lines.append(" ".join(f"{h:.17g}" for h in row))
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> DiskStack:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise InvalidInputError("instance file needs a dimension line and a metadata line")
    try:
        n_disks, n_segments = (int(tok) for tok in lines[0].split())
    except ValueError:
        raise InvalidInputError(f"bad dimension line: {lines[0]!r}") from None
    meta = lines[1].split()
    if len(meta) != 3:
        raise InvalidInputError(f"bad metadata line: {lines[1]!r}")
    try:
        target = float(meta[0])
        variation = float(meta[1])
        seed = None if meta[2] == "-" else int(meta[2])
    except ValueError:
        raise InvalidInputError(f"bad metadata line: {lines[1]!r}") from None
    rows = lines[2:]
    if len(rows) != n_disks:
        raise InvalidInputError(f"expected {n_disks} height rows, got {len(rows)}")
    heights = np.empty((n_disks, n_segments))
    for k, row in enumerate(rows):
        vals = row.split()
        if len(vals) != n_segments:
            raise InvalidInputError(f"row {k} has {len(vals)} heights, expected {n_segments}")
        try:
            heights[k] = [float(v) for v in vals]
        except ValueError:
            raise InvalidInputError(f"row {k} holds a non-numeric height") from None
    return DiskStack(heights, target, variation, seed)


def write_instance(stack: DiskStack, path) -> None:
    Path(path).write_text(format_instance(stack))


def read_instance(path) -> DiskStack:
    return parse_instance(Path(path).read_text())
