"""Common result record shared by every solver."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class SolveResult:
    """What a solver found, how good it is, and what finding it cost.

    shifts is the canonical shift vector (first entry 0), or None for the
    explicit no-feasible-sample outcome of a random solver, in which case
    energy still carries the best raw value seen. optimal is True only when
    the result is proven optimal for the range metric (exact solvers that
    ran to completion). wall_time covers the core search only.
    """

    solver_id: str
    shifts: tuple[int, ...] | None
    sigma: float | None
    range: float | None
    energy: float | None = None
    wall_time: float = 0.0
    samples_total: int = 1
    samples_feasible: int = 1
    nodes_explored: int | None = None
    seed: int | None = None
    optimal: bool = False
    params: dict = field(default_factory=dict)

    @property
    def found_feasible(self) -> bool:
        return self.shifts is not None
