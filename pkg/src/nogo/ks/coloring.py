"""Backtracking search for 101-colorings.

A coloring assigns blue (0) or red (1) to every ray such that each
orthogonal triad contains exactly one blue ray and no bare orthogonal
pair is doubly blue.  The search propagates forced colors after every
decision and branches on the most-constrained ray first (ties broken by
lowest index), trying blue before red, so verdicts are deterministic.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Mapping

from .rays import ColoringInstance

BLUE = 0
RED = 1


@dataclass(frozen=True)
class ColoringResult:
    """colors is None when no coloring exists; nodes counts decision
    attempts and is informational only."""

    colors: dict[int, int] | None
    nodes: int

    @property
    def colorable(self) -> bool:
        return self.colors is not None


def coloring_is_valid(inst: ColoringInstance, colors: Mapping[int, int]) -> bool:
    """Direct re-check of the one-blue-per-triad and pair rules."""
    if set(colors) != set(range(len(inst.rays))):
        return False
    if any(c not in (BLUE, RED) for c in colors.values()):
        return False
    for i, j, k in inst.triads:
        if sum(1 for m in (i, j, k) if colors[m] == BLUE) != 1:
            return False
    for i, j in inst.pairs:
        if colors[i] == BLUE and colors[j] == BLUE:
            return False
    return True


def search_coloring(
    inst: ColoringInstance, pinned: Mapping[int, int] | None = None
) -> ColoringResult:
    """Complete backtracking with constraint propagation.

    ``pinned`` optionally fixes colors of chosen ray indices before the
    search starts, which turns the search into a conditional
    feasibility test.
    """
    n = len(inst.rays)
    constraints: list[tuple[str, tuple[int, ...]]] = [
        ("T", t) for t in inst.triads
    ] + [("P", p) for p in inst.pairs]
    incident: list[list[int]] = [[] for _ in range(n)]
    for ci, (_, members) in enumerate(constraints):
        for m in members:
            incident[m].append(ci)

    color: list[int | None] = [None] * n
    order = sorted(range(n), key=lambda i: (-len(incident[i]), i))
    nodes = 0

    def assign(i: int, c: int, trail: list[int], queue: list[int]) -> bool:
        if color[i] is not None:
            return color[i] == c
        color[i] = c
        trail.append(i)
        queue.append(i)
        return True

    def propagate(queue: list[int], trail: list[int]) -> bool:
        while queue:
            i = queue.pop()
            for ci in incident[i]:
                kind, members = constraints[ci]
                blues = [m for m in members if color[m] == BLUE]
                unset = [m for m in members if color[m] is None]
                if kind == "P":
                    if len(blues) == 2:
                        return False
                    if len(blues) == 1 and unset:
                        if not assign(unset[0], RED, trail, queue):
                            return False
                else:
                    if len(blues) >= 2:
                        return False
                    if len(blues) == 1:
                        for m in unset:
                            if not assign(m, RED, trail, queue):
                                return False
                    else:
                        reds = len(members) - len(unset)
                        if not unset:
                            return False  # all three red
                        if reds == 2 and len(unset) == 1:
                            if not assign(unset[0], BLUE, trail, queue):
                                return False
        return True

    def undo(trail: list[int], mark: int) -> None:
        while len(trail) > mark:
            color[trail.pop()] = None

    def solve() -> bool:
        nonlocal nodes
        nxt = next((v for v in order if color[v] is None), None)
        if nxt is None:
            return True
        for c in (BLUE, RED):
            nodes += 1
            trail: list[int] = []
            queue: list[int] = []
            if assign(nxt, c, trail, queue) and propagate(queue, trail):
                if solve():
                    return True
            undo(trail, 0)
        return False

    trail: list[int] = []
    queue: list[int] = []
    feasible = True
    if pinned:
        for i, c in pinned.items():
            if c not in (BLUE, RED):
                raise ValueError(f"pinned color must be {BLUE} or {RED}, got {c}")
            if not assign(i, c, trail, queue):
                feasible = False
                break
    if feasible and propagate(queue, trail):
        limit = sys.getrecursionlimit()
        if n + 100 > limit:
            sys.setrecursionlimit(n + 200)
        if solve():
            result = {i: color[i] for i in range(n)}
            if not coloring_is_valid(inst, result):
                raise RuntimeError("search produced an invalid coloring")
            return ColoringResult(result, nodes)
    return ColoringResult(None, nodes)
