"""Random and exhaustive closure-space generators for the theorem suites."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from spcls.bits import canonical_key, full_mask
from spcls.core import ClosureSpace

POINT_NAMES = "pqrstuvwxyzabcde"


def point_names(n: int) -> tuple[str, ...]:
    if n <= len(POINT_NAMES):
        return tuple(POINT_NAMES[:n])
    return tuple(f"x{i}" for i in range(n))


def intersection_closure(family: set[int]) -> set[int]:
    closed = set(family)
    frontier = list(closed)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(closed):
                c = a & b
                if c not in closed:
                    closed.add(c)
                    fresh.append(c)
        frontier = fresh
    return closed


def _space(n: int, family: set[int]) -> ClosureSpace:
    return ClosureSpace(point_names(n), tuple(sorted(family, key=canonical_key)))


def random_closure_space(
    rng: random.Random, max_points: int = 8, max_closed: int = 40
) -> ClosureSpace:
    """Close a few random subsets under intersection and add the empty set and
    the whole space. Draws again until the family fits in ``max_closed``."""
    while True:
        n = rng.randint(0, max_points)
        full = full_mask(n)
        generators = {rng.randint(0, full) for _ in range(rng.randint(0, 2 * n + 1))}
        family = intersection_closure(generators | {full}) | {0}
        if len(family) <= max_closed:
            return _space(n, family)


def all_closure_spaces(n: int) -> Iterator[ClosureSpace]:
    """Every intersection-closed family on ``n`` points containing the empty
    set and the whole space."""
    full = full_mask(n)
    middle = [m for m in range(1, full)]
    for k in range(len(middle) + 1):
        for chosen in itertools.combinations(middle, k):
            family = set(chosen) | {0, full}
            if all((a & b) in family for a in chosen for b in chosen):
                yield _space(n, family)


def all_point_maps(n_source: int, n_target: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(n_target), repeat=n_source)
