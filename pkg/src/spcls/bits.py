"""Subsets of a small indexed universe, stored as Python ints."""

from typing import Iterable, Iterator, Sequence


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def full_mask(n: int) -> int:
    return (1 << n) - 1


def members(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def canonical_key(mask: int) -> tuple[int, int]:
    """Sort key for subsets: cardinality first, then the bit pattern."""
    return (popcount(mask), mask)


def submasks_containing(universe: int, bit: int) -> Iterator[int]:
    """All subsets of ``universe`` that contain ``bit``."""
    rest = universe & ~(1 << bit)
    sub = rest
    while True:
        yield sub | (1 << bit)
        if sub == 0:
            return
        sub = (sub - 1) & rest


def format_subset(names: Sequence[str], mask: int) -> str:
    return "{" + ",".join(names[i] for i in members(mask)) + "}"
