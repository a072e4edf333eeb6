"""Finite lattices, state property systems and closure spaces.

Every structure here is an immutable value that has passed its validator.
Subsets of states, points or properties are plain ``int`` bitmasks indexed by
position in the owning universe (see :mod:`spcls.bits`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

from spcls import errors
from spcls.bits import (
    canonical_key,
    format_subset,
    full_mask,
    is_subset,
    members,
)

#: Default soft caps for exhaustive algorithms.
MAX_STATES = 16
MAX_PROPERTIES = 64

PropertyRef = Union[int, str]
Subset = Union[int, Iterable[str], Iterable[int]]


def _check_unique(names: Sequence[str], what: str) -> dict[str, int]:
    index: dict[str, int] = {}
    for i, name in enumerate(names):
        if name in index:
            raise ValueError(f"duplicate {what} name {name!r}")
        index[name] = i
    return index


@dataclass(frozen=True)
class FiniteLattice:
    """A finite lattice stored as its order plus meet and join tables.

    ``down[x]`` is the bitmask of all ``y <= x``; ``up[x]`` of all ``y >= x``.
    """

    names: tuple[str, ...]
    down: tuple[int, ...]
    up: tuple[int, ...]
    bottom: int
    top: int
    meet_table: tuple[tuple[int, ...], ...]
    join_table: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.names)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def index(self, ref: PropertyRef) -> int:
        if isinstance(ref, str):
            try:
                return self._index[ref]
            except KeyError:
                raise KeyError(f"unknown lattice element {ref!r}") from None
        if not 0 <= ref < len(self.names):
            raise IndexError(f"lattice element index {ref} out of range")
        return ref

    @property
    def all(self) -> int:
        return full_mask(len(self.names))

    def leq(self, x: int, y: int) -> bool:
        return bool(self.down[y] >> x & 1)

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def meet_all(self, elements: Iterable[int]) -> int:
        """Meet of a family; the empty meet is the top."""
        acc = self.top
        for x in elements:
            acc = self.meet_table[acc][x]
        return acc

    def join_all(self, elements: Iterable[int]) -> int:
        """Join of a family; the empty join is the bottom."""
        acc = self.bottom
        for x in elements:
            acc = self.join_table[acc][x]
        return acc

    def is_atom(self, x: int) -> bool:
        return x != self.bottom and self.down[x] == (1 << x) | (1 << self.bottom)

    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges ``(lower, upper)`` sorted by index."""
        edges = []
        for y in range(len(self.names)):
            strictly_below = self.down[y] & ~(1 << y)
            for x in members(strictly_below):
                between = self.up[x] & strictly_below & ~(1 << x)
                if not between:
                    edges.append((x, y))
        edges.sort()
        return edges

    def order_pairs(self) -> list[tuple[str, str]]:
        return [(self.names[x], self.names[y]) for x, y in self.covers()]

    def restrict(self, mask: int) -> FiniteLattice:
        """The subposet on ``mask`` with the inherited order, as a lattice.

        Meets and joins are recomputed inside the subset, so they can differ
        from the parent's when the subset is not a sublattice.
        """
        keep = list(members(mask))
        names = [self.names[i] for i in keep]
        pairs = [
            (self.names[x], self.names[y])
            for x in keep
            for y in keep
            if x != y and self.leq(x, y)
        ]
        return validate_lattice(pairs, names)


def validate_lattice(
    order_pairs: Iterable[tuple[str, str]], universe: Sequence[str]
) -> FiniteLattice:
    """Build a lattice from any generating relation ``x <= y`` on ``universe``.

    The reflexive-transitive closure is taken first, so Hasse edges and full
    order relations are interchangeable.
    """
    names = tuple(universe)
    index = _check_unique(names, "lattice element")
    n = len(names)
    down = [1 << i for i in range(n)]
    for x, y in order_pairs:
        try:
            down[index[y]] |= 1 << index[x]
        except KeyError as exc:
            raise ValueError(f"order refers to undeclared element {exc.args[0]!r}") from None
    # Warshall on bit rows
    for k in range(n):
        bit = 1 << k
        row = down[k]
        for i in range(n):
            if down[i] & bit:
                down[i] |= row
    up = [0] * n
    for y in range(n):
        for x in members(down[y]):
            up[x] |= 1 << y
    for x in range(n):
        twins = down[x] & up[x] & ~(1 << x)
        if twins:
            y = next(members(twins))
            raise errors.CycleDetected(names[min(x, y)], names[max(x, y)])

    everything = full_mask(n)
    bottom = next((i for i in range(n) if up[i] == everything), None)
    if bottom is None:
        raise errors.NoBottom()
    top = next((i for i in range(n) if down[i] == everything), None)
    if top is None:
        raise errors.NoTop()

    def greatest(bounds: int) -> int | None:
        for g in members(bounds):
            if is_subset(bounds, down[g]):
                return g
        return None

    def least(bounds: int) -> int | None:
        for g in members(bounds):
            if is_subset(bounds, up[g]):
                return g
        return None

    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            m = greatest(down[x] & down[y])
            if m is None:
                raise errors.NoMeet(names[x], names[y])
            j = least(up[x] & up[y])
            if j is None:
                raise errors.NoJoin(names[x], names[y])
            meet[x][y] = meet[y][x] = m
            join[x][y] = join[y][x] = j

    return FiniteLattice(
        names=names,
        down=tuple(down),
        up=tuple(up),
        bottom=bottom,
        top=top,
        meet_table=tuple(map(tuple, meet)),
        join_table=tuple(map(tuple, join)),
    )


@dataclass(frozen=True)
class StatePropertySystem:
    """States, a property lattice, and the set of actual properties per state.

    ``xi[p]`` is a bitmask over lattice indices.
    """

    states: tuple[str, ...]
    lattice: FiniteLattice
    xi: tuple[int, ...]

    @cached_property
    def kappa(self) -> tuple[int, ...]:
        """Cartan images of all properties, as state bitmasks."""
        out = [0] * len(self.lattice)
        for p, actual in enumerate(self.xi):
            for a in members(actual):
                out[a] |= 1 << p
        return tuple(out)

    @cached_property
    def _state_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.states)}

    def state_index(self, ref: int | str) -> int:
        if isinstance(ref, str):
            return self._state_index[ref]
        if not 0 <= ref < len(self.states):
            raise IndexError(f"state index {ref} out of range")
        return ref

    def prop(self, ref: PropertyRef) -> int:
        return self.lattice.index(ref)

    def property_names(self, mask: int) -> list[str]:
        return [self.lattice.names[a] for a in members(mask)]

    def state_set(self, mask: int) -> str:
        return format_subset(self.states, mask)


def _as_mask(value: Subset, index: Mapping[str, int], what: str) -> int:
    if isinstance(value, int):
        return value
    m = 0
    for item in value:
        if isinstance(item, str):
            try:
                m |= 1 << index[item]
            except KeyError:
                raise ValueError(f"undeclared {what} {item!r}") from None
        else:
            m |= 1 << item
    return m


def validate_sps(
    states: Sequence[str],
    lattice: FiniteLattice,
    xi: Mapping[str, Iterable[str]] | Sequence[Subset],
) -> StatePropertySystem:
    """Check the three axioms and return the system.

    ``xi`` is either a mapping from state name to actual property names, or a
    sequence (one entry per state) of property bitmasks or name/index lists.
    """
    states = tuple(states)
    state_index = _check_unique(states, "state")
    if isinstance(xi, Mapping):
        missing = [s for s in states if s not in xi]
        if missing:
            raise ValueError(f"xi is not defined on state {missing[0]!r}")
        extra = [s for s in xi if s not in state_index]
        if extra:
            raise ValueError(f"xi given for undeclared state {extra[0]!r}")
        rows = [xi[s] for s in states]
    else:
        rows = list(xi)
        if len(rows) != len(states):
            raise ValueError("xi must have one entry per state")
    prop_index = {name: i for i, name in enumerate(lattice.names)}
    masks = tuple(_as_mask(r, prop_index, "property") for r in rows)
    for m in masks:
        if m & ~lattice.all:
            raise ValueError("xi refers to a property index outside the lattice")
    sps = StatePropertySystem(states, lattice, masks)
    check_axioms(sps)
    return sps


def check_axioms(sps: StatePropertySystem) -> None:
    """Raise the first axiom violation found, in axiom order."""
    lat = sps.lattice
    names = lat.names
    for p, actual in enumerate(sps.xi):
        if actual >> lat.bottom & 1:
            raise errors.Axiom1Violation(sps.states[p], names[lat.bottom])
    for p, actual in enumerate(sps.xi):
        if not actual >> lat.top & 1:
            raise errors.Axiom2Violation(sps.states[p], (), names[lat.top])
        elems = list(members(actual))
        for i, a in enumerate(elems):
            for b in elems[i + 1:]:
                m = lat.meet(a, b)
                if not actual >> m & 1:
                    raise errors.Axiom2Violation(
                        sps.states[p], (names[a], names[b]), names[m]
                    )
    kappa = sps.kappa
    n = len(lat)
    for a in range(n):
        for b in range(n):
            order = lat.leq(a, b)
            inclusion = is_subset(kappa[a], kappa[b])
            if order and not inclusion:
                raise errors.Axiom3Violation(
                    names[a], names[b],
                    f"{names[a]} <= {names[b]} but kappa({names[a]}) is not contained "
                    f"in kappa({names[b]})",
                )
            if inclusion and not order:
                raise errors.Axiom3Violation(
                    names[a], names[b],
                    f"kappa({names[a]}) is contained in kappa({names[b]}) but "
                    f"{names[a]} <= {names[b]} does not hold",
                )


@dataclass(frozen=True)
class ClosureSpace:
    """A set of points with an intersection-closed family of closed subsets.

    ``closed`` is deduplicated and sorted by (cardinality, bit pattern).
    """

    points: tuple[str, ...]
    closed: tuple[int, ...]

    @property
    def full(self) -> int:
        return full_mask(len(self.points))

    @cached_property
    def _closed_index(self) -> dict[int, int]:
        return {c: i for i, c in enumerate(self.closed)}

    def is_closed(self, subset: int) -> bool:
        return subset in self._closed_index

    def closed_index(self, subset: int) -> int:
        return self._closed_index[subset]

    @cached_property
    def _point_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.points)}

    def subset(self, value: Subset) -> int:
        return _as_mask(value, self._point_index, "point")

    def format(self, subset: int) -> str:
        return format_subset(self.points, subset)


def validate_closure_space(points: Sequence[str], family: Iterable[Subset]) -> ClosureSpace:
    """Check that ``family`` contains the empty set and the whole space and is
    closed under pairwise intersection; return it in canonical order."""
    points = tuple(points)
    index = _check_unique(points, "point")
    full = full_mask(len(points))
    fam = set()
    for member in family:
        m = _as_mask(member, index, "point")
        if m & ~full:
            raise ValueError("closed set refers to a point outside the space")
        fam.add(m)
    if 0 not in fam:
        raise errors.MissingEmpty()
    if full not in fam:
        raise errors.MissingFull()
    ordered = tuple(sorted(fam, key=canonical_key))
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            if (a & b) not in fam:
                raise errors.NotIntersectionClosed(
                    format_subset(points, a),
                    format_subset(points, b),
                    format_subset(points, a & b),
                )
    return ClosureSpace(points, ordered)


def cartan_map(sps: StatePropertySystem, a: PropertyRef) -> int:
    """States in which property ``a`` is actual."""
    return sps.kappa[sps.prop(a)]


def closure_of(cs: ClosureSpace, subset: Subset) -> int:
    """Smallest closed set containing ``subset``."""
    target = cs.subset(subset)
    acc = cs.full
    for c in cs.closed:
        if target & ~c == 0:
            acc &= c
    return acc


def check_cap(size: int, cap: int | None) -> None:
    limit = MAX_STATES if cap is None else cap
    if size > limit:
        raise errors.ExhaustiveCapExceeded(size, limit)
