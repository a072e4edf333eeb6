"""Connected components and the split of a system into pure nonclassical
pieces plus a totally classical remainder.

Anything that holds in theory but is checked at runtime and found not to hold
is reported as a :class:`Finding` on the result instead of being trusted.
"""

from __future__ import annotations

from dataclasses import dataclass

from spcls import errors
from spcls.bits import format_subset, full_mask, is_subset, members, submasks_containing
from spcls.categorical import SPMorphism, functor_F_obj, is_sp_morphism
from spcls.classify import (
    _connected_traces,
    atomistic_conditions,
    clopen_sets,
    d_classical_properties,
    d_classical_complement,
    is_connected_subset,
    traces,
)
from spcls.core import (
    ClosureSpace,
    FiniteLattice,
    PropertyRef,
    StatePropertySystem,
    check_cap,
    validate_sps,
)


@dataclass(frozen=True)
class Finding:
    kind: str
    detail: str


class _Connectivity:
    """Memoised connectivity test for subsets of one space."""

    def __init__(self, cs: ClosureSpace):
        self.cs = cs
        self.memo: dict[int, bool] = {}

    def __call__(self, subset: int) -> bool:
        hit = self.memo.get(subset)
        if hit is None:
            hit = self.memo[subset] = _connected_traces(traces(self.cs, subset), subset)
        return hit


def component_of(
    cs: ClosureSpace, x: int | str, cap: int | None = None, _memo: _Connectivity | None = None
) -> int:
    """Union of all connected subsets containing ``x``, by exhaustive search."""
    check_cap(len(cs.points), cap)
    if isinstance(x, str):
        x = cs.points.index(x)
    connected = _memo if _memo is not None else _Connectivity(cs)
    result = 0
    for subset in submasks_containing(cs.full, x):
        if is_subset(subset, result):
            continue
        if connected(subset):
            result |= subset
    if not connected(result):
        raise errors.InternalInconsistency(
            f"component of {cs.points[x]} is not connected: {cs.format(result)}"
        )
    if not cs.is_closed(result):
        raise errors.InternalInconsistency(
            f"component of {cs.points[x]} is not closed: {cs.format(result)}"
        )
    return result


def quasi_component(cs: ClosureSpace, x: int) -> int:
    """Intersection of all clopen sets containing ``x``."""
    acc = cs.full
    for u in clopen_sets(cs):
        if u >> x & 1:
            acc &= u
    return acc


@dataclass(frozen=True)
class ComponentPartition:
    """Component classes ordered by their first point, and for each the
    property whose Cartan image it is."""

    classes: tuple[int, ...]
    atom_of: tuple[int, ...]

    def class_of(self, x: int) -> int:
        for i, omega in enumerate(self.classes):
            if omega >> x & 1:
                return i
        raise IndexError(x)


def components(
    cs: ClosureSpace, sps: StatePropertySystem | None = None, cap: int | None = None
) -> ComponentPartition:
    """Partition ``cs`` into connection components.

    With ``sps`` (whose closure space must be ``cs``) the atoms are property
    indices of ``sps``; without it they index ``cs.closed``, which is the
    property numbering of ``G(cs)``.
    """
    check_cap(len(cs.points), cap)
    memo = _Connectivity(cs)
    classes: list[int] = []
    covered = 0
    for x in range(len(cs.points)):
        if covered >> x & 1:
            continue
        omega = component_of(cs, x, cap, memo)
        if omega & covered:
            raise errors.InternalInconsistency("components overlap")
        covered |= omega
        classes.append(omega)
    if covered != cs.full:
        raise errors.InternalInconsistency("components do not cover the space")
    for y in range(len(cs.points)):
        omega = next(o for o in classes if o >> y & 1)
        if component_of(cs, y, cap, memo) != omega:
            raise errors.InternalInconsistency(
                f"component of {cs.points[y]} differs from its class"
            )
    atoms = []
    for omega in classes:
        if sps is None:
            atoms.append(cs.closed_index(omega))
            continue
        hit = [a for a, k in enumerate(sps.kappa) if k == omega]
        if not hit:
            raise errors.AtomNotFound(f"no property has Cartan image {cs.format(omega)}")
        atoms.append(hit[0])
    return ComponentPartition(tuple(classes), tuple(atoms))


# -- subsystems ---------------------------------------------------------------

def _subsystem(
    sps: StatePropertySystem, state_mask: int, lattice: FiniteLattice, rows: list[int]
) -> StatePropertySystem:
    """Validate a system on the states in ``state_mask`` whose ``xi`` rows are
    parent-index property masks, re-indexed into ``lattice``."""
    local = {name: i for i, name in enumerate(lattice.names)}
    parent_names = sps.lattice.names
    xi = [
        sum(1 << local[parent_names[a]] for a in members(row) if parent_names[a] in local)
        for row in rows
    ]
    states = [sps.states[p] for p in members(state_mask)]
    try:
        return validate_sps(states, lattice, xi)
    except errors.AxiomViolation as exc:
        raise errors.InternalInconsistency(f"derived system is invalid: {exc}") from exc


@dataclass(frozen=True)
class ApSubsystem:
    generator: int
    system: StatePropertySystem


def ap_subsystem(sps: StatePropertySystem, a: PropertyRef) -> ApSubsystem:
    """States where ``a`` is actual, the segment below ``a``, restricted xi."""
    a = sps.prop(a)
    segment = sps.lattice.down[a]
    lattice = sps.lattice.restrict(segment)
    kappa_a = sps.kappa[a]
    rows = [sps.xi[p] & segment for p in members(kappa_a)]
    return ApSubsystem(a, _subsystem(sps, kappa_a, lattice, rows))


def embedding_morphism(sps: StatePropertySystem, a: PropertyRef) -> SPMorphism:
    """Inclusion of the ap-subsystem on states, ``c -> a meet c`` on properties."""
    ap = ap_subsystem(sps, a)
    a = ap.generator
    lat = sps.lattice
    local = {name: i for i, name in enumerate(ap.system.lattice.names)}
    m = tuple(members(sps.kappa[a]))
    n = tuple(local[lat.names[lat.meet(a, c)]] for c in range(len(lat)))
    return SPMorphism(m, n, ap.system, sps)


def is_pure_nonclassical(sps: StatePropertySystem) -> bool:
    """Only the bottom and the top are d-classical."""
    lat = sps.lattice
    for a in range(len(lat)):
        if a in (lat.bottom, lat.top):
            continue
        if d_classical_complement(sps, a) is not None:
            return False
    return True


def is_totally_classical(sps: StatePropertySystem, cap: int | None = None) -> bool:
    """Every segment ``[0, a]`` that is pure nonclassical is trivial: ``a`` is
    the bottom or an atom."""
    lat = sps.lattice
    for a in range(len(lat)):
        if a == lat.bottom or lat.is_atom(a):
            continue
        if is_pure_nonclassical(ap_subsystem(sps, a).system):
            return False
    return True


# -- decomposition ------------------------------------------------------------

@dataclass(frozen=True)
class Component:
    states: int
    atom: int
    system: StatePropertySystem
    embedding: SPMorphism


@dataclass(frozen=True)
class Decomposition:
    parent: StatePropertySystem
    partition: ComponentPartition
    components: tuple[Component, ...]
    classical_part: StatePropertySystem
    findings: tuple[Finding, ...]


def classical_lattice_mask(lat: FiniteLattice, atoms: tuple[int, ...]) -> int:
    """All joins in ``lat`` of subsets of ``atoms``; the empty join is the bottom."""
    found = {lat.bottom}
    for s in atoms:
        found |= {lat.join(x, s) for x in found}
    return sum(1 << x for x in found)


def decompose(sps: StatePropertySystem, cap: int | None = None) -> Decomposition:
    cs = functor_F_obj(sps)
    partition = components(cs, sps, cap)
    lat = sps.lattice
    findings: list[Finding] = []

    for x in range(len(cs.points)):
        k = partition.classes[partition.class_of(x)]
        q = quasi_component(cs, x)
        if not is_subset(k, q):
            raise errors.InternalInconsistency(
                f"component of {cs.points[x]} is not inside its quasi-component"
            )
        if k != q:
            findings.append(Finding(
                "quasi-component",
                f"component {cs.format(k)} of {cs.points[x]} is strictly inside "
                f"quasi-component {cs.format(q)}",
            ))

    comps = []
    for omega, atom in zip(partition.classes, partition.atom_of):
        for y in members(cs.full & ~omega):
            if is_connected_subset(cs, omega | 1 << y, cap):
                raise errors.InternalInconsistency(
                    f"component {cs.format(omega)} is not maximal"
                )
        ap = ap_subsystem(sps, atom)
        emb = embedding_morphism(sps, atom)
        verdict = is_sp_morphism(emb)
        if not verdict:
            raise errors.InternalInconsistency(
                f"embedding of {cs.format(omega)} fails at {verdict.witness}"
            )
        if not is_pure_nonclassical(ap.system):
            raise errors.InternalInconsistency(
                f"component {cs.format(omega)} is not pure nonclassical"
            )
        comps.append(Component(omega, atom, ap.system, emb))

    cmask = classical_lattice_mask(lat, partition.atom_of)
    c_lat = lat.restrict(cmask)
    c_index = {name: i for i, name in enumerate(c_lat.names)}
    c_members = list(members(cmask))
    for i, x in enumerate(c_members):
        for y in c_members[i + 1:]:
            m = lat.meet(x, y)
            if not cmask >> m & 1:
                findings.append(Finding(
                    "classical-meet",
                    f"{lat.names[x]} and {lat.names[y]} meet at {lat.names[m]} in the "
                    f"property lattice, outside the classical lattice (meet there is "
                    f"{c_lat.names[c_lat.meet(c_index[lat.names[x]], c_index[lat.names[y]])]})",
                ))

    # Properties of the classical part actual at a class: those whose Cartan
    # image contains the whole class.  Equals xi(p) & C for any p in the class
    # whenever that intersection does not depend on p.
    rows = []
    for omega in partition.classes:
        row = sum(1 << x for x in c_members if is_subset(omega, sps.kappa[x]))
        rows.append(row)
        for p in members(omega):
            if sps.xi[p] & cmask != row:
                extra = sps.property_names(sps.xi[p] & cmask & ~row)
                findings.append(Finding(
                    "eta-well-defined",
                    f"xi({sps.states[p]}) & C contains {', '.join(extra)} but not "
                    f"every state of {cs.format(omega)} has it",
                ))
    omega_names = [format_subset(sps.states, omega) for omega in partition.classes]
    xi_c = [
        sum(1 << c_index[lat.names[x]] for x in members(row)) for row in rows
    ]
    try:
        classical = validate_sps(omega_names, c_lat, xi_c)
    except errors.AxiomViolation as exc:
        raise errors.InternalInconsistency(f"classical part is invalid: {exc}") from exc

    conds = atomistic_conditions(classical)
    if not all(conds):
        raise errors.InternalInconsistency(f"classical part is not atomistic: {conds}")
    if not is_totally_classical(classical, cap):
        raise errors.InternalInconsistency("classical part is not totally classical")
    classical_cs = functor_F_obj(classical)
    if any(bin(o).count("1") != 1 for o in components(classical_cs, cap=cap).classes):
        raise errors.InternalInconsistency("classical part is not totally disconnected")

    return Decomposition(sps, partition, tuple(comps), classical, tuple(findings))


# -- d-classical part ---------------------------------------------------------

def _meet_closure(lat: FiniteLattice, generators: set[int]) -> int:
    found = set(generators) | {lat.top}
    frontier = list(found)
    while frontier:
        fresh = []
        for x in frontier:
            for y in list(found):
                m = lat.meet(x, y)
                if m not in found:
                    found.add(m)
                    fresh.append(m)
        frontier = fresh
    return sum(1 << x for x in found)


def d_classical_mask(sps: StatePropertySystem) -> int:
    """Meets of all families of d-classical properties (empty meet = top)."""
    return _meet_closure(sps.lattice, set(d_classical_properties(sps)))


def d_classical_lattice(sps: StatePropertySystem) -> FiniteLattice:
    """The d-classical property lattice with inherited order and meet.

    Its join is the meet of all common upper bounds inside the lattice, which
    need not agree with the join of the full property lattice.
    """
    lat = sps.lattice
    mask = d_classical_mask(sps)
    sub = lat.restrict(mask)
    keep = list(members(mask))
    for i, x in enumerate(keep):
        for j, y in enumerate(keep):
            if keep[sub.meet(i, j)] != lat.meet(x, y):
                raise errors.InternalInconsistency("d-classical lattice is not meet-closed")
            bounds = [b for b in keep if lat.leq(x, b) and lat.leq(y, b)]
            if keep[sub.join(i, j)] != lat.meet_all(bounds):
                raise errors.InternalInconsistency(
                    "d-classical join disagrees with the meet of upper bounds"
                )
    return sub


def join_differences(sps: StatePropertySystem) -> list[tuple[str, str, str, str]]:
    """Pairs whose join inside the d-classical lattice differs from their join
    in the full lattice, as ``(x, y, join_inside, join_full)``."""
    lat = sps.lattice
    sub = d_classical_lattice(sps)
    keep = [lat.index(name) for name in sub.names]
    out = []
    for i, x in enumerate(keep):
        for j in range(i + 1, len(keep)):
            y = keep[j]
            inside = keep[sub.join(i, j)]
            full = lat.join(x, y)
            if inside != full:
                out.append((lat.names[x], lat.names[y], lat.names[inside], lat.names[full]))
    return out


def d_classical_part(sps: StatePropertySystem) -> StatePropertySystem:
    """All states, the d-classical lattice, and ``xi`` restricted to it."""
    sub = d_classical_lattice(sps)
    mask = sum(1 << sps.lattice.index(name) for name in sub.names)
    rows = [row & mask for row in sps.xi]
    return _subsystem(sps, full_mask(len(sps.states)), sub, rows)
