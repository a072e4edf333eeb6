"""Predicates on systems and their closure spaces.

Wherever a notion has both a lattice-side and a closed-set-side form, both
are computed and compared; a disagreement raises
:class:`~spcls.errors.InternalInconsistency`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from spcls import errors
from spcls.bits import is_subset, members
from spcls.categorical import functor_F_obj
from spcls.core import (
    ClosureSpace,
    PropertyRef,
    StatePropertySystem,
    Subset,
    check_cap,
    validate_closure_space,
)


def strongest_property(sps: StatePropertySystem, p: int | str) -> int:
    """Meet of all properties actual in state ``p``."""
    return sps.lattice.meet_all(members(sps.xi[sps.state_index(p)]))


def is_T1(cs: ClosureSpace) -> bool:
    return all(cs.is_closed(1 << x) for x in range(len(cs.points)))


def atomistic_conditions(sps: StatePropertySystem) -> tuple[bool, bool, bool]:
    """The three equivalent forms of atomisticity, evaluated independently:
    (1) xi injective with atomic strongest properties, (2) no proper
    inclusion between distinct states' xi, (3) the closure space is T1."""
    lat = sps.lattice
    xi = sps.xi
    injective = len(set(xi)) == len(xi)
    cond1 = injective and all(
        lat.is_atom(strongest_property(sps, p)) for p in range(len(sps.states))
    )
    cond2 = all(
        p == q or not is_subset(xi[p], xi[q])
        for p in range(len(xi))
        for q in range(len(xi))
    )
    cond3 = is_T1(functor_F_obj(sps))
    return cond1, cond2, cond3


def is_atomistic(sps: StatePropertySystem) -> bool:
    conds = atomistic_conditions(sps)
    if len(set(conds)) != 1:
        raise errors.InternalInconsistency(f"atomistic conditions disagree: {conds}")
    return conds[0]


def _ssr_definitional(sps: StatePropertySystem, a: int, b: int) -> bool:
    j = sps.lattice.join(a, b)
    for actual in sps.xi:
        if actual >> j & 1 and not (actual >> a & 1 or actual >> b & 1):
            return False
    return True


def _ssr_cartan(sps: StatePropertySystem, a: int, b: int) -> bool:
    k = sps.kappa
    return k[sps.lattice.join(a, b)] == k[a] | k[b]


def ssr(sps: StatePropertySystem, a: PropertyRef, b: PropertyRef) -> bool:
    """Whether ``a`` and ``b`` are separated by a superselection rule."""
    a, b = sps.prop(a), sps.prop(b)
    direct = _ssr_definitional(sps, a, b)
    if direct != _ssr_cartan(sps, a, b):
        names = sps.lattice.names
        raise errors.InternalInconsistency(
            f"ssr({names[a]}, {names[b]}): definition gives {direct}, "
            "Cartan-union form disagrees"
        )
    return direct


def is_s_classical(sps: StatePropertySystem) -> bool:
    n = len(sps.lattice)
    return all(ssr(sps, a, b) for a in range(n) for b in range(a, n))


def is_topology(cs: ClosureSpace) -> bool:
    """Closed sets are also closed under pairwise union."""
    closed = cs.closed
    return all(cs.is_closed(a | b) for i, a in enumerate(closed) for b in closed[i + 1:])


def d_classical_complement(sps: StatePropertySystem, a: PropertyRef) -> int | None:
    """The complement of ``a`` if ``a`` is d-classical, else ``None``."""
    lat = sps.lattice
    a = sps.prop(a)
    found = [
        b
        for b in range(len(lat))
        if lat.join(a, b) == lat.top
        and lat.meet(a, b) == lat.bottom
        and ssr(sps, a, b)
    ]
    if len(found) > 1:
        names = ", ".join(lat.names[b] for b in found)
        raise errors.MultipleComplements(f"{lat.names[a]} has complements {names}")
    if not found:
        return None
    c = found[0]
    full = (1 << len(sps.states)) - 1
    if sps.kappa[c] != full & ~sps.kappa[a]:
        raise errors.InternalInconsistency(
            f"kappa of the complement of {lat.names[a]} is not the set complement"
        )
    return c


def d_classical_properties(sps: StatePropertySystem) -> dict[int, int]:
    """Map every d-classical property to its complement."""
    out = {}
    for a in range(len(sps.lattice)):
        c = d_classical_complement(sps, a)
        if c is not None:
            out[a] = c
    for a, c in out.items():
        if out.get(c) != a:
            names = sps.lattice.names
            raise errors.InternalInconsistency(
                f"complement of {names[a]} is {names[c]} but not conversely"
            )
    return out


def is_clopen(cs: ClosureSpace, subset: Subset) -> bool:
    a = cs.subset(subset)
    return cs.is_closed(a) and cs.is_closed(cs.full & ~a)


def clopen_sets(cs: ClosureSpace) -> list[int]:
    return [c for c in cs.closed if cs.is_closed(cs.full & ~c)]


def is_connected(cs: ClosureSpace) -> bool:
    """Only the empty set and the whole space are clopen."""
    full = cs.full
    return all(c in (0, full) for c in clopen_sets(cs))


def traces(cs: ClosureSpace, subset: int) -> set[int]:
    """Closed sets of the subspace induced on ``subset``."""
    return {c & subset for c in cs.closed}


def induced_subspace(cs: ClosureSpace, subset: Subset) -> ClosureSpace:
    """The subspace on ``subset``, re-indexed to its own points."""
    a = cs.subset(subset)
    keep = list(members(a))
    names = [cs.points[i] for i in keep]
    family = [[cs.points[i] for i in members(t)] for t in traces(cs, a)]
    return validate_closure_space(names, family)


def _connected_traces(family: set[int], subset: int) -> bool:
    for t in family:
        if t and t != subset and (subset & ~t) in family:
            return False
    return True


def is_connected_subset(cs: ClosureSpace, subset: Subset, cap: int | None = None) -> bool:
    a = cs.subset(subset)
    check_cap(bin(a).count("1"), cap)
    return _connected_traces(traces(cs, a), a)


def is_weakly_zero_dimensional(cs: ClosureSpace) -> bool:
    """Every closed set is the intersection of the clopen sets containing it."""
    clopens = clopen_sets(cs)
    for c in cs.closed:
        hull = cs.full
        for u in clopens:
            if is_subset(c, u):
                hull &= u
        if hull != c:
            return False
    return True


@dataclass(frozen=True)
class ClassificationReport:
    t1: bool
    atomistic: tuple[bool, bool, bool]
    s_classical: bool
    is_topology: bool
    connected: bool
    d_classical_properties: int
    complements: dict[int, int] = field(compare=False)
    weakly_zero_dimensional: bool
    pure_nonclassical: bool
    totally_classical: bool
    dclassical_part_weakly_zero_dimensional: bool
    empty_states: bool


def classify(sps: StatePropertySystem, cap: int | None = None) -> ClassificationReport:
    """Evaluate every predicate and assert the equivalences between them."""
    from spcls.decompose import d_classical_part, is_totally_classical

    cs = functor_F_obj(sps)
    lat = sps.lattice
    conds = atomistic_conditions(sps)
    if len(set(conds)) != 1:
        raise errors.InternalInconsistency(f"atomistic conditions disagree: {conds}")
    s_classical = is_s_classical(sps)
    topology = is_topology(cs)
    if s_classical != topology:
        raise errors.InternalInconsistency("s-classical and topology tests disagree")
    complements = d_classical_properties(sps)
    dmask = sum(1 << a for a in complements)
    for a in range(len(lat)):
        if (a in complements) != is_clopen(cs, sps.kappa[a]):
            raise errors.InternalInconsistency(
                f"{lat.names[a]}: d-classical and clopen tests disagree"
            )
    trivial = (1 << lat.bottom) | (1 << lat.top)
    connected = is_connected(cs)
    if connected != (dmask == trivial):
        raise errors.InternalInconsistency("connectedness and pure nonclassicality disagree")
    part = d_classical_part(sps)
    return ClassificationReport(
        t1=is_T1(cs),
        atomistic=conds,
        s_classical=s_classical,
        is_topology=topology,
        connected=connected,
        d_classical_properties=dmask,
        complements=complements,
        weakly_zero_dimensional=is_weakly_zero_dimensional(cs),
        pure_nonclassical=dmask == trivial,
        totally_classical=is_totally_classical(sps, cap=cap),
        dclassical_part_weakly_zero_dimensional=is_weakly_zero_dimensional(
            functor_F_obj(part)
        ),
        empty_states=not sps.states,
    )
