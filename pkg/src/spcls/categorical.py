"""The functors F (systems to closure spaces) and G (closure spaces to systems).

Morphisms follow the contravariant/covariant convention of state property
systems: ``(m, n): (S', L', xi') -> (S, L, xi)`` has ``m: S' -> S`` on states
and ``n: L -> L'`` on properties.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import singledispatch
from typing import Any, NamedTuple

from spcls import errors
from spcls.bits import format_subset, is_subset
from spcls.core import (
    ClosureSpace,
    FiniteLattice,
    StatePropertySystem,
    check_axioms,
    closure_of,
    validate_closure_space,
)


class Verdict(NamedTuple):
    """Outcome of a validity check; falsy when a counterexample was found."""

    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class SPMorphism:
    """``m[p']`` is a target state index, ``n[a]`` a source property index."""

    m: tuple[int, ...]
    n: tuple[int, ...]
    source: StatePropertySystem
    target: StatePropertySystem


@dataclass(frozen=True)
class ContinuousMap:
    f: tuple[int, ...]
    source: ClosureSpace
    target: ClosureSpace

    def preimage(self, subset: int) -> int:
        out = 0
        for x, fx in enumerate(self.f):
            if subset >> fx & 1:
                out |= 1 << x
        return out


def is_sp_morphism(mor: SPMorphism) -> Verdict:
    """Check ``a in xi(m(p')) <=> n(a) in xi'(p')`` for every ``a`` and ``p'``.

    The witness is ``(a, p')`` by name.
    """
    src, tgt = mor.source, mor.target
    if len(mor.m) != len(src.states) or len(mor.n) != len(tgt.lattice):
        raise errors.UniverseMismatch("morphism maps do not match their systems")
    if any(not 0 <= q < len(tgt.states) for q in mor.m):
        raise errors.UniverseMismatch("state map leaves the target state set")
    if any(not 0 <= b < len(src.lattice) for b in mor.n):
        raise errors.UniverseMismatch("property map leaves the source lattice")
    for a, na in enumerate(mor.n):
        for p, q in enumerate(mor.m):
            if bool(tgt.xi[q] >> a & 1) != bool(src.xi[p] >> na & 1):
                return Verdict(False, (tgt.lattice.names[a], src.states[p]))
    return Verdict(True)


def is_continuous(cm: ContinuousMap) -> Verdict:
    """Every preimage of a closed set is closed; the witness is the offending
    closed set of the target."""
    if len(cm.f) != len(cm.source.points):
        raise errors.UniverseMismatch("map is not total on the source points")
    if any(not 0 <= y < len(cm.target.points) for y in cm.f):
        raise errors.UniverseMismatch("map leaves the target points")
    for b in cm.target.closed:
        if not cm.source.is_closed(cm.preimage(b)):
            return Verdict(False, cm.target.format(b))
    return Verdict(True)


def functor_F_obj(sps: StatePropertySystem) -> ClosureSpace:
    """The closure space of Cartan images on the state set."""
    try:
        return validate_closure_space(sps.states, set(sps.kappa))
    except errors.ClosureSpaceError as exc:
        raise errors.InternalInconsistency(
            f"Cartan images do not form a closure space: {exc}"
        ) from exc


def closed_set_lattice(cs: ClosureSpace) -> FiniteLattice:
    """Closed sets ordered by inclusion; meet is intersection and join is the
    closure of the union."""
    closed = cs.closed
    n = len(closed)
    names = tuple(cs.format(c) for c in closed)
    down = [0] * n
    up = [0] * n
    for i, a in enumerate(closed):
        for j, b in enumerate(closed):
            if is_subset(a, b):
                down[j] |= 1 << i
                up[i] |= 1 << j
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for i, a in enumerate(closed):
        for j in range(i, n):
            b = closed[j]
            meet[i][j] = meet[j][i] = cs.closed_index(a & b)
            join[i][j] = join[j][i] = cs.closed_index(closure_of(cs, a | b))
    return FiniteLattice(
        names=names,
        down=tuple(down),
        up=tuple(up),
        bottom=cs.closed_index(0),
        top=cs.closed_index(cs.full),
        meet_table=tuple(map(tuple, meet)),
        join_table=tuple(map(tuple, join)),
    )


def functor_G_obj(cs: ClosureSpace) -> StatePropertySystem:
    """The system whose properties are the closed sets and where a closed set
    is actual in exactly the points it contains."""
    lattice = closed_set_lattice(cs)
    xi = []
    for p in range(len(cs.points)):
        xi.append(sum(1 << i for i, c in enumerate(cs.closed) if c >> p & 1))
    sps = StatePropertySystem(cs.points, lattice, tuple(xi))
    try:
        check_axioms(sps)
    except errors.AxiomViolation as exc:
        raise errors.InternalInconsistency(f"G image is not a valid system: {exc}") from exc
    return sps


def functor_F_mor(mor: SPMorphism) -> ContinuousMap:
    """Forget the property map."""
    verdict = is_sp_morphism(mor)
    if not verdict:
        raise errors.InvalidInput(f"not an SP-morphism, witness {verdict.witness}")
    return ContinuousMap(mor.m, functor_F_obj(mor.source), functor_F_obj(mor.target))


def functor_G_mor(cm: ContinuousMap) -> SPMorphism:
    """Pair the point map with its preimage map on closed sets."""
    verdict = is_continuous(cm)
    if not verdict:
        raise errors.InvalidInput(f"map is not continuous, witness {verdict.witness}")
    n = tuple(cm.source.closed_index(cm.preimage(b)) for b in cm.target.closed)
    return SPMorphism(cm.f, n, functor_G_obj(cm.source), functor_G_obj(cm.target))


def identity_sp(sps: StatePropertySystem) -> SPMorphism:
    return SPMorphism(
        tuple(range(len(sps.states))), tuple(range(len(sps.lattice))), sps, sps
    )


def identity_map(cs: ClosureSpace) -> ContinuousMap:
    return ContinuousMap(tuple(range(len(cs.points))), cs, cs)


def compose_sp(first: SPMorphism, second: SPMorphism) -> SPMorphism:
    """``second`` after ``first``; states compose forwards, properties backwards."""
    if first.target != second.source:
        raise errors.UniverseMismatch("morphisms are not composable")
    m = tuple(second.m[q] for q in first.m)
    n = tuple(first.n[b] for b in second.n)
    return SPMorphism(m, n, first.source, second.target)


def compose_maps(first: ContinuousMap, second: ContinuousMap) -> ContinuousMap:
    if first.target != second.source:
        raise errors.UniverseMismatch("maps are not composable")
    return ContinuousMap(tuple(second.f[y] for y in first.f), first.source, second.target)


def inverse_sp(mor: SPMorphism) -> SPMorphism | None:
    """The inverse pair if both legs are bijections, else ``None``."""
    if len(set(mor.m)) != len(mor.m) or len(mor.m) != len(mor.target.states):
        return None
    if len(set(mor.n)) != len(mor.n) or len(mor.n) != len(mor.source.lattice):
        return None
    m_inv = [0] * len(mor.m)
    for p, q in enumerate(mor.m):
        m_inv[q] = p
    n_inv = [0] * len(mor.n)
    for a, b in enumerate(mor.n):
        n_inv[b] = a
    return SPMorphism(tuple(m_inv), tuple(n_inv), mor.target, mor.source)


def is_sp_isomorphism(mor: SPMorphism) -> Verdict:
    """Both legs bijective and both the pair and its inverse are SP-morphisms."""
    inv = inverse_sp(mor)
    if inv is None:
        return Verdict(False, "not bijective")
    forward = is_sp_morphism(mor)
    if not forward:
        return forward
    return is_sp_morphism(inv)


@dataclass(frozen=True)
class RoundTripReport:
    kind: str
    checked: int
    detail: str


@singledispatch
def verify_equivalence_roundtrip(obj) -> RoundTripReport:
    """Check FG = id on a closure space, or GF isomorphic to id on a system."""
    raise TypeError(f"cannot round-trip {type(obj).__name__}")


@verify_equivalence_roundtrip.register
def _(cs: ClosureSpace) -> RoundTripReport:
    back = functor_F_obj(functor_G_obj(cs))
    if back.points != cs.points:
        raise errors.RoundTripFailure("FG changed the point set")
    if back.closed != cs.closed:
        lost = set(cs.closed) ^ set(back.closed)
        first = min(lost)
        raise errors.RoundTripFailure(
            f"FG changed the closed sets; first discrepancy {cs.format(first)}"
        )
    return RoundTripReport("cls", len(cs.closed), "FG equals the identity")


@verify_equivalence_roundtrip.register
def _(sps: StatePropertySystem) -> RoundTripReport:
    cs = functor_F_obj(sps)
    image = functor_G_obj(cs)
    lat = sps.lattice
    kappa = sps.kappa
    names = lat.names
    n = tuple(cs.closed_index(k) for k in kappa)
    if len(set(n)) != len(n):
        raise errors.RoundTripFailure("Cartan map is not injective")
    for a in range(len(lat)):
        for b in range(len(lat)):
            if lat.leq(a, b) != is_subset(kappa[a], kappa[b]):
                raise errors.RoundTripFailure(
                    f"Cartan map is not an order isomorphism at ({names[a]}, {names[b]})"
                )
    for p in range(len(sps.states)):
        for a in range(len(lat)):
            if bool(sps.xi[p] >> a & 1) != bool(image.xi[p] >> n[a] & 1):
                raise errors.RoundTripFailure(
                    f"{names[a]} actual in {sps.states[p]} disagrees with "
                    f"{format_subset(sps.states, kappa[a])} in the GF image"
                )
    # (id, kappa): GF(sps) -> sps must be an isomorphism in SP
    mor = SPMorphism(tuple(range(len(sps.states))), n, image, sps)
    verdict = is_sp_isomorphism(mor)
    if not verdict:
        raise errors.RoundTripFailure(f"(id, kappa) is not an isomorphism: {verdict.witness}")
    return RoundTripReport("sps", len(lat) * max(1, len(sps.states)), "GF isomorphic via kappa")

