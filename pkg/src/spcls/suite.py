"""Per-instance theorem checks shared by the acceptance tests and ``spcls selftest``.

Each check recomputes its claim from primitive data (Cartan images, closed
sets, lattice tables) rather than reusing the predicate under test, so a bug
in one route shows up as a disagreement.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from spcls import errors
from spcls.bits import full_mask, members
from spcls.categorical import (
    functor_F_obj,
    functor_G_obj,
    is_sp_morphism,
    verify_equivalence_roundtrip,
)
from spcls.classify import (
    atomistic_conditions,
    d_classical_complement,
    induced_subspace,
    is_clopen,
    is_connected,
    is_connected_subset,
    is_s_classical,
    is_topology,
    is_weakly_zero_dimensional,
    ssr,
)
from spcls.core import ClosureSpace, StatePropertySystem, check_axioms
from spcls.decompose import (
    ap_subsystem,
    d_classical_part,
    decompose,
    is_pure_nonclassical,
    is_totally_classical,
)

CHECKS = {
    "a": "ssr three-way equivalence",
    "b": "d-classical iff clopen",
    "c": "complement uniqueness, idempotence, antitonicity, kappa(a^c) = kappa(a)^C",
    "d": "atomistic conditions agree",
    "e": "s-classical iff topology",
    "f": "FG identity and GF isomorphism",
    "g": "decomposition validity",
}


@dataclass
class SuiteResult:
    instances: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)
    findings: Counter = field(default_factory=Counter)

    def failed(self, check: str) -> list[str]:
        return [msg for c, msg in self.failures if c == check]

    def merge(self, other: "SuiteResult") -> None:
        self.instances += other.instances
        self.failures.extend(other.failures)
        self.findings.update(other.findings)


def _ssr_three_way(sps: StatePropertySystem, cs: ClosureSpace) -> list[str]:
    lat, kappa = sps.lattice, sps.kappa
    bad = []
    for a in range(len(lat)):
        for b in range(len(lat)):
            j = lat.join(a, b)
            definitional = all(
                not row >> j & 1 or row >> a & 1 or row >> b & 1 for row in sps.xi
            )
            union_form = kappa[j] == kappa[a] | kappa[b]
            closed_form = cs.is_closed(kappa[a] | kappa[b])
            if not definitional == union_form == closed_form == ssr(sps, a, b):
                bad.append(f"ssr forms disagree at ({lat.names[a]}, {lat.names[b]})")
    return bad


def _complements(sps: StatePropertySystem, cs: ClosureSpace) -> tuple[list[str], list[str]]:
    lat, kappa = sps.lattice, sps.kappa
    full = full_mask(len(sps.states))
    clopen_bad, comp_bad = [], []
    comp = {}
    for a in range(len(lat)):
        try:
            c = d_classical_complement(sps, a)
        except errors.InternalInconsistency as exc:
            comp_bad.append(str(exc))
            continue
        if (c is not None) != is_clopen(cs, kappa[a]):
            clopen_bad.append(f"{lat.names[a]}: d-classical={c is not None}")
        if c is not None:
            comp[a] = c
            if kappa[c] != full & ~kappa[a]:
                comp_bad.append(f"kappa of complement of {lat.names[a]}")
    for a, c in comp.items():
        if comp.get(c) != a:
            comp_bad.append(f"complement of {lat.names[a]} not idempotent")
        for b, cb in comp.items():
            if lat.leq(a, b) and not lat.leq(cb, c):
                comp_bad.append(f"complement not antitone at ({lat.names[a]}, {lat.names[b]})")
    for name in (lat.bottom, lat.top):
        if name not in comp:
            comp_bad.append(f"{lat.names[name]} is not d-classical")
    return clopen_bad, comp_bad


def _decomposition(sps: StatePropertySystem, cs: ClosureSpace, cap, result) -> list[str]:
    bad = []
    dec = decompose(sps, cap)
    for f in dec.findings:
        result.findings[f.kind] += 1
    covered = 0
    for comp in dec.components:
        omega = comp.states
        if omega & covered:
            bad.append("components overlap")
        covered |= omega
        if not cs.is_closed(omega):
            bad.append(f"component {cs.format(omega)} not closed")
        if not is_connected_subset(cs, omega, cap):
            bad.append(f"component {cs.format(omega)} not connected")
        for y in members(cs.full & ~omega):
            if is_connected_subset(cs, omega | 1 << y, cap):
                bad.append(f"component {cs.format(omega)} not maximal")
        if sps.kappa[comp.atom] != omega:
            bad.append(f"atom of {cs.format(omega)} has the wrong Cartan image")
        if not is_pure_nonclassical(comp.system):
            bad.append(f"component {cs.format(omega)} not pure nonclassical")
        if not is_connected(functor_F_obj(comp.system)):
            bad.append(f"component {cs.format(omega)} space not connected")
        if not is_sp_morphism(comp.embedding):
            bad.append(f"embedding of {cs.format(omega)} invalid")
        verify_equivalence_roundtrip(comp.system)
    if covered != cs.full:
        bad.append("components do not cover the space")

    classical = dec.classical_part
    try:
        check_axioms(classical)
    except errors.AxiomViolation as exc:
        bad.append(f"classical part invalid: {exc}")
    if not all(atomistic_conditions(classical)):
        bad.append("classical part not atomistic")
    if not is_totally_classical(classical, cap):
        bad.append("classical part not totally classical")
    ccs = functor_F_obj(classical)
    for x in range(len(ccs.points)):
        for y in range(len(ccs.points)):
            if x != y and is_connected_subset(ccs, (1 << x) | (1 << y), cap):
                bad.append("classical part space has a connected pair")
    verify_equivalence_roundtrip(classical)

    part = d_classical_part(sps)
    if not is_weakly_zero_dimensional(functor_F_obj(part)):
        bad.append("d-classical part not weakly zero-dimensional")
    return bad


def _ap_subspaces(sps: StatePropertySystem, cs: ClosureSpace) -> list[str]:
    bad = []
    for a in range(len(sps.lattice)):
        sub = ap_subsystem(sps, a).system
        if functor_F_obj(sub) != induced_subspace(cs, sps.kappa[a]):
            bad.append(f"ap-subsystem of {sps.lattice.names[a]} is not the closed subspace")
    return bad


def check_space(cs: ClosureSpace, cap: int | None = None) -> SuiteResult:
    """Run checks (a)-(g) on ``G(cs)`` and return every failure."""
    result = SuiteResult(instances=1)

    def run(check: str, fn, *args) -> None:
        try:
            for msg in fn(*args):
                result.failures.append((check, msg))
        except errors.SpclsError as exc:
            result.failures.append((check, f"{type(exc).__name__}: {exc}"))

    sps = functor_G_obj(cs)
    run("a", _ssr_three_way, sps, cs)
    try:
        clopen_bad, comp_bad = _complements(sps, cs)
    except errors.SpclsError as exc:
        clopen_bad, comp_bad = [], [f"{type(exc).__name__}: {exc}"]
    result.failures.extend(("b", msg) for msg in clopen_bad)
    result.failures.extend(("c", msg) for msg in comp_bad)

    def atomistic():
        conds = atomistic_conditions(sps)
        return [] if len(set(conds)) == 1 else [f"conditions {conds}"]

    run("d", atomistic)

    def s_classical():
        ok = is_s_classical(sps) == is_topology(cs)
        dset = {a for a in range(len(sps.lattice)) if d_classical_complement(sps, a) is not None}
        trivial = {sps.lattice.bottom, sps.lattice.top}
        out = [] if ok else ["s-classical and topology disagree"]
        if is_connected(cs) != (dset == trivial):
            out.append("connectedness and pure nonclassicality disagree")
        return out

    run("e", s_classical)

    def roundtrip():
        verify_equivalence_roundtrip(cs)
        verify_equivalence_roundtrip(sps)
        if functor_F_obj(functor_G_obj(functor_F_obj(sps))) != functor_F_obj(sps):
            return ["FGF differs from F"]
        return []

    run("f", roundtrip)
    run("g", _decomposition, sps, cs, cap, result)
    run("g", _ap_subspaces, sps, cs)
    return result


def run_suite(spaces, cap: int | None = None) -> SuiteResult:
    total = SuiteResult()
    for cs in spaces:
        total.merge(check_space(cs, cap))
    return total


def describe(result: SuiteResult) -> list[str]:
    lines = []
    for key, label in CHECKS.items():
        n = len(result.failed(key))
        lines.append(f"({key}) {label}: {'PASS' if n == 0 else f'FAIL ({n})'}")
    return lines

