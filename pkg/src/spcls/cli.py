"""``spcls`` command-line front end.

Exit codes: 0 success, 1 input or parse error, 2 validation or check failure,
3 internal inconsistency (a theorem was violated, which means a bug).
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from pathlib import Path

from spcls import errors
from spcls.bits import members
from spcls.categorical import (
    ContinuousMap,
    SPMorphism,
    functor_F_obj,
    functor_G_obj,
    is_continuous,
    is_sp_morphism,
)
from spcls.classify import classify
from spcls.core import ClosureSpace, StatePropertySystem
from spcls.decompose import d_classical_part, decompose, join_differences
from spcls.io import document, dumps, load_instance
from spcls.render import render_dot

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


def as_system(obj) -> StatePropertySystem:
    return functor_G_obj(obj) if isinstance(obj, ClosureSpace) else obj


def _yn(flag: bool) -> str:
    return "true" if flag else "false"


# -- validate -----------------------------------------------------------------

def cmd_validate(args) -> int:
    try:
        obj = load_instance(args.file)
    except errors.ValidationError as exc:
        axiom = getattr(exc, "axiom", None)
        prefix = f"invalid (axiom ({axiom}))" if axiom else "invalid"
        print(f"{prefix}: {exc}")
        return EXIT_INVALID
    if isinstance(obj, StatePropertySystem):
        print(f"valid sps: {len(obj.states)} states, {len(obj.lattice)} properties")
        if not obj.states:
            print("note: empty state set")
    else:
        print(f"valid cls: {len(obj.points)} points, {len(obj.closed)} closed sets")
    return EXIT_OK


# -- analyze ------------------------------------------------------------------

def analysis(sps: StatePropertySystem, cap: int | None) -> dict:
    report = classify(sps, cap=cap)
    names = sps.lattice.names
    return {
        "states": len(sps.states),
        "properties": len(names),
        "empty_state_set": report.empty_states,
        "T1": report.t1,
        "atomistic": all(report.atomistic),
        "atomistic_conditions": list(report.atomistic),
        "s_classical": report.s_classical,
        "topology": report.is_topology,
        "connected": report.connected,
        "pure_nonclassical": report.pure_nonclassical,
        "totally_classical": report.totally_classical,
        "weakly_zero_dimensional": report.weakly_zero_dimensional,
        "d_classical": [names[a] for a in members(report.d_classical_properties)],
        "complements": {
            names[a]: names[report.complements[a]]
            for a in members(report.d_classical_properties)
        },
        "d_classical_part_weakly_zero_dimensional":
            report.dclassical_part_weakly_zero_dimensional,
    }


def format_analysis(result: dict) -> str:
    lines = [
        f"states: {result['states']}",
        f"properties: {result['properties']}",
    ]
    if result["empty_state_set"]:
        lines.append("note: empty state set")
    conds = ", ".join(_yn(c) for c in result["atomistic_conditions"])
    lines += [
        f"T1: {_yn(result['T1'])}",
        f"atomistic: {_yn(result['atomistic'])} (conditions: {conds})",
        f"s-classical: {_yn(result['s_classical'])}",
        f"topology: {_yn(result['topology'])}",
        f"connected: {_yn(result['connected'])}",
        f"pure nonclassical: {_yn(result['pure_nonclassical'])}",
        f"totally classical: {_yn(result['totally_classical'])}",
        f"weakly zero-dimensional: {_yn(result['weakly_zero_dimensional'])}",
        f"d-classical: {', '.join(result['d_classical'])}",
        "complements: "
        + ", ".join(f"{a}^c = {c}" for a, c in result["complements"].items()),
        "d-classical part weakly zero-dimensional: "
        + _yn(result["d_classical_part_weakly_zero_dimensional"]),
    ]
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    sps = as_system(load_instance(args.file))
    result = analysis(sps, args.cap)
    sys.stdout.write(dumps(result) if args.json else format_analysis(result))
    return EXIT_OK


# -- decompose ----------------------------------------------------------------

def _file_stem(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_-]+", "_", name).strip("_") or "x"


def _morphism_document(mor: SPMorphism) -> dict:
    src, tgt = mor.source, mor.target
    return {
        "m": {src.states[p]: tgt.states[q] for p, q in enumerate(mor.m)},
        "n": {tgt.lattice.names[a]: src.lattice.names[b] for a, b in enumerate(mor.n)},
    }


def decomposition_files(sps: StatePropertySystem, cap: int | None) -> dict[str, str]:
    """File name to contents, everything computed before anything is written."""
    dec = decompose(sps, cap)
    files: dict[str, str] = {}
    summary_components = []
    used: set[str] = set()
    for comp in dec.components:
        atom = sps.lattice.names[comp.atom]
        stem = f"component_{_file_stem(atom)}"
        name, k = f"{stem}.json", 1
        while name in used:
            k += 1
            name = f"{stem}_{k}.json"
        used.add(name)
        files[name] = dumps(document(comp.system))
        summary_components.append({
            "states": list(comp.system.states),
            "atom": atom,
            "file": name,
            "embedding": _morphism_document(comp.embedding),
        })
    files["classical.json"] = dumps(document(dec.classical_part))
    files["dclassical.json"] = dumps(document(d_classical_part(sps)))
    summary = {
        "omega": [sps.state_set(c.states) for c in dec.components],
        "atoms": [sps.lattice.names[c.atom] for c in dec.components],
        "components": summary_components,
        "classical": "classical.json",
        "dclassical": "dclassical.json",
        "dclassical_join_differences": [list(d) for d in join_differences(sps)],
        "findings": [{"kind": f.kind, "detail": f.detail} for f in dec.findings],
    }
    files["summary.json"] = dumps(summary)
    return files


def cmd_decompose(args) -> int:
    sps = as_system(load_instance(args.file))
    files = decomposition_files(sps, args.cap)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    try:
        for name, text in files.items():
            path = out / name
            path.write_text(text, encoding="utf-8")
            written.append(path)
    except OSError:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    for name in files:
        print(out / name)
    return EXIT_OK


# -- convert ------------------------------------------------------------------

def cmd_convert(args) -> int:
    obj = load_instance(args.file)
    if args.to == "cls":
        result = functor_F_obj(obj) if isinstance(obj, StatePropertySystem) else obj
    else:
        result = functor_G_obj(obj) if isinstance(obj, ClosureSpace) else obj
    text = dumps(document(result))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- check-morphism -----------------------------------------------------------

def _lookup(mapping, domain, codomain, what: str) -> tuple[int, ...]:
    if not isinstance(mapping, dict):
        raise errors.ParseError(f"map {what!r} must be an object")
    index = {name: i for i, name in enumerate(codomain)}
    out = []
    for name in domain:
        if name not in mapping:
            raise errors.ParseError(f"map {what!r} is not defined on {name!r}")
        target = mapping[name]
        if target not in index:
            raise errors.ParseError(f"map {what!r} sends {name!r} to undeclared {target!r}")
        out.append(index[target])
    extra = set(mapping) - set(domain)
    if extra:
        raise errors.ParseError(f"map {what!r} mentions undeclared {sorted(extra)[0]!r}")
    return tuple(out)


def cmd_check_morphism(args) -> int:
    src = load_instance(args.src)
    dst = load_instance(args.dst)
    try:
        maps = json.loads(Path(args.map).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise errors.ParseError(f"cannot read map file {args.map}: {exc}") from exc
    if not isinstance(maps, dict):
        raise errors.ParseError("map file must be a JSON object")
    if type(src) is not type(dst):
        raise errors.ParseError("source and target must be of the same kind")
    if isinstance(src, StatePropertySystem):
        m = _lookup(maps.get("m"), src.states, dst.states, "m")
        n = _lookup(maps.get("n"), dst.lattice.names, src.lattice.names, "n")
        verdict = is_sp_morphism(SPMorphism(m, n, src, dst))
        if verdict:
            print("valid SP-morphism")
            return EXIT_OK
        a, p = verdict.witness
        print(f"not an SP-morphism: biconditional fails for property {a}, state {p}")
        return EXIT_INVALID
    f = _lookup(maps.get("f", maps.get("m")), src.points, dst.points, "f")
    verdict = is_continuous(ContinuousMap(f, src, dst))
    if verdict:
        print("continuous")
        return EXIT_OK
    print(f"not continuous: preimage of closed set {verdict.witness} is not closed")
    return EXIT_INVALID


# -- render -------------------------------------------------------------------

def cmd_render(args) -> int:
    obj = load_instance(args.file)
    sys.stdout.write(render_dot(obj))
    if args.figure:
        from spcls.plotting import render_figure

        render_figure(obj, args.figure)
    return EXIT_OK


# -- selftest -----------------------------------------------------------------

def cmd_selftest(args) -> int:
    from spcls.generate import random_closure_space
    from spcls.suite import describe, run_suite

    rng = random.Random(args.seed)
    spaces = [
        random_closure_space(rng, args.max_points, args.max_closed) for _ in range(args.count)
    ]
    result = run_suite(spaces, cap=args.cap)
    print(f"instances: {result.instances} (seed {args.seed})")
    for line in describe(result):
        print(line)
    for kind, n in sorted(result.findings.items()):
        print(f"finding {kind}: {n}")
    for check, msg in result.failures[:20]:
        print(f"failure ({check}): {msg}")
    return EXIT_INTERNAL if result.failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spcls",
        description="State property systems and closure spaces on finite sets.",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for random suites")
    parser.add_argument("--cap", type=int, default=None,
                        help="largest universe for exhaustive algorithms (default 16)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check an instance file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="classification report")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decompose", help="write components and classical parts")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("convert", help="apply F (to cls) or G (to sps)")
    p.add_argument("file")
    p.add_argument("--to", choices=["cls", "sps"], required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("check-morphism", help="check an SP-morphism or continuous map")
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("map")
    p.set_defaults(func=cmd_check_morphism)

    p = sub.add_parser("render", help="DOT text for the lattice and closed sets")
    p.add_argument("file")
    p.add_argument("--figure", help="also draw both diagrams to this image file")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("selftest", help="theorem suite on random closure spaces")
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--max-points", type=int, default=8)
    p.add_argument("--max-closed", type=int, default=40)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except errors.InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (errors.ParseError, errors.ExhaustiveCapExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except errors.ValidationError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
