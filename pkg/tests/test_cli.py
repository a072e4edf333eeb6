import json
import subprocess
import sys

import pytest

from spcls.cli import main

EX5 = {
    "kind": "sps",
    "states": ["p", "q", "r", "s", "t"],
    "properties": ["0", "a", "b", "c", "d", "I"],
    "order": ["0<a", "0<b", "0<c", "a<d", "b<d", "d<I", "c<I"],
    "xi": {
        "p": ["b", "d", "I"], "q": ["b", "d", "I"], "r": ["a", "d", "I"],
        "s": ["c", "I"], "t": ["c", "I"],
    },
}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(ex5_path, tmp_path, capsys):
    code, out, _ = run(["validate", str(ex5_path)], capsys)
    assert code == 0 and out.startswith("valid sps: 5 states, 6 properties")
    bad = dict(EX5, xi=dict(EX5["xi"], p=["0", "b", "d", "I"]))
    code, out, _ = run(["validate", write(tmp_path, "bad.json", bad)], capsys)
    assert code == 2 and "axiom (1)" in out
    code, _, err = run(["validate", write(tmp_path, "broken.json", "{not json")], capsys)
    assert code == 1 and "invalid JSON" in err
    code, _, _ = run(["validate", str(tmp_path / "missing.json")], capsys)
    assert code == 1
    code, _, _ = run(["validate", write(tmp_path, "undeclared.json",
                                        dict(EX5, order=["0<z"]))], capsys)
    assert code == 1


def test_invalid_closure_space_exit_code(tmp_path, capsys):
    doc = {"kind": "cls", "points": ["p", "q", "r"],
           "closed": [[], ["p", "q"], ["q", "r"], ["p", "q", "r"]]}
    code, out, _ = run(["validate", write(tmp_path, "c.json", doc)], capsys)
    assert code == 2


def test_analyze(ex5_path, tmp_path, capsys):
    code, out, _ = run(["analyze", str(ex5_path)], capsys)
    assert code == 0
    lines = out.splitlines()
    assert "d-classical: 0, c, d, I" in lines
    assert "connected: false" in lines and "T1: false" in lines
    one = {"kind": "cls", "points": ["p"], "closed": [[], ["p"]]}
    code, out, _ = run(["analyze", write(tmp_path, "one.json", one)], capsys)
    assert "connected: true" in out.splitlines()
    assert out.splitlines()[3].startswith("atomistic: true")
    code, out, _ = run(["analyze", "--json", str(ex5_path)], capsys)
    assert json.loads(out)["d_classical"] == ["0", "c", "d", "I"]


def test_decompose_outputs_revalidate(ex5_path, tmp_path, capsys):
    out_dir = tmp_path / "out"
    code, out, _ = run(["decompose", str(ex5_path), "--out", str(out_dir)], capsys)
    assert code == 0
    names = sorted(p.name for p in out_dir.iterdir())
    assert names == ["classical.json", "component_a.json", "component_b.json",
                     "component_c.json", "dclassical.json", "summary.json"]
    for name in names:
        if name == "summary.json":
            continue
        assert run(["validate", str(out_dir / name)], capsys)[0] == 0
    for atom in "abc":
        _, text, _ = run(["analyze", str(out_dir / f"component_{atom}.json")], capsys)
        assert "pure nonclassical: true" in text.splitlines()
    _, text, _ = run(["analyze", str(out_dir / "classical.json")], capsys)
    assert "atomistic: true (conditions: true, true, true)" in text.splitlines()
    assert "totally classical: true" in text.splitlines()
    summary = json.loads((out_dir / "summary.json").read_text())
    assert summary["omega"] == ["{p,q}", "{r}", "{s,t}"]
    assert summary["atoms"] == ["b", "a", "c"]
    comp_b = json.loads((out_dir / "component_b.json").read_text())
    assert comp_b["xi"] == {"p": ["b"], "q": ["b"]}


def test_decompose_connected_instance(tmp_path, capsys):
    doc = {"kind": "cls", "points": ["p", "q"], "closed": [[], ["p"], ["p", "q"]]}
    out_dir = tmp_path / "o"
    assert run(["decompose", write(tmp_path, "c.json", doc), "--out", str(out_dir)],
               capsys)[0] == 0
    summary = json.loads((out_dir / "summary.json").read_text())
    assert summary["omega"] == ["{p,q}"]
    classical = json.loads((out_dir / "classical.json").read_text())
    assert classical["states"] == ["{p,q}"]


def test_convert(ex5_path, tmp_path, capsys):
    code, out, _ = run(["convert", str(ex5_path), "--to", "cls"], capsys)
    doc = json.loads(out)
    assert doc["closed"] == [[], ["r"], ["p", "q"], ["s", "t"], ["p", "q", "r"],
                             ["p", "q", "r", "s", "t"]]
    cls_path = write(tmp_path, "x.json", out)
    sps_path = str(tmp_path / "g.json")
    assert run(["convert", cls_path, "--to", "sps", "--out", sps_path], capsys)[0] == 0
    _, back, _ = run(["convert", sps_path, "--to", "cls"], capsys)
    assert back == out


def test_render(ex5_path, capsys):
    code, out, _ = run(["render", str(ex5_path)], capsys)
    lattice = out.split("\n\n")[0]
    edges = {tuple(s.strip(' ";').split('" -> "')) for s in lattice.splitlines() if "->" in s}
    assert edges == {("0", "a"), ("0", "b"), ("0", "c"), ("a", "d"), ("b", "d"),
                     ("d", "I"), ("c", "I")}
    assert "digraph closed_sets" in out


def test_render_figure(ex5_path, tmp_path, capsys):
    fig = tmp_path / "f.png"
    assert run(["render", str(ex5_path), "--figure", str(fig)], capsys)[0] == 0
    assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_check_morphism(ex5_path, tmp_path, capsys):
    ident = {"m": {s: s for s in "pqrst"}, "n": {a: a for a in EX5["properties"]}}
    code, out, _ = run(["check-morphism", str(ex5_path), str(ex5_path),
                        write(tmp_path, "id.json", ident)], capsys)
    assert code == 0 and "valid SP-morphism" in out
    const = dict(ident, m={s: "s" for s in "pqrst"})
    code, out, _ = run(["check-morphism", str(ex5_path), str(ex5_path),
                        write(tmp_path, "k.json", const)], capsys)
    assert code == 2 and "property" in out
    cls = {"kind": "cls", "points": list("pqrst"),
           "closed": [[], ["r"], ["p", "q"], ["s", "t"], ["p", "q", "r"], list("pqrst")]}
    cls_path = write(tmp_path, "cls.json", cls)
    swap = {"f": {"p": "p", "q": "q", "r": "s", "s": "r", "t": "t"}}
    code, out, _ = run(["check-morphism", cls_path, cls_path,
                        write(tmp_path, "swap.json", swap)], capsys)
    assert code == 2 and "{r}" in out
    code, _, _ = run(["check-morphism", cls_path, cls_path,
                      write(tmp_path, "partial.json", {"f": {"p": "p"}})], capsys)
    assert code == 1


def test_cap_flag(ex5_path, tmp_path, capsys):
    code, _, err = run(["--cap", "3", "decompose", str(ex5_path), "--out",
                        str(tmp_path / "o")], capsys)
    assert code == 1 and "cap" in err
    assert not (tmp_path / "o").exists()


def test_selftest(capsys):
    code, out, _ = run(["--seed", "3", "selftest", "--count", "20", "--max-points", "5"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "instances: 20 (seed 3)"
    assert all(": PASS" in line for line in out.splitlines() if line.startswith("("))


def test_module_entry_point(ex5_path):
    proc = subprocess.run([sys.executable, "-m", "spcls", "validate", str(ex5_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0


def test_no_command_is_an_error(capsys):
    with pytest.raises(SystemExit):
        main([])
