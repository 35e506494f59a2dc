import json
import os
import re
import subprocess
import sys
from fractions import Fraction

import pytest

from lie2kit.cli import (
    FormatError,
    dumps,
    from_json,
    load_path,
    loads,
    main,
    to_json,
    verify_document,
)
from lie2kit.cli.documents import CODECS
from lie2kit.cli.fixtures import invalid_corpus, valid_corpus


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    assert main(["fixtures", str(root)]) == 0
    return root


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_valid_corpus_passes(corpus, capsys):
    code, out, _ = run(capsys, "verify", corpus, "--format", "json")
    assert code == 0
    reports = json.loads(out)
    assert len(reports) == len(valid_corpus())
    assert all(r["passed"] for r in reports)


def test_heis_cm_lists_axioms(corpus, capsys):
    code, out, _ = run(capsys, "verify", corpus / "heisCM.json", "--format", "json")
    assert code == 0
    ids = {c["check"] for c in json.loads(out)["checks"]}
    assert {"axiom_i", "axiom_ii"} <= ids


def test_invalid_corpus_fails(corpus, capsys):
    code, out, _ = run(capsys, "verify", corpus / "invalid", "--format", "json")
    assert code == 1
    reports = json.loads(out)
    assert len(reports) == len(invalid_corpus())
    assert not any(r["passed"] for r in reports)


def test_corrupted_sl2_names_triple(corpus, capsys):
    code, out, _ = run(capsys, "verify", corpus / "invalid" / "sl2-corrupted.json",
                       "--format", "json")
    assert code == 1
    failed = [c for c in json.loads(out)["checks"] if not c["passed"]]
    assert failed[0]["check"] == "jacobi"
    assert sorted(failed[0]["counterexample"]["triple"]) == ["E", "F", "H"]


def test_truncated_is_malformed(corpus, capsys):
    code, _, err = run(capsys, "verify", corpus / "malformed" / "truncated.json")
    assert code == 2
    assert "line" in err and "column" in err


def test_float_scalars_rejected():
    text = dumps("lie_algebra", "h", valid_corpus()[0][2]).replace('"basis"', '"x": 0.5, "basis"')
    with pytest.raises(FormatError):
        loads(text)


def test_unknown_kind_rejected():
    with pytest.raises(FormatError):
        from_json({"version": "1", "kind": "sheaf", "name": "x", "payload": {}})


def test_scalars_are_exact():
    doc = to_json("cocycle", "c", valid_corpus()[-2][2])
    assert doc["payload"]["weights"] == ["1/2", "1/2"]
    back = from_json(doc)
    assert back.value.weights == (Fraction(1, 2), Fraction(1, 2))


@pytest.mark.parametrize("name,kind,value", valid_corpus() + invalid_corpus(),
                         ids=[e[0] for e in valid_corpus() + invalid_corpus()])
def test_round_trip(name, kind, value):
    text = dumps(kind, name, value)
    doc = loads(text)
    assert (doc.kind, doc.name) == (kind, name)
    assert dumps(doc.kind, doc.name, doc.value) == text


def test_build_lie2_and_back(corpus, tmp_path, capsys):
    out = tmp_path / "lie2.json"
    assert run(capsys, "build", "lie2-of-cm", corpus / "heisCM.json", "-o", out)[0] == 0
    doc = load_path(out)
    assert doc.kind == "lie2_algebra" and doc.value.V1.dim == 4
    assert run(capsys, "verify", out)[0] == 0
    back = tmp_path / "cm.json"
    assert run(capsys, "build", "cm-of-lie2", out, "-o", back)[0] == 0
    assert run(capsys, "verify", back)[0] == 0
    original = load_path(corpus / "heisCM.json").value
    rebuilt = load_path(back).value
    assert rebuilt.delta == original.delta
    assert rebuilt.m == original.m and rebuilt.n == original.n


def test_build_linking(corpus, tmp_path, capsys):
    out = tmp_path / "L.json"
    assert run(capsys, "build", "linking", corpus / "pt-to-pair-bundle.json", "-o", out)[0] == 0
    L = load_path(out).value
    assert len(L.objects) == 3 and len(L.arrows) == 9
    assert run(capsys, "verify", out)[0] == 0


def test_build_refuses_invalid_input(corpus, capsys):
    code, _, err = run(capsys, "build", "lie2-of-cm", corpus / "invalid" / "cm-axiom-i.json")
    assert code == 1
    assert "axiom_i" in err


def test_build_wrong_kind(corpus, capsys):
    assert run(capsys, "build", "linking", corpus / "heisCM.json")[0] == 2


def test_compose_finite_against_oracle(corpus, tmp_path, capsys):
    C = tmp_path / "C.json"
    P = corpus / "pt-to-pair-bundle.json"
    assert run(capsys, "build", "bundle-of-functor", corpus / "pt-to-pair.json", "-o", C)[0] == 0
    R = tmp_path / "R.json"
    assert run(capsys, "compose", C, corpus / "ptGpd.json", "-o", R)[0] == 2
    code, out, _ = run(capsys, "verify", C, "--against", P, "--format", "json")
    assert code == 0
    checks = {c["check"]: c["passed"] for c in json.loads(out)["checks"]}
    assert checks["against.isomorphic"]


def test_compose_lie_with_identity(corpus, tmp_path, capsys):
    phi = corpus / "phi.json"
    ident = tmp_path / "id.json"
    doc = load_path(phi)
    from lie2kit.lie2 import identity_functor

    ident.write_text(dumps("lie2_functor", "id", identity_functor(doc.value.target)))
    out = tmp_path / "comp.json"
    assert run(capsys, "compose", ident, phi, "-o", out)[0] == 0
    code, out_text, _ = run(capsys, "verify", out, "--against", phi, "--format", "json")
    assert code == 0
    checks = {c["check"]: c["passed"] for c in json.loads(out_text)["checks"]}
    assert checks["against.isomorphic"]


def test_compose_wrong_middle(corpus, capsys):
    code, _, err = run(capsys, "compose", corpus / "pt-to-pair.json", corpus / "pt-to-pair.json")
    assert code == 1
    assert "cannot compose" in err and "but" in err


def test_morita_verdicts(corpus, capsys):
    assert run(capsys, "morita", corpus / "phi-bundle.json")[0] == 0
    code, out, _ = run(capsys, "morita", corpus / "phi.json", "--format", "json")
    assert code == 0
    code, out, _ = run(capsys, "morita", corpus / "disc-to-pt.json", "--format", "json")
    assert code == 1
    bad = json.loads(out)["checks"][0]
    assert bad["check"] == "fully_faithful" and bad["counterexample"]["hom_sizes"] == [0, 1]
    assert run(capsys, "morita", corpus / "pt-to-pair-bundle.json")[0] == 0
    assert run(capsys, "morita", corpus / "heisCM.json")[0] == 2


def test_resolve_cocycle(corpus, tmp_path, capsys):
    out = tmp_path / "cells.json"
    assert run(capsys, "resolve-cocycle", corpus / "cocycle-two-object.json", "-o", out)[0] == 0
    assert out.read_text() == (corpus / "cells-two-object.json").read_text().replace(
        '"cells-two-object"', '"cells(cocycle-two-object)"')
    cells = json.loads(out.read_text())["payload"]["cells"]
    assert cells == [{"u": ["-1/2"], "v": ["1/2", 0]}, {"u": ["1/2"], "v": ["1/2", 0]}]
    assert run(capsys, "verify", out)[0] == 0


def test_resolve_invalid_cocycle(corpus, capsys):
    code, _, err = run(capsys, "resolve-cocycle", corpus / "invalid" / "cocycle-weights.json")
    assert code == 1
    assert "weights_sum" in err


@pytest.mark.parametrize("kind", ["crossed_module", "lie2_functor", "cocycle", "fin_groupoid",
                                  "fin_functor", "fin_bibundle"])
def test_sample_is_deterministic(kind, tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "sample", kind, "--seed", 7, "-o", a)[0] == 0
    assert run(capsys, "sample", kind, "--seed", 7, "-o", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert run(capsys, "verify", a)[0] in (0, 1)


def test_reports_are_byte_deterministic(corpus):
    cmd = [sys.executable, "-m", "lie2kit.cli", "verify", str(corpus), "--format", "json"]
    env = dict(os.environ, PYTHONHASHSEED="1")
    first = subprocess.run(cmd, capture_output=True, env=env)
    env["PYTHONHASHSEED"] = "2"
    second = subprocess.run(cmd, capture_output=True, env=env)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout


def test_size_guard(corpus, capsys, monkeypatch):
    monkeypatch.setenv("LIE2_MAX_SIZE", "3")
    code, _, err = run(capsys, "verify", corpus / "codisc-ab.json")
    assert code == 1
    assert "LIE2_MAX_SIZE" in err


def test_shipped_corpus_is_current(corpus, corpus_dir):
    if not os.path.isdir(corpus_dir):
        pytest.skip("no shipped corpus")
    for root, _, files in os.walk(corpus):
        for f in files:
            rel = os.path.relpath(os.path.join(root, f), corpus)
            with open(os.path.join(corpus_dir, rel), "rb") as fh:
                assert fh.read() == (corpus / rel).read_bytes(), rel


def test_format_examples_verify():
    path = os.path.join(os.path.dirname(__file__), os.pardir, "docs", "format.md")
    if not os.path.exists(path):
        pytest.skip("no format document")
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    blocks = re.findall(r"```json\n(.*?)```", text, re.S)
    kinds = set()
    for block in blocks[1:]:
        doc = loads(block)
        assert verify_document(doc).ok, doc.name
        kinds.add(doc.kind)
    assert kinds == set(CODECS)
