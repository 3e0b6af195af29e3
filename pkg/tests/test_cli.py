from pathlib import Path

import pytest

from deak.cli import main
from deak.corpus import DATA_DIR
from deak.parser import parse_document
from deak.proofs import is_cut_free

DECLS = str(DATA_DIR / "_decls.deak")
DEMO = Path(__file__).resolve().parent.parent / "demo"
CUT = str(DEMO / "composed_cut.proof")
ANN_MODEL = str(DEMO / "announce_r.deak")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_ok(capsys):
    code, out, _ = run(capsys, "check", DECLS, str(DATA_DIR / "S2.display.proof"))
    assert code == 0 and out.startswith("OK")


def test_check_failure_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.proof"
    bad.write_text("(Id \"'p' |- 'q'\")\n")
    code, out, _ = run(capsys, "check", DECLS, str(bad))
    assert code == 1 and "FAIL" in out


def test_missing_file_is_usage_error(capsys):
    code, _, err = run(capsys, "check", DECLS, "/nonexistent.proof")
    assert code == 2 and "cannot read" in err


def test_eliminate_writes_cut_free_proof(capsys, tmp_path):
    out_file = tmp_path / "out.proof"
    code, out, _ = run(capsys, "eliminate", DECLS, CUT, "--out", str(out_file))
    assert code == 0 and "cuts" in out
    decls = parse_document(Path(DECLS).read_text()).decls
    doc = parse_document(out_file.read_text(), decls)
    assert all(is_cut_free(p) for p in doc.proofs)
    code, out, _ = run(capsys, "check", DECLS, str(out_file))
    assert code == 0


def test_eliminate_cut_free_is_identity(capsys, tmp_path):
    src = DATA_DIR / "C.dia-atom.proof"
    out_file = tmp_path / "same.proof"
    code, _, _ = run(capsys, "eliminate", DECLS, str(src), "--out", str(out_file))
    assert code == 0 and out_file.read_bytes() == src.read_bytes()


def test_eliminate_fuel(capsys, monkeypatch):
    code, _, err = run(capsys, "eliminate", DECLS, CUT, "--fuel", "1")
    assert code == 3 and "fuel" in err
    monkeypatch.setenv("DEAK_FUEL", "1")
    assert run(capsys, "eliminate", DECLS, CUT)[0] == 3
    monkeypatch.setenv("DEAK_FUEL", "lots")
    assert run(capsys, "eliminate", DECLS, CUT)[0] == 2


def test_lint_exit_codes(capsys):
    code, out, _ = run(capsys, "lint")
    assert code == 0 and "segregation FAIL atom" in out
    code, out, _ = run(capsys, "lint", "--calculus", "deak-legacy")
    assert code == 1 and "C1 FAIL reduce" in out
    code, out, _ = run(capsys, "lint", "--list")
    assert code == 0 and "swapoutL" in out


def test_bad_calculus_is_usage(capsys):
    with pytest.raises(SystemExit) as e:
        main(["lint", "--calculus", "deak-nothing"])
    assert e.value.code == 2


def test_mc_announcement_model(capsys):
    code, out, _ = run(capsys, "mc", ANN_MODEL, "--seq", "<alpha>[a]p |- q", "--atoms", "p,q,r")
    assert code == 1 and "counterexample at u" in out


def test_mc_valid_sequent(capsys):
    code, out, _ = run(capsys, "mc", "--seq", "p & q |- q", "--worlds", "2")
    assert code == 0 and "valid up to bound" in out


def test_mc_malformed(capsys):
    code, _, err = run(capsys, "mc", "--seq", "p & |- q")
    assert code == 2 and err


def test_mc_axioms_small(capsys):
    code, out, _ = run(capsys, "mc", "--axioms", "--worlds", "2")
    assert code == 0
    assert out.count("valid up to bound") == 24


def test_corpus_commands(capsys):
    code, out, _ = run(capsys, "corpus", "--verify")
    assert code == 0 and out.rstrip().endswith("27 entries, 0 failures")
    code, out, _ = run(capsys, "corpus", "--list")
    assert code == 0 and len(out.splitlines()) == 27
    code, out, _ = run(capsys, "corpus", "--show", "S2.display")
    assert code == 0 and "|-" in out
    assert run(capsys, "corpus", "--show", "nope")[0] == 2
    assert run(capsys, "corpus", "--verify", "--calculus", "deak-legacy")[0] == 1
