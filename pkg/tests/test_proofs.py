from deak.calculus import builtin
from deak.corpus import get
from deak.parser import parse_proof_file, parse_sequent
from deak.proofs import (
    HYPOTHESIS, INTRODUCED, PRINCIPAL_DISPLAYED, ProofTree, check, display_at, display_sides,
    history_tree, is_cut_free, subformula_property,
)
from deak.syntax import PRECEDENT, SUCCEDENT, Sequent


def test_display_example_checks():
    e = get("S2.display")
    rep = check(e.proofs[0], builtin("deak-prime", e.decls))
    assert rep.ok and rep.nodes == 4


def test_dia_atom_checks_and_is_cut_free(prime):
    e = get("C.dia-atom")
    for p in e.proofs:
        assert check(p, prime).ok
        assert is_cut_free(p) and subformula_property(p)


def test_wrong_identity(prime, decls):
    rep = check(parse_proof_file("(Id \"'p' |- 'q'\")", decls), prime)
    assert not rep.ok and rep.reason == "no-matching-assignment"
    assert rep.text() == "FAIL root no-matching-assignment"


def test_check_failures(prime, decls):
    rep = check(parse_proof_file('(Cut "X |- Y" (Id "p |- p"))', decls), prime)
    assert rep.reason == "arity-mismatch"
    rep = check(parse_proof_file('(Nope "p |- p")', decls), prime)
    assert rep.reason == "unknown-rule"
    bad = "(W1L \"'q' |- 'p' < 'p'\" (Id \"'q' |- 'q'\"))"
    rep = check(parse_proof_file(bad, decls), prime)
    assert rep.reason == "premise-mismatch" and rep.fail_path == ()


def test_contraction_bifurcates(prime, decls):
    pt = parse_proof_file("""
      (CL "'p' |- 'p'"
        (WL "'p' ; 'p' |- 'p'" (Id "'p' |- 'p'")))""", decls)
    h = history_tree(pt, ("ante",), prime)
    assert len(h.root.children) == 2
    kinds = sorted(n.kind for n in h.leaves())
    assert kinds == sorted([INTRODUCED, PRINCIPAL_DISPLAYED])


def test_history_of_identity_and_hypothesis(prime, decls):
    h = history_tree(parse_proof_file("(Id \"'p' |- 'p'\")", decls), ("succ",), prime)
    assert h.root.kind == PRINCIPAL_DISPLAYED
    d = decls.with_hyps([parse_sequent("'p' |- 'q'", decls)])
    pt = parse_proof_file("(Hyp \"'p' |- 'q'\")", d)
    h = history_tree(pt, ("succ",), prime.with_decls(d))
    assert h.root.kind == HYPOTHESIS


def test_display_at_examples(prime, decls):
    pt, top = display_at(parse_sequent("X |- Y > Z", decls), ("ante",), prime)
    assert top == parse_sequent("X |- Y > Z", decls) and pt.rule == "Hyp"
    pt, top = display_at(parse_sequent("X |- Y > Z", decls), ("succ", "L"), prime)
    assert top.ante == parse_sequent("Y |- I", decls).ante
    pt, top = display_at(parse_sequent("'p' |- 'q'", decls), ("ante",), prime)
    assert pt.children == ()
    pt, top = display_at(parse_sequent("{alpha}X |- Y", decls), ("ante", "C"), prime)
    assert top == parse_sequent("X |- {alpha}^Y", decls)


def test_display_sides_unique(prime, decls):
    s = parse_sequent("{a}(X > {alpha}^Y) |- Z < W", decls)
    assert display_sides(s, ("ante", "C", "R", "C"), prime) == {PRECEDENT}
    assert display_sides(s, ("ante", "C", "L"), prime) == {SUCCEDENT}


def test_composed_cut_is_not_cut_free():
    e = get("C.dia-atom")
    p1, p2 = e.proofs
    cut = ProofTree("Cut", Sequent(p1.conclusion.ante, p2.conclusion.succ), (p1, p2))
    assert not is_cut_free(cut)
