import time

import pytest

from deak.corpus import get
from deak.cutelim import (
    Eliminator, FuelExhausted, builtin_reductions, eliminate, lint, parametric_step,
    reduce_principal, rule_table,
)
from deak.parser import parse_proof_file
from deak.proofs import ProofTree, check, is_cut_free, subformula_property
from deak.syntax import Sequent, complexity


def P(text, decls):
    return parse_proof_file(text, decls)


def cut_of(p1, p2):
    return ProofTree("Cut", Sequent(p1.conclusion.ante, p2.conclusion.succ), (p1, p2))


def cuts(pt):
    return [n for n in pt.nodes() if n.rule == "Cut"]


AND_R = """(andR "'p' ; 'q' |- 'p & q'" (Id "'p' |- 'p'") (Id "'q' |- 'q'"))"""
AND_ID = f"""(andL "'p & q' |- 'p & q'" {AND_R})"""
AND_SWAP = """(andL "'p & q' |- 'q & p'" (EL "'p' ; 'q' |- 'q & p'"
    (andR "'q' ; 'p' |- 'q & p'" (Id "'q' |- 'q'") (Id "'p' |- 'p'"))))"""


def test_identity_cut_collapses(prime, decls):
    idp = P("(Id \"'p' |- 'p'\")", decls)
    assert eliminate(cut_of(idp, idp), prime) == idp


def test_cut_free_input_unchanged(prime):
    pt = get("C.dia-atom").proofs[0]
    assert eliminate(pt, prime) is pt


def test_composed_completeness_halves(prime):
    e = get("C.dia-atom")
    for a, b in ((0, 1), (1, 0)):
        cut = cut_of(e.proofs[a], e.proofs[b])
        out = eliminate(cut, prime)
        assert check(out, prime).ok
        assert is_cut_free(out) and subformula_property(out)
        assert out.conclusion == cut.conclusion


def test_conjunction_principal_reduction(prime, decls):
    cut = cut_of(P(AND_R, decls), P(AND_SWAP, decls))
    out = reduce_principal(cut, prime)
    assert check(out, prime).ok and out.conclusion == cut.conclusion
    assert sorted(c.children[0].conclusion.succ.formula.name for c in cuts(out)) == ["p", "q"]


def test_one_reduction_splices_premise(prime, decls):
    one_r = P("(oneR \"Phi[alpha] |- '1[alpha]'\")", decls)
    one_l = ProofTree("oneL", Sequent(one_r.conclusion.succ, one_r.conclusion.succ), (one_r,))
    assert reduce_principal(cut_of(one_r, one_l), prime) == one_r


def test_principal_requires_principal(prime, decls):
    from deak.syntax import DeakError
    w = P("(W2L \"'p & q' |- 'r' > 'r'\" (Id \"'r' |- 'r'\"))", decls)
    with pytest.raises(DeakError):
        reduce_principal(cut_of(P(AND_R, decls), w), prime)


def test_weakened_cut_formula_vanishes(prime, decls):
    w = P("(W2L \"'p & q' |- 'r' > 'r'\" (Id \"'r' |- 'r'\"))", decls)
    cut = cut_of(P(AND_R, decls), w)
    out = parametric_step(cut, prime)
    assert is_cut_free(out) and check(out, prime).ok
    assert out.rule == "W2L" and out.conclusion == cut.conclusion


def test_contraction_gives_two_principal_cuts(prime, decls):
    both = f"""(CL "'p & q' |- '(p & q) & (p & q)'"
                 (andR "'p & q' ; 'p & q' |- '(p & q) & (p & q)'" {AND_ID} {AND_ID}))"""
    cut = cut_of(P(AND_R, decls), P(both, decls))
    out = parametric_step(cut, prime)
    assert check(out, prime).ok and out.conclusion == cut.conclusion
    new = cuts(out)
    assert len(new) == 2
    for c in new:
        assert c.children[1].rule == "andL"
    full = eliminate(cut, prime)
    assert is_cut_free(full) and check(full, prime).ok


def test_undisplayed_atom_uses_display_equivalent_axiom(prime, decls):
    left = P("(atom \"{alpha}^'p' |- 'p'\")", decls)
    right = P("""(dp-act "'p' |- {alpha}^{alpha}'p'" (atom "{alpha}'p' |- {alpha}'p'"))""", decls)
    cut = cut_of(left, right)
    out = eliminate(cut, prime)
    assert is_cut_free(out) and check(out, prime).ok and out.conclusion == cut.conclusion


def test_fuel_exhaustion_reports_partial(prime):
    e = get("C.box-and")
    cut = cut_of(*e.proofs)
    with pytest.raises(FuelExhausted) as info:
        Eliminator(prime, fuel=1).run(cut)
    assert info.value.code == "fuel-exhausted"
    assert info.value.partial.conclusion == cut.conclusion


def test_stats_are_reported(prime):
    el = Eliminator(prime)
    out = el.run(cut_of(*get("C.box-and").proofs))
    assert el.stats.cuts == 1 and el.stats.size == out.size()
    assert el.stats.max_complexity == complexity(get("C.box-and").proofs[0].conclusion.succ.formula)


def test_reduction_table_covers_connectives():
    table = builtin_reductions()
    names = {t.connective for t in table}
    for group in ["T", "F", "and", "or", "imp", "limp", "coimp", "lcoimp", "dia", "box",
                  "adjdia", "adjbox", "ddia", "dbox", "adjddia", "adjdbox", "one", "axiom"]:
        assert group in names
    assert all(t.rewrite for t in table)


def test_lint_prime(prime):
    t = time.perf_counter()
    rep = lint(prime)
    assert time.perf_counter() - t < 1.0
    assert rep.conditions_ok
    assert rep.get("segregation").line() == "segregation FAIL atom atom"
    assert rep.get("C8").line().startswith("C8 PASS table")
    others = [v for v in rep.verdicts if v.cond != "segregation"]
    assert all(v.ok for v in others)


def test_lint_legacy(legacy):
    rep = lint(legacy)
    assert not rep.conditions_ok
    assert rep.get("C1").rule == "reduce"
    assert rep.get("C7").rule == "swap-in"


def test_lint_is_deterministic(prime):
    assert lint(prime).text() == lint(prime).text()


def test_rule_table_lists_every_rule(prime):
    lines = rule_table(prime).splitlines()
    assert len(lines) == len(prime.rules)
    assert any(l.startswith("swapoutL") and "per-beta" in l for l in lines)
