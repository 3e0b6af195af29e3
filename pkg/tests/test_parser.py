import pytest

from deak.corpus import list_entries
from deak.parser import (
    ParseError, parse_document, parse_formula, parse_proof_file, parse_sequent, parse_structure,
    render,
)
from deak.proofs import ProofTree
from deak.syntax import (
    And, Atom, Box, DeakError, DDia, Fm, Gt, I, Imp, Or, Phi, Prox, Semi, Sequent, SVar,
)

p, q, r = Atom("p"), Atom("q"), Atom("r")


def test_formula_precedence():
    assert parse_formula("p & q | r") == Or(And(p, q), r)
    assert parse_formula("p -> q -> r") == Imp(p, Imp(q, r))


def test_dynamic_box(decls):
    lab = decls.labels()[0]
    f = parse_formula("<alpha>[a]p", decls)
    assert isinstance(f, DDia) and f.act == lab
    assert isinstance(f.body, Box) and f.body.agent.name == "a" and f.body.body == p


def test_structures(decls):
    s = parse_structure("I ; {a} 'p'", decls)
    assert s == Semi(I(), Prox(s.right.agent, Fm(p)))
    assert parse_structure("Phi[alpha] > 'p'", decls) == Gt(Phi(decls.labels()[0]), Fm(p))
    x, y, z = SVar("X"), SVar("Y"), SVar("Z")
    assert parse_structure("X ; Y ; Z", decls) == Semi(Semi(x, y), z)


def test_sequents(decls):
    assert parse_sequent("'p' |- 'p'", decls) == Sequent(Fm(p), Fm(p))
    assert parse_sequent("I |- I", decls) == Sequent(I(), I())
    s = parse_sequent("{alpha}'p' |- 'p'", decls)
    assert s.succ == Fm(p)


def test_proof_nodes(decls):
    leaf = parse_proof_file("(Id \"'p' |- 'p'\")", decls)
    assert leaf == ProofTree("Id", Sequent(Fm(p), Fm(p)))
    one = parse_proof_file("(WL \"'p' ; 'q' |- 'p'\" (Id \"'p' |- 'p'\"))", decls)
    assert one.rule == "WL" and len(one.children) == 1


def test_canonical_rendering(decls):
    assert render(parse_formula("p&q")) == "p & q"
    assert render(Phi(decls.labels()[0]), decls) == "Phi[alpha]"


def test_error_carries_position():
    with pytest.raises(ParseError) as e:
        parse_formula("p & & q")
    assert "col" in str(e.value)


def test_undeclared_agent_rejected():
    with pytest.raises(DeakError) as e:
        parse_formula("[b]p", parse_document("agent a;").decls)
    assert e.value.code == "unknown-agent"


def test_corpus_round_trip():
    for e in list_entries():
        for pt in e.proofs:
            text = render(pt, e.decls)
            assert parse_proof_file(text, e.decls) == pt
            for n in pt.nodes():
                assert parse_sequent(render(n.conclusion, e.decls), e.decls) == n.conclusion
