import pytest

from deak.parser import parse_formula, parse_sequent, parse_structure
from deak.syntax import (
    AdjDBox, And, Atom, Bot, DeakError, I, PRECEDENT, SUCCEDENT, complexity, polarity_of,
    subformulas, substitute, translate,
)


def test_polarity_under_gt_on_the_right(decls):
    s = parse_sequent("X |- Y > Z", decls)
    assert polarity_of(s, ("succ", "L")) == PRECEDENT
    assert polarity_of(s, ("succ", "R")) == SUCCEDENT


def test_polarity_of_root_antecedent(decls):
    assert polarity_of(parse_sequent("X |- Y", decls), ("ante",)) == PRECEDENT


def test_polarity_flips_inside_antecedent_gt(decls):
    s = parse_sequent("{alpha}('p' > 'q') |- I", decls)
    assert polarity_of(s, ("ante", "C", "L")) == SUCCEDENT
    assert polarity_of(s, ("ante", "C", "R")) == PRECEDENT


def test_translate_table_rows(decls):
    p, q = Atom("p"), Atom("q")
    assert translate(parse_structure("'p' ; 'q'", decls), PRECEDENT) == And(p, q)
    assert translate(I(), SUCCEDENT) == Bot()
    lab = decls.labels()[0]
    assert translate(parse_structure("{alpha}^'p'", decls), SUCCEDENT) == AdjDBox(lab, p)


def test_substitute_single_and_root(decls):
    s = parse_structure("'p' ; 'p'", decls)
    assert substitute(s, [("L",)], I()) == parse_structure("I ; 'p'", decls)
    repl = parse_structure("X ; Y", decls)
    assert substitute(parse_structure("'p'", decls), [()], repl) == repl


def test_substitute_requires_equal_formula_leaves(decls):
    s = parse_structure("{alpha}('p' ; 'q')", decls)
    with pytest.raises(DeakError) as e:
        substitute(s, [("C", "L"), ("C", "R")], I())
    assert e.value.code == "non-formula-target"


def test_subformulas(decls):
    p, q = Atom("p"), Atom("q")
    assert subformulas(p) == {p}
    assert subformulas(parse_formula("p & q")) == {And(p, q), p, q}
    f = parse_formula("<alpha>(p -> q)", decls)
    assert subformulas(f) == {f, f.body, p, q}
    assert complexity(f) == 4
