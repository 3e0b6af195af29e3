from hypothesis import given, settings, strategies as st

from deak.corpus import load_decls
from deak.parser import parse_formula, parse_structure, render
from deak.proofs import display_chain
from deak.semantics import (
    KripkeModel, announcement_pool, comp_fact, relation_modalities, update,
)
from deak.syntax import (
    ActionLabel, AdjBox, AdjDBox, AdjDDia, AdjDia, AdjDProx, AdjProx, Agent, And, Atom, Bot,
    Box, CoImp, DBox, DDia, DProx, Dia, Fm, Gt, I, Imp, LCoImp, LImp, Lt, One, Or, Phi, Prox,
    Semi, Sequent, Structure, SVar, Top, iter_paths, polarity_of,
)

DECLS = load_decls()
AG = Agent("a")
LABELS = [ActionLabel("alpha", "k"), ActionLabel("alpha", "l")]

atoms = st.sampled_from([Atom("p"), Atom("q"), Atom("r"), Top(), Bot()])
labels = st.sampled_from(LABELS)


def _formulas(children):
    binary = st.sampled_from([And, Or, Imp, LImp, CoImp, LCoImp])
    agent_ops = st.sampled_from([Dia, Box, AdjDia, AdjBox])
    act_ops = st.sampled_from([DDia, DBox, AdjDDia, AdjDBox])
    return st.one_of(
        st.builds(lambda c, a, b: c(a, b), binary, children, children),
        st.builds(lambda c, b: c(AG, b), agent_ops, children),
        st.builds(lambda c, l, b: c(l, b), act_ops, labels, children),
    )


formulas = st.recursive(st.one_of(atoms, st.builds(One, labels)), _formulas, max_leaves=8)


def _structures(children):
    binary = st.sampled_from([Semi, Gt, Lt])
    return st.one_of(
        st.builds(lambda c, a, b: c(a, b), binary, children, children),
        st.builds(lambda c, b: c(AG, b), st.sampled_from([Prox, AdjProx]), children),
        st.builds(lambda c, l, b: c(l, b), st.sampled_from([DProx, AdjDProx]), labels, children),
    )


leaves = st.one_of(st.builds(Fm, formulas), st.just(I()), st.builds(Phi, labels),
                   st.sampled_from([SVar("X"), SVar("Y"), SVar("Z")]))
structures = st.recursive(leaves, _structures, max_leaves=6)


@given(formulas)
def test_formula_round_trip(f):
    assert parse_formula(render(f, DECLS), DECLS) == f


@given(structures)
def test_structure_round_trip(s):
    assert parse_structure(render(s, DECLS), DECLS) == s


@settings(max_examples=60, deadline=None)
@given(structures, structures, st.data())
def test_display_side_is_polarity(prime, a, b, data):
    seq = Sequent(a, b)
    paths = [p for p, x in iter_paths(seq) if p and isinstance(x, Structure)]
    path = data.draw(st.sampled_from(paths))
    assert display_chain(seq, path, prime).side == polarity_of(seq, path)


small = st.integers(min_value=1, max_value=6)


@st.composite
def relation_instance(draw):
    nx, ny = draw(small), draw(small)
    X, Y = range(nx), range(ny)
    R = draw(st.sets(st.tuples(st.sampled_from(X), st.sampled_from(Y))))
    U = draw(st.sets(st.sampled_from(Y)))
    V = draw(st.sets(st.sampled_from(X)))
    return relation_modalities(R, X, Y), U, V


@given(relation_instance())
def test_adjunctions(inst):
    ops, U, V = inst
    assert ops.adjunction_dia_cbox(U, V)
    assert ops.adjunction_cdia_box(U, V)


@given(st.integers(1, 5).flatmap(
    lambda n: st.tuples(st.just(range(n)), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))))
def test_comp_fact(args):
    X, R = args
    assert comp_fact(R, X)


@st.composite
def kripke(draw):
    n = draw(st.integers(1, 3))
    ws = [f"w{i}" for i in range(n)]
    pairs = st.sets(st.tuples(st.sampled_from(ws), st.sampled_from(ws)))
    val = {p: draw(st.sets(st.sampled_from(ws))) for p in ("p", "q")}
    return KripkeModel.build(ws, {"a": draw(pairs)}, val)


POOL = announcement_pool(("p", "q"), ("a",))


@given(kripke(), st.sampled_from(POOL))
def test_update_preserves_atoms(m, ann):
    up, _ = update(m, ann)
    for p in ("p", "q"):
        for (w, j) in up.worlds:
            assert ((w, j) in up.valuation(p)) == (w in m.valuation(p))
