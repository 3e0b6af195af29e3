"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -s` or `python tests/test_acceptance.py`.
"""
import itertools
import random
import sys
import time
from pathlib import Path

import pytest

from deak.calculus import builtin
from deak.corpus import list_entries, load_decls, verify_all
from deak.cutelim import Eliminator, lint
from deak.parser import parse_document, parse_formula
from deak.proofs import ProofTree, check, display_at, display_sides, is_cut_free, subformula_property
from deak.semantics import (
    Bounds, KripkeModel, announcement_pool, axiom_instances, check_many, comp_fact,
    extension, model_from_spec, relation_modalities, update, valid_bounded,
)
from deak.syntax import Declarations, Sequent, Structure, iter_paths, polarity_of

DEMO = Path(__file__).resolve().parent.parent / "demo"


def _timed(fn):
    t = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t


def crit1():
    rep = verify_all(lambda d: builtin("deak-prime", d))
    n_a = sum(1 for e in list_entries() if e.id.startswith("A."))
    n_c = sum(1 for e in list_entries() if "completeness" in e.tags)
    return rep.ok, f"{len(rep.results)} entries ({n_a} derived rules, {n_c} completeness pairs), {len(rep.failures)} failures"


def crit2():
    rep = lint(builtin("deak-prime", load_decls()))
    seg = rep.get("segregation")
    ok = rep.conditions_ok and not seg.ok and seg.rule == "atom"
    ok = ok and all(v.ok for v in rep.verdicts if v.cond != "segregation")
    return ok, f"{rep.get('C8').line()}; {seg.line()}"


def crit3():
    rep = lint(builtin("deak-legacy", load_decls()))
    c1, c7 = rep.get("C1"), rep.get("C7")
    ok = not c1.ok and c1.rule == "reduce" and not c7.ok and c7.rule == "swap-in"
    return ok, f"{c1.line()}; {c7.line()}"


def crit4():
    worst = 0
    n = 0
    for e in list_entries():
        if "completeness" not in e.tags:
            continue
        calc = builtin("deak-prime", e.decls)
        for p1, p2 in (e.proofs, e.proofs[::-1]):
            end = Sequent(p1.conclusion.ante, p2.conclusion.succ)
            el = Eliminator(calc, fuel=100000)
            out = el.run(ProofTree("Cut", end, (p1, p2)))
            worst = max(worst, el.stats.built)
            n += 1
            if not (is_cut_free(out) and check(out, calc).ok and out.conclusion == end
                    and subformula_property(out)):
                return False, f"{e.id} failed"
    return n == 32, f"{n} compositions cut-free, max {worst} generated nodes"


def crit5():
    agents, atoms = ("a",), ("p", "q")
    pool = announcement_pool(atoms, agents)
    decls = Declarations(frozenset(agents), tuple((a.base, a) for a in pool))
    insts = axiom_instances(decls, [a.label() for a in pool], "a")
    pairs = [pr for _, l, r in insts for pr in ((l, r), (r, l))]
    verdicts = check_many(pairs, Bounds(3, atoms, agents), decls)
    bad = sum(not v.valid for v in verdicts)
    return bad == 0, f"{len(pairs)} directions, {verdicts[0].checked} models, {bad} counterexamples"


def crit6():
    doc = parse_document((DEMO / "announce_r.deak").read_text())
    d, m = doc.decls, model_from_spec(doc.models[0])
    e1 = extension(m, parse_formula("[a]p", d), d)
    e2 = extension(m, parse_formula("<alpha>[a]p", d), d)
    v = valid_bounded(parse_formula("<alpha>[a]p", d), parse_formula("q", d), decls=d, models=[m])
    ok = e1 == frozenset() and e2 == {"u"} and not v.valid and v.world == "u"
    return ok, f"[a]p -> {sorted(e1)}, <alpha>[a]p -> {sorted(e2)}, counterexample at {v.world}"


def crit7():
    n = 0
    for e in list_entries():
        calc = builtin("deak-prime", e.decls)
        for seq in e.ends:
            for path, x in iter_paths(seq):
                if not path or not isinstance(x, Structure):
                    continue
                pol = polarity_of(seq, path)
                tree, shown = display_at(seq, path, calc)
                side = "ante" if pol == "precedent" else "succ"
                if getattr(shown, side) != x or display_sides(seq, path, calc) != {pol}:
                    return False, f"{e.id} {path}"
                n += 1
    return True, f"{n} occurrences displayed on their unique side"


def _subsets(xs):
    return [frozenset(c) for r in range(len(xs) + 1) for c in itertools.combinations(xs, r)]


def crit8():
    n = 0
    for size in range(1, 4):
        X = list(range(size))
        cells = [(x, y) for x in X for y in X]
        subs = _subsets(X)
        for bits in range(1 << len(cells)):
            R = {c for i, c in enumerate(cells) if bits >> i & 1}
            ops = relation_modalities(R, X, X)
            for U in subs:
                for V in subs:
                    if not (ops.adjunction_dia_cbox(U, V) and ops.adjunction_cdia_box(U, V)):
                        return False, f"R={sorted(R)} U={set(U)} V={set(V)}"
                    n += 1
    rng = random.Random(2024)
    for _ in range(1000):
        nx, ny = rng.randint(1, 6), rng.randint(1, 6)
        X, Y = range(nx), range(ny)
        R = {(x, y) for x in X for y in Y if rng.random() < 0.4}
        ops = relation_modalities(R, X, Y)
        U = {y for y in Y if rng.random() < 0.5}
        V = {x for x in X if rng.random() < 0.5}
        if not (ops.adjunction_dia_cbox(U, V) and ops.adjunction_cdia_box(U, V)):
            return False, f"random R={sorted(R)}"
    return True, f"{n} exhaustive + 1000 random instances"


def crit9():
    n = 0
    for size in range(1, 5):
        X = list(range(size))
        cells = [(x, y) for x in X for y in X]
        for bits in range(1 << len(cells)):
            R = [c for i, c in enumerate(cells) if bits >> i & 1]
            if not comp_fact(R, X):
                return False, f"R={R}"
            n += 1
    return True, f"{n} relations"


def crit10():
    rng = random.Random(7)
    pool = announcement_pool(("p", "q"), ("a",))
    for _ in range(1000):
        n = rng.randint(1, 3)
        ws = [f"w{i}" for i in range(n)]
        rel = {(x, y) for x in ws for y in ws if rng.random() < 0.5}
        val = {p: {w for w in ws if rng.random() < 0.5} for p in ("p", "q")}
        m = KripkeModel.build(ws, {"a": rel}, val)
        up, _ = update(m, rng.choice(pool))
        for (w, j) in up.worlds:
            for p in ("p", "q"):
                if ((w, j) in up.valuation(p)) != (w in m.valuation(p)):
                    return False, f"{p} at {(w, j)}"
    return True, "1000 (model, announcement) pairs"


CRITERIA = {
    1: ("corpus verification", crit1, 5.0),
    2: ("lint D'.EAK", crit2, 1.0),
    3: ("lint legacy D.EAK", crit3, 1.0),
    4: ("cut elimination on completeness pairs", crit4, 30.0),
    5: ("reduction axioms valid up to 3 worlds", crit5, 60.0),
    6: ("announcement model counterexample", crit6, None),
    7: ("display property over the corpus", crit7, 5.0),
    8: ("relation adjunctions", crit8, None),
    9: ("relation composition fact", crit9, None),
    10: ("update preserves atoms", crit10, None),
}


def evaluate(k):
    name, fn, limit = CRITERIA[k]
    ok, detail, secs = _timed(fn)
    if limit is not None and secs >= limit:
        ok, detail = False, f"{detail}; took {secs:.2f}s, limit {limit}s"
    line = f"criterion {k:2d} {'PASS' if ok else 'FAIL'} {name}: {detail} ({secs:.2f}s)"
    return ok, line


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, acceptance_lines):
    ok, line = evaluate(k)
    acceptance_lines.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(k) for k in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
