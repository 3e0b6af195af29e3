import pytest

from deak.calculus import builtin
from deak.corpus import get, ids, invariants_hold, list_entries, verify_all
from deak.semantics import Bounds, valid_bounded
from deak.syntax import DeakError


def test_verify_all_prime():
    rep = verify_all(lambda d: builtin("deak-prime", d))
    assert rep.ok, rep.text()
    assert len(rep.results) == len(ids()) == 27


def test_completeness_pairs_are_converse():
    pairs = [e for e in list_entries() if "completeness" in e.tags]
    assert len(pairs) == 16
    for e in pairs:
        (a, b) = e.ends
        assert a.ante == b.succ and a.succ == b.ante


def test_get_and_unknown_id():
    assert get("S2.display").id == "S2.display"
    with pytest.raises(DeakError) as e:
        get("Z.nothing")
    assert e.value.code == "unknown-id"


def test_invariants(prime):
    for e in list_entries():
        calc = builtin("deak-prime", e.decls)
        assert invariants_hold(e, calc), e.id


def test_legacy_rejects_reformulated_rules():
    rep = verify_all(lambda d: builtin("deak-legacy", d))
    assert not rep.ok
    failed = {r.id for r in rep.failures}
    assert "S2.display" not in failed
    assert any(i.startswith("A.") for i in failed)


def test_grishin_off_flags_only_swap_out_left():
    rep = verify_all(lambda d: builtin("deak-prime", d, classical=False))
    assert [r.id for r in rep.failures] == ["A.swap-out-L"]


def test_completeness_endpoints_are_valid():
    # semantic sanity: every completeness pair is a valid bi-implication on small models
    for e in list_entries():
        if "completeness" not in e.tags:
            continue
        a, b = e.ends[0].ante.formula, e.ends[0].succ.formula
        bounds = Bounds(2, ("p", "q", "r"))
        assert valid_bounded(a, b, bounds, e.decls).valid, e.id
        assert valid_bounded(b, a, bounds, e.decls).valid, e.id
