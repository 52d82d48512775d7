from __future__ import annotations

import itertools

import pytest

from effcat.effectcat import (
    axiom_suite_consistency,
    axiom_suite_extended,
    consistency_laws,
    consistent,
    consistent_pures,
    effect,
    extended_consistent,
    extended_laws,
    lr_consistent,
    lr_extended,
    mono_requirement,
    same_effect,
)
from effcat.finworld import Base, FinFun, StructuralError, Terminal, enumerate_hom
from effcat.laws import FAIL, PASS, replay, run_laws

from conftest import make

A = Base("A", 2)
PT = Base("pt", 1)


def test_error_effect_table():
    inst = make("error", E=2)
    C = inst.kl_cod(A)
    f = inst.kmor(A, A, [C.encode(("val", 1)), C.encode(("err", 1))])
    e = effect(inst, f)
    assert e.cod == Terminal()
    C1 = inst.kl_cod(Terminal())
    assert [C1.decode(c) for c in e.table] == [("val", 0), ("err", 1)]


def test_pure_morphisms_are_effect_free():
    for tag in ("error", "list", "multiset", "powerset", "state"):
        inst = make(tag)
        for v0 in enumerate_hom(A, A):
            assert effect(inst, inst.pure(v0)) == inst.bang(A).mor
        for v0, w0 in itertools.product(enumerate_hom(A, A), repeat=2):
            assert same_effect(inst, inst.pure(v0), inst.pure(w0))


def test_list_effect_is_length():
    inst = make("list")
    C = inst.kl_cod(A)
    f = inst.kmor(A, A, [C.encode((1, 1)), C.encode((0,))])
    C1 = inst.kl_cod(Terminal())
    assert [len(C1.decode(c)) for c in effect(inst, f).table] == [2, 1]


def test_state_same_effect_means_same_state_change():
    inst = make("state")
    f = inst.kmor(A, A, [2, 3, 0, 1])   # same state change, different values
    f2 = inst.kmor(A, A, [3, 2, 1, 0])
    assert same_effect(inst, f, f2)
    assert not same_effect(inst, f, inst.identity(A))


def test_consistency_examples():
    inst = make("list")
    C = inst.kl_cod(A)
    v = inst.pure(FinFun(A, A, (1, 0)))
    f = inst.kmor(A, A, [C.encode((1, 1)), C.encode((0, 0))])
    assert consistent(inst, f, v)
    w = inst.pure(FinFun(A, A, (0, 0)))
    assert consistent(inst, v, v) and not consistent(inst, v, w)
    with pytest.raises(StructuralError):
        consistent(inst, f, inst.pure(FinFun(A, PT, (0, 0))))


@pytest.mark.parametrize("tag", ["error", "partiality", "list", "multiset", "powerset", "state"])
def test_lr_consistency_with_pure_is_consistency(tag):
    inst = make(tag)
    for v0 in enumerate_hom(A, A):
        v = inst.pure(v0)
        for f in inst.homs(A, A):
            assert lr_consistent(inst, f, v) == consistent(inst, f, v)


def test_error_lr_consistency_closed_form():
    """Brute-force lr-consistency equals agreement on the common domain."""
    inst = make("error", E=2)
    for f, f2 in itertools.product(inst.homs(A, A), repeat=2):
        agree = all(a == b for a, b in zip(f.table, f2.table) if a < 2 and b < 2)
        assert lr_consistent(inst, f, f2) == agree


def test_state_lr_consistency_not_reflexive():
    inst = make("state")
    reads = inst.kmor(A, A, [0, 1, 3, 2])  # returns a value that depends on the state
    assert not lr_consistent(inst, reads, reads)
    assert consistent_pures(inst, reads) == []


def test_extended_examples():
    st_ = make("state")
    for f, f2 in itertools.product(list(st_.homs(A, A))[::7], repeat=2):
        vals = [c % 2 for c in f.table] == [c % 2 for c in f2.table]
        assert extended_consistent(st_, f, f2) == vals
    li = make("list")
    for f, f2 in itertools.product(li.homs(A, A), repeat=2):
        assert lr_extended(li, f, f2)
    for tag in ("error", "list", "multiset", "powerset", "state"):
        inst = make(tag)
        for f in inst.homs(A, A):
            assert extended_consistent(inst, f, f)


def test_mono_requirement():
    for tag in ("error", "list", "powerset", "multiset", "state"):
        assert mono_requirement(make(tag))


def test_error_consistency_suite_passes():
    report = axiom_suite_consistency(make("error", E=2))
    assert report.status() == PASS
    assert all(e.coverage == 1.0 for e in report.entries)


def test_state_complementarity_and_non_reflexivity():
    inst = make("state")
    laws = consistency_laws(inst)
    report = run_laws("consistency-axioms", inst, laws,
                      only=["complementarity", "lr-consistency-not-reflexive"])
    assert [e.verdict for e in report.entries] == [PASS, PASS]
    wit = report.entry("lr-consistency-not-reflexive").witness
    law = next(l for l in laws if l.law_id == "lr-consistency-not-reflexive")
    assert replay(inst, law, wit)


def test_always_true_consistency_breaks_complementarity():
    inst = make("error", E=2, mutant="cons-always-true")
    laws = consistency_laws(inst)
    entry = run_laws("c", inst, laws, only=["complementarity"]).entries[0]
    assert entry.verdict == FAIL and entry.witness is not None
    assert replay(inst, next(l for l in laws if l.law_id == "complementarity"), entry.witness)


@pytest.mark.parametrize("tag,law", [("error", "extended-transitive"),
                                     ("state", "extended-transitive"),
                                     ("state", "extended-symmetric"),
                                     ("multiset", "extended-factorization-containment")])
def test_extended_structure(tag, law):
    inst = make(tag)
    report = run_laws("x", inst, extended_laws(inst), only=[law])
    assert report.entries[0].verdict == PASS


@pytest.mark.parametrize("tag", ["error", "partiality", "list", "powerset"])
def test_extended_suite_passes(tag):
    assert axiom_suite_extended(make(tag)).status() == PASS


@pytest.mark.parametrize("tag", ["error", "partiality", "state", "list", "multiset", "powerset"])
def test_closed_form_consistent_pures_match_enumeration(tag):
    inst = make(tag, E=1) if tag == "partiality" else make(tag)
    A = Base("A", 2)
    for f in inst.homs(A, A):
        tables = inst.consistent_tables(f)
        brute = [v.v0.table for v in consistent_pures(inst, f)]
        assert tables is None or list(tables) == brute
