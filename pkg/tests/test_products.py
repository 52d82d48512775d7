from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from effcat.finworld import Base, FinFun, HomBudget, Prod, Terminal, enumerate_hom, pair
from effcat.laws import FAIL, PASS, Context, replay, run_laws
from effcat.products import (
    _conditions_left,
    _conditions_right,
    centrality_laws,
    functoriality_laws,
    is_central,
    naturality_laws,
    pairing_left,
    product_laws,
    sequential_laws,
    sequential_left,
    sequential_right,
    unique_solution,
    verify_semipure_universal,
)

from conftest import make

A = Base("A", 2)
ONE = Terminal()


def test_error_sequential_products_pick_the_first_error():
    inst = make("error", E=2)
    C = inst.kl_cod(A)
    f1 = inst.kmor(A, A, [C.encode(("err", 0))] * 2)
    f2 = inst.kmor(A, A, [C.encode(("err", 1))] * 2)
    P = Prod(A, A)
    CP = inst.kl_cod(P)
    assert CP.decode(sequential_left(inst, f1, f2).table[0]) == ("err", 0)
    assert CP.decode(sequential_right(inst, f1, f2).table[0]) == ("err", 1)


def _state_hand_witness():
    inst = make("state")
    S = inst.S
    # f1: set the state to 1 and return the old state; f2: return the state
    f1 = inst.kmor(ONE, A, [1 * 2 + s for s in range(2)])
    f2 = inst.kmor(ONE, A, [s * 2 + s for s in range(2)])
    return inst, S, f1, f2


def test_state_hand_witness_left_vs_right():
    inst, S, f1, f2 = _state_hand_witness()
    P = Prod(A, A)
    KP = inst.kl_cod(P)
    left = sequential_left(inst, f1, f2)
    right = sequential_right(inst, f1, f2)
    # at s = 0 (domain 1 x 1 has a single point)
    assert KP.unpair(left.table[0]) == (1, P.pair(0, 1))
    assert KP.unpair(right.table[0]) == (1, P.pair(0, 0))
    assert left != right


def test_state_sequential_threads_the_state():
    inst = make("state")
    f1 = inst.kmor(A, A, [3, 0, 1, 2])
    f2 = inst.kmor(A, A, [1, 2, 3, 0])
    P = Prod(A, A)
    h = sequential_left(inst, f1, f2)
    for s in range(2):
        for x1 in range(2):
            for x2 in range(2):
                s1, y1 = divmod(f1.table[s * 2 + x1], 2)
                s2, y2 = divmod(f2.table[s1 * 2 + x2], 2)
                assert h.table[s * 4 + P.pair(x1, x2)] == s2 * 4 + P.pair(y1, y2)


def test_list_sequential_is_first_major():
    inst = make("list")
    C = inst.kl_cod(A)
    f1 = inst.kmor(ONE, A, [C.encode((0, 1))])
    f2 = inst.kmor(ONE, A, [C.encode((1, 0))])
    P = Prod(A, A)
    got = inst.kl_cod(P).decode(sequential_left(inst, f1, f2).table[0])
    assert got == tuple(P.pair(y, z) for y in (0, 1) for z in (1, 0))


def test_powerset_left_equals_right():
    inst = make("powerset")
    for f1, f2 in itertools.product(inst.homs(A, A), repeat=2):
        assert sequential_left(inst, f1, f2) == sequential_right(inst, f1, f2)


def test_pairing_of_pures_is_base_pairing():
    for tag in ("error", "list", "state"):
        inst = make(tag)
        for v0, w0 in itertools.product(enumerate_hom(A, A), repeat=2):
            got = pairing_left(inst, inst.pure(v0).mor, inst.pure(w0).mor)
            assert got == inst.pure(pair(v0, w0)).mor


# ----------------------------------------------------------- uniqueness


@pytest.mark.parametrize("tag", ["error", "state", "list", "multiset", "powerset"])
@given(data=st.data())
def test_single_entry_uniqueness_agrees_with_enumeration(tag, data):
    """The local uniqueness search gives the same verdict as full enumeration."""
    inst = make(tag, sizes=(("A", 1), ("B", 2)))
    A1, B = Base("A", 1), Base("B", 2)
    full = Context(inst, HomBudget(max_hom_size=10 ** 9))
    local = Context(inst, HomBudget(max_hom_size=0))
    v = inst.pure(data.draw(st.sampled_from(list(enumerate_hom(A1, B)))))
    f = data.draw(st.sampled_from(list(inst.homs(B, A1))))
    good = inst.semipure_left(v, f)
    table = list(good.table)
    i = data.draw(st.integers(0, len(table) - 1))
    table[i] = data.draw(st.sampled_from(inst.generators(good.cod)))
    for h0 in (good, inst.kmor(good.dom, good.cod, table)):
        a = unique_solution(full, h0, lambda h: _conditions_left(full, h, v, f))
        b = unique_solution(local, h0, lambda h: _conditions_left(local, h, v, f))
        assert a == b
        g = inst.semipure_right(f, v)
        a = unique_solution(full, g, lambda h: _conditions_right(full, h, f, v))
        b = unique_solution(local, g, lambda h: _conditions_right(local, h, f, v))
        assert a == b


@pytest.mark.parametrize("E", [1, 2])
def test_error_semipure_universal(E):
    report = verify_semipure_universal(make("error", E=E))
    assert report.status() == PASS
    assert report.entry("semipure-left-uniqueness").cases_checked > 0


def test_state_semipure_universal():
    assert verify_semipure_universal(make("state")).status() == PASS


def test_shifted_semipure_fails_existence_with_replayable_witness():
    inst = make("error", E=2, mutant="semipure-shifted")
    from effcat.products import semipure_laws
    laws = semipure_laws(inst)
    entry = run_laws("s", inst, laws, only=["semipure-left-existence"]).entries[0]
    assert entry.verdict == FAIL
    assert replay(inst, next(l for l in laws if l.law_id == entry.law_id), entry.witness)


@pytest.mark.parametrize("tag", ["error", "list", "powerset", "state"])
def test_product_props(tag):
    inst = make(tag)
    report = run_laws("p", inst, product_laws(inst))
    assert report.status() == PASS


def test_state_pairing_projection_differs():
    inst = make("state")
    report = run_laws("p", inst, product_laws(inst), only=["pairing-first-projection-differs"])
    assert report.entries[0].verdict == PASS and report.entries[0].witness


# ----------------------------------------------------------- centrality


def test_pures_are_central():
    inst = make("error", E=2)
    for v0 in enumerate_hom(A, A):
        assert is_central(inst, inst.pure(v0).mor)


def test_error_has_non_central_morphisms():
    inst = make("error", E=2)
    assert not all(is_central(inst, k) for k in inst.homs(A, A))
    inst1 = make("error", E=1)
    assert all(is_central(inst1, k) for k in inst1.homs(A, A))


def test_powerset_everything_central_at_size_three():
    inst = make("powerset", sizes=(("B", 3),))
    B = Base("B", 3)
    assert all(is_central(inst, k) for k in inst.homs(B, B))


@pytest.mark.parametrize("tag,expect_all", [("error", False), ("list", False),
                                            ("state", False), ("powerset", True),
                                            ("multiset", True), ("partiality", True)])
def test_centrality_suite(tag, expect_all):
    inst = make(tag)
    report = run_laws("c", inst, centrality_laws(inst))
    assert report.status() == PASS
    ids = {e.law_id for e in report.entries}
    assert ("all-central" in ids) == expect_all
    if not expect_all:
        assert report.entry("non-central-exists").witness is not None


def test_state_center_closed_and_list_identity_compose():
    st_ = make("state")
    r = run_laws("f", st_, functoriality_laws(st_), only=["center-closed-under-composition"])
    assert r.status() == PASS
    li = make("list")
    r = run_laws("f", li, functoriality_laws(li), only=["semipure-left-id-compose"])
    assert r.status() == PASS


def test_naturality_examples():
    err = make("error", E=1)
    assert run_laws("n", err, naturality_laws(err)).status() == PASS
    st_ = make("state")
    r = run_laws("n", st_, naturality_laws(st_), only=["naturality-swap", "naturality-unit-r"])
    assert r.status() == PASS


@pytest.mark.parametrize("tag,unicity", [("error", PASS), ("state", PASS), ("list", FAIL),
                                         ("powerset", FAIL)])
def test_sequential_property_and_extended_unicity(tag, unicity):
    inst = make(tag, E=1) if tag == "error" else make(tag)
    report = run_laws("s", inst, sequential_laws(inst))
    assert report.entry("sequential-property-left").verdict == PASS
    assert report.entry("sequential-property-right").verdict == PASS
    entry = report.entry("extended-unicity")
    assert entry.informational and entry.verdict == unicity
    assert report.status() == PASS
