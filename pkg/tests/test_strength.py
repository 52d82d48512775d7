from __future__ import annotations

import itertools

import pytest

from effcat.finworld import Base, Prod, enumerate_hom, times
from effcat.instances import ConfigError
from effcat.laws import FAIL, PASS, replay, run_laws
from effcat.strength import (
    kleisli_product_left,
    kleisli_product_right,
    small_containers,
    strength,
    strength_laws,
    verify_strength_theorem,
)

from conftest import make

A = Base("A", 2)
MONADS = ["error", "partiality", "list", "multiset", "powerset"]


def test_list_strength_pairs_with_every_element():
    inst = make("list")
    t = strength(inst, A, A)
    C, CP = inst.monad.carrier(A), inst.monad.carrier(Prod(A, A))
    P = Prod(A, A)
    got = CP.decode(t(Prod(A, C).pair(1, C.encode((0, 1)))))
    assert got == (P.pair(1, 0), P.pair(1, 1))


def test_error_strength_keeps_errors():
    inst = make("error", E=2)
    t = strength(inst, A, A)
    C, CP = inst.monad.carrier(A), inst.monad.carrier(Prod(A, A))
    D = Prod(A, C)
    assert CP.decode(t(D.pair(0, C.encode(("err", 1))))) == ("err", 1)
    assert CP.decode(t(D.pair(1, C.encode(("val", 0))))) == ("val", Prod(A, A).pair(1, 0))


def test_powerset_strength_of_empty_set():
    inst = make("powerset")
    t = strength(inst, A, A)
    assert t(Prod(A, inst.monad.carrier(A)).pair(1, 0)) == 0


@pytest.mark.parametrize("tag", MONADS)
def test_kleisli_product_of_pures_is_pure_product(tag):
    inst = make(tag)
    for v0, w0 in itertools.product(enumerate_hom(A, A), repeat=2):
        expected = inst.pure(times(v0, w0)).mor
        assert kleisli_product_left(inst, inst.pure(v0), inst.pure(w0).mor) == expected
        assert kleisli_product_right(inst, inst.pure(v0).mor, inst.pure(w0)) == expected


@pytest.mark.parametrize("tag", MONADS)
def test_kleisli_products_equal_instance_semipure_products(tag):
    inst = make(tag)
    for v0 in enumerate_hom(A, A):
        v = inst.pure(v0)
        for f in inst.homs(A, A):
            assert kleisli_product_left(inst, v, f) == inst.semipure_left(v, f)
            assert kleisli_product_right(inst, f, v) == inst.semipure_right(f, v)


@pytest.mark.parametrize("tag", ["error", "list", "multiset", "powerset"])
def test_strength_theorem_suite(tag):
    report = verify_strength_theorem(make(tag))
    assert report.status() == PASS
    for law in ("strength-consistency", "strength-as-left-product",
                "strength-second-projection", "kleisli-product-equals-semipure"):
        assert report.entry(law).verdict == PASS
    assert report.entry("strength-unicity-hypothesis").informational


def test_state_is_rejected():
    with pytest.raises(ConfigError):
        strength_laws(make("state"))
    with pytest.raises(ConfigError):
        strength(make("state"), A, A)


def test_constant_strength_breaks_consistency_condition():
    inst = make("powerset", mutant="strength-constant")
    laws = strength_laws(inst)
    entry = run_laws("s", inst, laws, only=["strength-consistency"]).entries[0]
    assert entry.verdict == FAIL
    assert replay(inst, next(l for l in laws if l.law_id == entry.law_id), entry.witness)


def test_small_containers_have_at_most_two_entries():
    from effcat.finworld import Carrier
    for tag, param in (("list", 3), ("multiset", 3), ("powerset", 0)):
        C = Carrier(tag, Base("X", 3), param)
        codes = small_containers(tag, C)
        sizes = []
        for c in codes:
            d = C.decode(c)
            sizes.append(sum(d) if tag == "multiset" else len(d))
        assert max(sizes) == 2 and len(set(codes)) == len(codes)
        assert len(codes) == {"list": 13, "multiset": 10, "powerset": 7}[tag]
