from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from effcat.effectcat import KMor
from effcat.finworld import (
    Base,
    BudgetExceeded,
    FinFun,
    HomBudget,
    Prod,
    compose,
    enumerate_hom,
    identity,
    times,
)
from effcat.instances import ConfigError, InstanceConfig, build_instance, kleisli_compose

from conftest import make

A = Base("A", 2)
MONADS = ["error", "partiality", "list", "multiset", "powerset"]
ALL = MONADS + ["state"]


# ---------------------------------------------------------------- oracles
#
# Composition re-implemented on decoded Python values, sharing nothing with
# the instances except the carrier codecs.


def _oracle_extend(tag, C_mid, C_out, value, g_decoded):
    if tag in ("error", "partiality"):
        kind, y = value
        return g_decoded[y] if kind == "val" else value
    if tag == "list":
        return tuple(z for y in value for z in g_decoded[y])
    if tag == "multiset":
        total = Counter()
        for y, m in enumerate(value):
            for z, k in enumerate(g_decoded[y]):
                total[z] += m * k
        return tuple(total[z] for z in range(C_out.inner.size))
    return tuple(sorted({z for y in value for z in g_decoded[y]}))


def oracle_compose(inst, g: KMor, f: KMor):
    if inst.tag == "state":
        ny = f.cod.size
        out = []
        for c in f.kl.table:
            s, y = divmod(c, ny)
            out.append(g.kl.table[s * g.dom.size + y])
        return tuple(out)
    Cm, Co = inst.kl_cod(f.cod), inst.kl_cod(g.cod)
    g_dec = [Co.decode(c) for c in g.kl.table]
    return tuple(Co.encode(_oracle_extend(inst.tag, Cm, Co, Cm.decode(c), g_dec))
                 for c in f.kl.table)


def morphisms(inst, X, Y):
    gens = inst.generators(Y)
    n = inst.kl_dom(X).size
    return st.lists(st.sampled_from(gens), min_size=n, max_size=n).map(
        lambda t: inst.kmor(X, Y, t))


@pytest.mark.parametrize("tag", ALL)
@given(data=st.data())
def test_composition_matches_oracle(tag, data):
    inst = make(tag)
    f = data.draw(morphisms(inst, A, A))
    g = data.draw(morphisms(inst, A, A))
    assert inst.compose(g, f).kl.table == oracle_compose(inst, g, f)


@pytest.mark.parametrize("tag", ALL)
@given(data=st.data())
def test_kleisli_category_laws(tag, data):
    inst = make(tag)
    f, g, h = (data.draw(morphisms(inst, A, A)) for _ in range(3))
    assert inst.compose(inst.identity(A), f) == f == inst.compose(f, inst.identity(A))
    assert inst.compose(inst.compose(h, g), f) == inst.compose(h, inst.compose(g, f))


@pytest.mark.parametrize("tag", ALL)
def test_pure_embedding_is_a_faithful_functor(tag):
    inst = make(tag)
    homs = list(enumerate_hom(A, A))
    for v in homs:
        for w in homs:
            assert inst.pure(compose(w, v)).mor == inst.compose(inst.pure(w).mor, inst.pure(v).mor)
    assert len({inst.pure(v).mor for v in homs}) == len(homs)
    assert inst.pure(identity(A)).mor == inst.identity(A)


# ------------------------------------------------------------ examples


def test_error_composition_propagates_first_error():
    inst = make("error", E=2)
    C = inst.kl_cod(A)
    f = inst.kmor(A, A, [C.encode(("err", 1)), C.encode(("val", 1))])
    g = inst.kmor(A, A, [C.encode(("err", 0)), C.encode(("val", 0))])
    assert [C.decode(c) for c in kleisli_compose(g, f).table] == [("err", 1), ("val", 0)]


def test_list_composition_flattens():
    inst = make("list", sizes=(("A", 2), ("B", 2)))
    B = Base("B", 2)
    CA, CB = inst.kl_cod(A), inst.kl_cod(B)
    f = inst.kmor(Base("pt", 1), A, [CA.encode((0, 1))])
    g = inst.kmor(A, B, [CB.encode((1,)), CB.encode((0,))])
    assert CB.decode(inst.compose(g, f).table[0]) == (1, 0)


def test_state_composition_is_function_composition():
    inst = make("state")
    f = inst.kmor(A, A, [3, 0, 1, 2])
    g = inst.kmor(A, A, [1, 1, 2, 3])
    assert inst.compose(g, f).table == tuple(g.table[c] for c in f.table)


def test_multiset_and_powerset_relations():
    ms = make("multiset")
    C = ms.kl_cod(A)
    f = ms.kmor(A, A, [C.encode((2, 0)), C.encode((0, 0))])
    f2 = ms.kmor(A, A, [C.encode((1, 1)), C.encode((0, 0))])
    f3 = ms.kmor(A, A, [C.encode((1, 0)), C.encode((0, 0))])
    assert ms.effect(f) == ms.effect(f2) != ms.effect(f3)  # same cardinality per input
    ps = make("powerset")
    g = ps.kmor(A, A, [0b01, 0])
    g2 = ps.kmor(A, A, [0b11, 0])
    g3 = ps.kmor(A, A, [0, 0b10])
    assert ps.effect(g) == ps.effect(g2) != ps.effect(g3)  # empty vs non-empty


def test_partiality_consistency_is_the_definedness_order():
    inst = make("partiality", E=5)
    assert inst.config.E == 1
    for v0 in enumerate_hom(A, A):
        v = inst.pure(v0)
        for f in inst.homs(A, A):
            leq = all(c >= 2 or c == y for c, y in zip(f.table, v0.table))
            assert inst.consistent(f, v) == leq


def test_unit_is_injective_everywhere():
    for tag in ALL:
        assert make(tag).unit_injective(A)


def test_semipure_examples():
    st_ = make("state")
    v = st_.pure(FinFun(A, A, (1, 0)))
    f = st_.kmor(A, A, [3, 0, 1, 2])
    h = st_.semipure_left(v, f)
    P = Prod(A, A)
    for s in range(2):
        for x1 in range(2):
            for x2 in range(2):
                s2, y2 = divmod(f.table[s * 2 + x2], 2)
                assert h.table[s * 4 + P.pair(x1, x2)] == s2 * 4 + P.pair(v.v0(x1), y2)
    err = make("error", E=2)
    C, CP = err.kl_cod(A), err.kl_cod(P)
    f = err.kmor(A, A, [C.encode(("val", 1)), C.encode(("err", 1))])
    h = err.semipure_left(err.pure(identity(A)), f)
    assert CP.decode(h.table[P.pair(0, 0)]) == ("val", P.pair(0, 1))
    assert CP.decode(h.table[P.pair(1, 1)]) == ("err", 1)


@pytest.mark.parametrize("tag", ALL)
def test_semipure_of_pures_is_the_product(tag):
    inst = make(tag)
    for v0 in enumerate_hom(A, A):
        for w0 in enumerate_hom(A, A):
            v, w = inst.pure(v0), inst.pure(w0)
            assert inst.semipure_left(v, w.mor) == inst.pure(times(v0, w0)).mor
            assert inst.semipure_right(v.mor, w) == inst.pure(times(v0, w0)).mor


# ------------------------------------------------------------- configs


def test_config_validation():
    with pytest.raises(ConfigError, match="valid"):
        build_instance(InstanceConfig("nope"))
    with pytest.raises(ConfigError):
        build_instance(InstanceConfig("error", E=0))
    with pytest.raises(ConfigError):
        build_instance(InstanceConfig("state", sizes=(("S", 2),)))
    with pytest.raises(ConfigError):
        build_instance(InstanceConfig("list", sizes=(("A", 2), ("A", 3))))
    with pytest.raises(ConfigError):
        build_instance(InstanceConfig("list", list_cap=3, list_eval_cap=2))


def test_echo_lists_only_relevant_fields():
    assert make("state").config.echo() == {"instance": "state", "sizes": {"A": 2}, "S": 2}
    assert make("powerset").config.echo() == {"instance": "powerset", "sizes": {"A": 2}}
    assert "list_cap" in make("list").config.echo()


def test_hom_enumeration_respects_budget():
    inst = make("state")
    assert len(list(inst.homs(A, A))) == 256
    with pytest.raises(BudgetExceeded):
        list(inst.homs(A, A, HomBudget(max_hom_size=100)))
