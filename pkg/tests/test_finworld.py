from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from effcat.finworld import (
    Base,
    BudgetExceeded,
    Carrier,
    FinFun,
    HomBudget,
    Overflow,
    Prod,
    StructuralError,
    Terminal,
    assoc,
    assoc_inv,
    compose,
    diagonal,
    enumerate_hom,
    from_description,
    hom_count,
    identity,
    is_bijective,
    p1,
    p2,
    pair,
    structural_isos,
    swap,
    times,
    unit_l,
    unit_r,
)

A2, B3 = Base("A", 2), Base("B", 3)


def brute_list_count(n, cap):
    return sum(1 for k in range(cap + 1) for _ in itertools.product(range(n), repeat=k))


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("param", [1, 2, 3])
def test_carrier_sizes_match_counting(n, param):
    X = Base("X", n)
    assert Carrier("error", X, param).size == n + param
    assert Carrier("powerset", X, param).size == 2 ** n
    assert Carrier("list", X, param).size == brute_list_count(n, param)
    multisets = list(itertools.product(range(param + 1), repeat=n))
    assert Carrier("multiset", X, param).size == len(multisets)


def test_object_sizes():
    assert Terminal().size == 1
    assert Prod(A2, B3).size == 6
    assert Prod(Prod(A2, B3), A2).size == 12


@pytest.mark.parametrize("tag,param", [("error", 2), ("list", 3), ("multiset", 2), ("powerset", 0)])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_carrier_encoding_is_bijective(tag, param, n):
    C = Carrier(tag, Base("X", n), param)
    decoded = [C.decode(c) for c in range(C.size)]
    assert len(set(decoded)) == C.size
    assert [C.encode(v) for v in decoded] == list(range(C.size))


def test_list_ranking_by_length_then_lexicographic():
    C = Carrier("list", A2, 2)
    assert [C.decode(c) for c in range(C.size)] == [
        (), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]
    # the ranking does not depend on the cap
    assert Carrier("list", A2, 5).encode((1, 0)) == C.encode((1, 0))


def test_caps_overflow_rather_than_truncate():
    with pytest.raises(Overflow):
        Carrier("list", A2, 2).encode((0, 0, 0))
    with pytest.raises(Overflow):
        Carrier("multiset", A2, 2).encode((3, 0))
    with pytest.raises(StructuralError):
        Carrier("list", A2, 2).decode(7)


def test_row_major_pairing():
    P = Prod(A2, B3)
    assert [P.unpair(c) for c in range(P.size)] == [
        (a, b) for a in range(2) for b in range(3)]
    assert P.pair(1, 2) == 5


def test_function_validation():
    with pytest.raises(StructuralError):
        FinFun(A2, B3, (0,))
    with pytest.raises(StructuralError):
        FinFun(A2, B3, (0, 3))
    with pytest.raises(StructuralError):
        compose(identity(A2), identity(B3))


def test_composition_laws_exhaustively():
    X = A2
    homs = list(enumerate_hom(X, X))
    for f in homs:
        assert compose(identity(X), f) == f
        assert compose(f, identity(X)) == f
    for f, g, h in itertools.product(homs, repeat=3):
        assert compose(compose(h, g), f) == compose(h, compose(g, f))


def test_product_universal_property_by_enumeration():
    X = A2
    for u in enumerate_hom(X, A2):
        for v in enumerate_hom(X, A2):
            sols = [h for h in enumerate_hom(X, Prod(A2, A2))
                    if compose(p1(A2, A2), h) == u and compose(p2(A2, A2), h) == v]
            assert sols == [pair(u, v)]


def test_times_and_diagonal():
    d = diagonal(A2)
    assert compose(p1(A2, A2), d) == identity(A2)
    v1, v2 = FinFun(A2, B3, (2, 0)), FinFun(B3, A2, (1, 1, 0))
    prod = times(v1, v2)
    assert compose(p1(B3, A2), prod) == compose(v1, p1(A2, B3))
    assert compose(p2(B3, A2), prod) == compose(v2, p2(A2, B3))


def test_structural_isomorphisms():
    c = swap(A2, B3)
    P = Prod(A2, B3)
    for a in range(2):
        for b in range(3):
            assert c(P.pair(a, b)) == Prod(B3, A2).pair(b, a)
    a = assoc(A2, A2, A2)
    assert compose(a, assoc_inv(A2, A2, A2)) == identity(a.cod)
    assert compose(assoc_inv(A2, A2, A2), a) == identity(a.dom)
    for f in structural_isos(A2, B3, A2).values():
        assert is_bijective(f)
    assert unit_l(A2).dom == Prod(A2, Terminal())
    assert unit_r(A2).dom == Prod(Terminal(), A2)


def test_pentagon():
    A, B, C, D = (Base(n, 2) for n in "ABCD")
    AB = Prod(A, B)
    lhs = compose(assoc(A, B, Prod(C, D)), assoc(AB, C, D))
    rhs = compose(times(identity(A), assoc(B, C, D)),
                  compose(assoc(A, Prod(B, C), D), times(assoc(A, B, C), identity(D))))
    assert lhs == rhs


def test_enumeration_order_counts_and_budget():
    assert len(list(enumerate_hom(Base("X", 1), B3))) == 3
    assert [f.table for f in enumerate_hom(A2, A2)] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    with pytest.raises(BudgetExceeded) as exc:
        list(enumerate_hom(B3, Base("T", 5), HomBudget(max_hom_size=100)))
    assert exc.value.required == 125 and hom_count(B3, Base("T", 5)) == 125


objects = st.recursive(
    st.builds(Base, st.sampled_from("ABC"), st.integers(1, 3)) | st.just(Terminal()),
    lambda inner: st.builds(Prod, inner, inner)
    | st.builds(Carrier, st.sampled_from(["error", "list", "powerset"]), inner,
                st.integers(1, 2)),
    max_leaves=3,
)


@given(objects)
def test_descriptions_round_trip(X):
    assert from_description(X.describe()) == X
