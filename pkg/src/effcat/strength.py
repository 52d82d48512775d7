"""Monad strengths, Kleisli products and the strength theorem.

The strength ``t : Y1 x M Y2 -> M(Y1 x Y2)`` is a closed form per monad
(:meth:`MonadData.strength`). Kleisli products are computed from it in the
base category, independently of the instance's own semi-pure products, so
comparing the two is a real check.

Quantifiers over ``M Y2`` range over the enumerable elements (those within
the enumeration caps). The domain object is then the enumeration carrier,
and its codes are converted into the evaluation carrier before use.
"""

from __future__ import annotations

import itertools

from .effectcat import KMor, PureMor
from .finworld import (
    Carrier,
    FinFun,
    HomBudget,
    Prod,
    Terminal,
    compose,
    enumerate_hom,
    identity,
    p1,
    p2,
    times,
    unit_r,
)
from .instances import ConfigError
from .laws import Law, run_laws


def _require_monad(inst) -> None:
    if not getattr(inst, "monadic", False):
        raise ConfigError(f"instance {inst.tag!r} is not monad-backed")


def strength(inst, Y1, Y2) -> FinFun:
    """``t_{Y1,Y2}`` as a table on ``Y1 x M Y2`` (evaluation carrier)."""
    _require_monad(inst)
    m = inst.monad
    C2 = m.carrier(Y2)
    dom = Prod(Y1, C2)
    table = tuple(m.strength(Y1, Y2, y1, c) for y1 in range(Y1.size) for c in range(C2.size))
    return FinFun(dom, m.carrier(Prod(Y1, Y2)), table)


def right_strength(inst, Y1, Y2) -> FinFun:
    """``t' : M Y1 x Y2 -> M(Y1 x Y2)``."""
    _require_monad(inst)
    m = inst.monad
    C1 = m.carrier(Y1)
    table = tuple(m.rstrength(Y1, Y2, c, y2) for c in range(C1.size) for y2 in range(Y2.size))
    return FinFun(Prod(C1, Y2), m.carrier(Prod(Y1, Y2)), table)


def kleisli_product_left(inst, v: PureMor, f: KMor) -> KMor:
    """``kl(v |x_Kl f) = t . (v0 x kl f)``."""
    _require_monad(inst)
    t = _strength_cached(inst, v.cod, f.cod)
    kl = compose(t, times(v.v0, f.kl))
    return KMor(Prod(v.dom, f.dom), Prod(v.cod, f.cod), kl, inst)


def kleisli_product_right(inst, f: KMor, v: PureMor) -> KMor:
    _require_monad(inst)
    t = _rstrength_cached(inst, f.cod, v.cod)
    kl = compose(t, times(f.kl, v.v0))
    return KMor(Prod(f.dom, v.dom), Prod(f.cod, v.cod), kl, inst)


def _strength_cached(inst, Y1, Y2):
    cache = inst.__dict__.setdefault("_strength_cache", {})
    key = ("l", Y1, Y2)
    if key not in cache:
        cache[key] = strength(inst, Y1, Y2)
    return cache[key]


def _rstrength_cached(inst, Y1, Y2):
    cache = inst.__dict__.setdefault("_strength_cache", {})
    key = ("r", Y1, Y2)
    if key not in cache:
        cache[key] = right_strength(inst, Y1, Y2)
    return cache[key]


# --------------------------------------------------------------- elements


def enum_carrier(inst, Y) -> Carrier:
    """The enumerable part of ``M Y`` as an object of its own."""
    return inst.monad.small_carrier(Y)


def to_eval(inst, Y, c: int) -> int:
    """Code of an enumerable element in the evaluation carrier."""
    m = inst.monad
    return m.convert(m.small_carrier(Y), c, m.carrier(Y))


def small_containers(tag: str, C: Carrier) -> list[int]:
    """Codes of the elements of ``C`` with at most two entries."""
    n = C.inner.size
    if tag == "error":
        return list(range(C.size))
    if tag == "list":
        return [C.encode(t) for k in range(3) for t in itertools.product(range(n), repeat=k)]
    if tag == "multiset":
        out = [C.encode((0,) * n)]
        for i in range(n):
            for j in range(i, n):
                v = [0] * n
                v[i] += 1
                v[j] += 1
                out.append(C.encode(tuple(v)))
                if i == j:
                    v[i] = 1
                    out.append(C.encode(tuple(v)))
        return sorted(set(out))
    masks = {0} | {1 << i for i in range(n)}
    masks |= {(1 << i) | (1 << j) for i in range(n) for j in range(i + 1, n)}
    return sorted(masks)


def strength_morphism(inst, Y1, Y2) -> KMor:
    """``t`` read as a morphism ``Y1 x M Y2 -> Y1 x Y2`` over enumerable elements."""
    m = inst.monad
    D = enum_carrier(inst, Y2)
    table = [m.strength(Y1, Y2, y1, to_eval(inst, Y2, c))
             for y1 in range(Y1.size) for c in range(D.size)]
    return inst.kmor(Prod(Y1, D), Prod(Y1, Y2), table)


def evaluation_morphism(inst, Y) -> KMor:
    """``M Y -> Y`` whose Kleisli table is the inclusion into the carrier."""
    D = enum_carrier(inst, Y)
    return inst.kmor(D, Y, [to_eval(inst, Y, c) for c in range(D.size)])


# ------------------------------------------------------------------ laws


def _pair_objects(ctx):
    for Y1, Y2 in ctx.objects(2):
        yield {"Y1": Y1, "Y2": Y2}


def _as_left_product(ctx, c):
    inst, Y1, Y2 = ctx.inst, c["Y1"], c["Y2"]
    t_hat = strength_morphism(inst, Y1, Y2)
    ev = evaluation_morphism(inst, Y2)
    return t_hat == inst.semipure_left(inst.pure(identity(Y1)), ev)


def _second_projection(ctx, c):
    inst, Y1, Y2 = ctx.inst, c["Y1"], c["Y2"]
    t_hat = strength_morphism(inst, Y1, Y2)
    D = enum_carrier(inst, Y2)
    q2 = inst.pure(p2(Y1, Y2)).mor
    ev = evaluation_morphism(inst, Y2)
    return inst.compose(q2, t_hat) == inst.compose(ev, inst.pure(p2(Y1, D)).mor)


def _strength_consistency(ctx, c):
    inst, Y1, Y2 = ctx.inst, c["Y1"], c["Y2"]
    t_hat = strength_morphism(inst, Y1, Y2)
    D = enum_carrier(inst, Y2)
    q1 = inst.pure(p1(Y1, Y2)).mor
    return inst.consistent(inst.compose(q1, t_hat), inst.pure(p1(Y1, D)))


def _vf_cases(ctx):
    for X1, X2, Y1, Y2 in ctx.objects(4):
        for v in ctx.pures(X1, Y1):
            for f in ctx.homs(X2, Y2):
                yield {"v": v, "f": f}


def _kl_equals_semipure(ctx, c):
    inst, v, f = ctx.inst, c["v"], c["f"]
    return (kleisli_product_left(inst, v, f) == inst.semipure_left(v, f)
            and kleisli_product_right(inst, f, v) == inst.semipure_right(f, v))


def _kl_property(ctx, c):
    from .products import _conditions_left, _conditions_right
    inst, v, f = ctx.inst, c["v"], c["f"]
    return (_conditions_left(ctx, kleisli_product_left(inst, v, f), v, f)
            and _conditions_right(ctx, kleisli_product_right(inst, f, v), f, v))


def _naturality_cases(ctx):
    inst = ctx.inst
    for Y1, Y2, Z1, Z2 in ctx.objects(4):
        gens = inst.generators(Y2)
        for u in enumerate_hom(Y1, Z1, ctx.budget):
            for w in enumerate_hom(Y2, Z2, ctx.budget):
                for y1 in range(Y1.size):
                    for cc in gens:
                        yield {"u": inst.pure(u), "w": inst.pure(w), "y1": y1, "c": cc}


def _strength_naturality(ctx, c):
    inst, u, w, y1, cc = ctx.inst, c["u"].v0, c["w"].v0, c["y1"], c["c"]
    m = inst.monad
    Y1, Y2, Z1, Z2 = u.dom, w.dom, u.cod, w.cod
    lhs = m.strength(Z1, Z2, u(y1), m.fmap(m.carrier(Y2), cc, w, m.carrier(Z2)))
    uw = times(u, w)
    rhs = m.fmap(m.carrier(Prod(Y1, Y2)), m.strength(Y1, Y2, y1, cc), uw,
                 m.carrier(Prod(Z1, Z2)))
    return lhs == rhs


def _elements(ctx):
    for Y in ctx.world:
        for cc in ctx.inst.generators(Y):
            yield {"Y": Y, "c": cc}


def _strength_unit_r(ctx, c):
    inst, Y, cc = ctx.inst, c["Y"], c["c"]
    m = inst.monad
    one = Terminal()
    t = m.strength(one, Y, 0, cc)
    return m.fmap(m.carrier(Prod(one, Y)), t, unit_r(Y), m.carrier(Y)) == cc


def _pair_elements(ctx):
    for Y1, Y2 in ctx.objects(2):
        for y1 in range(Y1.size):
            for y2 in range(Y2.size):
                yield {"Y1": Y1, "Y2": Y2, "y1": y1, "y2": y2}


def _strength_unit(ctx, c):
    inst, Y1, Y2 = ctx.inst, c["Y1"], c["Y2"]
    m = inst.monad
    P = Prod(Y1, Y2)
    got = m.strength(Y1, Y2, c["y1"], m.unit(m.carrier(Y2), c["y2"]))
    return got == m.unit(m.carrier(P), P.pair(c["y1"], c["y2"]))


def _mu_cases(ctx):
    inst = ctx.inst
    m = inst.monad
    for Y1, Y2 in ctx.objects(2):
        C1 = m.small_carrier(Y2)
        outer = Carrier(m.tag, C1, m.param)
        for y1 in range(Y1.size):
            for cc in small_containers(m.tag, outer):
                yield {"Y1": Y1, "Y2": Y2, "y1": y1, "c": cc}


def _strength_mu(ctx, c):
    inst, Y1, Y2, y1, cc = ctx.inst, c["Y1"], c["Y2"], c["y1"], c["c"]
    m = inst.monad
    C1 = m.small_carrier(Y2)
    outer = Carrier(m.tag, C1, m.param)
    P, PC = Prod(Y1, Y2), Prod(Y1, C1)
    lhs = m.strength(Y1, Y2, y1, m.mu(outer, cc, m.carrier(Y2)))
    first = m.strength(Y1, C1, y1, cc)

    def g(code):
        a, e = PC.unpair(code)
        return m.strength(Y1, Y2, a, m.convert(C1, e, m.carrier(Y2)))

    rhs = m.bind(m.carrier(PC), first, g, m.carrier(P))
    return lhs == rhs


def _unicity_cases(ctx):
    from .products import _bucket_pairs, _unicity_key
    return _bucket_pairs(ctx, _unicity_key)


def _unicity(ctx, c):
    from .products import _unicity as check
    return check(ctx, c)


def strength_laws(inst) -> list[Law]:
    _require_monad(inst)
    return [
        Law("strength-as-left-product", "the strength is a left Kleisli product",
            _pair_objects, _as_left_product),
        Law("strength-second-projection", "second projection of the strength",
            _pair_objects, _second_projection),
        Law("strength-consistency", "the strength is consistent with the identity",
            _pair_objects, _strength_consistency),
        Law("strength-unicity-hypothesis", "consistent first and equal second components",
            _unicity_cases, _unicity, informational=True),
        Law("kleisli-product-property", "Kleisli products satisfy the semi-pure property",
            _vf_cases, _kl_property),
        Law("kleisli-product-equals-semipure", "Kleisli products are the semi-pure products",
            _vf_cases, _kl_equals_semipure),
        Law("strength-naturality", "naturality of the strength (background axiom)",
            _naturality_cases, _strength_naturality),
        Law("strength-unit-r", "unit axiom of the strength (background axiom)",
            _elements, _strength_unit_r),
        Law("strength-eta", "strength and unit (background axiom)",
            _pair_elements, _strength_unit),
        Law("strength-mu", "strength and multiplication (background axiom)",
            _mu_cases, _strength_mu),
    ]


def verify_strength_theorem(inst, budget: HomBudget | None = None):
    return run_laws("strength-theorem", inst, strength_laws(inst), budget)
