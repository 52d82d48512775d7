"""Semi-pure and sequential products, pairings, centrality and their laws.

The sequential products are always the composites of two semi-pure
products; the sequential product *properties* are verified afterwards.

Laws with three independent effectful arguments would need |Hom|^3 cases.
They are checked on global elements ``1 -> Y`` instead. That is complete
because points separate morphisms in every instance and because sequential
products commute with pure precomposition. The second fact is its own
exhaustive law (``sequential-point-separation``).
"""

from __future__ import annotations

from .effectcat import KMor, PureMor
from .finworld import (
    HomBudget,
    Prod,
    StructuralError,
    Terminal,
    assoc_inv,
    diagonal,
    identity,
    p1,
    p2,
    pair,
    swap,
    times,
    unit_l,
    unit_r,
)
from .laws import Law, run_laws

# ---------------------------------------------------------------- builders


def pure_id(inst, X) -> PureMor:
    return inst.pure(identity(X))


def projections(inst, Y1, Y2) -> tuple[PureMor, PureMor]:
    return inst.pure(p1(Y1, Y2)), inst.pure(p2(Y1, Y2))


def sequential_left(inst, f1: KMor, f2: KMor) -> KMor:
    """``f1 |x f2``: run ``f1`` first, then ``f2``."""
    first = inst.semipure_right(f1, pure_id(inst, f2.dom))
    then = inst.semipure_left(pure_id(inst, f1.cod), f2)
    return inst.compose(then, first)


def sequential_right(inst, f1: KMor, f2: KMor) -> KMor:
    """``f1 x| f2``: run ``f2`` first, then ``f1``."""
    first = inst.semipure_left(pure_id(inst, f1.dom), f2)
    then = inst.semipure_right(f1, pure_id(inst, f2.cod))
    return inst.compose(then, first)


def _check_fanout(f1: KMor, f2: KMor) -> None:
    if f1.dom != f2.dom:
        raise StructuralError("pairing needs a common domain")


def pairing_left(inst, f1: KMor, f2: KMor) -> KMor:
    _check_fanout(f1, f2)
    return inst.compose(sequential_left(inst, f1, f2), inst.pure(diagonal(f1.dom)).mor)


def pairing_right(inst, f1: KMor, f2: KMor) -> KMor:
    _check_fanout(f1, f2)
    return inst.compose(sequential_right(inst, f1, f2), inst.pure(diagonal(f1.dom)).mor)


def central_against(inst, k: KMor, f2: KMor) -> bool:
    return (sequential_left(inst, k, f2) == sequential_right(inst, k, f2)
            and sequential_left(inst, f2, k) == sequential_right(inst, f2, k))


def is_central(inst, k: KMor, budget: HomBudget | None = None) -> bool:
    """Both centrality equations against every morphism of the configured world."""
    world = inst.world()
    for X2 in world:
        for Y2 in world:
            for f2 in inst.homs(X2, Y2, budget):
                if not central_against(inst, k, f2):
                    return False
    return True


# -------------------------------------------------------- cached law helpers


def _seq_l(ctx, f1, f2):
    return ctx.cached(("sl", f1, f2), lambda: sequential_left(ctx.inst, f1, f2))


def _seq_r(ctx, f1, f2):
    return ctx.cached(("sr", f1, f2), lambda: sequential_right(ctx.inst, f1, f2))


def _spl(ctx, v, f):
    return ctx.cached(("pl", v, f), lambda: ctx.inst.semipure_left(v, f))


def _spr(ctx, f, v):
    return ctx.cached(("pr", f, v), lambda: ctx.inst.semipure_right(f, v))


def _pure(ctx, v0):
    return ctx.inst.pure(v0)


def _central_homs(ctx, X, Y):
    def compute():
        out = []
        for k in ctx.homs(X, Y):
            if all(central_against(ctx.inst, k, f2)
                   for X2, Y2 in ctx.objects(2) for f2 in ctx.homs(X2, Y2)):
                out.append(k)
        return out
    return ctx.cached(("central", X, Y), compute)


def _conditions_left(ctx, h, v, f):
    """Left semi-pure property of ``h`` relative to ``v`` and ``f``."""
    inst = ctx.inst
    X1, X2, Y1, Y2 = v.dom, f.dom, v.cod, f.cod
    q1, q2 = projections(inst, Y1, Y2)
    target = _pure(ctx, _comp0(v.v0, p1(X1, X2)))
    return (inst.consistent(inst.compose(q1.mor, h), target)
            and inst.compose(q2.mor, h) == inst.compose(f, _pure(ctx, p2(X1, X2)).mor))


def _conditions_right(ctx, h, f, v):
    inst = ctx.inst
    X1, X2, Y1, Y2 = f.dom, v.dom, f.cod, v.cod
    q1, q2 = projections(inst, Y1, Y2)
    target = _pure(ctx, _comp0(v.v0, p2(X1, X2)))
    return (inst.compose(q1.mor, h) == inst.compose(f, _pure(ctx, p1(X1, X2)).mor)
            and inst.consistent(inst.compose(q2.mor, h), target))


def _comp0(g, f):
    from .finworld import compose
    return compose(g, f)


def unique_solution(ctx, h0: KMor, cond) -> bool:
    """Is ``h0`` the only morphism with ``cond``?

    Full enumeration when the hom-set fits the budget. Otherwise every
    single-entry deviation from ``h0`` is tried, which is complete when the
    condition constrains each table entry separately (true of all the
    conditions used here, and cross-checked by the tests).
    """
    inst = ctx.inst
    if not cond(h0):
        return False
    if inst.hom_size(h0.dom, h0.cod) <= ctx.budget.max_hom_size:
        return all(h == h0 or not cond(h) for h in ctx.homs(h0.dom, h0.cod))
    table = list(h0.kl.table)
    gens = inst.generators(h0.cod)
    for i, c0 in enumerate(table):
        for c in gens:
            if c == c0:
                continue
            table[i] = c
            h = inst.kmor(h0.dom, h0.cod, table)
            table[i] = c0
            if cond(h):
                return False
    return True


# ------------------------------------------------------------ case builders


def _vf_cases(ctx):
    for X1, X2, Y1, Y2 in ctx.objects(4):
        for v in ctx.pures(X1, Y1):
            for f in ctx.homs(X2, Y2):
                yield {"v": v, "f": f}


def _f_pairs(ctx):
    for X1, X2, Y1, Y2 in ctx.objects(4):
        for f1 in ctx.homs(X1, Y1):
            for f2 in ctx.homs(X2, Y2):
                yield {"f1": f1, "f2": f2}


def _fanout_pairs(ctx):
    for X, Y1, Y2 in ctx.objects(3):
        for f1 in ctx.homs(X, Y1):
            for f2 in ctx.homs(X, Y2):
                yield {"f1": f1, "f2": f2}


def _homs_into_products(ctx):
    for X, Y1, Y2 in ctx.objects(3):
        yield X, Y1, Y2, ctx.homs(X, Prod(Y1, Y2))


def _bucket_pairs(ctx, key_fn):
    """Pairs ``(h, h2)`` of morphisms into products sharing a key."""
    for X, Y1, Y2, homs in _homs_into_products(ctx):
        q2 = projections(ctx.inst, Y1, Y2)[1].mor
        buckets = {}
        for h in homs:
            for k in key_fn(ctx, h, Y1, Y2, q2):
                buckets.setdefault(k, []).append(h)
        for h in homs:
            partners = {}
            for k in key_fn(ctx, h, Y1, Y2, q2):
                for h2 in buckets[k]:
                    partners.setdefault(h2, None)
            for h2 in partners:
                yield {"h": h, "h2": h2}


# ----------------------------------------------------- semi-pure universal


def _left_existence(ctx, c):
    v, f = c["v"], c["f"]
    return _conditions_left(ctx, _spl(ctx, v, f), v, f)


def _right_existence(ctx, c):
    v, f = c["v"], c["f"]
    return _conditions_right(ctx, _spr(ctx, f, v), f, v)


def _left_uniqueness(ctx, c):
    v, f = c["v"], c["f"]
    return unique_solution(ctx, _spl(ctx, v, f), lambda h: _conditions_left(ctx, h, v, f))


def _right_uniqueness(ctx, c):
    v, f = c["v"], c["f"]
    return unique_solution(ctx, _spr(ctx, f, v), lambda h: _conditions_right(ctx, h, f, v))


def _unicity_key(ctx, h, Y1, Y2, q2):
    q1 = projections(ctx.inst, Y1, Y2)[0].mor
    second = ctx.comp(q2, h)
    return [(second, v) for v in ctx.cons(ctx.comp(q1, h))]


def _unicity(ctx, c):
    inst, h, h2 = ctx.inst, c["h"], c["h2"]
    Y1, Y2 = h.cod.left, h.cod.right
    q1, q2 = projections(inst, Y1, Y2)
    if ctx.lrcons(ctx.comp(q1.mor, h), ctx.comp(q1.mor, h2)) and \
            ctx.comp(q2.mor, h) == ctx.comp(q2.mor, h2):
        return h == h2
    return True


_UNIQUE_NOTE = ("full enumeration when the hom-set fits the budget, "
                "single-entry deviations otherwise")


def semipure_laws(inst) -> list[Law]:
    return [
        Law("semipure-left-existence", "left semi-pure product property",
            _vf_cases, _left_existence),
        Law("semipure-right-existence", "right semi-pure product property",
            _vf_cases, _right_existence),
        Law("semipure-left-uniqueness", "left semi-pure product is the unique solution",
            _vf_cases, _left_uniqueness, note=_UNIQUE_NOTE),
        Law("semipure-right-uniqueness", "right semi-pure product is the unique solution",
            _vf_cases, _right_uniqueness, note=_UNIQUE_NOTE),
        Law("semipure-unicity-condition", "consistent first and equal second projections",
            lambda ctx: _bucket_pairs(ctx, _unicity_key), _unicity),
    ]


def verify_semipure_universal(inst, budget: HomBudget | None = None):
    return run_laws("semipure-universal", inst, semipure_laws(inst), budget)


# ------------------------------------------------------ product properties


def _effect_projection(ctx, c):
    inst, v, f = ctx.inst, c["v"], c["f"]
    h = _spl(ctx, v, f)
    q1 = projections(inst, v.cod, f.cod)[0].mor
    fp2 = inst.compose(f, _pure(ctx, p2(v.dom, f.dom)).mor)
    return ctx.eff(ctx.comp(q1, h)) == ctx.eff(h) == ctx.eff(fp2)


def _effect_first_cases(ctx):
    for X1, X2, Y1, Y2 in ctx.objects(4):
        buckets = {}
        for f in ctx.homs(X2, Y2):
            buckets.setdefault(ctx.eff(f), []).append(f)
        for v in ctx.pures(X1, Y1):
            for f in ctx.homs(X2, Y2):
                for f2 in buckets[ctx.eff(f)]:
                    yield {"v": v, "f": f, "f2": f2}


def _effect_first(ctx, c):
    inst, v, f, f2 = ctx.inst, c["v"], c["f"], c["f2"]
    if ctx.eff(f) != ctx.eff(f2):
        return True
    q1 = projections(inst, v.cod, f.cod)[0].mor
    return ctx.comp(q1, _spl(ctx, v, f)) == ctx.comp(q1, _spl(ctx, v, f2))


def _obj_pairs(ctx):
    for X1, X2 in ctx.objects(2):
        yield {"X1": X1, "X2": X2}


def _semipure_identity(ctx, c):
    inst, X1, X2 = ctx.inst, c["X1"], c["X2"]
    i1, i2 = pure_id(inst, X1), pure_id(inst, X2)
    one = inst.identity(Prod(X1, X2))
    return inst.semipure_left(i1, i2.mor) == one and inst.semipure_right(i1.mor, i2) == one


def _vw_cases(ctx):
    for X1, X2, Y1, Y2 in ctx.objects(4):
        for v in ctx.pures(X1, Y1):
            for w in ctx.pures(X2, Y2):
                yield {"v": v, "w": w}


def _extends_product(ctx, c):
    inst, v, w = ctx.inst, c["v"], c["w"]
    prod = inst.pure(times(v.v0, w.v0)).mor
    return inst.semipure_left(v, w.mor) == prod and inst.semipure_right(v.mor, w) == prod


def _semipure_swap(ctx, c):
    inst, v, f = ctx.inst, c["v"], c["f"]
    lhs = _spr(ctx, f, v)
    rhs = inst.compose(inst.pure(swap(v.cod, f.cod)).mor,
                       inst.compose(_spl(ctx, v, f), inst.pure(swap(f.dom, v.dom)).mor))
    return lhs == rhs


def _sequential_swap(ctx, c):
    inst, f1, f2 = ctx.inst, c["f1"], c["f2"]
    lhs = _seq_r(ctx, f1, f2)
    rhs = inst.compose(inst.pure(swap(f2.cod, f1.cod)).mor,
                       inst.compose(_seq_l(ctx, f2, f1), inst.pure(swap(f1.dom, f2.dom)).mor))
    return lhs == rhs


def _sequential_extends(ctx, c):
    inst, v, f = ctx.inst, c["v"], c["f"]
    return (sequential_left(inst, v.mor, f) == _spl(ctx, v, f)
            and sequential_right(inst, f, v.mor) == _spr(ctx, f, v))


def _pairing_projection(ctx, c):
    inst, f1, f2 = ctx.inst, c["f1"], c["f2"]
    q1 = projections(inst, f1.cod, f2.cod)[0].mor
    return inst.extended(inst.compose(q1, pairing_left(inst, f1, f2)), f1)


def _pure_fanouts(ctx):
    for X, Y1, Y2 in ctx.objects(3):
        for v in ctx.pures(X, Y1):
            for w in ctx.pures(X, Y2):
                yield {"v": v, "w": w}


def _pairing_of_pures(ctx, c):
    inst, v, w = ctx.inst, c["v"], c["w"]
    base = inst.pure(pair(v.v0, w.v0)).mor
    return pairing_left(inst, v.mor, w.mor) == base == pairing_right(inst, v.mor, w.mor)


def _pairing_differs(ctx, c):
    inst, f1, f2 = ctx.inst, c["f1"], c["f2"]
    q1 = projections(inst, f1.cod, f2.cod)[0].mor
    return inst.compose(q1, pairing_left(inst, f1, f2)) != f1


def product_laws(inst) -> list[Law]:
    laws = [
        Law("semipure-effect-projection", "effect of a semi-pure product and its first projection",
            _vf_cases, _effect_projection),
        Law("semipure-effect-determines-first", "first projection depends only on the effect",
            _effect_first_cases, _effect_first),
        Law("semipure-identity", "product of identities is the identity",
            _obj_pairs, _semipure_identity),
        Law("semipure-extends-product", "semi-pure products of pure morphisms are products",
            _vw_cases, _extends_product),
        Law("semipure-swap", "right semi-pure product is the swapped left one",
            _vf_cases, _semipure_swap),
        Law("sequential-swap", "right sequential product is the swapped left one",
            _f_pairs, _sequential_swap),
        Law("sequential-extends-semipure", "sequential products extend semi-pure products",
            _vf_cases, _sequential_extends),
        Law("pairing-first-projection", "first projection of a left pairing is extended consistent",
            _fanout_pairs, _pairing_projection),
        Law("pairing-of-pures", "pairings of pure morphisms are base pairings",
            _pure_fanouts, _pairing_of_pures),
    ]
    if inst.tag == "state":
        laws.append(Law("pairing-first-projection-differs",
                        "first projection of a left pairing differs from the first component",
                        _fanout_pairs, _pairing_differs, kind="exists"))
    return laws


def verify_prop_suite(inst, budget: HomBudget | None = None):
    return run_laws("product-props", inst, product_laws(inst), budget)


# ---------------------------------------------------------------- centrality


def _pure_any_cases(ctx):
    for X1, Y1, X2, Y2 in ctx.objects(4):
        for v in ctx.pures(X1, Y1):
            for f in ctx.homs(X2, Y2):
                yield {"v": v, "f": f}


def _pure_central(ctx, c):
    return central_against(ctx.inst, c["v"].mor, c["f"])


def _iso_cases(ctx):
    inst = ctx.inst
    isos = []
    for X1, X2, X3 in ctx.objects(3):
        isos.append(inst.pure(assoc_inv(X1, X2, X3)))
    for X1, X2 in ctx.objects(2):
        isos.append(inst.pure(swap(X1, X2)))
    for X in ctx.world:
        isos.append(inst.pure(unit_l(X)))
        isos.append(inst.pure(unit_r(X)))
    for k in isos:
        for X2, Y2 in ctx.objects(2):
            for f in ctx.homs(X2, Y2):
                yield {"v": k, "f": f}


def _homs_k(ctx):
    for X, Y in ctx.objects(2):
        for k in ctx.homs(X, Y):
            yield {"k": k}


def _central_case(ctx, c):
    k = c["k"]
    return all(central_against(ctx.inst, k, f2)
               for X2, Y2 in ctx.objects(2) for f2 in ctx.homs(X2, Y2))


def _k_f_cases(ctx):
    for X1, Y1, X2, Y2 in ctx.objects(4):
        for k in ctx.homs(X1, Y1):
            for f in ctx.homs(X2, Y2):
                yield {"k": k, "f": f}


def _left_right_differ(ctx, c):
    return _seq_l(ctx, c["k"], c["f"]) != _seq_r(ctx, c["k"], c["f"])


def all_central_expected(inst) -> bool:
    if inst.tag in ("partiality", "powerset", "multiset"):
        return True
    return inst.tag == "error" and inst.config.E == 1


def centrality_laws(inst) -> list[Law]:
    laws = [
        Law("pure-central", "every pure morphism is central",
            _pure_any_cases, _pure_central),
        Law("structural-isos-central", "the structural isomorphisms are central",
            _iso_cases, _pure_central),
    ]
    if all_central_expected(inst):
        laws.append(Law("all-central", "every morphism is central", _homs_k, _central_case))
    else:
        laws.append(Law("non-central-exists", "some morphism is not central",
                        _homs_k, lambda ctx, c: not _central_case(ctx, c), kind="exists"))
        laws.append(Law("sequential-left-right-differ",
                        "left and right sequential products differ",
                        _k_f_cases, _left_right_differ, kind="exists"))
    return laws


def verify_centrality(inst, budget: HomBudget | None = None):
    return run_laws("centrality", inst, centrality_laws(inst), budget)


# -------------------------------------------------------------- functoriality


def _identity_central(ctx, c):
    return _central_case(ctx, {"k": ctx.inst.identity(c["X"])})


def _central_pairs(ctx):
    for X, Y, Z in ctx.objects(3):
        for k1 in _central_homs(ctx, X, Y):
            for k2 in _central_homs(ctx, Y, Z):
                yield {"k1": k1, "k2": k2}


def _central_closed(ctx, c):
    k = ctx.comp(c["k2"], c["k1"])
    return ctx.cached(("is-central", k), lambda: _central_case(ctx, {"k": k}))


def _id_compose_cases(ctx):
    for X1, X2, Y2, Z2 in ctx.objects(4):
        for f2 in ctx.homs(X2, Y2):
            for g2 in ctx.homs(Y2, Z2):
                yield {"X1": X1, "f2": f2, "g2": g2}


def _id_compose(ctx, c):
    inst, f2, g2 = ctx.inst, c["f2"], c["g2"]
    i = pure_id(inst, c["X1"])
    lhs = inst.compose(_spl(ctx, i, g2), _spl(ctx, i, f2))
    return lhs == inst.semipure_left(i, ctx.comp(g2, f2))


def _id_compose_right(ctx, c):
    inst, f2, g2 = ctx.inst, c["f2"], c["g2"]
    i = pure_id(inst, c["X1"])
    lhs = inst.compose(_spr(ctx, g2, i), _spr(ctx, f2, i))
    return lhs == inst.semipure_right(ctx.comp(g2, f2), i)


def _sequential_identity(ctx, c):
    inst, X1, X2 = ctx.inst, c["X1"], c["X2"]
    i1, i2 = inst.identity(X1), inst.identity(X2)
    one = inst.identity(Prod(X1, X2))
    return sequential_left(inst, i1, i2) == one == sequential_right(inst, i1, i2)


def _points(ctx, Y):
    return ctx.homs(ctx.one, Y)


def _central_compose_cases(ctx):
    one = ctx.one
    for Y1, Z1, Y2, Z2 in ctx.objects(4):
        for k1 in _central_homs(ctx, Y1, Z1):
            for g2 in ctx.homs(Y2, Z2):
                for f1 in ctx.homs(one, Y1):
                    for f2 in ctx.homs(one, Y2):
                        yield {"k": k1, "g": g2, "f1": f1, "f2": f2}


def _central_compose_left(ctx, c):
    inst, k, g, f1, f2 = ctx.inst, c["k"], c["g"], c["f1"], c["f2"]
    lhs = inst.compose(_seq_l(ctx, k, g), _seq_l(ctx, f1, f2))
    return lhs == _seq_l(ctx, ctx.comp(k, f1), ctx.comp(g, f2))


def _central_compose_right(ctx, c):
    # k central on the right: (g x| k) . (f2 x| f1) = (g . f2) x| (k . f1)
    inst, k, g, f1, f2 = ctx.inst, c["k"], c["g"], c["f1"], c["f2"]
    lhs = inst.compose(_seq_r(ctx, g, k), _seq_r(ctx, f2, f1))
    return lhs == _seq_r(ctx, ctx.comp(g, f2), ctx.comp(k, f1))


def _separation_cases(ctx):
    one = ctx.one
    for X1, X2, Y1, Y2 in ctx.objects(4):
        pts1, pts2 = ctx.pures(one, X1), ctx.pures(one, X2)
        for f1 in ctx.homs(X1, Y1):
            for f2 in ctx.homs(X2, Y2):
                for x1 in pts1:
                    for x2 in pts2:
                        yield {"f1": f1, "f2": f2, "x1": x1, "x2": x2}


def _point_separation(ctx, c):
    inst, f1, f2, x1, x2 = ctx.inst, c["f1"], c["f2"], c["x1"], c["x2"]
    px = inst.pure(times(x1.v0, x2.v0)).mor
    g1, g2 = inst.compose(f1, x1.mor), inst.compose(f2, x2.mor)
    return (inst.compose(_seq_l(ctx, f1, f2), px) == sequential_left(inst, g1, g2)
            and inst.compose(_seq_r(ctx, f1, f2), px) == sequential_right(inst, g1, g2))


_POINT_NOTE = "first arguments range over global elements; see sequential-point-separation"


def _separation_law() -> Law:
    return Law("sequential-point-separation",
               "sequential products commute with precomposition by points",
               _separation_cases, _point_separation)


def functoriality_laws(inst) -> list[Law]:
    return [
        Law("identity-central", "identities are central",
            lambda ctx: ({"X": X} for X in ctx.world), _identity_central),
        Law("center-closed-under-composition", "central morphisms compose to central morphisms",
            _central_pairs, _central_closed),
        Law("semipure-left-id-compose", "left product with an identity preserves composition",
            _id_compose_cases, _id_compose),
        Law("semipure-right-id-compose", "right product with an identity preserves composition",
            _id_compose_cases, _id_compose_right),
        Law("sequential-identity", "sequential product of identities is the identity",
            _obj_pairs, _sequential_identity),
        Law("central-compose-left", "left product is a functor on center times category",
            _central_compose_cases, _central_compose_left, note=_POINT_NOTE),
        Law("central-compose-right", "right product is a functor on category times center",
            _central_compose_cases, _central_compose_right, note=_POINT_NOTE),
        _separation_law(),
    ]


def verify_center_and_functoriality(inst, budget: HomBudget | None = None):
    return run_laws("functoriality", inst, functoriality_laws(inst), budget)


# ----------------------------------------------------------------- naturality


def _single_f(ctx):
    for X, Y in ctx.objects(2):
        for f in ctx.homs(X, Y):
            yield {"f": f}


def _nat_r(ctx, c):
    inst, f = ctx.inst, c["f"]
    one = Terminal()
    lhs = inst.compose(inst.pure(unit_r(f.cod)).mor, inst.semipure_left(pure_id(inst, one), f))
    return lhs == inst.compose(f, inst.pure(unit_r(f.dom)).mor)


def _nat_l(ctx, c):
    inst, f = ctx.inst, c["f"]
    one = Terminal()
    lhs = inst.compose(inst.pure(unit_l(f.cod)).mor, inst.semipure_right(f, pure_id(inst, one)))
    return lhs == inst.compose(f, inst.pure(unit_l(f.dom)).mor)


def _nat_c(ctx, c):
    inst, f1, f2 = ctx.inst, c["f1"], c["f2"]
    lhs = inst.compose(inst.pure(swap(f1.cod, f2.cod)).mor, _seq_r(ctx, f1, f2))
    rhs = inst.compose(_seq_l(ctx, f2, f1), inst.pure(swap(f1.dom, f2.dom)).mor)
    return lhs == rhs


def _triple_points(ctx):
    one = ctx.one
    for Y1, Y2, Y3 in ctx.objects(3):
        for f1 in _points(ctx, Y1):
            for f2 in _points(ctx, Y2):
                for f3 in _points(ctx, Y3):
                    yield {"f1": f1, "f2": f2, "f3": f3}


def _assoc_eq(ctx, f1, f2, f3, prod):
    # a : X1 x (X2 x X3) -> (X1 x X2) x X3, oriented so both sides type-check
    inst = ctx.inst
    aY = inst.pure(assoc_inv(f1.cod, f2.cod, f3.cod)).mor
    aX = inst.pure(assoc_inv(f1.dom, f2.dom, f3.dom)).mor
    lhs = inst.compose(aY, prod(f1, prod(f2, f3)))
    rhs = inst.compose(prod(prod(f1, f2), f3), aX)
    return lhs == rhs


def _nat_a_left(ctx, c):
    return _assoc_eq(ctx, c["f1"], c["f2"], c["f3"], lambda a, b: sequential_left(ctx.inst, a, b))


def _nat_a_right(ctx, c):
    return _assoc_eq(ctx, c["f1"], c["f2"], c["f3"], lambda a, b: sequential_right(ctx.inst, a, b))


def _mixed_cases(ctx):
    for X1, Y1, X2, Y2 in ctx.objects(4):
        for f in ctx.homs(X1, Y1):
            for v in ctx.pures(X2, Y2):
                for w in ctx.pures(X2, Y2):
                    yield {"f": f, "v": v, "w": w}


def _mixed(ctx, c, shape):
    inst, f, v, w = ctx.inst, c["f"], c["v"], c["w"]
    L, R = inst.semipure_left, inst.semipure_right

    def pv(a, b):  # pure product of two pure morphisms
        return inst.pure(times(a.v0, b.v0))

    if shape == 1:   # a . (f x| (v x| w)) = ((f x| v) x| w) . a
        args = (f, v.mor, w.mor)
        left = R(f, pv(v, w))
        right = R(R(f, v), w)
    elif shape == 2:  # a . (v |x (f x| w)) = ((v |x f) x| w) . a
        args = (v.mor, f, w.mor)
        left = L(v, R(f, w))
        right = R(L(v, f), w)
    else:            # a . (v |x (w |x f)) = ((v |x w) |x f) . a
        args = (v.mor, w.mor, f)
        left = L(v, L(w, f))
        right = L(pv(v, w), f)
    d = [a.dom for a in args]
    cd = [a.cod for a in args]
    aY = inst.pure(assoc_inv(*cd)).mor
    aX = inst.pure(assoc_inv(*d)).mor
    return inst.compose(aY, left) == inst.compose(right, aX)


def naturality_laws(inst) -> list[Law]:
    return [
        Law("naturality-unit-r", "r is natural for left products with the unit",
            _single_f, _nat_r),
        Law("naturality-unit-l", "l is natural for right products with the unit",
            _single_f, _nat_l),
        Law("naturality-swap", "c exchanges left and right sequential products",
            _f_pairs, _nat_c),
        Law("naturality-assoc-left", "a is natural for left sequential products",
            _triple_points, _nat_a_left, note=_POINT_NOTE),
        Law("naturality-assoc-right", "a is natural for right sequential products",
            _triple_points, _nat_a_right, note=_POINT_NOTE),
        Law("mixed-assoc-effect-first", "a with an effectful first factor",
            _mixed_cases, lambda ctx, c: _mixed(ctx, c, 1)),
        Law("mixed-assoc-effect-middle", "a with an effectful middle factor",
            _mixed_cases, lambda ctx, c: _mixed(ctx, c, 2)),
        Law("mixed-assoc-effect-last", "a with an effectful last factor",
            _mixed_cases, lambda ctx, c: _mixed(ctx, c, 3)),
        _separation_law(),
    ]


def verify_naturality(inst, budget: HomBudget | None = None):
    return run_laws("naturality", inst, naturality_laws(inst), budget)


# ------------------------------------------------- sequential product property


def _seqprop_left(ctx, c):
    inst, f1, f2 = ctx.inst, c["f1"], c["f2"]
    k = _seq_l(ctx, f1, f2)
    q1, q2 = projections(inst, f1.cod, f2.cod)
    f1p1 = inst.compose(f1, inst.pure(p1(f1.dom, f2.dom)).mor)
    r2 = inst.pure(p2(f1.cod, f2.dom)).mor
    rhs = inst.compose(f2, inst.compose(r2, inst.semipure_right(f1, pure_id(inst, f2.dom))))
    return inst.extended(inst.compose(q1.mor, k), f1p1) and inst.compose(q2.mor, k) == rhs


def _seqprop_right(ctx, c):
    inst, f1, f2 = ctx.inst, c["f1"], c["f2"]
    k = _seq_r(ctx, f1, f2)
    q1, q2 = projections(inst, f1.cod, f2.cod)
    f2p2 = inst.compose(f2, inst.pure(p2(f1.dom, f2.dom)).mor)
    s1 = inst.pure(p1(f1.dom, f2.cod)).mor
    rhs = inst.compose(f1, inst.compose(s1, inst.semipure_left(pure_id(inst, f1.dom), f2)))
    return inst.compose(q1.mor, k) == rhs and inst.extended(inst.compose(q2.mor, k), f2p2)


def _second_key(ctx, h, Y1, Y2, q2):
    return [ctx.comp(q2, h)]


def _extended_unicity(ctx, c):
    inst, h, h2 = ctx.inst, c["h"], c["h2"]
    q1, q2 = projections(inst, h.cod.left, h.cod.right)
    if inst.lr_extended(ctx.comp(q1.mor, h), ctx.comp(q1.mor, h2)) and \
            ctx.comp(q2.mor, h) == ctx.comp(q2.mor, h2):
        return h == h2
    return True


def extended_unicity_holds(ctx, X, Y1, Y2) -> bool:
    def compute():
        homs = ctx.homs(X, Prod(Y1, Y2))
        q2 = projections(ctx.inst, Y1, Y2)[1].mor
        buckets = {}
        for h in homs:
            buckets.setdefault(ctx.comp(q2, h), []).append(h)
        return all(_extended_unicity(ctx, {"h": h, "h2": h2})
                   for b in buckets.values() for h in b for h2 in b)
    return ctx.cached(("extu", X, Y1, Y2), compute)


def _seq_unique_cases(ctx):
    one = ctx.one
    for Y1, Y2 in ctx.objects(2):
        for f1 in _points(ctx, Y1):
            for f2 in _points(ctx, Y2):
                yield {"f1": f1, "f2": f2}


def _seq_unique(ctx, c):
    inst, f1, f2 = ctx.inst, c["f1"], c["f2"]
    if not extended_unicity_holds(ctx, Prod(f1.dom, f2.dom), f1.cod, f2.cod):
        return True
    q1, q2 = projections(inst, f1.cod, f2.cod)
    f1p1 = inst.compose(f1, inst.pure(p1(f1.dom, f2.dom)).mor)
    r2 = inst.pure(p2(f1.cod, f2.dom)).mor
    second = inst.compose(f2, inst.compose(r2, inst.semipure_right(f1, pure_id(inst, f2.dom))))

    def cond(h):
        return inst.extended(inst.compose(q1.mor, h), f1p1) and inst.compose(q2.mor, h) == second

    return unique_solution(ctx, sequential_left(inst, f1, f2), cond)


def sequential_laws(inst) -> list[Law]:
    return [
        Law("sequential-property-left", "left sequential product property",
            _f_pairs, _seqprop_left),
        Law("sequential-property-right", "right sequential product property",
            _f_pairs, _seqprop_right),
        Law("extended-unicity", "extended unicity condition",
            lambda ctx: _bucket_pairs(ctx, _second_key), _extended_unicity,
            informational=True),
        Law("sequential-uniqueness", "sequential product is characterized by its property",
            _seq_unique_cases, _seq_unique,
            note="vacuous where extended unicity fails; arguments are global elements"),
    ]


def verify_sequential_property(inst, budget: HomBudget | None = None):
    return run_laws("sequential-property", inst, sequential_laws(inst), budget)
