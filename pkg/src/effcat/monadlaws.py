"""Monad, functor and Kleisli-category laws for every instance.

Kleisli laws apply to all instances (state included). The laws about
``eta``, ``mu`` and the functor action only make sense for the monad-backed
instances and are left out for state.

Nested elements of ``M(M Y)`` and ``M(M(M Y))`` would need carriers of
carriers, which are far too large to enumerate. Instead the small
containers (at most two entries) at each level are listed and named by a
base object ``G``, so that ``M i : M G -> M(M Y)`` covers them.
"""

from __future__ import annotations

from .finworld import Base, Carrier, HomBudget, compose, enumerate_hom, identity
from .laws import Law, run_laws
from .strength import small_containers


def _homs_xy(ctx):
    for X, Y in ctx.objects(2):
        for f in ctx.homs(X, Y):
            yield {"f": f}


def _left_identity(ctx, c):
    f = c["f"]
    return ctx.inst.compose(ctx.inst.identity(f.cod), f) == f


def _right_identity(ctx, c):
    f = c["f"]
    return ctx.inst.compose(f, ctx.inst.identity(f.dom)) == f


def _assoc_point_cases(ctx):
    for X, Y, Z in ctx.objects(3):
        for f in ctx.homs(ctx.one, X):
            for g in ctx.homs(X, Y):
                for h in ctx.homs(Y, Z):
                    yield {"f": f, "g": g, "h": h}


def _associativity(ctx, c):
    inst, f, g, h = ctx.inst, c["f"], c["g"], c["h"]
    gf = ctx.comp(g, f)
    return inst.compose(ctx.comp(h, g), f) == inst.compose(h, gf)


def _separation_cases(ctx):
    for X, Y, Z in ctx.objects(3):
        points = ctx.pures(ctx.one, X)
        for f in ctx.homs(X, Y):
            for g in ctx.homs(Y, Z):
                for x in points:
                    yield {"f": f, "g": g, "x": x}


def _separation(ctx, c):
    inst, f, g, x = ctx.inst, c["f"], c["g"], c["x"].mor
    return inst.compose(inst.compose(g, f), x) == inst.compose(g, inst.compose(f, x))


def _mixed_cases(ctx):
    """Triples with a pure first or last factor, the others unrestricted."""
    for X, Y, Z, W in ctx.objects(4):
        for g in ctx.homs(Y, Z):
            for h in ctx.homs(Z, W):
                for v in ctx.pures(X, Y):
                    yield {"f": v.mor, "g": g, "h": h}
    for X, Y, Z, W in ctx.objects(4):
        for f in ctx.homs(X, Y):
            for g in ctx.homs(Y, Z):
                for w in ctx.pures(Z, W):
                    yield {"f": f, "g": g, "h": w.mor}


def _mixed_associativity(ctx, c):
    inst, f, g, h = ctx.inst, c["f"], c["g"], c["h"]
    return inst.compose(inst.compose(h, g), f) == inst.compose(h, inst.compose(g, f))


def _pure_pairs(ctx):
    for X, Y, Z in ctx.objects(3):
        for v in ctx.pures(X, Y):
            for w in ctx.pures(Y, Z):
                yield {"v": v, "w": w}


def _pure_functorial(ctx, c):
    inst, v, w = ctx.inst, c["v"], c["w"]
    return inst.pure(compose(w.v0, v.v0)).mor == inst.compose(w.mor, v.mor)


def _world_objects(ctx):
    for X in ctx.world:
        yield {"X": X}


def _pure_identity(ctx, c):
    X = c["X"]
    return ctx.inst.pure(identity(X)).mor == ctx.inst.identity(X)


def _pure_injective(ctx, c):
    X, Y = c["X"], c["Y"]
    tables = {v.mor.kl.table for v in ctx.pures(X, Y)}
    return len(tables) == len(ctx.pures(X, Y))


def _obj_pairs(ctx):
    for X, Y in ctx.objects(2):
        yield {"X": X, "Y": Y}


# ------------------------------------------------------------ monad laws


def _elements(ctx):
    for Y in ctx.world:
        for cc in ctx.inst.generators(Y):
            yield {"Y": Y, "c": cc}


def _small_elements(ctx):
    m = ctx.inst.monad
    for Y in ctx.world:
        for cc in range(m.small_carrier(Y).size):
            yield {"Y": Y, "c": cc}


def _left_unit(ctx, c):
    """``mu . eta_M = id``."""
    m, Y, cc = ctx.inst.monad, c["Y"], c["c"]
    C1 = m.small_carrier(Y)
    outer = Carrier(m.tag, C1, m.param)
    got = m.mu(outer, m.unit(outer, cc), m.carrier(Y))
    return got == m.convert(C1, cc, m.carrier(Y))


def _right_unit(ctx, c):
    """``mu . M eta = id``."""
    m, Y, cc = ctx.inst.monad, c["Y"], c["c"]
    Ce = m.carrier(Y)
    outer = Carrier(m.tag, Ce, m.param)
    lifted = m.fmap(Ce, cc, lambda y: m.unit(Ce, y), outer)
    return m.mu(outer, lifted, Ce) == cc


def _level_two(m, Y):
    """Small elements of ``M(M Y)`` with ``M Y`` restricted to its enumeration carrier."""
    C1 = m.small_carrier(Y)
    CC = Carrier(m.tag, C1, m.param)
    return CC, small_containers(m.tag, CC)


def _level_three_cases(ctx):
    m = ctx.inst.monad
    for Y in ctx.world:
        _, names = _level_two(m, Y)
        CG = Carrier(m.tag, Base("G", len(names)), m.param)
        for cc in small_containers(m.tag, CG):
            yield {"Y": Y, "c": cc}


def _associativity_mu(ctx, c):
    """``mu . M mu = mu . mu_M`` on ``M i (c)`` where ``i`` names small level-2 elements."""
    m, Y, cc = ctx.inst.monad, c["Y"], c["c"]
    Ce = m.carrier(Y)
    CC, names = _level_two(m, Y)
    CG = Carrier(m.tag, Base("G", len(names)), m.param)
    flat = [m.mu(CC, e, Ce) for e in names]
    # M(mu . i): name the distinct flattened elements by a second base object
    distinct = sorted(set(flat))
    index = {e: k for k, e in enumerate(distinct)}
    CH = Carrier(m.tag, Base("H", len(distinct)), m.param)
    outer_first = m.fmap(CG, cc, lambda g: index[flat[g]], CH)
    lhs = m.bind(CH, outer_first, lambda k: distinct[k], Ce)
    # mu_M . M i, then mu
    inner_first = m.bind(CG, cc, lambda g: names[g], CC)
    rhs = m.mu(CC, inner_first, Ce)
    return lhs == rhs


def _functor_identity(ctx, c):
    m, Y, cc = ctx.inst.monad, c["Y"], c["c"]
    Ce = m.carrier(Y)
    return m.fmap(Ce, cc, lambda y: y, Ce) == cc


def _functor_cases(ctx):
    inst = ctx.inst
    for Y, Z, W in ctx.objects(3):
        gens = inst.generators(Y)
        for u in enumerate_hom(Y, Z, ctx.budget):
            for w in enumerate_hom(Z, W, ctx.budget):
                for cc in gens:
                    yield {"u": inst.pure(u), "w": inst.pure(w), "c": cc}


def _functor_composition(ctx, c):
    m, u, w, cc = ctx.inst.monad, c["u"].v0, c["w"].v0, c["c"]
    CY, CZ, CW = m.carrier(u.dom), m.carrier(u.cod), m.carrier(w.cod)
    once = m.fmap(CY, cc, compose(w, u), CW)
    return once == m.fmap(CZ, m.fmap(CY, cc, u, CZ), w, CW)


def _bind_cases(ctx):
    inst = ctx.inst
    for Y, Z in ctx.objects(2):
        for g in ctx.homs(Y, Z):
            for cc in inst.generators(Y):
                yield {"g": g, "c": cc}


def _bind_unit(ctx, c):
    """``g* . eta = g``: binding a unit element applies the Kleisli table."""
    m, g = ctx.inst.monad, c["g"]
    CY, CZ = m.carrier(g.dom), m.carrier(g.cod)
    return all(m.bind(CY, m.unit(CY, y), g.kl, CZ) == g.kl(y) for y in range(g.dom.size))


def monad_laws(inst) -> list[Law]:
    laws = [
        Law("kleisli-left-identity", "identity is neutral on the left",
            _homs_xy, _left_identity),
        Law("kleisli-right-identity", "identity is neutral on the right",
            _homs_xy, _right_identity),
        Law("kleisli-associativity", "associativity of Kleisli composition",
            _assoc_point_cases, _associativity,
            note="first factor ranges over points; see kleisli-point-separation"),
        Law("kleisli-point-separation", "composites are determined at points",
            _separation_cases, _separation),
        Law("kleisli-associativity-mixed", "associativity with a pure outer factor",
            _mixed_cases, _mixed_associativity),
        Law("pure-functoriality", "the pure embedding preserves composition",
            _pure_pairs, _pure_functorial),
        Law("pure-identity", "the pure embedding preserves identities",
            _world_objects, _pure_identity),
        Law("mono-requirement", "the pure embedding is injective on morphisms",
            _obj_pairs, _pure_injective),
    ]
    if inst.monadic:
        laws += [
            Law("monad-left-unit", "mu after eta_M is the identity",
                _small_elements, _left_unit),
            Law("monad-right-unit", "mu after M eta is the identity",
                _elements, _right_unit),
            Law("monad-associativity", "mu after M mu equals mu after mu_M",
                _level_three_cases, _associativity_mu,
                note="nested elements with at most two entries per level"),
            Law("functor-identity", "M preserves identities", _elements, _functor_identity),
            Law("functor-composition", "M preserves composition",
                _functor_cases, _functor_composition),
            Law("bind-unit", "Kleisli extension after the unit", _bind_cases, _bind_unit),
        ]
    return laws


def verify_monad_laws(inst, budget: HomBudget | None = None):
    return run_laws("monad-laws", inst, monad_laws(inst), budget)
