"""Effect categories: morphisms, pure morphisms, effects and consistency.

An instance (see :mod:`effcat.instances`) supplies Kleisli composition,
the pure embedding and closed forms of the consistency relations; the
functions here are the instance-independent vocabulary on top of it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .finworld import FinFun, FinObj, HomBudget, StructuralError, compose, enumerate_hom


@dataclass(frozen=True)
class KMor:
    """A morphism ``dom -> cod`` of the effect category.

    ``kl`` is the base-category function it stands for; its shape depends on
    the instance (``dom -> M cod`` for monads, ``S x dom -> S x cod`` for
    state).
    """

    dom: FinObj
    cod: FinObj
    kl: FinFun
    instance: object = field(default=None, compare=False, repr=False)

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((self.dom, self.cod, self.kl.table))
            object.__setattr__(self, "_hash", h)
            return h

    @property
    def table(self) -> tuple:
        return self.kl.table

    def __str__(self):
        return f"{self.dom}~>{self.cod}{list(self.kl.table)}"


@dataclass(frozen=True)
class PureMor:
    """A pure morphism: a base function ``v0`` and its embedding."""

    v0: FinFun
    mor: KMor

    @property
    def dom(self) -> FinObj:
        return self.v0.dom

    @property
    def cod(self) -> FinObj:
        return self.v0.cod

    def __str__(self):
        return f"pure{list(self.v0.table)}:{self.dom}->{self.cod}"


def _parallel(f: KMor, g: KMor) -> None:
    if f.dom != g.dom or f.cod != g.cod:
        raise StructuralError(f"morphisms are not parallel: {f} / {g}")


def _as_kmor(f) -> KMor:
    return f.mor if isinstance(f, PureMor) else f


def effect(inst, f) -> KMor:
    """``!_cod . f``."""
    return inst.effect(_as_kmor(f))


def same_effect(inst, f, f2) -> bool:
    f, f2 = _as_kmor(f), _as_kmor(f2)
    if f.dom != f2.dom:
        raise StructuralError("same-effect needs a common domain")
    return inst.effect(f) == inst.effect(f2)


def consistent(inst, f, v: PureMor) -> bool:
    f = _as_kmor(f)
    _parallel(f, v.mor)
    return inst.consistent(f, v)


def consistent_pures(inst, f, budget: HomBudget | None = None) -> list[PureMor]:
    """All pure ``v`` with ``f <| v``, found by enumerating base functions."""
    f = _as_kmor(f)
    return [inst.pure(v0) for v0 in enumerate_hom(f.dom, f.cod, budget)
            if inst.consistent(f, inst.pure(v0))]


def lr_consistent(inst, f, f2, budget: HomBudget | None = None) -> bool:
    """``f <|> f2``: both consistent with a common pure morphism."""
    f, f2 = _as_kmor(f), _as_kmor(f2)
    _parallel(f, f2)
    for v0 in enumerate_hom(f.dom, f.cod, budget):
        v = inst.pure(v0)
        if inst.consistent(f, v) and inst.consistent(f2, v):
            return True
    return False


def extended_consistent(inst, f, f2) -> bool:
    f, f2 = _as_kmor(f), _as_kmor(f2)
    _parallel(f, f2)
    return inst.extended(f, f2)


def lr_extended(inst, f, f2) -> bool:
    """``f <||> f2``: some ``f''`` with ``f <| f''`` and ``f2 <| f''`` (extended)."""
    f, f2 = _as_kmor(f), _as_kmor(f2)
    _parallel(f, f2)
    return inst.lr_extended(f, f2)


def mono_requirement(inst) -> bool:
    """The unit is injective on every configured object."""
    return all(inst.unit_injective(X) for X in inst.world())


# ------------------------------------------------------------------ suites
#
# Each suite is a list of laws over the configured world. Object variables
# range independently over the world's base objects.

def _homs2(ctx):
    for X, Y in ctx.objects(2):
        for f in ctx.homs(X, Y):
            yield X, Y, f


def _same_effect_equivalence_cases(ctx):
    # h is the representative of f's effect class, so the transitivity
    # premise holds whenever g shares that class
    for X, Y in ctx.objects(2):
        homs = ctx.homs(X, Y)
        reps = {}
        for f in homs:
            reps.setdefault(ctx.eff(f), f)
        for f in homs:
            for r in reps.values():
                yield {"f": f, "g": r, "h": reps[ctx.eff(f)]}


def _same_effect_equivalence(ctx, c):
    f, g, h = c["f"], c["g"], c["h"]
    se = lambda a, b: ctx.eff(a) == ctx.eff(b)
    if not se(f, f) or se(f, g) != se(g, f):
        return False
    return not (se(f, g) and se(g, h)) or se(f, h)


def _pures2(ctx):
    for X, Y in ctx.objects(2):
        for v in ctx.pures(X, Y):
            yield {"v": v}


def _effect_substitution_cases(ctx):
    # g2 is the first morphism out of Y with g's effect; by transitivity this
    # covers every same-effect pair. f ranges over points of Y.
    for Y in ctx.world:
        reps = {}
        for Z in ctx.world:
            for g in ctx.homs(Y, Z):
                reps.setdefault(ctx.eff(g), g)
        for f in ctx.homs(ctx.one, Y):
            for Z in ctx.world:
                for g in ctx.homs(Y, Z):
                    yield {"f": f, "g": g, "g2": reps[ctx.eff(g)]}


def _effect_substitution(ctx, c):
    f, g, g2 = c["f"], c["g"], c["g2"]
    if ctx.eff(g) != ctx.eff(g2):
        return True
    return ctx.eff(ctx.comp(g, f)) == ctx.eff(ctx.comp(g2, f))


def _pure_wiping_cases(ctx):
    for X, Y, Z in ctx.objects(3):
        for f in ctx.homs(X, Y):
            for w in ctx.pures(Y, Z):
                yield {"f": f, "w": w}


def _pure_wiping(ctx, c):
    return same_effect(ctx.inst, ctx.comp(c["w"].mor, c["f"]), c["f"])


def _compatibility_cases(ctx):
    # Cases whose premises hold; a conclusion (g.f, w.v) that was already
    # produced is not repeated, since checking it again cannot differ.
    for X, Y, Y2, Z in ctx.objects(4):
        by_pure = {}
        for g in ctx.homs(Y, Z):
            for p in ctx.cons(g):
                by_pure.setdefault(p, []).append(g)
        pure_at = {p.v0.table: p for p in ctx.pures(Y, Z)}
        seen = set()
        for f in ctx.homs(X, Y):
            after_f = {}
            for u in ctx.pures(Y, Y2):
                vs = ctx.cons(ctx.comp(u.mor, f))
                if not vs:
                    continue
                ut = u.v0.table
                for w in ctx.pures(Y2, Z):
                    wt = w.v0.table
                    gs = by_pure.get(pure_at[tuple(wt[y] for y in ut)])
                    if not gs:
                        continue
                    wvs = [tuple(wt[y] for y in v.v0.table) for v in vs]
                    for g in gs:
                        h = after_f.get(g)
                        if h is None:
                            h = after_f[g] = ctx.inst.compose(g, f)
                        for v, wv in zip(vs, wvs):
                            key = (h.kl.table, wv)
                            if key not in seen:
                                seen.add(key)
                                yield {"f": f, "g": g, "u": u, "v": v, "w": w}


def _compatibility(ctx, c):
    inst = ctx.inst
    f, g, u, v, w = c["f"], c["g"], c["u"], c["v"], c["w"]
    wu = inst.pure(compose(w.v0, u.v0))
    if not (inst.consistent(ctx.comp(u.mor, f), v) and inst.consistent(g, wu)):
        return True
    return inst.consistent(ctx.comp(g, f), inst.pure(compose(w.v0, v.v0)))


def _preservation_cases(ctx):
    for X, Y, Z in ctx.objects(3):
        gs = [(g, w) for g in ctx.homs(Y, Z) for w in ctx.cons(g)]
        for f in ctx.homs(X, Y):
            for v in ctx.cons(f):
                for g, w in gs:
                    yield {"f": f, "v": v, "g": g, "w": w}


def _preservation(ctx, c):
    inst = ctx.inst
    f, v, g, w = c["f"], c["v"], c["g"], c["w"]
    if not (inst.consistent(f, v) and inst.consistent(g, w)):
        return True
    return inst.consistent(ctx.comp(g, f), inst.pure(compose(w.v0, v.v0)))


def _pure_substitution_cases(ctx):
    for X, Y, Z in ctx.objects(3):
        for g in ctx.homs(Y, Z):
            for w in ctx.cons(g):
                for v in ctx.pures(X, Y):
                    yield {"v": v, "g": g, "w": w}


def _pure_substitution(ctx, c):
    inst = ctx.inst
    v, g, w = c["v"], c["g"], c["w"]
    if not inst.consistent(g, w):
        return True
    return inst.consistent(ctx.comp(g, v.mor), inst.pure(compose(w.v0, v.v0)))


def _pure_replacement_cases(ctx):
    for X, Y, Z in ctx.objects(3):
        for f in ctx.homs(X, Y):
            for v in ctx.cons(f):
                for w in ctx.pures(Y, Z):
                    yield {"f": f, "v": v, "w": w}


def _pure_replacement(ctx, c):
    inst = ctx.inst
    f, v, w = c["f"], c["v"], c["w"]
    if not inst.consistent(f, v):
        return True
    return inst.consistent(ctx.comp(w.mor, f), inst.pure(compose(w.v0, v.v0)))


def _complementarity_cases(ctx):
    # pairs sharing an effect and a consistent pure morphism; every f meets itself
    for X, Y in ctx.objects(2):
        buckets = {}
        homs = ctx.homs(X, Y)
        for f in homs:
            e = ctx.eff(f)
            for v in ctx.cons(f):
                buckets.setdefault((e, v), []).append(f)
        for f in homs:
            partners = {f: None}
            e = ctx.eff(f)
            for v in ctx.cons(f):
                for f2 in buckets[(e, v)]:
                    partners.setdefault(f2, None)
            for f2 in partners:
                yield {"f": f, "f2": f2}


def _complementarity(ctx, c):
    f, f2 = c["f"], c["f2"]
    if same_effect(ctx.inst, f, f2) and ctx.lrcons(f, f2):
        return f == f2
    return True


def _consistency_on_effects(ctx, c):
    inst, f = ctx.inst, c["f"]
    if not ctx.cons(f):
        return True
    return inst.consistent(ctx.eff(f), inst.bang(f.dom))


def _pure_pairs(ctx):
    for X, Y in ctx.objects(2):
        ps = ctx.pures(X, Y)
        for v in ps:
            for v2 in ps:
                yield {"v": v, "v2": v2}


def _consistency_on_pures(ctx, c):
    v, v2 = c["v"], c["v2"]
    return ctx.inst.consistent(v.mor, v2) == (v == v2)


def _unambiguous_cases(ctx):
    for X, Y, f in _homs2(ctx):
        for v in ctx.pures(X, Y):
            yield {"f": f, "v": v}


def _unambiguous(ctx, c):
    f, v = c["f"], c["v"]
    return ctx.lrcons(f, v.mor) == ctx.inst.consistent(f, v)


def _lrcons_pairs(ctx):
    # pairs related by <|>, found through a shared consistent pure morphism
    for X, Y in ctx.objects(2):
        by_pure = {}
        homs = ctx.homs(X, Y)
        for f in homs:
            for v in ctx.cons(f):
                by_pure.setdefault(v, []).append(f)
        for f in homs:
            seen = {}
            for v in ctx.cons(f):
                for f2 in by_pure[v]:
                    seen.setdefault(f2, None)
            for f2 in seen:
                yield {"f": f, "f2": f2}


def _lrcons_symmetric(ctx, c):
    return ctx.lrcons(c["f"], c["f2"]) == ctx.lrcons(c["f2"], c["f"])


def _homs_case(ctx):
    for _, _, f in _homs2(ctx):
        yield {"f": f}


def _objects_case(ctx):
    for X in ctx.world:
        yield {"X": X}


def consistency_laws(inst) -> list:
    from .laws import Law

    laws = [
        Law("same-effect-equivalence", "same-effect is an equivalence relation",
            _same_effect_equivalence_cases, _same_effect_equivalence),
        Law("pure-effect-free", "pure morphisms are effect-free",
            _pures2, lambda ctx, c: same_effect(ctx.inst, c["v"], ctx.inst.identity(c["v"].dom))),
        Law("effect-substitution", "same-effect is stable under precomposition",
            _effect_substitution_cases, _effect_substitution,
            note="precomposed morphism ranges over points; see kleisli-point-separation"),
        Law("pure-wiping", "postcomposing a pure morphism keeps the effect",
            _pure_wiping_cases, _pure_wiping),
        Law("pure-reflexivity", "every pure morphism is consistent with itself",
            _pures2, lambda ctx, c: ctx.inst.consistent(c["v"].mor, c["v"])),
        Law("compatibility-with-composition", "consistency is compatible with composition",
            _compatibility_cases, _compatibility),
        Law("preservation-by-composition", "consistency is preserved by composition",
            _preservation_cases, _preservation),
        Law("pure-substitution", "consistency is stable under pure precomposition",
            _pure_substitution_cases, _pure_substitution),
        Law("pure-replacement", "consistency is stable under pure postcomposition",
            _pure_replacement_cases, _pure_replacement),
        Law("complementarity", "same effect and consistent implies equal",
            _complementarity_cases, _complementarity),
        Law("consistency-on-effects", "a consistent morphism has a consistent effect",
            _homs_case, _consistency_on_effects),
        Law("consistency-on-pures", "pure morphisms are consistent only with themselves",
            _pure_pairs, _consistency_on_pures),
        Law("consistency-unambiguous", "two-sided consistency with a pure morphism is one-sided",
            _unambiguous_cases, _unambiguous),
        Law("lr-consistency-symmetric", "two-sided consistency is symmetric",
            _lrcons_pairs, _lrcons_symmetric),
        Law("mono-requirement", "the pure embedding is injective",
            _objects_case, lambda ctx, c: ctx.inst.unit_injective(c["X"])),
    ]
    if inst.tag == "state":
        laws.append(Law("lr-consistency-not-reflexive",
                        "some morphism is not consistent with itself",
                        _homs_case, lambda ctx, c: not ctx.lrcons(c["f"], c["f"]),
                        kind="exists"))
    return laws


def _extension_cases(ctx):
    for _, _, f in _homs2(ctx):
        for v in ctx.cons(f):
            yield {"f": f, "v": v}


def _extension(ctx, c):
    f, v = c["f"], c["v"]
    return not ctx.inst.consistent(f, v) or ctx.inst.extended(f, v.mor)


def _extended_pairs(ctx, X, Y):
    homs = ctx.homs(X, Y)
    for g in homs:
        for g2 in homs:
            if ctx.inst.extended(g, g2):
                yield g, g2


def _ext_substitution_cases(ctx):
    for X, Y, Z in ctx.objects(3):
        gpairs = list(_extended_pairs(ctx, Y, Z))
        for f in ctx.homs(X, Y):
            for g, g2 in gpairs:
                yield {"f": f, "g": g, "g2": g2}


def _ext_substitution(ctx, c):
    inst, f, g, g2 = ctx.inst, c["f"], c["g"], c["g2"]
    if not inst.extended(g, g2):
        return True
    return inst.extended(ctx.comp(g, f), ctx.comp(g2, f))


def _ext_replacement_cases(ctx):
    for X, Y, Z in ctx.objects(3):
        for f, f2 in _extended_pairs(ctx, X, Y):
            for w in ctx.pures(Y, Z):
                yield {"f": f, "f2": f2, "w": w}


def _ext_replacement(ctx, c):
    inst, f, f2, w = ctx.inst, c["f"], c["f2"], c["w"]
    if not inst.extended(f, f2):
        return True
    return inst.extended(ctx.comp(w.mor, f), ctx.comp(w.mor, f2))


def _factorization_cases(ctx):
    for X, Y, Z in ctx.objects(3):
        gw = [(g, w) for g in ctx.homs(Y, Z) for w in ctx.cons(g)]
        for f in ctx.homs(X, Y):
            for g, w in gw:
                yield {"f": f, "g": g, "w": w}


def _factorization(ctx, c):
    inst, f, g, w = ctx.inst, c["f"], c["g"], c["w"]
    if not inst.consistent(g, w):
        return True
    return inst.extended(ctx.comp(g, f), ctx.comp(w.mor, f))


def _lrext_of_lrcons(ctx, c):
    f, f2 = c["f"], c["f2"]
    return not ctx.lrcons(f, f2) or ctx.inst.lr_extended(f, f2)


def _ext_pairs_case(ctx):
    for X, Y in ctx.objects(2):
        for f, f2 in _extended_pairs(ctx, X, Y):
            yield {"f": f, "f2": f2}


def _lrext_of_ext(ctx, c):
    f, f2 = c["f"], c["f2"]
    return not ctx.inst.extended(f, f2) or ctx.inst.lr_extended(f, f2)


def _ext_triples(ctx):
    for X, Y in ctx.objects(2):
        succ = {}
        for f, f2 in _extended_pairs(ctx, X, Y):
            succ.setdefault(f, []).append(f2)
        for f in ctx.homs(X, Y):
            for f2 in succ.get(f, ()):
                for f3 in succ.get(f2, ()):
                    yield {"f": f, "f2": f2, "f3": f3}


def _ext_transitive(ctx, c):
    ext = ctx.inst.extended
    f, f2, f3 = c["f"], c["f2"], c["f3"]
    return not (ext(f, f2) and ext(f2, f3)) or ext(f, f3)


def _ext_symmetric(ctx, c):
    f, f2 = c["f"], c["f2"]
    return not ctx.inst.extended(f, f2) or ctx.inst.extended(f2, f)


def _all_pairs(ctx):
    for X, Y in ctx.objects(2):
        homs = ctx.homs(X, Y)
        for f in homs:
            for f2 in homs:
                yield {"f": f, "f2": f2}


def extended_laws(inst) -> list:
    from .laws import Law

    laws = [
        Law("extended-extension", "consistency is contained in extended consistency",
            _extension_cases, _extension),
        Law("extended-substitution", "extended consistency is stable under precomposition",
            _ext_substitution_cases, _ext_substitution),
        Law("extended-reflexivity", "extended consistency is reflexive",
            _homs_case, lambda ctx, c: ctx.inst.extended(c["f"], c["f"])),
        Law("extended-pure-replacement", "extended consistency is stable under pure postcomposition",
            _ext_replacement_cases, _ext_replacement),
        Law("extended-factorization-containment",
            "factorization-generated relation lies inside extended consistency",
            _factorization_cases, _factorization),
        Law("lr-extended-weaker-than-lr-consistency",
            "two-sided consistency implies two-sided extended consistency",
            _lrcons_pairs, _lrext_of_lrcons),
        Law("lr-extended-contains-extended",
            "extended consistency implies two-sided extended consistency",
            _ext_pairs_case, _lrext_of_ext),
    ]
    if inst.tag in ("error", "partiality", "state"):
        laws.append(Law("extended-transitive", "extended consistency is transitive",
                        _ext_triples, _ext_transitive))
    if inst.tag == "state":
        laws.append(Law("extended-symmetric", "extended consistency is symmetric",
                        _ext_pairs_case, _ext_symmetric))
    if inst.tag in ("list", "multiset", "powerset"):
        laws.append(Law("lr-extended-total", "all parallel morphisms are two-sided extended consistent",
                        _all_pairs, lambda ctx, c: ctx.inst.lr_extended(c["f"], c["f2"])))
    return laws


def axiom_suite_consistency(inst, budget: HomBudget | None = None):
    from .laws import run_laws
    return run_laws("consistency-axioms", inst, consistency_laws(inst), budget)


def axiom_suite_extended(inst, budget: HomBudget | None = None):
    from .laws import run_laws
    return run_laws("extended-consistency", inst, extended_laws(inst), budget)
