"""Arrow combinators over an effect instance and the nine Arrow laws.

``first f`` is the right semi-pure product of ``f`` with an identity, and
``>>>`` is reversed Kleisli composition. The laws are checked by building
both sides from these primitives through composition chains, so they do not
reuse the products module's sequential products or pairings; those are only
compared against in the derived-combinator laws.
"""

from __future__ import annotations

from dataclasses import dataclass

from .effectcat import KMor
from .finworld import (
    FinFun,
    HomBudget,
    Prod,
    StructuralError,
    assoc,
    compose,
    diagonal,
    identity,
    p1,
    swap,
    times,
)
from .laws import Law, run_laws
from .products import pairing_left, sequential_left


@dataclass(frozen=True)
class ArrowOps:
    """``arr``, ``>>>`` and ``first`` with the derived combinators."""

    inst: object

    def arr(self, v0: FinFun) -> KMor:
        return self.inst.pure(v0).mor

    def then(self, f: KMor, g: KMor) -> KMor:
        return self.inst.compose(g, f)

    def first(self, f: KMor, Z) -> KMor:
        """``f x id_Z : X x Z -> Y x Z``."""
        return self.inst.semipure_right(f, self.inst.pure(identity(Z)))

    def second(self, f: KMor, Z) -> KMor:
        """``id_Z x f``, conjugating ``first`` by swaps."""
        inner = self.then(self.arr(swap(Z, f.dom)), self.first(f, Z))
        return self.then(inner, self.arr(swap(f.cod, Z)))

    def both(self, f1: KMor, f2: KMor) -> KMor:
        """``f1 *** f2 = first f1 >>> second f2``."""
        return self.then(self.first(f1, f2.dom), self.second(f2, f1.cod))

    def fanout(self, f1: KMor, f2: KMor) -> KMor:
        """``f1 &&& f2 = arr diag >>> (f1 *** f2)``."""
        if f1.dom != f2.dom:
            raise StructuralError("fanout needs a common domain")
        return self.then(self.arr(diagonal(f1.dom)), self.both(f1, f2))


def fanout(inst, f1: KMor, f2: KMor) -> KMor:
    return ArrowOps(inst).fanout(f1, f2)


# ------------------------------------------------------------------ cases


def _single(ctx):
    for X, Y in ctx.objects(2):
        for f in ctx.homs(X, Y):
            yield {"f": f}


def _with_context(ctx):
    for X, Y, Z in ctx.objects(3):
        for f in ctx.homs(X, Y):
            yield {"f": f, "Z": Z}


def _pure_pairs(ctx):
    for X, Y, Z in ctx.objects(3):
        for v in ctx.pures(X, Y):
            for w in ctx.pures(Y, Z):
                yield {"v": v, "w": w}


def _triples(ctx):
    for X, Y, Z in ctx.objects(3):
        for f in ctx.homs(ctx.one, X):
            for g in ctx.homs(X, Y):
                for h in ctx.homs(Y, Z):
                    yield {"f": f, "g": g, "h": h}


def _pure_with_context(ctx):
    for X, Y, Z in ctx.objects(3):
        for v in ctx.pures(X, Y):
            yield {"v": v, "Z": Z}


def _composable_with_context(ctx):
    for X, Y, Z, W in ctx.objects(4):
        for f in ctx.homs(X, Y):
            for g in ctx.homs(Y, Z):
                yield {"f": f, "g": g, "W": W}


def _f_and_context_map(ctx):
    for X, Y, Z, W in ctx.objects(4):
        for f in ctx.homs(X, Y):
            for v in ctx.pures(Z, W):
                yield {"f": f, "v": v}


def _two_contexts(ctx):
    for X, Y, Z, W in ctx.objects(4):
        for f in ctx.homs(X, Y):
            yield {"f": f, "Z": Z, "W": W}


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


# ------------------------------------------------------------------- laws


def _ops(ctx) -> ArrowOps:
    return ArrowOps(ctx.inst)


def _left_identity(ctx, c):
    A, f = _ops(ctx), c["f"]
    return A.then(A.arr(identity(f.dom)), f) == f


def _right_identity(ctx, c):
    A, f = _ops(ctx), c["f"]
    return A.then(f, A.arr(identity(f.cod))) == f


def _associativity(ctx, c):
    A, f, g, h = _ops(ctx), c["f"], c["g"], c["h"]
    fg = ctx.cached(("fg", f, g), lambda: A.then(f, g))
    gh = ctx.cached(("gh", g, h), lambda: A.then(g, h))
    return A.then(fg, h) == A.then(f, gh)


def _point_separation(ctx, c):
    A, f, g, x = _ops(ctx), c["f"], c["g"], c["x"]
    return A.then(x.mor, A.then(f, g)) == A.then(A.then(x.mor, f), g)


def _separation_cases(ctx):
    for X, Y, Z in ctx.objects(3):
        points = ctx.pures(ctx.one, X)
        for f in ctx.homs(X, Y):
            for g in ctx.homs(Y, Z):
                for x in points:
                    yield {"f": f, "g": g, "x": x}


def _arr_functorial(ctx, c):
    A, v, w = _ops(ctx), c["v"].v0, c["w"].v0
    return A.arr(compose(w, v)) == A.then(A.arr(v), A.arr(w))


def _first_arr(ctx, c):
    A, v, Z = _ops(ctx), c["v"].v0, c["Z"]
    return A.first(A.arr(v), Z) == A.arr(times(v, identity(Z)))


def _first_composition(ctx, c):
    A, f, g, W = _ops(ctx), c["f"], c["g"], c["W"]
    return A.first(A.then(f, g), W) == A.then(A.first(f, W), A.first(g, W))


def _first_commutes(ctx, c):
    A, f, v = _ops(ctx), c["f"], c["v"].v0
    lhs = A.then(A.first(f, v.dom), A.arr(times(identity(f.cod), v)))
    rhs = A.then(A.arr(times(identity(f.dom), v)), A.first(f, v.cod))
    return lhs == rhs


def _first_fst(ctx, c):
    A, f, Z = _ops(ctx), c["f"], c["Z"]
    lhs = A.then(A.first(f, Z), A.arr(p1(f.cod, Z)))
    return lhs == A.then(A.arr(p1(f.dom, Z)), f)


def _first_assoc(ctx, c):
    A, f, Z, W = _ops(ctx), c["f"], c["Z"], c["W"]
    lhs = A.then(A.first(A.first(f, Z), W), A.arr(assoc(f.cod, Z, W)))
    rhs = A.then(A.arr(assoc(f.dom, Z, W)), A.first(f, Prod(Z, W)))
    return lhs == rhs


def _second_is_left_product(ctx, c):
    inst, f, Z = ctx.inst, c["f"], c["Z"]
    return _ops(ctx).second(f, Z) == inst.semipure_left(inst.pure(identity(Z)), f)


def _both_is_sequential(ctx, c):
    inst, f1, f2 = ctx.inst, c["f1"], c["f2"]
    return _ops(ctx).both(f1, f2) == sequential_left(inst, f1, f2)


def _fanout_is_pairing(ctx, c):
    inst, f1, f2 = ctx.inst, c["f1"], c["f2"]
    return _ops(ctx).fanout(f1, f2) == pairing_left(inst, f1, f2)


def _fanout_projection(ctx, c):
    A, f1, f2 = _ops(ctx), c["f1"], c["f2"]
    return A.then(A.fanout(f1, f2), A.arr(p1(f1.cod, f2.cod)))


def _fanout_extends(ctx, c):
    return ctx.inst.extended(_fanout_projection(ctx, c), c["f1"])


def _fanout_not_product(ctx, c):
    return _fanout_projection(ctx, c) != c["f1"]


def arrow_laws(inst) -> list[Law]:
    laws = [
        Law("arrow-left-identity", "arr id >>> f = f", _single, _left_identity),
        Law("arrow-right-identity", "f >>> arr id = f", _single, _right_identity),
        Law("arrow-associativity", "(f >>> g) >>> h = f >>> (g >>> h)", _triples, _associativity,
            note="first factor ranges over points; see arrow-point-separation"),
        Law("arrow-arr-functorial", "arr (w . v) = arr v >>> arr w", _pure_pairs, _arr_functorial),
        Law("arrow-first-arr", "first (arr v) = arr (v x id)", _pure_with_context, _first_arr),
        Law("arrow-first-composition", "first (f >>> g) = first f >>> first g",
            _composable_with_context, _first_composition),
        Law("arrow-first-commutes", "first f >>> arr (id x v) = arr (id x v) >>> first f",
            _f_and_context_map, _first_commutes),
        Law("arrow-first-fst", "first f >>> arr fst = arr fst >>> f", _with_context, _first_fst),
        Law("arrow-first-assoc", "first (first f) >>> arr assoc = arr assoc >>> first f",
            _two_contexts, _first_assoc),
        Law("arrow-point-separation", "composites are determined at points",
            _separation_cases, _point_separation),
        Law("arrow-second-is-left-product", "second f = id x f (left semi-pure)",
            _with_context, _second_is_left_product),
        Law("arrow-both-is-sequential", "f1 *** f2 is the left sequential product",
            _f_pairs, _both_is_sequential),
        Law("arrow-fanout-is-pairing", "f1 &&& f2 is the left pairing",
            _fanout_pairs, _fanout_is_pairing),
        Law("arrow-fanout-projection-extends", "(f1 &&& f2) >>> arr fst extends f1",
            _fanout_pairs, _fanout_extends),
    ]
    if inst.tag == "state":
        laws.append(Law("arrow-fanout-not-product", "(f1 &&& f2) >>> arr fst differs from f1",
                        _fanout_pairs, _fanout_not_product, kind="exists"))
    return laws


def arrow_laws_suite(inst, budget: HomBudget | None = None):
    return run_laws("arrow-laws", inst, arrow_laws(inst), budget)
