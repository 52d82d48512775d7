"""The six concrete effect categories.

Monad-backed worlds (errors, partiality, lists, finite multisets, finite
sets) work pointwise on ``kl f : X -> M Y``. State works directly on
``S x X -> S x Y``.

Two caps bound the list and multiset carriers. Morphisms quantified by the
law suites use *enumeration caps* (``list_cap``, ``mult_cap``). Computed
composites may grow up to the *evaluation caps* (``list_eval_cap``,
``mult_eval_cap``). Anything larger raises :class:`Overflow` and is never
truncated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from functools import lru_cache

from .effectcat import KMor, PureMor
from .finworld import (
    Base,
    Carrier,
    FinFun,
    FinObj,
    HomBudget,
    Overflow,
    Prod,
    StructuralError,
    Terminal,
    bang,
    identity,
)

TAGS = ("error", "partiality", "state", "list", "multiset", "powerset")
MONADIC = ("error", "partiality", "list", "multiset", "powerset")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class InstanceConfig:
    tag: str
    E: int = 2
    S: int = 2
    list_cap: int = 2
    mult_cap: int = 2
    list_eval_cap: int = 8
    mult_eval_cap: int = 64
    sizes: tuple = (("A", 2),)
    mutant: str | None = None

    def validate(self) -> "InstanceConfig":
        if self.tag not in TAGS:
            raise ConfigError(f"unknown instance {self.tag!r}; valid: {', '.join(TAGS)}")
        for name in ("E", "S", "list_cap", "mult_cap"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be at least 1")
        if self.list_eval_cap < self.list_cap or self.mult_eval_cap < self.mult_cap:
            raise ConfigError("evaluation caps must not be below enumeration caps")
        names = [n for n, _ in self.sizes]
        if not names or len(set(names)) != len(names):
            raise ConfigError("world needs distinct base object names")
        if "S" in names and self.tag == "state":
            raise ConfigError("base object name 'S' is reserved for the state object")
        if any(int(s) < 1 for _, s in self.sizes):
            raise ConfigError("base object sizes must be positive")
        if self.tag == "partiality" and self.E != 1:
            return replace(self, E=1)
        return self

    def echo(self) -> dict:
        """Canonical description; only the fields the instance depends on."""
        d = {"instance": self.tag, "sizes": {n: int(s) for n, s in self.sizes}}
        if self.tag in ("error", "partiality"):
            d["E"] = self.E
        if self.tag == "state":
            d["S"] = self.S
        if self.tag == "list":
            d["list_cap"] = self.list_cap
            d["list_eval_cap"] = self.list_eval_cap
        if self.tag == "multiset":
            d["mult_cap"] = self.mult_cap
            d["mult_eval_cap"] = self.mult_eval_cap
        if self.mutant:
            d["mutant"] = self.mutant
        return d


# ------------------------------------------------------------------ monads


def _list_embeds(c: tuple, c2: tuple) -> bool:
    """Is ``c`` equal to ``c2`` with each entry repeated k_i >= 0 times?"""

    @lru_cache(maxsize=None)
    def go(i: int, j: int) -> bool:
        if i == len(c2):
            return j == len(c)
        k = j
        while True:
            if go(i + 1, k):
                return True
            if k < len(c) and c[k] == c2[i]:
                k += 1
            else:
                return False

    return go(0, 0)


@dataclass(frozen=True)
class MonadData:
    """Monad structure on finite sets, acting on element codes.

    ``param`` is ``|E|`` for errors and the evaluation cap for lists and
    multisets; ``enum_param`` is the enumeration cap.
    """

    tag: str
    param: int
    enum_param: int

    def carrier(self, A: FinObj) -> Carrier:
        return Carrier(self.tag, A, self.param)

    def small_carrier(self, A: FinObj) -> Carrier:
        return Carrier(self.tag, A, self.enum_param)

    def generators(self, A: FinObj) -> tuple:
        """Codes (in ``carrier(A)``) of the elements morphisms may take."""
        return _generators(self, A)

    # -- unit, functor action, Kleisli extension, multiplication

    def unit(self, C: Carrier, y: int) -> int:
        t = self.tag
        if t == "error":
            return y
        if t == "list":
            return C.encode((y,))
        if t == "multiset":
            v = [0] * C.inner.size
            v[y] = 1
            return C.encode(tuple(v))
        return 1 << y

    def bind(self, Cy: Carrier, c: int, g, Cz: Carrier) -> int:
        """Kleisli extension ``g*`` at ``c``; ``g`` maps inner codes to ``Cz`` codes."""
        t = self.tag
        if t == "error":
            n = Cy.inner.size
            return g(c) if c < n else Cz.inner.size + (c - n)
        if t == "list":
            out = ()
            for y in Cy.decode(c):
                out += Cz.decode(g(y))
            return Cz.encode(out)
        if t == "multiset":
            acc = [0] * Cz.inner.size
            for y, m in enumerate(Cy.decode(c)):
                if m:
                    for z, k in enumerate(Cz.decode(g(y))):
                        acc[z] += m * k
            return Cz.encode(tuple(acc))
        mask = 0
        for y in Cy.decode(c):
            mask |= g(y)
        return mask

    def fmap(self, Cy: Carrier, c: int, w, Cz: Carrier) -> int:
        """``M w`` at ``c``; ``w`` maps inner codes of ``Cy`` to inner codes of ``Cz``."""
        t = self.tag
        if t == "error":
            n = Cy.inner.size
            return w(c) if c < n else Cz.inner.size + (c - n)
        if t == "list":
            return Cz.encode(tuple(w(y) for y in Cy.decode(c)))
        if t == "multiset":
            acc = [0] * Cz.inner.size
            for y, m in enumerate(Cy.decode(c)):
                if m:
                    acc[w(y)] += m
            return Cz.encode(tuple(acc))
        mask = 0
        for y in Cy.decode(c):
            mask |= 1 << w(y)
        return mask

    def mu(self, Couter: Carrier, c: int, Cres: Carrier) -> int:
        """Multiplication ``M(M A) -> M A``; ``Couter.inner`` is a carrier over A."""
        Cin = Couter.inner
        return self.bind(Couter, c, lambda e: self.convert(Cin, e, Cres), Cres)

    def convert(self, Ca: Carrier, c: int, Cb: Carrier) -> int:
        """Re-encode an element between two carriers over the same object."""
        if self.tag in ("error", "powerset") or Ca == Cb:
            return c
        return Cb.encode(Ca.decode(c))

    # -- strengths

    def strength(self, Y1: FinObj, Y2: FinObj, y1: int, c: int) -> int:
        """``t : Y1 x M Y2 -> M(Y1 x Y2)``."""
        P = Prod(Y1, Y2)
        C2, CP = self.carrier(Y2), self.carrier(P)
        t = self.tag
        if t == "error":
            n2 = Y2.size
            return P.pair(y1, c) if c < n2 else P.size + (c - n2)
        if t == "list":
            return CP.encode(tuple(P.pair(y1, z) for z in C2.decode(c)))
        if t == "multiset":
            acc = [0] * P.size
            for z, m in enumerate(C2.decode(c)):
                acc[P.pair(y1, z)] = m
            return CP.encode(tuple(acc))
        mask = 0
        for z in C2.decode(c):
            mask |= 1 << P.pair(y1, z)
        return mask

    def rstrength(self, Y1: FinObj, Y2: FinObj, c: int, y2: int) -> int:
        """``t' : M Y1 x Y2 -> M(Y1 x Y2)``."""
        P = Prod(Y1, Y2)
        C1, CP = self.carrier(Y1), self.carrier(P)
        t = self.tag
        if t == "error":
            n1 = Y1.size
            return P.pair(c, y2) if c < n1 else P.size + (c - n1)
        if t == "list":
            return CP.encode(tuple(P.pair(y, y2) for y in C1.decode(c)))
        if t == "multiset":
            acc = [0] * P.size
            for y, m in enumerate(C1.decode(c)):
                acc[P.pair(y, y2)] = m
            return CP.encode(tuple(acc))
        mask = 0
        for y in C1.decode(c):
            mask |= 1 << P.pair(y, y2)
        return mask

    # -- pointwise closed forms of the relations

    def cons_local(self, C: Carrier, c: int, y: int) -> bool:
        """``kl f(x) = c`` is consistent with the value ``y``."""
        t = self.tag
        if t == "error":
            return c >= C.inner.size or c == y
        if t == "list":
            return all(e == y for e in C.decode(c))
        if t == "multiset":
            return all(m == 0 or i == y for i, m in enumerate(C.decode(c)))
        return c & ~(1 << y) == 0

    def ext_local(self, C: Carrier, c: int, c2: int) -> bool:
        t = self.tag
        if t == "error":
            n = C.inner.size
            return c == c2 or (c >= n and c2 < n)
        if t == "list":
            return _list_embeds(C.decode(c), C.decode(c2))
        if t == "multiset":
            return all(m == 0 or m2 > 0 for m, m2 in zip(C.decode(c), C.decode(c2)))
        return c & ~c2 == 0

    def lrext_local(self, C: Carrier, c: int, c2: int) -> bool:
        if self.tag == "error":
            n = C.inner.size
            return c >= n or c2 >= n or c == c2
        return True

    def results(self, C: Carrier, c: int) -> frozenset:
        """Values ``a`` with ``c => a`` (evaluation-logic results)."""
        t = self.tag
        if t == "error":
            return frozenset([c]) if c < C.inner.size else frozenset()
        if t == "multiset":
            return frozenset(i for i, m in enumerate(C.decode(c)) if m)
        return frozenset(C.decode(c))


@lru_cache(maxsize=None)
def _generators(monad: MonadData, A: FinObj) -> tuple:
    C = monad.carrier(A)
    if monad.tag == "list":
        return tuple(range(Carrier("list", A, monad.enum_param).size))
    if monad.tag == "multiset":
        small = monad.small_carrier(A)
        return tuple(sorted(C.encode(small.decode(c)) for c in range(small.size)))
    return tuple(range(C.size))


# --------------------------------------------------------------- instances


POINT = Base("pt", 1)


class EffectInstance:
    """Common surface of the six worlds."""

    tag: str = ""
    monadic = False

    def __init__(self, config: InstanceConfig):
        self.config = config
        self.terminal = Terminal()
        self._pure_cache: dict = {}

    def __repr__(self):
        return f"<{type(self).__name__} {self.config.echo()}>"

    def world(self) -> list[Base]:
        return [Base(n, int(s)) for n, s in self.config.sizes]

    # -- shape of kl tables
    def kl_dom(self, X: FinObj) -> FinObj:
        raise NotImplementedError

    def kl_cod(self, Y: FinObj) -> FinObj:
        raise NotImplementedError

    def generators(self, Y: FinObj) -> tuple:
        raise NotImplementedError

    def kmor(self, dom: FinObj, cod: FinObj, table) -> KMor:
        return KMor(dom, cod, FinFun(self.kl_dom(dom), self.kl_cod(cod), tuple(table)), self)

    def hom_size(self, X: FinObj, Y: FinObj) -> int:
        return len(self.generators(Y)) ** self.kl_dom(X).size

    def homs(self, X: FinObj, Y: FinObj, budget: HomBudget | None = None):
        """All enumerable morphisms ``X -> Y`` in lexicographic table order."""
        if budget is not None:
            budget.check_hom(self.hom_size(X, Y))
        D, C = self.kl_dom(X), self.kl_cod(Y)
        for table in itertools.product(self.generators(Y), repeat=D.size):
            yield KMor(X, Y, FinFun(D, C, table), self)

    def pure(self, v0: FinFun) -> PureMor:
        p = self._pure_cache.get(v0)
        if p is None:
            p = PureMor(v0, KMor(v0.dom, v0.cod, self._pure_kl(v0), self))
            self._pure_cache[v0] = p
        return p

    def _pure_kl(self, v0: FinFun) -> FinFun:
        raise NotImplementedError

    def identity(self, X: FinObj) -> KMor:
        return self.pure(identity(X)).mor

    def bang(self, X: FinObj) -> PureMor:
        return self.pure(bang(X))

    def effect(self, f: KMor) -> KMor:
        return self.compose(self.bang(f.cod).mor, f)

    def check_composable(self, g: KMor, f: KMor) -> None:
        if f.cod != g.dom:
            raise StructuralError(f"cannot compose {g.dom} <- {f.cod}")

    def compose(self, g: KMor, f: KMor) -> KMor:
        raise NotImplementedError

    def consistent(self, f: KMor, v: PureMor) -> bool:
        raise NotImplementedError

    def consistent_tables(self, f: KMor) -> list[tuple] | None:
        """Base tables of all pure ``v`` with ``f <| v``, in enumeration order.

        ``None`` means no closed form is available and callers should test
        every pure morphism.
        """
        return None

    def extended(self, f: KMor, f2: KMor) -> bool:
        raise NotImplementedError

    def lr_extended(self, f: KMor, f2: KMor) -> bool:
        raise NotImplementedError

    def semipure_left(self, v: PureMor, f: KMor) -> KMor:
        raise NotImplementedError

    def semipure_right(self, f: KMor, v: PureMor) -> KMor:
        raise NotImplementedError

    def restrict(self, f: KMor, x: int) -> KMor:
        """``f`` precomposed with the point ``x : pt -> dom``."""
        raise NotImplementedError

    def unit_injective(self, X: FinObj) -> bool:
        return len(set(self.pure(identity(X)).mor.table)) == self.kl_dom(X).size


class KleisliInstance(EffectInstance):
    monadic = True

    def __init__(self, config: InstanceConfig, monad: MonadData):
        super().__init__(config)
        self.monad = monad

    def kl_dom(self, X):
        return X

    def kl_cod(self, Y):
        return self.monad.carrier(Y)

    def generators(self, Y):
        return self.monad.generators(Y)

    def _pure_kl(self, v0):
        C = self.kl_cod(v0.cod)
        return FinFun(v0.dom, C, tuple(self.monad.unit(C, y) for y in v0.table))

    def compose(self, g, f):
        self.check_composable(g, f)
        Cy, Cz = self.kl_cod(f.cod), self.kl_cod(g.cod)
        gt = g.kl.table.__getitem__
        bind = self.monad.bind
        cache: dict = {}
        out = []
        for c in f.kl.table:
            r = cache.get(c)
            if r is None:
                r = cache[c] = bind(Cy, c, gt, Cz)
            out.append(r)
        return KMor(f.dom, g.cod, FinFun(f.dom, Cz, tuple(out)), self)

    def fmap_after(self, w: FinFun, f: KMor) -> FinFun:
        """``M w . kl f`` in the base category."""
        Cy, Cz = self.kl_cod(w.dom), self.kl_cod(w.cod)
        return FinFun(f.dom, Cz, tuple(self.monad.fmap(Cy, c, w.table.__getitem__, Cz)
                                       for c in f.kl.table))

    def consistent(self, f, v):
        C = self.kl_cod(f.cod)
        loc = self.monad.cons_local
        return all(loc(C, c, y) for c, y in zip(f.kl.table, v.v0.table))

    def consistent_tables(self, f):
        if type(self).consistent is not KleisliInstance.consistent:
            return None
        C = self.kl_cod(f.cod)
        loc = self.monad.cons_local
        allowed = [[y for y in range(f.cod.size) if loc(C, c, y)] for c in f.kl.table]
        return list(itertools.product(*allowed))

    def extended(self, f, f2):
        C = self.kl_cod(f.cod)
        loc = self.monad.ext_local
        return all(loc(C, a, b) for a, b in zip(f.kl.table, f2.kl.table))

    def lr_extended(self, f, f2):
        C = self.kl_cod(f.cod)
        loc = self.monad.lrext_local
        return all(loc(C, a, b) for a, b in zip(f.kl.table, f2.kl.table))

    # The semi-pure products apply the functor to a pairing map; this is a
    # different code path from the closed-form strengths in MonadData.
    def semipure_left(self, v, f):
        Y1, Y2 = v.cod, f.cod
        P = Prod(Y1, Y2)
        Cy, Cp = self.kl_cod(Y2), self.kl_cod(P)
        fmap = self.monad.fmap
        table = []
        for y1 in v.v0.table:
            base = y1 * Y2.size
            w = lambda y2, base=base: base + y2
            table.extend(fmap(Cy, c, w, Cp) for c in f.kl.table)
        return self.kmor(Prod(v.dom, f.dom), P, table)

    def semipure_right(self, f, v):
        Y1, Y2 = f.cod, v.cod
        P = Prod(Y1, Y2)
        Cy, Cp = self.kl_cod(Y1), self.kl_cod(P)
        fmap = self.monad.fmap
        n2 = Y2.size
        table = []
        for c in f.kl.table:
            for y2 in v.v0.table:
                table.append(fmap(Cy, c, lambda y1, y2=y2: y1 * n2 + y2, Cp))
        return self.kmor(Prod(f.dom, v.dom), P, table)

    def restrict(self, f, x):
        return self.kmor(POINT, f.cod, (f.kl.table[x],))

    def results(self, f: KMor) -> frozenset:
        """Results of a global element ``f : 1 -> Y``."""
        return self.monad.results(self.kl_cod(f.cod), f.kl.table[0])


class ErrorInstance(KleisliInstance):
    tag = "error"

    def __init__(self, config):
        super().__init__(config, MonadData("error", config.E, config.E))

    def domain_of_definition(self, f: KMor) -> frozenset:
        n = f.cod.size
        return frozenset(x for x, c in enumerate(f.kl.table) if c < n)


class PartialityInstance(ErrorInstance):
    """Partial functions, read as error with a single error value.

    The relations are phrased through the order ``f <= f'`` (smaller domain
    of definition, agreeing where defined).
    """

    tag = "partiality"

    def leq(self, f: KMor, f2: KMor) -> bool:
        n = f.cod.size
        return all(a >= n or a == b for a, b in zip(f.kl.table, f2.kl.table))

    def consistent(self, f, v):
        return self.leq(f, v.mor)

    def extended(self, f, f2):
        return self.leq(f, f2)


class ListInstance(KleisliInstance):
    tag = "list"

    def __init__(self, config):
        super().__init__(config, MonadData("list", config.list_eval_cap, config.list_cap))


class MultisetInstance(KleisliInstance):
    tag = "multiset"

    def __init__(self, config):
        super().__init__(config, MonadData("multiset", config.mult_eval_cap, config.mult_cap))


class PowersetInstance(KleisliInstance):
    tag = "powerset"

    def __init__(self, config):
        super().__init__(config, MonadData("powerset", 0, 0))


class StateInstance(EffectInstance):
    """``f : X -> Y`` stands for ``kl f : S x X -> S x Y``."""

    tag = "state"

    def __init__(self, config):
        super().__init__(config)
        self.S = Base("S", config.S)

    def kl_dom(self, X):
        return Prod(self.S, X)

    def kl_cod(self, Y):
        return Prod(self.S, Y)

    def generators(self, Y):
        return tuple(range(self.S.size * Y.size))

    def _pure_kl(self, v0):
        nx, ny = v0.dom.size, v0.cod.size
        table = tuple(s * ny + v0.table[x] for s in range(self.S.size) for x in range(nx))
        return FinFun(self.kl_dom(v0.dom), self.kl_cod(v0.cod), table)

    def compose(self, g, f):
        self.check_composable(g, f)
        gt = g.kl.table
        return KMor(f.dom, g.cod, FinFun(f.kl.dom, g.kl.cod,
                                         tuple(gt[c] for c in f.kl.table)), self)

    def _values(self, f: KMor) -> tuple:
        ny = f.cod.size
        return tuple(c % ny for c in f.kl.table)

    def consistent(self, f, v):
        nx = f.dom.size
        vt = v.v0.table
        return all(y == vt[i % nx] for i, y in enumerate(self._values(f)))

    def consistent_tables(self, f):
        if type(self).consistent is not StateInstance.consistent:
            return None
        nx, vals = f.dom.size, self._values(f)
        table = []
        for x in range(nx):
            ys = {vals[s * nx + x] for s in range(self.S.size)}
            if len(ys) != 1:
                return []
            table.append(ys.pop())
        return [tuple(table)]

    def extended(self, f, f2):
        return self._values(f) == self._values(f2)

    lr_extended = extended

    def semipure_left(self, v, f):
        X1, X2, Y1, Y2 = v.dom, f.dom, v.cod, f.cod
        nx2, ny2 = X2.size, Y2.size
        ny = Y1.size * ny2
        ft, vt = f.kl.table, v.v0.table
        table = []
        for s in range(self.S.size):
            for x1 in range(X1.size):
                for x2 in range(nx2):
                    s2, y2 = divmod(ft[s * nx2 + x2], ny2)
                    table.append(s2 * ny + vt[x1] * ny2 + y2)
        return self.kmor(Prod(X1, X2), Prod(Y1, Y2), table)

    def semipure_right(self, f, v):
        X1, X2, Y1, Y2 = f.dom, v.dom, f.cod, v.cod
        nx1, ny1, ny2 = X1.size, Y1.size, Y2.size
        ny = ny1 * ny2
        ft, vt = f.kl.table, v.v0.table
        table = []
        for s in range(self.S.size):
            for x1 in range(nx1):
                s2, y1 = divmod(ft[s * nx1 + x1], ny1)
                for x2 in range(X2.size):
                    table.append(s2 * ny + y1 * ny2 + vt[x2])
        return self.kmor(Prod(X1, X2), Prod(Y1, Y2), table)

    def restrict(self, f, x):
        nx = f.dom.size
        return self.kmor(POINT, f.cod, tuple(f.kl.table[s * nx + x] for s in range(self.S.size)))

    def state_change(self, f: KMor) -> tuple:
        ny = f.cod.size
        return tuple(c // ny for c in f.kl.table)

    def results(self, f: KMor) -> frozenset:
        return frozenset(self._values(f))


_CLASSES = {
    "error": ErrorInstance,
    "partiality": PartialityInstance,
    "state": StateInstance,
    "list": ListInstance,
    "multiset": MultisetInstance,
    "powerset": PowersetInstance,
}


def build_instance(config: InstanceConfig) -> EffectInstance:
    config = config.validate()
    inst = _CLASSES[config.tag](config)
    if config.mutant:
        from .mutants import apply_mutant
        inst = apply_mutant(inst, config.mutant)
    return inst


def kleisli_compose(g: KMor, f: KMor) -> KMor:
    return g.instance.compose(g, f)


__all__ = [
    "ConfigError", "InstanceConfig", "MonadData", "EffectInstance", "KleisliInstance",
    "ErrorInstance", "PartialityInstance", "StateInstance", "ListInstance",
    "MultisetInstance", "PowersetInstance", "build_instance", "kleisli_compose",
    "Overflow", "TAGS", "MONADIC", "POINT",
]
