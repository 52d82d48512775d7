"""Deliberately broken instances, used to show that each suite can fail.

A mutant is the original instance with one operation replaced. The
replacement is installed through a one-off subclass so the rest of the
instance keeps working normally.
"""

from __future__ import annotations

from dataclasses import dataclass

from .finworld import FinFun, Prod, identity, times
from .instances import ConfigError, MonadData


def _shift(X) -> FinFun:
    """Cyclic successor on ``X`` (the identity when ``|X| < 2``)."""
    n = X.size
    return FinFun(X, X, tuple((i + 1) % n for i in range(n)))


def _is_identity(v0: FinFun) -> bool:
    return v0.dom == v0.cod and v0.table == tuple(range(v0.dom.size))


def _swap_first_entries(inst, h):
    t = list(h.kl.table)
    if len(t) >= 2:
        t[0], t[1] = t[1], t[0]
    return inst.kmor(h.dom, h.cod, t)


def _cons_always_true(base):
    def consistent(self, f, v):
        return True
    return {"consistent": consistent}


def _ext_empty(base):
    def extended(self, f, f2):
        return False
    return {"extended": extended}


def _semipure_shifted(base):
    def semipure_left(self, v, f):
        return _swap_first_entries(self, base.semipure_left(self, v, f))
    return {"semipure_left": semipure_left}


def _compose_relabel(base):
    def compose(self, g, f):
        h = base.compose(self, g, f)
        gens = self.generators(h.cod)
        t = list(h.kl.table)
        t[0] = gens[(gens.index(t[0]) + 1) % len(gens)]
        return self.kmor(h.dom, h.cod, t)
    return {"compose": compose}


def _then_shifted(base):
    def compose(self, g, f):
        h = base.compose(self, g, f)
        t = h.kl.table
        return self.kmor(h.dom, h.cod, t[1:] + t[:1])
    return {"compose": compose}


def _arr_nonfunctorial(base):
    def _pure_kl(self, v0):
        if _is_identity(v0):
            return base._pure_kl(self, v0)
        shifted = FinFun(v0.dom, v0.cod, tuple(_shift(v0.cod)(y) for y in v0.table))
        return base._pure_kl(self, shifted)
    return {"_pure_kl": _pure_kl}


def _first_twists_context(base):
    def semipure_right(self, f, v):
        h = base.semipure_right(self, f, v)
        twist = self.pure(times(identity(f.cod), _shift(v.cod))).mor
        return base.compose(self, twist, h)
    return {"semipure_right": semipure_right}


def _first_twists_input(base):
    def semipure_right(self, f, v):
        h = base.semipure_right(self, f, v)
        twist = self.pure(times(_shift(f.dom), identity(v.dom))).mor
        return base.compose(self, h, twist)
    return {"semipure_right": semipure_right}


def _results_as_consistency(base):
    def results(self, f):
        return frozenset(a for a in range(f.cod.size)
                         if self.consistent(f, self.pure(FinFun(f.dom, f.cod, (a,) * f.dom.size))))
    return {"results": results}


@dataclass(frozen=True)
class _ConstantStrength(MonadData):
    """Strength that forgets its inputs and returns a fixed unit element."""

    def strength(self, Y1, Y2, y1, c):
        P = Prod(Y1, Y2)
        return self.unit(self.carrier(P), 0)

    def rstrength(self, Y1, Y2, c, y2):
        P = Prod(Y1, Y2)
        return self.unit(self.carrier(P), 0)


MUTANTS = {
    "cons-always-true": _cons_always_true,
    "ext-empty": _ext_empty,
    "semipure-shifted": _semipure_shifted,
    "compose-relabel": _compose_relabel,
    "then-shifted": _then_shifted,
    "arr-nonfunctorial": _arr_nonfunctorial,
    "first-twists-context": _first_twists_context,
    "first-twists-input": _first_twists_input,
    "results-as-consistency": _results_as_consistency,
    "strength-constant": None,
}


def apply_mutant(inst, name: str):
    """Return ``inst`` with the named operation broken (mutates in place)."""
    if name not in MUTANTS:
        raise ConfigError(f"unknown mutant {name!r}; valid: {', '.join(sorted(MUTANTS))}")
    if name == "strength-constant":
        if not inst.monadic:
            raise ConfigError(f"mutant {name!r} needs a monad-backed instance")
        m = inst.monad
        inst.monad = _ConstantStrength(m.tag, m.param, m.enum_param)
        return inst
    base = type(inst)
    overrides = MUTANTS[name](base)
    inst.__class__ = type(f"{base.__name__}[{name}]", (base,), overrides)
    return inst
