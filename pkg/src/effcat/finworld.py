"""Finite base category: objects, total functions, chosen products.

Every object has a dense integer encoding of its elements, ``0..size-1``.
Binary products use row-major pairing ``<a, b> -> a * size(B) + b``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator


class StructuralError(ValueError):
    """Raised when morphisms or objects do not fit together."""


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its budget."""

    def __init__(self, required: int, limit: int, what: str = "hom-set"):
        super().__init__(f"{what} needs {required} enumerations, budget is {limit}")
        self.required = required
        self.limit = limit


class Overflow(ArithmeticError):
    """A computed element does not fit the capped carrier."""


@dataclass(frozen=True)
class HomBudget:
    max_enumerations: int = 50_000_000
    max_hom_size: int = 20_000

    def check_hom(self, count: int) -> None:
        if count > self.max_hom_size:
            raise BudgetExceeded(count, self.max_hom_size)


# ---------------------------------------------------------------- objects


class FinObj:
    """Base class of finite objects; subclasses are frozen dataclasses."""

    size: int

    def describe(self) -> dict:
        raise NotImplementedError

    def elements(self) -> range:
        return range(self.size)


@dataclass(frozen=True)
class Base(FinObj):
    name: str
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise StructuralError(f"base object {self.name!r} must be non-empty")

    def describe(self) -> dict:
        return {"kind": "base", "name": self.name, "size": self.size}

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Terminal(FinObj):
    size: int = 1

    def describe(self) -> dict:
        return {"kind": "terminal"}

    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Prod(FinObj):
    left: FinObj
    right: FinObj

    @property
    def size(self) -> int:  # type: ignore[override]
        return self.left.size * self.right.size

    def pair(self, a: int, b: int) -> int:
        return a * self.right.size + b

    def unpair(self, code: int) -> tuple[int, int]:
        return divmod(code, self.right.size)

    def describe(self) -> dict:
        return {"kind": "prod", "left": self.left.describe(), "right": self.right.describe()}

    def __str__(self):
        return f"({self.left}x{self.right})"


@dataclass(frozen=True)
class Carrier(FinObj):
    """Underlying object ``M(inner)`` of a monad.

    ``tag`` selects the encoding:

    * ``error``: ``inner + E``; codes below ``inner.size`` are values, the
      rest are errors (``param`` is ``|E|``).
    * ``list``: lists of length at most ``param``, ranked by length then
      lexicographically. The ranking does not depend on the cap.
    * ``multiset``: multiplicity vectors with entries at most ``param``,
      read as base ``param + 1`` digits.
    * ``powerset``: bitmasks (``param`` unused).
    """

    tag: str
    inner: FinObj
    param: int

    def __post_init__(self):
        if self.tag not in ("error", "list", "multiset", "powerset"):
            raise StructuralError(f"unknown carrier tag {self.tag!r}")

    @property
    def size(self) -> int:  # type: ignore[override]
        return _carrier_size(self.tag, self.inner.size, self.param)

    def describe(self) -> dict:
        return {"kind": "carrier", "tag": self.tag, "inner": self.inner.describe(),
                "param": self.param}

    def __str__(self):
        return f"{self.tag[0].upper()}{self.param}({self.inner})"

    # element codecs; decoded forms per tag:
    #   error -> ("val", y) | ("err", e); list -> tuple of codes;
    #   multiset -> tuple of multiplicities; powerset -> sorted tuple of members
    def decode(self, code: int):
        return _decode(self.tag, self.inner.size, self.param, code)

    def encode(self, value) -> int:
        return _encode(self.tag, self.inner.size, self.param, value)


@lru_cache(maxsize=None)
def _carrier_size(tag: str, n: int, param: int) -> int:
    if tag == "error":
        return n + param
    if tag == "list":
        return sum(n ** k for k in range(param + 1))
    if tag == "multiset":
        return (param + 1) ** n
    return 2 ** n


def _list_offset(n: int, length: int) -> int:
    if n == 1:
        return length
    return (n ** length - 1) // (n - 1)


@lru_cache(maxsize=1 << 18)
def _decode(tag: str, n: int, param: int, code: int):
    if code < 0 or code >= _carrier_size(tag, n, param):
        raise StructuralError(f"code {code} outside {tag} carrier")
    if tag == "error":
        return ("val", code) if code < n else ("err", code - n)
    if tag == "list":
        length = 0
        while _list_offset(n, length + 1) <= code:
            length += 1
        rank = code - _list_offset(n, length)
        out = []
        for _ in range(length):
            rank, d = divmod(rank, n)
            out.append(d)
        return tuple(reversed(out))
    if tag == "multiset":
        out = []
        for _ in range(n):
            code, d = divmod(code, param + 1)
            out.append(d)
        return tuple(out)
    return tuple(i for i in range(n) if code >> i & 1)


@lru_cache(maxsize=1 << 18)
def _encode(tag: str, n: int, param: int, value) -> int:
    if tag == "error":
        kind, x = value
        if kind == "val":
            if not 0 <= x < n:
                raise StructuralError("value out of range")
            return x
        if not 0 <= x < param:
            raise StructuralError("error out of range")
        return n + x
    if tag == "list":
        if len(value) > param:
            raise Overflow(f"list of length {len(value)} exceeds cap {param}")
        rank = 0
        for d in value:
            rank = rank * n + d
        return _list_offset(n, len(value)) + rank
    if tag == "multiset":
        if len(value) != n:
            raise StructuralError("multiplicity vector has wrong length")
        code = 0
        for d in reversed(value):
            if d > param:
                raise Overflow(f"multiplicity {d} exceeds cap {param}")
            code = code * (param + 1) + d
        return code
    mask = 0
    for i in value:
        mask |= 1 << i
    return mask


def from_description(desc: dict) -> FinObj:
    kind = desc["kind"]
    if kind == "base":
        return Base(desc["name"], desc["size"])
    if kind == "terminal":
        return Terminal()
    if kind == "prod":
        return Prod(from_description(desc["left"]), from_description(desc["right"]))
    if kind == "carrier":
        return Carrier(desc["tag"], from_description(desc["inner"]), desc["param"])
    raise StructuralError(f"unknown object kind {kind!r}")


# -------------------------------------------------------------- functions


@dataclass(frozen=True)
class FinFun:
    dom: FinObj
    cod: FinObj
    table: tuple

    def __post_init__(self):
        if len(self.table) != self.dom.size:
            raise StructuralError(
                f"table of length {len(self.table)} for domain of size {self.dom.size}")
        n = self.cod.size
        for c in self.table:
            if not 0 <= c < n:
                raise StructuralError(f"entry {c} outside codomain of size {n}")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __str__(self):
        return f"{self.dom}->{self.cod}{list(self.table)}"


def identity(X: FinObj) -> FinFun:
    return FinFun(X, X, tuple(range(X.size)))


def compose(g: FinFun, f: FinFun) -> FinFun:
    """``g . f``."""
    if f.cod != g.dom:
        raise StructuralError(f"cannot compose {g.dom} <- {f.cod}")
    gt = g.table
    return FinFun(f.dom, g.cod, tuple(gt[y] for y in f.table))


def constant(X: FinObj, Y: FinObj, y: int) -> FinFun:
    return FinFun(X, Y, (y,) * X.size)


def bang(X: FinObj) -> FinFun:
    """The unique map to the terminal object."""
    return FinFun(X, Terminal(), (0,) * X.size)


def p1(A: FinObj, B: FinObj) -> FinFun:
    P = Prod(A, B)
    return FinFun(P, A, tuple(c // B.size for c in range(P.size)))


def p2(A: FinObj, B: FinObj) -> FinFun:
    P = Prod(A, B)
    return FinFun(P, B, tuple(c % B.size for c in range(P.size)))


def pair(u: FinFun, v: FinFun) -> FinFun:
    if u.dom != v.dom:
        raise StructuralError("pairing needs a common domain")
    P = Prod(u.cod, v.cod)
    return FinFun(u.dom, P, tuple(P.pair(a, b) for a, b in zip(u.table, v.table)))


def product_data(A: FinObj, B: FinObj):
    """``(A x B, p1, p2, pair)``."""
    return Prod(A, B), p1(A, B), p2(A, B), pair


def times(v1: FinFun, v2: FinFun) -> FinFun:
    """``v1 x v2 = <v1 . p1, v2 . p2>``."""
    return pair(compose(v1, p1(v1.dom, v2.dom)), compose(v2, p2(v1.dom, v2.dom)))


def diagonal(X: FinObj) -> FinFun:
    return pair(identity(X), identity(X))


def swap(A: FinObj, B: FinObj) -> FinFun:
    return pair(p2(A, B), p1(A, B))


def assoc(A: FinObj, B: FinObj, C: FinObj) -> FinFun:
    """``(A x B) x C -> A x (B x C)``."""
    AB = Prod(A, B)
    first = p1(AB, C)
    a = compose(p1(A, B), first)
    b = compose(p2(A, B), first)
    return pair(a, pair(b, p2(AB, C)))


def assoc_inv(A: FinObj, B: FinObj, C: FinObj) -> FinFun:
    BC = Prod(A, Prod(B, C)).right
    second = p2(A, BC)
    return pair(pair(p1(A, BC), compose(p1(B, C), second)), compose(p2(B, C), second))


def unit_l(X: FinObj) -> FinFun:
    """``X x 1 -> X``."""
    return p1(X, Terminal())


def unit_r(X: FinObj) -> FinFun:
    """``1 x X -> X``."""
    return p2(Terminal(), X)


def structural_isos(A: FinObj, B: FinObj, C: FinObj) -> dict:
    return {"a": assoc(A, B, C), "c": swap(A, B), "l": unit_l(A), "r": unit_r(A)}


def is_bijective(f: FinFun) -> bool:
    return f.dom.size == f.cod.size and len(set(f.table)) == f.cod.size


def hom_count(X: FinObj, T: FinObj) -> int:
    return T.size ** X.size


def enumerate_hom(X: FinObj, T: FinObj, budget: HomBudget | None = None) -> Iterator[FinFun]:
    """All functions ``X -> T`` in lexicographic table order."""
    if budget is not None:
        budget.check_hom(hom_count(X, T))
    for table in itertools.product(range(T.size), repeat=X.size):
        yield FinFun(X, T, table)
