"""Mod-2 cohomology of B(O(n) wr Z2) in the classifying-space limit.

Additive basis: SqC(x, j) = Sqe(x) * c^j for a monomial x, and
Od(x, y) = x (.) y for monomials x < y.  Products follow the external-square
rules; x (.) y is killed by c and x (.) x vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Union

from .monomials import Monomial, PolyZ2, StructureError, enumerate_monomials, mono_mul


@dataclass(frozen=True, slots=True)
class SqC:
    """Sqe(x) * c^j.  SqC(1, j) is c^j and SqC(1, 0) is the unit."""

    x: Monomial
    j: int = 0

    def __post_init__(self) -> None:
        if self.j < 0:
            raise ValueError("negative c-exponent")

    @property
    def n(self) -> int:
        return self.x.n

    @property
    def degree(self) -> int:
        return 2 * self.x.degree + self.j

    def sort_key(self) -> tuple:
        return (self.degree, 0, self.x.sort_key(), self.j)

    def __str__(self) -> str:
        if self.x.is_one():
            return {0: "1", 1: "c"}.get(self.j, f"c^{self.j}")
        base = f"Sq[{self.x}]"
        if self.j == 0:
            return base
        return base + ("*c" if self.j == 1 else f"*c^{self.j}")


@dataclass(frozen=True, slots=True)
class Od:
    """x (.) y with x < y in the canonical monomial order."""

    x: Monomial
    y: Monomial

    def __post_init__(self) -> None:
        if not self.x < self.y:
            raise ValueError(f"Od pair must be strictly increasing, got ({self.x}, {self.y})")

    @property
    def n(self) -> int:
        return self.x.n

    @property
    def degree(self) -> int:
        return self.x.degree + self.y.degree

    def sort_key(self) -> tuple:
        return (self.degree, 1, self.x.sort_key(), self.y.sort_key())

    def __str__(self) -> str:
        return f"Od[{self.x}, {self.y}]"


WreathBasisElement = Union[SqC, Od]


def od_canonical(u: Monomial, v: Monomial) -> Od | None:
    """u (.) v as a basis element, or None when u == v (the class is zero)."""
    if u == v:
        return None
    return Od(u, v) if u < v else Od(v, u)


class WreathClass:
    """A mod-2 sum of wreath basis elements over a fixed n."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Iterable[WreathBasisElement] = ()):
        acc: set = set()
        for t in terms:
            if t.n != n:
                raise StructureError(f"{t} is not over n={n}")
            acc ^= {t}
        self.n = n
        self.terms = frozenset(acc)

    @classmethod
    def _raw(cls, n: int, terms: frozenset) -> WreathClass:
        out = cls.__new__(cls)
        out.n = n
        out.terms = terms
        return out

    @classmethod
    def zero(cls, n: int) -> WreathClass:
        return cls(n)

    @classmethod
    def one(cls, n: int) -> WreathClass:
        return cls(n, [SqC(Monomial.one(n), 0)])

    @classmethod
    def c(cls, n: int, power: int = 1) -> WreathClass:
        return cls(n, [SqC(Monomial.one(n), power)])

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WreathClass):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, self.terms))

    def __iter__(self) -> Iterator[WreathBasisElement]:
        return iter(sorted(self.terms, key=lambda t: t.sort_key()))

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, item: object) -> bool:
        return item in self.terms

    def __add__(self, other: WreathClass) -> WreathClass:
        if self.n != other.n:
            raise StructureError(f"mismatched generator counts {self.n} and {other.n}")
        return WreathClass._raw(self.n, self.terms ^ other.terms)

    __sub__ = __add__

    def homogeneous(self, d: int) -> WreathClass:
        return WreathClass._raw(self.n, frozenset(t for t in self.terms if t.degree == d))

    def degrees(self) -> set[int]:
        return {t.degree for t in self.terms}

    def __str__(self) -> str:
        return " + ".join(str(t) for t in self) or "0"

    def __repr__(self) -> str:
        return f"WreathClass({self})"


def sqe(p: PolyZ2) -> WreathClass:
    """External square.  Quadratic: cross terms of distinct monomials become Od pairs."""
    xs = sorted(p.terms)
    terms: list[WreathBasisElement] = [SqC(x, 0) for x in xs]
    for a in range(len(xs)):
        for b in range(a + 1, len(xs)):
            terms.append(Od(xs[a], xs[b]))
    return WreathClass(p.n, terms)


def odot(p: PolyZ2, q: PolyZ2) -> WreathClass:
    """Biadditive symmetric pairing with x (.) x = 0."""
    if p.n != q.n:
        raise StructureError(f"mismatched generator counts {p.n} and {q.n}")
    acc: set = set()
    for x in p.terms:
        for y in q.terms:
            t = od_canonical(x, y)
            if t is not None:
                acc ^= {t}
    return WreathClass._raw(p.n, frozenset(acc))


def mul_basis(e: WreathBasisElement, f: WreathBasisElement) -> tuple[WreathBasisElement, ...]:
    """Product of two basis elements as a tuple of distinct basis elements."""
    if isinstance(e, SqC) and isinstance(f, SqC):
        return (SqC(mono_mul(e.x, f.x), e.j + f.j),)
    if isinstance(e, Od) and isinstance(f, SqC):
        e, f = f, e
    if isinstance(e, SqC):
        if e.j:
            return ()
        t = od_canonical(mono_mul(e.x, f.x), mono_mul(e.x, f.y))
        return () if t is None else (t,)
    first = od_canonical(mono_mul(e.x, f.x), mono_mul(e.y, f.y))
    second = od_canonical(mono_mul(e.x, f.y), mono_mul(e.y, f.x))
    if first == second:
        return ()
    return tuple(t for t in (first, second) if t is not None)


def mul(a: WreathClass, b: WreathClass, cap: int) -> WreathClass:
    """Cup product, dropping every term of degree above `cap`."""
    if a.n != b.n:
        raise StructureError(f"mismatched generator counts {a.n} and {b.n}")
    acc: set = set()
    for e in a.terms:
        de = e.degree
        for f in b.terms:
            if de + f.degree > cap:
                continue
            for t in mul_basis(e, f):
                acc ^= {t}
    return WreathClass._raw(a.n, frozenset(acc))


class WreathBasis:
    """Ordered basis of one degree with element -> column lookup."""

    __slots__ = ("n", "d", "elements", "index", "n_sqc")

    def __init__(self, n: int, d: int, elements: tuple[WreathBasisElement, ...]):
        self.n = n
        self.d = d
        self.elements = elements
        self.index = {e: i for i, e in enumerate(elements)}
        self.n_sqc = sum(1 for e in elements if isinstance(e, SqC))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[WreathBasisElement]:
        return iter(self.elements)

    def __getitem__(self, i: int) -> WreathBasisElement:
        return self.elements[i]

    def coordinates(self, cls: WreathClass) -> list[int]:
        """Sorted column indices of the degree-d part of `cls`."""
        return sorted(self.index[t] for t in cls.terms if t.degree == self.d)


@lru_cache(maxsize=None)
def wreath_basis(n: int, d: int) -> WreathBasis:
    """Basis of degree d: all SqC first (by x), then all Od pairs (by x, then y)."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    elems: list[WreathBasisElement] = []
    for a in range(d // 2 + 1):
        for x in enumerate_monomials(n, a):
            elems.append(SqC(x, d - 2 * a))
    for a in range(d // 2 + 1):
        low = enumerate_monomials(n, a)
        high = enumerate_monomials(n, d - a)
        for x in low:
            for y in high:
                if x < y:
                    elems.append(Od(x, y))
    return WreathBasis(n, d, tuple(elems))
