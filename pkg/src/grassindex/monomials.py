"""Graded polynomial algebra Z2[w1, ..., wn] with deg wi = i."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, total_ordering
from typing import Iterable, Iterator


class StructureError(ValueError):
    """Operands live in polynomial rings with different generator counts."""


@total_ordering
@dataclass(frozen=True, slots=True)
class Monomial:
    """Exponent vector (e1, ..., en); the exponent of wi sits at position i-1.

    Ordered graded-lexicographically: by degree first, then with larger
    powers of lower-index generators first (so w1^3 < w1*w2 in degree 3).
    """

    exponents: tuple[int, ...]
    _key: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"negative exponent in {self.exponents}")
        deg = sum(i * e for i, e in enumerate(self.exponents, 1))
        object.__setattr__(self, "_key", (deg, tuple(-e for e in self.exponents)))

    @classmethod
    def one(cls, n: int) -> Monomial:
        return cls((0,) * n)

    @classmethod
    def gen(cls, n: int, i: int) -> Monomial:
        """The generator w_i; w_0 is the unit."""
        if not 0 <= i <= n:
            raise StructureError(f"w{i} does not exist for n={n}")
        e = [0] * n
        if i:
            e[i - 1] = 1
        return cls(tuple(e))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return self._key[0]

    def is_one(self) -> bool:
        return not any(self.exponents)

    def sort_key(self) -> tuple:
        return self._key

    def __lt__(self, other: Monomial) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._key < other._key

    def __mul__(self, other: Monomial) -> Monomial:
        return mono_mul(self, other)

    def involves(self, generators: Iterable[int]) -> bool:
        """True when some w_i with i in `generators` divides this monomial."""
        return any(1 <= i <= self.n and self.exponents[i - 1] for i in generators)

    def __str__(self) -> str:
        factors = []
        for i, e in enumerate(self.exponents, 1):
            if e == 1:
                factors.append(f"w{i}")
            elif e > 1:
                factors.append(f"w{i}^{e}")
        return "*".join(factors) or "1"

    def __repr__(self) -> str:
        return f"Monomial({self})"


def mono_mul(x: Monomial, y: Monomial) -> Monomial:
    if x.n != y.n:
        raise StructureError(f"cannot multiply monomials over n={x.n} and n={y.n}")
    return Monomial(tuple(a + b for a, b in zip(x.exponents, y.exponents)))


class PolyZ2:
    """A mod-2 sum of distinct monomials over a fixed n."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Iterable[Monomial] = ()):
        acc: set[Monomial] = set()
        for m in terms:
            if m.n != n:
                raise StructureError(f"monomial {m} is not over n={n}")
            acc ^= {m}
        self.n = n
        self.terms = frozenset(acc)

    @classmethod
    def zero(cls, n: int) -> PolyZ2:
        return cls(n)

    @classmethod
    def one(cls, n: int) -> PolyZ2:
        return cls(n, [Monomial.one(n)])

    @classmethod
    def gen(cls, n: int, i: int) -> PolyZ2:
        return cls(n, [Monomial.gen(n, i)])

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyZ2):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, self.terms))

    def __iter__(self) -> Iterator[Monomial]:
        return iter(sorted(self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: PolyZ2) -> PolyZ2:
        _check_same_n(self.n, other.n)
        out = PolyZ2.__new__(PolyZ2)
        out.n = self.n
        out.terms = self.terms ^ other.terms
        return out

    __sub__ = __add__

    def __mul__(self, other: PolyZ2) -> PolyZ2:
        return poly_mul(self, other)

    def homogeneous(self, d: int) -> PolyZ2:
        return PolyZ2(self.n, (m for m in self.terms if m.degree == d))

    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def __str__(self) -> str:
        return " + ".join(str(m) for m in self) or "0"

    def __repr__(self) -> str:
        return f"PolyZ2({self})"


def _check_same_n(a: int, b: int) -> None:
    if a != b:
        raise StructureError(f"mismatched generator counts {a} and {b}")


def poly_mul(p: PolyZ2, q: PolyZ2) -> PolyZ2:
    _check_same_n(p.n, q.n)
    acc: set[Monomial] = set()
    for x in p.terms:
        for y in q.terms:
            acc ^= {mono_mul(x, y)}
    out = PolyZ2.__new__(PolyZ2)
    out.n = p.n
    out.terms = frozenset(acc)
    return out


def _partitions(d: int, largest: int) -> Iterator[tuple[int, ...]]:
    if d == 0:
        yield ()
        return
    for part in range(min(d, largest), 0, -1):
        for rest in _partitions(d - part, part):
            yield (part,) + rest


@lru_cache(maxsize=None)
def enumerate_monomials(n: int, d: int) -> tuple[Monomial, ...]:
    """All monomials of weighted degree d in w1..wn, in canonical order.

    One monomial per partition of d into parts of size at most n.
    """
    if n < 1 or d < 0:
        raise ValueError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    out = []
    for parts in _partitions(d, n):
        e = [0] * n
        for part in parts:
            e[part - 1] += 1
        out.append(Monomial(tuple(e)))
    out.sort()
    return tuple(out)


def binom_mod2(a: int, b: int) -> int:
    """C(a, b) mod 2 by Lucas: odd exactly when the bits of b are a subset of a's."""
    if a < 0 or b < 0:
        raise ValueError("binom_mod2 needs non-negative arguments")
    if b > a:
        return 0
    return 1 if (b & ~a) == 0 else 0
