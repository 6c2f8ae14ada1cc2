"""Kernel ideal of H*(BG) -> H*(O(2n)/G) and the Z2-index of G(2n, n).

The ideal is generated by the positive-degree components of the total
Stiefel-Whitney class of the doubled representation,

    sum_{0<=i<j<=n} w_i (.) w_j  +  sum_{i=0}^{n} (1+c)^(n-i) Sqe(w_i),

and the index is the largest d with c^d outside the ideal.  Each degree is
solved on its own: the degree-d part of the ideal is spanned by products
b * g_k with b running over the basis of degree d - k.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from .gf2 import EchelonState, Membership, pack, sparse_row
from .monomials import Monomial, binom_mod2
from ._rows import row_builder
from .wreath import Od, SqC, WreathBasisElement, WreathClass, wreath_basis

log = logging.getLogger(__name__)


class IndexConsistencyError(RuntimeError):
    """A computed value contradicts a proven bound; always an implementation bug."""

    def __init__(self, message: str, report: IndexReport | None = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class KernelGenerators:
    n: int
    gens: dict[int, WreathClass]

    def __getitem__(self, d: int) -> WreathClass:
        return self.gens[d]

    @property
    def top(self) -> int:
        return 2 * self.n


@lru_cache(maxsize=None)
def kernel_generators(n: int) -> KernelGenerators:
    if n < 1:
        raise ValueError("n must be at least 1")
    w = [Monomial.gen(n, i) for i in range(n + 1)]
    gens = {}
    for d in range(1, 2 * n + 1):
        terms: list[WreathBasisElement] = []
        for i in range(max(0, d - n), (d + 1) // 2):
            terms.append(Od(w[i], w[d - i]))
        for i in range(min(n, d // 2) + 1):
            if binom_mod2(n - i, d - 2 * i):
                terms.append(SqC(w[i], d - 2 * i))
        gens[d] = WreathClass(n, terms)
    return KernelGenerators(n, gens)


def killed_generators(n: int) -> tuple[int, ...]:
    """For n = 2^l: indices i of w_i not of the form 2^l - 2^k (0 <= k <= l), nor 2^l."""
    if n & (n - 1):
        raise ValueError(f"n={n} is not a power of two")
    kept = {n} | {n - (1 << k) for k in range(n.bit_length())}
    return tuple(i for i in range(1, n + 1) if i not in kept)


def _row_stream(gens: KernelGenerators, d: int, killed: tuple[int, ...]) -> Iterator[list[int]]:
    rb = row_builder(gens.n)
    col = rb.columns(d)
    for k in range(1, d + 1):
        g = rb.internal(gens[k])
        for b in rb.basis(d - k):
            yield rb.product_row(b, g, col)
    if killed:
        dead = rb.killed_mask(killed)
        for i, (kind, x, z) in enumerate(rb.basis(d)):
            if dead[x] or (kind == 1 and dead[z]):
                yield [i]


def ideal_span_rows(gens: KernelGenerators, d: int, killed: Iterable[int] = ()) -> Iterator[np.ndarray]:
    """Rows spanning the degree-d part of the ideal, in basis coordinates.

    One row per (basis element of degree d - k, g_k), k = 1..d, in that order.
    With `killed`, unit rows follow for every basis element that involves a
    killed generator (the extra relations w_i = 0).
    """
    if not 1 <= d <= gens.top:
        raise ValueError(f"degree {d} outside 1..{gens.top}")
    for cols in _row_stream(gens, d, tuple(killed)):
        yield sparse_row(cols)


def span_state(gens: KernelGenerators, d: int, killed: Iterable[int] = ()) -> EchelonState:
    """Echelon basis of the degree-d part of the ideal (frozen)."""
    if not 1 <= d <= gens.top:
        raise ValueError(f"degree {d} outside 1..{gens.top}")
    dim = len(wreath_basis(gens.n, d))
    state = EchelonState(dim)
    for cols in _row_stream(gens, d, tuple(killed)):
        state.insert_packed(pack(cols, dim))
    return state.freeze()


def c_power_vector(n: int, d: int) -> list[int]:
    return [wreath_basis(n, d).index[SqC(Monomial.one(n), d)]]


def c_membership(gens: KernelGenerators, d: int) -> Membership:
    """Is c^d in the degree-d part of the ideal?  False comes with a witness covector."""
    state = span_state(gens, d)
    return state.membership(c_power_vector(gens.n, d))


def ideal_contains(gens: KernelGenerators, cls: WreathClass, killed: Iterable[int] = ()) -> bool:
    """Membership of a homogeneous class in the ideal (optionally extended by w_i = 0)."""
    degs = cls.degrees()
    if not degs:
        return True
    if len(degs) != 1:
        raise ValueError("class is not homogeneous")
    (d,) = degs
    state = span_state(gens, d, killed)
    return state.membership(wreath_basis(gens.n, d).coordinates(cls)).member


# --- index ------------------------------------------------------------------


def two_adic(n: int) -> int:
    return (n & -n).bit_length() - 1


def theorem_bounds(n: int) -> tuple[int, int]:
    """(2^(l+1) - 1, 2n - 1) where 2^l exactly divides n."""
    return (1 << (two_adic(n) + 1)) - 1, 2 * n - 1


def theorem_exact(n: int) -> int | None:
    """The proven exact index, or None when n falls in the gap."""
    if n % 2 == 1:
        return 1
    if n % 4 == 2:
        return 3
    if n & (n - 1) == 0:
        return 2 * n - 1
    return None


@dataclass
class DegreeRecord:
    d: int
    dim_basis: int
    dim_ideal: int
    c_in_ideal: bool
    certificate: list[int] | None = None

    def to_dict(self) -> dict:
        out = {"d": self.d, "dimBasis": self.dim_basis, "dimIdeal": self.dim_ideal,
               "cInIdeal": self.c_in_ideal}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out

    @classmethod
    def from_dict(cls, data: dict) -> DegreeRecord:
        return cls(data["d"], data["dimBasis"], data["dimIdeal"], data["cInIdeal"],
                   data.get("certificate"))


SCHEMA_VERSION = 1


@dataclass
class IndexReport:
    n: int
    degrees: list[DegreeRecord]
    hind: int
    flags: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.flags.get(k) is not False for k in ("upperBoundKernel", "theoremBounds", "theoremExact"))

    def to_dict(self) -> dict:
        return {"schemaVersion": SCHEMA_VERSION, "n": self.n,
                "degrees": [r.to_dict() for r in self.degrees],
                "hind": self.hind, "flags": dict(self.flags)}

    @classmethod
    def from_dict(cls, data: dict) -> IndexReport:
        if data.get("schemaVersion", SCHEMA_VERSION) != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {data.get('schemaVersion')}")
        return cls(data["n"], [DegreeRecord.from_dict(r) for r in data["degrees"]],
                   data["hind"], dict(data["flags"]))

    def diagnostic(self) -> str:
        lines = [f"n={self.n} hind={self.hind} flags={self.flags}"]
        for r in self.degrees:
            lines.append(f"  d={r.d:3d} basis={r.dim_basis:7d} ideal={r.dim_ideal:7d} "
                         f"c^d in I: {r.c_in_ideal}")
        return "\n".join(lines)


def solve_degree(n: int, d: int, certificate: bool = False) -> DegreeRecord:
    gens = kernel_generators(n)
    state = span_state(gens, d)
    verdict = state.membership(c_power_vector(n, d))
    cert = None
    if certificate and not verdict.member:
        cert = verdict.certificate.tolist()
    log.debug("n=%d d=%d basis=%d rank=%d member=%s", n, d, state.dim, state.rank, verdict.member)
    return DegreeRecord(d, state.dim, state.rank, verdict.member, cert)


def _solve_task(args: tuple[int, int, bool]) -> DegreeRecord:
    return solve_degree(*args)


def compute_index(n: int, degree_cap: int | None = None, workers: int = 1,
                  certificates: bool = False, check: bool = True) -> IndexReport:
    """Exact index of G(2n, n) from c-power membership in degrees 1..cap.

    The default cap is 2n.  A smaller cap gives only a lower bound and marks
    the report truncated.  With `check`, a report contradicting the proven
    bounds raises IndexConsistencyError.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    top = 2 * n
    cap = top if degree_cap is None else degree_cap
    if not 1 <= cap <= top:
        raise ValueError(f"degree cap must lie in 1..{top}")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    tasks = [(n, d, certificates) for d in range(1, cap + 1)]
    if workers == 1 or len(tasks) == 1:
        records = [_solve_task(t) for t in tasks]
    else:
        # largest degrees first keeps the pool busy
        with ProcessPoolExecutor(max_workers=workers) as pool:
            done = dict(zip(reversed(tasks), pool.map(_solve_task, reversed(tasks))))
        records = [done[t] for t in tasks]

    outside = [r.d for r in records if not r.c_in_ideal and r.d < top]
    hind = max(outside, default=0)
    lower, upper = theorem_bounds(n)
    exact = theorem_exact(n)
    truncated = cap < top
    flags: dict = {
        "degreeCap": cap,
        "truncated": truncated,
        "exploratory": exact is None,
        "theoremLower": lower,
        "theoremUpper": upper,
        "monotone": _monotone(records),
    }
    if truncated:
        flags["upperBoundKernel"] = None
        flags["theoremBounds"] = hind <= upper
        flags["theoremExact"] = None
    else:
        flags["upperBoundKernel"] = records[-1].c_in_ideal
        flags["theoremBounds"] = lower <= hind <= upper
        flags["theoremExact"] = None if exact is None else hind == exact
    report = IndexReport(n, records, hind, flags)
    if check and not (report.ok and flags["monotone"]):
        raise IndexConsistencyError(f"inconsistent index computation for n={n}\n{report.diagnostic()}",
                                    report)
    return report


def _monotone(records: list[DegreeRecord]) -> bool:
    """Once c^d is in the ideal every higher power is too (c^(d+1) = c * c^d)."""
    seen = False
    for r in records:
        if seen and not r.c_in_ideal:
            return False
        seen = seen or r.c_in_ideal
    return True


# --- hand relations ---------------------------------------------------------


@dataclass(frozen=True)
class HandRelation:
    label: str
    cls: WreathClass
    killed: tuple[int, ...]
    expect_member: bool
    holds: bool

    def __str__(self) -> str:
        ideal = "I+" if self.killed else "I"
        rel = "in" if self.expect_member else "not in"
        status = "ok" if self.holds else "FAILED"
        return f"[{status}] {self.label}: {self.cls} {rel} {ideal}_{max(self.cls.degrees(), default=0)}"


class RelationFailure(AssertionError):
    pass


def _hand_classes(n: int) -> list[tuple[str, WreathClass, tuple[int, ...], bool]]:
    w = [Monomial.gen(n, i) for i in range(n + 1)]
    one = w[0]
    cases = []
    if n % 2 == 1:
        cases.append(("c^2 = 0", WreathClass.c(n, 2), (), True))
    if n % 4 == 2:
        third = [SqC(one, 3), Od(w[1], w[2])]
        if n >= 3:
            third.append(Od(one, w[3]))
        cases.append(("c^3 = 1(.)w3 + w1(.)w2", WreathClass(n, third), (), True))
        cases.append(("c^4 = 0", WreathClass.c(n, 4), (), True))
    if n & (n - 1) == 0:
        killed = killed_generators(n)
        top = 2 * n - 1
        cases.append((f"c^{top} = w{n - 1}(.)w{n} with killed w_i",
                      WreathClass(n, [SqC(one, top), Od(w[n - 1], w[n])]), killed, True))
        cases.append((f"w{n - 1}(.)w{n} != 0 with killed w_i",
                      WreathClass(n, [Od(w[n - 1], w[n])]), killed, False))
    return cases


def replicate_hand_relations(n: int) -> list[HandRelation]:
    """Check the worked relations for odd n, n = 2 mod 4 and n = 2^l.

    At n = 2 the class w3 does not exist and the degree-3 relation is checked
    without it.  For n = 2^l the top relation lives in the ideal extended by
    w_i = 0 for the killed generators; its right-hand side is also checked to
    stay nonzero there.  Raises RelationFailure on any mismatch.
    """
    cases = _hand_classes(n)
    if not cases:
        raise ValueError(f"n={n} is neither odd, 2 mod 4, nor a power of two")
    gens = kernel_generators(n)
    out = []
    for label, cls, killed, expect in cases:
        holds = ideal_contains(gens, cls, killed) == expect
        out.append(HandRelation(label, cls, killed, expect, holds))
    bad = [r for r in out if not r.holds]
    if bad:
        raise RelationFailure("; ".join(str(r) for r in bad))
    return out
