"""Integer-indexed construction of ideal rows.

Monomials are numbered in canonical order and encoded as packed exponent
codes, so a product is one integer addition plus one dict lookup.  Produces
exactly the rows that `wreath.mul_basis` would, column for column.
"""

from __future__ import annotations

from functools import lru_cache

from .monomials import enumerate_monomials
from .wreath import SqC, WreathClass, wreath_basis

# basis element kinds
_S = 0
_O = 1


class RowBuilder:
    def __init__(self, n: int, top: int):
        self.n = n
        self.top = top
        bits = max(6, (top + 1).bit_length())
        self.mono_id = {}
        self.code = []
        self.deg = []
        self.id_of_code = {}
        for d in range(top + 1):
            for m in enumerate_monomials(n, d):
                c = 0
                for i, e in enumerate(m.exponents):
                    c |= e << (bits * i)
                self.mono_id[m] = len(self.code)
                self.id_of_code[c] = len(self.code)
                self.code.append(c)
                self.deg.append(d)
        self._basis = {}
        self._col = {}

    def _mul(self, a: int, b: int) -> int:
        return self.id_of_code[self.code[a] + self.code[b]]

    def basis(self, d: int) -> list[tuple[int, int, int]]:
        """Degree-d basis as (kind, x, j-or-y) triples, in wreath_basis order."""
        out = self._basis.get(d)
        if out is None:
            out = []
            for e in wreath_basis(self.n, d):
                if isinstance(e, SqC):
                    out.append((_S, self.mono_id[e.x], e.j))
                else:
                    out.append((_O, self.mono_id[e.x], self.mono_id[e.y]))
            self._basis[d] = out
        return out

    def columns(self, d: int) -> dict:
        col = self._col.get(d)
        if col is None:
            col = {e: i for i, e in enumerate(self.basis(d))}
            self._col[d] = col
        return col

    def internal(self, cls: WreathClass) -> list[tuple[int, int, int]]:
        out = []
        for t in cls:
            if isinstance(t, SqC):
                out.append((_S, self.mono_id[t.x], t.j))
            else:
                out.append((_O, self.mono_id[t.x], self.mono_id[t.y]))
        return out

    def product_row(self, b: tuple[int, int, int], g: list[tuple[int, int, int]], col: dict) -> list[int]:
        """Columns of b * g; repeated columns are left in and cancel when packed."""
        out = []
        mul = self._mul
        kb, xb, zb = b
        for kg, xg, zg in g:
            if kb == _S and kg == _S:
                out.append(col[(_S, mul(xb, xg), zb + zg)])
            elif kb == _S or kg == _S:
                if kb == _S:
                    s, j, (y, z) = xb, zb, (xg, zg)
                else:
                    s, j, (y, z) = xg, zg, (xb, zb)
                if j:
                    continue
                u, v = mul(s, y), mul(s, z)
                if u != v:
                    out.append(col[(_O, u, v) if u < v else (_O, v, u)])
            else:
                for u, v in ((mul(xb, xg), mul(zb, zg)), (mul(xb, zg), mul(zb, xg))):
                    if u != v:
                        out.append(col[(_O, u, v) if u < v else (_O, v, u)])
        return out

    def killed_mask(self, killed: tuple[int, ...]) -> list[bool]:
        """Per monomial id: does it involve a killed generator?"""
        killed_set = set(killed)
        out = [False] * len(self.code)
        for m, i in self.mono_id.items():
            out[i] = any(e and (k + 1) in killed_set for k, e in enumerate(m.exponents))
        return out


@lru_cache(maxsize=4)
def row_builder(n: int) -> RowBuilder:
    return RowBuilder(n, 2 * n)

