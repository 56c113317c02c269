"""Structure-constant tables for 27-dimensional commutative algebras.

Both presentations build one of these from their reference product; the
automorphism engine and the derivation solver work only through it.
Multiplication runs on plain integers (a common denominator for the
rational models, residues for the modular ones) and converts back once per
output coordinate.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .fields import FieldSpec, Mod


class StructureTable:
    def __init__(self, field: FieldSpec, entries: Sequence):
        """``entries``: ``((i, j), ((k, c), ...))`` for i <= j, c in the field."""
        self.field = field
        self.entries = tuple(entries)
        self.dim = 1 + max(max(i, j) for (i, j), _ in self.entries)
        if field.modular:
            self._den = 1
            conv = (lambda c: int(c))
        else:
            self._den = math.lcm(*[Fraction(c).denominator for _, t in self.entries for _, c in t] or [1])
            conv = (lambda c: int(Fraction(c) * self._den))
        self._int = tuple(((i, j), tuple((k, conv(c)) for k, c in t)) for (i, j), t in self.entries if t)
        self._lookup = {ij: t for ij, t in self.entries}

    def product(self, i: int, j: int) -> dict:
        """b_i b_j as a sparse dict."""
        key = (i, j) if i <= j else (j, i)
        return dict(self._lookup.get(key, ()))

    def _to_ints(self, x: Sequence):
        if self.field.modular:
            return [a.v if isinstance(a, Mod) else int(a) for a in x], 1
        fr = [Fraction(a) for a in x]
        d = math.lcm(*[a.denominator for a in fr])
        return [int(a * d) for a in fr], d

    def mul(self, x: Sequence, y: Sequence) -> list:
        X, dx = self._to_ints(x)
        Y, dy = self._to_ints(y)
        out = [0] * self.dim
        for (i, j), terms in self._int:
            if i == j:
                a = X[i]
                if not a:
                    continue
                b = Y[i]
                if not b:
                    continue
                w = a * b
            else:
                w = X[i] * Y[j] + X[j] * Y[i]
                if not w:
                    continue
            for k, c in terms:
                out[k] += c * w
        if self.field.modular:
            p = self.field.p
            return [Mod(v, p) for v in out]
        den = dx * dy * self._den
        return [Fraction(v, den) for v in out]

    def left_multiplication(self, x: Sequence) -> list[list]:
        """Matrix of y -> x y (columns are images of basis vectors)."""
        f = self.field
        cols = []
        for j in range(self.dim):
            e = [f.zero] * self.dim
            e[j] = f.one
            cols.append(self.mul(x, e))
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]


def build_table(alg, product=None) -> StructureTable:
    """Tabulate b_i b_j (i <= j) through ``product`` (default ``alg.mul``)."""
    product = product or alg.mul
    n = alg.dim
    basis = [alg.basis(i) for i in range(n)]
    entries = []
    for i in range(n):
        for j in range(i, n):
            v = alg.coords(product(basis[i], basis[j]))
            entries.append(((i, j), tuple((k, c) for k, c in enumerate(v) if c != 0)))
    return StructureTable(alg.field, entries)
