"""Sparse multivariate polynomials used for exact form comparisons.

Only ring operations are supported, which is all the norm and adjoint
formulas need; feeding :class:`Poly` entries through them yields the
coefficient expansion of a cubic or quadratic map.
"""

from __future__ import annotations


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def variable(cls, index: int, coeff) -> "Poly":
        return cls({(index,): coeff})

    @classmethod
    def linear(cls, coeffs) -> "Poly":
        return cls({(i,): c for i, c in enumerate(coeffs) if c != 0})

    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        return Poly({(): other})

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return Poly(t)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if other == 0:
                return Poly()
            return Poly({m: c * other for m, c in self.terms.items()})
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                v = c1 * c2
                t[m] = t[m] + v if m in t else v
        return Poly(t)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._lift(other)
        return (self - other).terms == {}

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, monomial: tuple):
        return self.terms.get(tuple(sorted(monomial)), 0)

    def part(self, var: int, degree: int) -> "Poly":
        """Terms of exact degree ``degree`` in ``var``, with ``var`` removed."""
        out = {}
        for m, c in self.terms.items():
            if m.count(var) == degree:
                out[tuple(i for i in m if i != var)] = c
        return Poly(out)

    def evaluate(self, point):
        total = 0
        for m, c in self.terms.items():
            v = c
            for i in m:
                v = v * point[i]
            total = total + v
        return total

    def __repr__(self):
        return f"Poly({self.terms!r})"
