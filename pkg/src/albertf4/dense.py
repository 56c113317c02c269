"""Exact dense arrays on top of numpy.

Small primes use int64 residues reduced after every contraction (27 p^2
stays far below 2^63).  Everything else uses object arrays holding Python
ints mod p or Fractions.  Rational contractions clear denominators first and
run on integers, in int64 whenever the entries are provably small enough.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce as fold
from math import lcm

import numpy as np

from .fields import FieldSpec, Mod

INT64_PRIME_LIMIT = 1 << 26
_INT64_SAFE = 1 << 62


def _integral(a: np.ndarray) -> tuple[np.ndarray, int]:
    """(n, d) with a = n / d and n an object array of Python ints."""
    d = fold(lcm, (x.denominator for x in a.flat), 1)
    return np.array([x.numerator * (d // x.denominator) for x in a.flat], dtype=object).reshape(a.shape), d


def _max_abs(n: np.ndarray) -> int:
    return max((abs(x) for x in n.flat), default=0)


def _rational_contract(a: np.ndarray, b: np.ndarray, contract) -> np.ndarray:
    na, da = _integral(a)
    nb, db = _integral(b)
    # no output entry sums more terms than the smaller operand has entries
    bound = _max_abs(na) * _max_abs(nb) * max(1, min(a.size, b.size))
    if bound < _INT64_SAFE:
        n = contract(na.astype(np.int64), nb.astype(np.int64))
    else:
        n = contract(na, nb)
    den = da * db
    return np.array([Fraction(int(x), den) for x in n.flat], dtype=object).reshape(n.shape)


class ExactArrays:
    def __init__(self, field: FieldSpec):
        self.field = field
        self.p = field.p if field.modular else None
        self.native = self.p is not None and self.p < INT64_PRIME_LIMIT

    def _entry(self, x):
        if self.p is not None:
            return int(self.field(x)) % self.p
        return Fraction(self.field(x))

    def array(self, nested) -> np.ndarray:
        a = np.array(nested, dtype=object)
        flat = [self._entry(x) for x in a.flat]
        dtype = np.int64 if self.native else object
        return np.array(flat, dtype=dtype).reshape(a.shape)

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a % self.p if self.p is not None else a

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p is None:
            return _rational_contract(a, b, lambda x, y: x @ y)
        return self.reduce(a @ b)

    def tensordot(self, a: np.ndarray, b: np.ndarray, axes) -> np.ndarray:
        if self.p is None:
            return _rational_contract(a, b, lambda x, y: np.tensordot(x, y, axes=axes))
        return self.reduce(np.tensordot(a, b, axes=axes))

    def scalar(self, x):
        if self.p is not None:
            return Mod(int(x), self.p)
        return x

    def to_nested(self, a: np.ndarray) -> list:
        def walk(x):
            return [walk(y) for y in x] if isinstance(x, list) else self.scalar(x)

        return walk(a.tolist())

    def nonzero_indices(self, a: np.ndarray) -> list[tuple]:
        """Indices of nonzero entries in row-major order."""
        return [tuple(int(i) for i in idx) for idx in np.argwhere(a != 0)]


@lru_cache(maxsize=None)
def arrays_for(field: FieldSpec) -> ExactArrays:
    return ExactArrays(field)
