import random
from fractions import Fraction

import numpy as np

from albertf4 import linalg
from albertf4.dense import arrays_for
from albertf4.fields import FieldSpec


def _reference(a, b, zero):
    return linalg.matmul(a, b, zero)


def test_rational_matmul_small_and_huge_entries():
    q = FieldSpec.parse("Q")
    ea = arrays_for(q)
    rng = random.Random(0)
    for scale in (1, 10**30):
        a = [[Fraction(rng.randint(-9, 9) * scale, rng.randint(1, 7)) for _ in range(4)] for _ in range(3)]
        b = [[Fraction(rng.randint(-9, 9), rng.randint(1, 7) * scale) for _ in range(5)] for _ in range(4)]
        got = ea.to_nested(ea.matmul(ea.array(a), ea.array(b)))
        assert got == _reference(a, b, q.zero)


def test_modular_tensordot():
    k = FieldSpec.parse("Fp:101")
    ea = arrays_for(k)
    rng = random.Random(1)
    a = [[[k.random(rng) for _ in range(3)] for _ in range(3)] for _ in range(3)]
    m = [[k.random(rng) for _ in range(3)] for _ in range(3)]
    got = ea.to_nested(ea.tensordot(ea.array(a), ea.array(m), ([2], [0])))
    for i in range(3):
        assert got[i] == _reference(a[i], m, k.zero)


def test_large_prime_uses_python_ints():
    k = FieldSpec.parse("Fp:1000000007")
    ea = arrays_for(k)
    assert not ea.native
    a = ea.array([[k(10**9), k(3)], [k(5), k(10**9 - 1)]])
    assert ea.to_nested(ea.matmul(a, a)) == linalg.matmul(ea.to_nested(a), ea.to_nested(a), k.zero)
    assert ea.nonzero_indices(np.zeros((2, 2), dtype=object)) == []
