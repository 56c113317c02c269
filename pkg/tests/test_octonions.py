import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from albertf4.fields import FieldSpec, isotropic_by_search
from albertf4.octonions import (
    BASIS_NAMES,
    NORM_DIAGONAL,
    NoEmbedding,
    OctonionAlgebra,
    bilinear,
    conjugate,
    embed_quaternion,
    norm,
    structure_constants_json,
)

FIELDS = [FieldSpec.parse(s) for s in ("Fp:3", "Fp:5", "Fp:101", "Q")]


@pytest.mark.parametrize("k", FIELDS, ids=str)
def test_composition_and_alternativity(k):
    o = OctonionAlgebra(k)
    rng = random.Random(7)
    for _ in range(30):
        a, b = o.random(rng), o.random(rng)
        assert norm(a * b) == norm(a) * norm(b)
        assert (a * a) * b == a * (a * b)
        assert (b * a) * a == b * (a * a)
        assert conjugate(a * b) == conjugate(b) * conjugate(a)
        assert a * conjugate(a) == o.e * norm(a)
        assert bilinear(a, b) == norm(a + b) - norm(a) - norm(b)
        assert conjugate(a) == o.e * bilinear(a, o.e) - a


def test_not_associative():
    o = OctonionAlgebra(FieldSpec.parse("Q"))
    b = [o.basis(i) for i in range(8)]
    assert any((x * y) * z != x * (y * z) for x in b for y in b for z in b)


def test_norm_diagonal_and_split():
    k = FieldSpec.parse("Q")
    o = OctonionAlgebra(k)
    assert tuple(norm(o.basis(i)) for i in range(8)) == NORM_DIAGONAL
    # split: a nonzero null vector exists
    assert norm(o.basis(0) + o.basis(1)) == 0


def test_table_json():
    doc = json.loads(structure_constants_json())
    assert doc["basis"] == list(BASIS_NAMES)
    ones = [r for r in doc["table"] if r["left"] == "e"]
    assert all(r["right"] == r["result"] and r["coeff"] == 1 for r in ones)


@pytest.mark.parametrize("text", ["Fp:5", "Fp:7", "Q"])
def test_quaternion_embedding(text):
    k = FieldSpec.parse(text)
    rng = random.Random(2)
    for _ in range(12):
        z, e = k.random(rng, nonzero=True), k.random(rng, nonzero=True)
        D = embed_quaternion(z, e, k)
        e0, u, v, uv = D.basis
        assert u * u == e0 * z and v * v == e0 * e and u * v == -(v * u)
        for x in D.basis:
            for y in D.basis:
                assert D.contains(x * y)
        assert norm(D.j) != 0
        # D-perp is D j
        for d in D.basis:
            assert bilinear(d, D.j) == 0
        x = OctonionAlgebra(k).random(rng)
        d, y = D.split(x)
        assert d + y * D.j == x and D.contains(d) and D.contains(y)


def test_seed_pair_gives_standard_quaternions():
    k = FieldSpec.parse("Q")
    D = embed_quaternion(1, 1, k)
    o = OctonionAlgebra(k)
    assert [b.coords for b in D.basis] == [o.basis(i).coords for i in range(4)]


def test_zero_pfister_entry():
    with pytest.raises(NoEmbedding):
        embed_quaternion(0, 1, FieldSpec.parse("Q"))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4))
def test_norm_restricted_to_D_is_isotropic_over_F5(z, e):
    k = FieldSpec.parse("Fp:5")
    D = embed_quaternion(z, e, k)
    gram = [norm(b) for b in D.basis]
    assert isotropic_by_search(gram, k)
