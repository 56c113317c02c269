import itertools
import random
from fractions import Fraction

import pytest

from albertf4.automorphisms import TorusElement, type1_involution, type2_involution
from albertf4.classify import (
    INFINITE,
    InfiniteClassCount,
    InvolutionInvariant,
    census,
    class_count,
    classify,
    classify_involution,
    equivalent,
    invariant_of,
    rational_distinct_family,
    representatives,
    restricted_trace_form,
    trace_form_coefficients,
)
from albertf4.fields import (
    FieldSpec,
    GammaTriple,
    Pfister2,
    forms_isometric,
    hilbert_symbol,
    least_nonresidue,
    square_class_reps,
)
from albertf4.hermitian import HermitianAlgebra

R = FieldSpec.parse("R")
Q = FieldSpec.parse("Q")


def t(k, *ps):
    return TorusElement(k, *ps)


def test_trace_form_on_the_fixed_space_matches_the_coefficients():
    for text in ("R", "Qp:3", "Fp:7", "Q"):
        k = FieldSpec.parse(text)
        rng = random.Random(1)
        for _ in range(3):
            x = t(k, *(k.random(rng, nonzero=True) for _ in range(4)))
            assert forms_isometric(restricted_trace_form(x), trace_form_coefficients(x), k)


def test_definite_representative_has_hamilton_quaternions():
    # over R, t = (1,1,1,1) gives a positive definite fixed form, which forces
    # the norm form of D to be positive definite, i.e. (zeta, eta) = (-1, -1)
    x = t(R, 1, 1, 1, 1)
    assert all(c > 0 for c in restricted_trace_form(x))
    inv = invariant_of(x)
    assert (inv.pfister.zeta, inv.pfister.eta) == (-1, -1)
    wrong = InvolutionInvariant(R, Pfister2(Fraction(1), Fraction(1)), inv.gamma)
    assert not forms_isometric(trace_form_coefficients(x), wrong.norm_form(), R)


@pytest.mark.parametrize("text", ["C", "Fp:5", "R", "Qp:2", "Qp:3", "Qp:5", "Qp:7"])
def test_representatives(text):
    k = FieldSpec.parse(text)
    reps = representatives(k)
    labels = [classify(x, verify=True).label for x in reps]
    assert len(set(labels)) == len(labels) == class_count(k, "I")
    assert class_count(k, "II") == 1


def test_class_counts():
    assert [class_count(FieldSpec.parse(s)) for s in ("C", "Fp:3", "Fp:13", "R", "Qp:2", "Qp:3")] == [1, 1, 1, 3, 2, 2]
    assert class_count(Q) is INFINITE
    with pytest.raises(InfiniteClassCount):
        representatives(Q)


def test_real_labels():
    labels = [classify(x).label for x in representatives(R)]
    assert labels == ["TypeI(split)", "TypeI(division, gamma=(1,1,1))", "TypeI(division, gamma=(-1,1,1))"]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_padic_division_representative_matches_hilbert(p):
    k = FieldSpec(FieldSpec.parse("Qp:3").kind, p)
    split, div = representatives(k)
    assert classify(split).split
    z = least_nonresidue(p)
    # invariant (p, -z/p) is a division pair exactly when this symbol is -1
    assert hilbert_symbol(p, Fraction(-z, p), k) == -1
    assert not classify(div).split


@pytest.mark.parametrize("text", ["R", "Qp:2", "Qp:3", "Q"])
def test_labels_depend_on_square_classes_and_order(text):
    k = FieldSpec.parse(text)
    rng = random.Random(2)
    for _ in range(20):
        ps = [k.random(rng, nonzero=True) for _ in range(4)]
        base = classify(t(k, *ps)).label
        sq = [k.random(rng, nonzero=True) ** 2 for _ in range(4)]
        assert classify(t(k, *(a * s for a, s in zip(ps, sq)))).label == base
        assert classify(t(k, ps[1], ps[0], ps[2], ps[3])).label == base


def test_rational_family_is_pairwise_distinct():
    classes = rational_distinct_family([3, 7, 11, 19])
    assert len({c.label for c in classes}) == 4
    for c, p in zip(classes, [3, 7, 11, 19]):
        assert c.places == (2, p)
    with pytest.raises(ValueError):
        rational_distinct_family([5])


def test_equivalent():
    assert equivalent(t(R, 1, 1, 1, 1), t(R, 4, 9, 1, 1))
    assert not equivalent(t(R, 1, 1, 1, 1), t(R, 1, 1, -1, 1))
    assert not equivalent(t(Q, 1, 1, 1, -3), t(Q, 1, 1, 1, -7))


def test_type2_class():
    h = HermitianAlgebra(FieldSpec.parse("Fp:7"))
    assert classify_involution(type2_involution(h.element([1, 0, 0]))).label == "TypeII"
    x = t(R, 1, 1, 1, 1)
    assert classify_involution(type1_involution(x)) == classify(x)


def test_census_over_f3():
    k = FieldSpec.parse("Fp:3")
    res = census(k, exhaustive=True)
    assert res.histogram == {"TypeI(split)": 16} and res.fixed_dims == {15: 16}
    sampled = census(k, samples=5, seed=4)
    assert sampled.to_json()["count"] == 5 and sampled == census(k, samples=5, seed=4)


def test_census_limits():
    with pytest.raises(ValueError):
        census(FieldSpec.parse("Fp:17"), exhaustive=True)


def test_exhaustive_square_class_count_matches_representatives():
    for text in ("Qp:5", "R"):
        k = FieldSpec.parse(text)
        labels = {classify(t(k, *ps)).label for ps in itertools.product(square_class_reps(k), repeat=4)}
        assert labels == {classify(x).label for x in representatives(k)}


def test_invariant_json():
    inv = invariant_of(t(Q, 2, 3, 5, 7))
    assert inv.to_json() == {"pfister": ["-5", "-7/5"], "gamma": ["3", "1/6", "2"]}
    assert isinstance(inv.gamma, GammaTriple)


def test_parallel_census_matches_serial():
    k = FieldSpec.parse("Fp:5")
    assert census(k, samples=6, seed=9, jobs=2) == census(k, samples=6, seed=9)
