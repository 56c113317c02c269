import itertools
import math

import pytest

from albertf4.fields import FieldSpec
from albertf4.kac import (
    MARKS,
    centralizer_subdiagram,
    cross_check_with_classifier,
    enumerate as kac_enumerate,
)


def _brute(order):
    out = []
    for rho in itertools.product(range(order + 1), repeat=5):
        if sum(m * r for m, r in zip(MARKS, rho)) == order and math.gcd(order, *rho) == 1:
            out.append(rho)
    return sorted(out, reverse=True)


@pytest.mark.parametrize("order", range(1, 9))
def test_enumeration_matches_brute_force(order):
    assert [s.rho for s in kac_enumerate(order)] == _brute(order)


def test_order_two():
    sols = kac_enumerate(2)
    assert [s.rho for s in sols] == [(0, 1, 0, 0, 0), (0, 0, 0, 0, 1)]
    types = [centralizer_subdiagram(s) for s in sols]
    assert [t.name for t in types] == ["A1xC3", "B4"]
    assert [t.dimension for t in types] == [24, 36]


def test_order_one_is_the_whole_group():
    (sol,) = kac_enumerate(1)
    assert sol.rho == (1, 0, 0, 0, 0)
    t = centralizer_subdiagram(sol)
    assert t.name == "F4" and t.dimension == 52


def test_order_three():
    found = {centralizer_subdiagram(s).name: centralizer_subdiagram(s).dimension for s in kac_enumerate(3)}
    assert found["A2xA2"] == 16
    assert found["C3"] == 22  # C3 plus a one-dimensional torus
    assert found["B3"] == 22


def test_centralizer_ranks_and_torus():
    for order in range(1, 7):
        for s in kac_enumerate(order):
            t = centralizer_subdiagram(s)
            assert t.rank == sum(1 for r in s.rho if r == 0)
            assert t.rank <= 4


def test_bad_inputs():
    with pytest.raises(ValueError):
        kac_enumerate(0)
    with pytest.raises(ValueError):
        centralizer_subdiagram((0, 0, 0))


def test_json():
    assert kac_enumerate(2)[1].to_json() == {"rho": [0, 0, 0, 0, 1], "order": 2, "type": "B4"}


def test_cross_check_over_closed_field():
    cc = cross_check_with_classifier(FieldSpec.parse("C"))
    assert cc.passed
    assert {(p[1], p[2]) for p in cc.pairs} == {("A1xC3", "I"), ("B4", "II")}
    with pytest.raises(ValueError):
        cross_check_with_classifier(FieldSpec.parse("Q"))
