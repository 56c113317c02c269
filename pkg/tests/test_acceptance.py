"""Acceptance suite: twelve criteria, exact arithmetic, one PASS/FAIL line each.

Run under pytest (lines are printed even without ``-s``) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from fractions import Fraction
from functools import lru_cache

import pytest

from albertf4 import automorphisms, linalg
from albertf4.automorphisms import (
    TorusElement,
    centralizer_split,
    check_automorphism,
    derivations,
    f_t,
    f_uv,
    fixed_subspace,
    theta,
    type1_involution,
    type2_involution,
)
from albertf4.classify import census, classify, family_torus, rational_distinct_family, representatives
from albertf4.fields import FieldKind, FieldSpec, Pfister2, hilbert_symbol, isotropic_by_search, pfister_is_split
from albertf4.hermitian import (
    HermitianAlgebra,
    bullet_product,
    conjugate_by,
    decompose,
    diagonal_idempotents,
    embed_skew,
    idempotent_lemma,
    is_primitive_idempotent,
    jordan_mul,
    peirce_decompose,
    quadratic_norm,
    random_gamma_orthogonal,
    random_hermitian_over,
    random_skew,
    star_product,
)
from albertf4.kac import centralizer_subdiagram, cross_check_with_classifier, enumerate as kac_enumerate
from albertf4.octonions import embed_quaternion
from albertf4.tits import TitsAlgebra, associative_cubic_checks, associative_cubic_identities, mdet
from albertf4.tits import sharped_axiom_identities, sharped_axioms
from albertf4.verify import jordan_checks

F = FieldSpec.parse
Q, F5, F7, F101 = F("Q"), F("Fp:5"), F("Fp:7"), F("Fp:101")


def _random_invertible(k, rng):
    while True:
        m = [[k.random(rng) for _ in range(3)] for _ in range(3)]
        if mdet(m) != 0:
            return m


def _random_sl3(k, rng):
    m = _random_invertible(k, rng)
    d = mdet(m)
    return [[x / d for x in m[0]], m[1], m[2]]


def _random_torus(k, rng):
    return TorusElement(k, *(k.random(rng, nonzero=True) for _ in range(4)))


# -- the criteria --------------------------------------------------------------------


def criterion_1():
    start = time.perf_counter()
    alg = TitsAlgebra(F101)
    rng = random.Random(101)
    sl3_ok = True
    for _ in range(100):
        u, v = _random_sl3(F101, rng), _random_sl3(F101, rng)
        sl3_ok &= mdet(u) == 1 and mdet(v) == 1 and check_automorphism(f_uv(alg, u, v)).passed
    fails = witnessed = agrees = equal_det = 0
    for _ in range(20):
        while True:
            u, v = _random_invertible(F101, rng), _random_invertible(F101, rng)
            if mdet(u) != 1 or mdet(v) != 1:
                break
        phi = f_uv(alg, u, v)
        res = check_automorphism(phi)
        equal_det += mdet(u) == mdet(v)
        # f_uv is an automorphism exactly when det u = det v
        agrees += res.passed == (mdet(u) == mdet(v))
        if not res.passed:
            fails += 1
            x = alg.from_coords(res.witness)
            y = phi(x)
            if res.reason == "norm":
                witnessed += alg.norm(y) != alg.norm(x)
            else:
                witnessed += phi(alg.sharp(x)) != alg.sharp(y)
    elapsed = time.perf_counter() - start
    ok = sl3_ok and fails == 20 and witnessed == 20 and agrees == 20 and elapsed < 10
    return ok, f"SL3 pairs pass={sl3_ok}; non-SL3 pairs failing {fails}/20, witnessed {witnessed}, det u = det v in {equal_det}; {elapsed:.1f}s"


def criterion_2():
    start = time.perf_counter()
    rng = random.Random(2)
    bad = 0
    for k in (F5, F7, Q):
        for alg in (TitsAlgebra(k), HermitianAlgebra(k)):
            for _ in range(200):
                bad += not all(jordan_checks(alg, alg.random(rng), alg.random(rng)).values())
    t = TitsAlgebra(Q)
    cubic_bad = sum(t.cube_identity(t.random(rng)) != t.zero for _ in range(200))
    elapsed = time.perf_counter() - start
    return bad == 0 and cubic_bad == 0 and elapsed < 10, (
        f"Jordan/commutativity failures {bad}/1200, degree-3 failures {cubic_bad}/200; {elapsed:.1f}s")


def criterion_3():
    f3 = F("Fp:3")
    # generic elements make every axiom an exact polynomial identity
    symbolic = all(sharped_axiom_identities(TitsAlgebra(f3)).values()) and all(associative_cubic_identities(f3).values())
    t3 = TitsAlgebra(f3)
    basis = [t3.basis(i) for i in range(27)]
    spanning = all(all(sharped_axioms(t3, x, y).values()) for x in basis for y in basis)
    units = [[[f3.one if (i, j) == (a, b) else f3.zero for j in range(3)] for i in range(3)] for a in range(3) for b in range(3)]
    spanning &= all(all(associative_cubic_checks(m, f3).values()) for m in units)
    rng = random.Random(3)
    tq = TitsAlgebra(Q)
    rational = 0
    for _ in range(100):
        x, y = tq.random(rng), tq.random(rng)
        m = [[Q.random(rng) for _ in range(3)] for _ in range(3)]
        rational += all(sharped_axioms(tq, x, y).values()) and all(associative_cubic_checks(m, Q).values())
    return symbolic and spanning and rational == 100, (
        f"polynomial identities over F3={symbolic}, basis evaluation over F3={spanning}, random over Q {rational}/100")


def _one_space_dim(w):
    alg = w.algebra
    f = alg.field
    lw = alg.table().left_multiplication(w.coords())
    shifted = [[lw[i][j] - (f.one if i == j else f.zero) for j in range(27)] for i in range(27)]
    return len(linalg.nullspace(shifted, 27, f.one, f.zero))


def criterion_4():
    rng = random.Random(4)
    checked = bad = 0
    for k, gamma in ((F5, (1, 1, 1)), (Q, (1, -1, 2))):
        alg = HermitianAlgebra(k, gamma)
        diag = diagonal_idempotents(alg)
        ws = list(diag) + [conjugate_by(random_gamma_orthogonal(alg, rng), rng.choice(diag)) for _ in range(25)]
        half = k(1) / 2
        for w in ws:
            checked += 1
            lemma = all(idempotent_lemma(w).values())
            q = quadratic_norm(w)
            # primitivity read off the eigenvalue-1 space of L_w
            primitive = _one_space_dim(w) == 1
            bad += not (lemma and q in (half, k.one) and primitive == (q == half))
    return bad == 0, f"{checked} idempotents (12 diagonal, 50 conjugated), violations {bad}"


def criterion_5():
    rng = random.Random(5)
    ok = True
    counts = []
    for k in (F5, Q):
        alg = HermitianAlgebra(k)
        prims = [w for w in diagonal_idempotents(alg) if is_primitive_idempotent(w)]
        seen = {tuple(w.coords()) for w in prims}
        while len(prims) < 10:
            w = conjugate_by(random_gamma_orthogonal(alg, rng), rng.choice(prims[:3]))
            if tuple(w.coords()) not in seen:
                seen.add(tuple(w.coords()))
                prims.append(w)
        dims = {peirce_decompose(w).dims for w in prims}
        counts.append(len(prims))
        fix = fixed_subspace(type2_involution(prims[0]).realized).dimension
        ok &= dims == {(1, 1, 9, 16)} and fix == 1 + 1 + 9
    return ok, f"distinct primitive idempotents {counts} over F5, Q; all Peirce dims (1,1,9,16), Fix(sigma) = 11"


def criterion_6():
    reps = []
    for text in ("C", "Fp:3", "Fp:5", "Fp:7", "R", "Qp:2", "Qp:3", "Qp:5", "Qp:7"):
        reps += representatives(F(text))
    reps += [family_torus(p) for p in (3, 7, 11, 19)]
    rep_dims = {fixed_subspace(type1_involution(t).realized).dimension for t in reps}
    rng = random.Random(6)
    alg = TitsAlgebra(F7)
    rand_dims = {fixed_subspace(type1_involution(_random_torus(F7, rng), alg).realized).dimension for _ in range(100)}
    sigma = {fixed_subspace(type2_involution(HermitianAlgebra(k).element([1, 0, 0])).realized).dimension for k in (F5, Q)}
    ok = rep_dims == {15} and rand_dims == {15} and sigma == {11}
    return ok, f"{len(reps)} representatives dims {sorted(rep_dims)}, 100 random over F7 dims {sorted(rand_dims)}, Fix(sigma) {sorted(sigma)}"


def criterion_7():
    rng = random.Random(7)
    fields = ("C", "Fp:7", "Q", "R", "Qp:2", "Qp:3")
    bad = 0
    for text in fields:
        k = F(text)
        alg = TitsAlgebra(k)
        th = theta(alg)
        for _ in range(100):
            g = th @ f_t(alg, _random_torus(k, rng))
            bad += not (g @ g).is_identity()
    return bad == 0, f"(theta f_t)^2 = id failures {bad}/{100 * len(fields)} over {', '.join(fields)}"


@lru_cache(maxsize=None)
def _centralizers(text):
    k = F(text)
    s1 = centralizer_split(type1_involution(TorusElement(k, 1, 1, 1, 1)))
    s2 = centralizer_split(type2_involution(HermitianAlgebra(k).element([1, 0, 0])))
    return (s1.fixed, s1.negated), (s2.fixed, s2.negated)


def criterion_8():
    automorphisms._derivation_cache.clear()
    _centralizers.cache_clear()
    start = time.perf_counter()
    dims = [derivations(TitsAlgebra(k)).dimension for k in (Q, F101)]
    one, two = _centralizers("Q")
    elapsed = time.perf_counter() - start
    ok = dims == [52, 52] and one == (24, 28) and two == (36, 16) and sum(one) == sum(two) == 52 and elapsed < 60
    return ok, f"Der dims {dims}, centralizers I {one} II {two}; {elapsed:.1f}s"


def criterion_9():
    labels = {}
    for text in ("Fp:3", "Fp:5"):
        res = census(F(text), exhaustive=True)
        labels[text] = set(res.histogram)
    finite_ok = all(v == {"TypeI(split)"} for v in labels.values())
    real = [classify(t).label for t in representatives(F("R"))]
    padic = {p: [classify(t).label for t in representatives(F(f"Qp:{p}"))] for p in (2, 3, 5, 7)}
    family = [c.label for c in rational_distinct_family([3, 7, 11, 19])]
    ok = (finite_ok and len(set(real)) == 3 and all(len(set(v)) == 2 for v in padic.values())
          and len(set(family)) == 4)
    return ok, (f"F3/F5 classes {[len(v) for v in labels.values()]}, R distinct {len(set(real))}/3, "
                f"Qp distinct {[len(set(v)) for v in padic.values()]}, family distinct {len(set(family))}/4")


def criterion_10():
    rng = random.Random(10)
    units = [x for x in F5.elements() if x != 0]
    identity_ok = closure_ok = 0
    for _ in range(100):
        gamma = tuple(rng.choice(units) for _ in range(3))
        alg = HermitianAlgebra(F5, gamma)
        D = embed_quaternion(rng.choice(units), rng.choice(units), F5)
        X, U = random_hermitian_over(alg, D, rng), random_hermitian_over(alg, D, rng)
        Y, V = random_skew(alg, D, rng), random_skew(alg, D, rng)
        lhs = alg.mul_reference(X + embed_skew(alg, Y), U + embed_skew(alg, V))
        XV, UY = bullet_product(X, V), bullet_product(U, Y)  # SkewElement validates skewness over D
        S = star_product(alg, Y, V)  # built through from_matrix, which validates Hermitian
        rhs = jordan_mul(X, U) + S + embed_skew(alg, XV + UY)
        identity_ok += lhs == rhs
        closure_ok += all(D.contains(c) for c in S.c) and decompose(embed_skew(alg, XV), D)[1] == XV
    return identity_ok == closure_ok == 100, f"product identity {identity_ok}/100, closure {closure_ok}/100"


def criterion_11():
    sols = [s.rho for s in kac_enumerate(2)]
    types = [centralizer_subdiagram(s).name for s in kac_enumerate(2)]
    cc = cross_check_with_classifier(F("C"))
    one, two = _centralizers("Q")
    dims = sorted(p[3] for p in cc.pairs)
    ok = (set(sols) == {(0, 1, 0, 0, 0), (0, 0, 0, 0, 1)} and len(sols) == 2 and set(types) == {"A1xC3", "B4"}
          and cc.passed and dims == sorted([one[0], two[0]]))
    return ok, f"order 2 labels {sols}, types {types}, diagram dims {dims} vs computed {[one[0], two[0]]}"


def criterion_12():
    rng = random.Random(12)

    def rnd():
        return Fraction(rng.choice([1, -1]) * rng.randint(1, 500), rng.randint(1, 50))

    bad = 0
    for text in ("Qp:3", "Qp:5", "Qp:2", "R"):
        k = F(text)
        for _ in range(500):
            a, b, c = rnd(), rnd(), rnd()
            h = hilbert_symbol
            bad += h(a, b * c, k) != h(a, b, k) * h(a, c, k)
            bad += h(a * b, c, k) != h(a, c, k) * h(b, c, k)
            bad += h(a, -a, k) != 1
            bad += h(a, b, k) != h(b, a, k)
    mismatches = pairs = 0
    for p in (3, 5, 7, 11, 13):
        k = FieldSpec(FieldKind.FINITE, p)
        nz = [x for x in k.elements() if x != 0]
        for z, e in itertools.product(nz, repeat=2):
            f = Pfister2(z, e)
            pairs += 1
            mismatches += pfister_is_split(f, k) != isotropic_by_search(f.coefficients(), k)
    return bad == 0 and mismatches == 0, (
        f"Hilbert violations {bad} over 2000 pairs; Pfister split vs search mismatches {mismatches}/{pairs}")


CRITERIA = {
    1: ("automorphism criterion for f_uv", criterion_1),
    2: ("Jordan structure in both presentations", criterion_2),
    3: ("sharped cubic axioms and associative identities", criterion_3),
    4: ("idempotent lemma", criterion_4),
    5: ("Peirce dimensions", criterion_5),
    6: ("fixed dimensions 15 and 11", criterion_6),
    7: ("theta-split torus", criterion_7),
    8: ("derivation algebra and centralizers", criterion_8),
    9: ("classification counts", criterion_9),
    10: ("decomposition over a quaternion subalgebra", criterion_10),
    11: ("Kac coordinates of order 2", criterion_11),
    12: ("quadratic form layer", criterion_12),
}


def line(n: int, ok: bool, detail: str) -> str:
    return f"CRITERION {n:2d} {'PASS' if ok else 'FAIL'}: {CRITERIA[n][0]}: {detail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n][1]()
    with capsys.disabled():
        print("\n" + line(n, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n][1]()
        results.append(ok)
        print(line(n, ok, detail), flush=True)
    sys.exit(0 if all(results) else 1)
