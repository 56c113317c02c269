"""Classification of the k-involutions theta o I_t and sigma = r_w.

A type I involution theta o f_t fixes a copy of H_3(D, gamma).  Its
restricted trace form, with coefficients read off t, decides D through a
2-Pfister pair (zeta, eta) and then gamma up to the norm group of D.  Type II
involutions form a single class.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import linalg
from .automorphisms import InvolutionDescriptor, TorusElement, fixed_subspace, type1_involution
from .fields import (
    FieldError,
    FieldKind,
    FieldSpec,
    GammaTriple,
    NormGroup,
    Pfister2,
    forms_isometric,
    gamma_canonical,
    is_prime,
    least_nonresidue,
    pfister_equivalent,
    pfister_is_split,
    ramified_places,
    square_class,
    square_class_reps,
)
from .tits import TitsAlgebra


class InfiniteClassCount(ValueError):
    pass


class InvariantMismatch(AssertionError):
    pass


class _Infinite:
    def __repr__(self):
        return "Infinite"

    __str__ = __repr__


INFINITE = _Infinite()


# -- the invariant -----------------------------------------------------------------


@dataclass(frozen=True)
class InvolutionInvariant:
    """The data (zeta, eta, gamma) with Fix(theta o f_t) = H_3(D, gamma), D = (zeta, eta)."""

    field: FieldSpec
    pfister: Pfister2
    gamma: GammaTriple

    def norm_form(self) -> list:
        """Diagonal of the quadratic norm of H_3(D, gamma)."""
        half = self.field(1) / 2
        g1, g2, g3 = self.gamma
        out = [half] * 3
        for w in (g2 / g3, g3 / g1, g1 / g2):
            out.extend(w * c for c in self.pfister.coefficients())
        return out

    def to_json(self) -> dict:
        fs = self.field
        return {
            "pfister": [fs.to_str(self.pfister.zeta), fs.to_str(self.pfister.eta)],
            "gamma": [fs.to_str(g) for g in self.gamma],
        }


def trace_form_coefficients(t: TorusElement) -> list:
    """Diagonal coefficients of 1/2 Tr(x^2) on Fix(theta o f_t) read off t.

    In the coordinates a0 (with a0_ji determined by a0_ij) and a1 (with
    a2 = v^-1 a1^T u) the form is
    1/2 sum a0_ii^2 + sum_{i<j} (u_i/u_j) a0_ij^2 + sum_{i,j} (u_i/v_j) a1_ij^2.
    """
    f = t.field
    u = [t.u[i][i] for i in range(3)]
    v = [t.v[i][i] for i in range(3)]
    half = f(1) / 2
    out = [half] * 3
    out += [u[i] / u[j] for i, j in itertools.combinations(range(3), 2)]
    out += [u[i] / v[j] for i in range(3) for j in range(3)]
    return out


def restricted_trace_form(t: TorusElement) -> list:
    """Congruence-diagonalised Gram matrix of 1/2 Tr(x, x) on the fixed subspace."""
    f = t.field
    inv = type1_involution(t)
    alg = inv.realized.algebra
    fix = fixed_subspace(inv.realized)
    elems = [alg.from_coords(v) for v in fix.basis]
    half = f(1) / 2
    gram = [[alg.bilinear_trace(a, b) * half for b in elems] for a in elems]
    return linalg.diagonalize_symmetric(gram, f.one, f.zero)


def _same_square_classes(d1: Sequence, d2: Sequence, k: FieldSpec) -> bool:
    return Counter(square_class(a, k) for a in d1) == Counter(square_class(a, k) for a in d2)


def _read_invariant(t: TorusElement) -> InvolutionInvariant:
    u1, u2, v1, v2 = t.params
    return InvolutionInvariant(t.field, Pfister2(-v1, -v2 / v1), GammaTriple(u2, 1 / (u1 * u2), u1))


def invariant_of(t: TorusElement, verify: bool = True) -> InvolutionInvariant:
    """(zeta, eta, gamma) of theta o f_t.

    With ``verify`` the restricted trace form is diagonalised from the actual
    fixed subspace and must be isometric both to the coefficients read off t
    and to the norm form of H_3(D, gamma) for the returned data.
    """
    inv = _read_invariant(t)
    if verify:
        k = t.field
        computed = restricted_trace_form(t)
        predicted = trace_form_coefficients(t)
        if len(computed) != 15 or any(a == 0 for a in computed):
            raise InvariantMismatch(f"degenerate fixed trace form for {t}")
        if not (_same_square_classes(computed, predicted, k) or forms_isometric(computed, predicted, k)):
            raise InvariantMismatch(f"trace form of {t} disagrees with its coefficients")
        if not forms_isometric(predicted, inv.norm_form(), k):
            raise InvariantMismatch(f"trace form of {t} is not the norm of H_3(D, gamma)")
    return inv


# -- classes ---------------------------------------------------------------------


@dataclass(frozen=True)
class InvolutionClass:
    field: FieldSpec
    kind: str  # "I" or "II"
    split: bool | None = None
    gamma_key: tuple | None = None
    places: tuple | None = None

    @property
    def label(self) -> str:
        if self.kind == "II":
            return "TypeII"
        if self.split:
            return "TypeI(split)"
        parts = []
        if self.places is not None:
            parts.append("ramified=" + ",".join(str(p) for p in self.places))
        parts.append("gamma=(" + ",".join(str(g) for g in self.gamma_key) + ")")
        return "TypeI(division, " + ", ".join(parts) + ")"

    def __str__(self):
        return self.label


def norm_group(pfister: Pfister2, k: FieldSpec) -> NormGroup:
    """Image of the reduced norm of D = (zeta, eta) in the square classes of k."""
    if pfister_is_split(pfister, k):
        return NormGroup.ALL
    if k.kind is FieldKind.REALS:
        return NormGroup.POSITIVE
    if k.kind is FieldKind.RATIONALS:
        # Hasse-Schilling: norms are the elements positive at ramified real places
        return NormGroup.POSITIVE if "inf" in ramified_places(pfister) else NormGroup.ALL
    return NormGroup.ALL


def class_of_invariant(inv: InvolutionInvariant) -> InvolutionClass:
    k = inv.field
    places = ramified_places(inv.pfister) if k.kind is FieldKind.RATIONALS else None
    if pfister_is_split(inv.pfister, k):
        return InvolutionClass(k, "I", split=True)
    key = gamma_canonical(inv.gamma, norm_group(inv.pfister, k), k)
    key = tuple(k.to_str(k(x)) for x in key)
    return InvolutionClass(k, "I", split=False, gamma_key=key, places=places)


def classify(t: TorusElement, k: FieldSpec | None = None, verify: bool = False) -> InvolutionClass:
    if k is not None and k != t.field:
        t = TorusElement(k, *t.params)
    return class_of_invariant(invariant_of(t, verify=verify))


def classify_involution(inv: InvolutionDescriptor, verify: bool = False) -> InvolutionClass:
    if inv.kind == "II":
        if fixed_subspace(inv.realized).dimension != 11:
            raise InvariantMismatch("type II involution without an 11-dimensional fixed algebra")
        return InvolutionClass(inv.realized.field, "II")
    return classify(inv.torus, verify=verify)


def equivalent(t1: TorusElement, t2: TorusElement) -> bool:
    """Same class; over Q this also compares the Pfister local data."""
    a, b = invariant_of(t1, verify=False), invariant_of(t2, verify=False)
    return pfister_equivalent(a.pfister, b.pfister, t1.field) and classify(t1) == classify(t2)


# -- representatives and counts ------------------------------------------------------


def torus(k: FieldSpec, *params) -> TorusElement:
    return TorusElement(k, *params)


def representatives(k: FieldSpec) -> list[TorusElement]:
    """One torus element per class of type I involutions."""
    kind = k.kind
    if kind is FieldKind.RATIONALS:
        raise InfiniteClassCount("Q has infinitely many classes of type I involutions")
    if kind in (FieldKind.ALG_CLOSED, FieldKind.FINITE):
        return [torus(k, 1, 1, 1, 1)]
    if kind is FieldKind.REALS:
        return [torus(k, 1, 1, -1, 1), torus(k, 1, 1, 1, 1), torus(k, -1, 1, 1, 1)]
    p = k.p
    if p == 2:
        return [torus(k, 1, 1, -1, 1), torus(k, 1, 1, 1, 1)]
    return [torus(k, 1, 1, -1, 1), torus(k, 1, 1, -p, -least_nonresidue(p))]


def class_count(k: FieldSpec, kind: str = "I"):
    """Number of classes, by classifying one torus element per square-class tuple.

    Labels depend on the parameters only through their square classes, so
    this enumeration is exhaustive.
    """
    if kind == "II":
        return 1
    if kind != "I":
        raise ValueError(f"unknown involution kind {kind!r}")
    reps = square_class_reps(k)
    if reps is None:
        return INFINITE
    labels = {classify(torus(k, *ps)).label for ps in itertools.product(reps, repeat=4)}
    return len(labels)


# -- census over finite fields ---------------------------------------------------------


@dataclass(frozen=True)
class CensusRow:
    params: tuple
    label: str
    fixed_dim: int

    def tsv(self, k: FieldSpec) -> str:
        return "\t".join([",".join(k.to_str(x) for x in self.params), self.label, str(self.fixed_dim)])


@dataclass(frozen=True)
class CensusResult:
    field: FieldSpec
    mode: str
    rows: tuple

    @property
    def histogram(self) -> dict[str, int]:
        return dict(sorted(Counter(r.label for r in self.rows).items()))

    @property
    def fixed_dims(self) -> dict[int, int]:
        return dict(sorted(Counter(r.fixed_dim for r in self.rows).items()))

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "mode": self.mode,
            "count": len(self.rows),
            "histogram": self.histogram,
            "fixed_dims": {str(d): n for d, n in self.fixed_dims.items()},
        }


def _census_row(args) -> CensusRow:
    k, params = args
    t = torus(k, *params)
    label = classify(t).label
    dim = fixed_subspace(type1_involution(t, TitsAlgebra(k)).realized).dimension
    return CensusRow(tuple(t.params), label, dim)


EXHAUSTIVE_PRIME_LIMIT = 13


def census(
    k: FieldSpec,
    exhaustive: bool = False,
    samples: int = 1000,
    seed: int = 0,
    jobs: int = 1,
) -> CensusResult:
    if k.kind is not FieldKind.FINITE:
        raise FieldError("census runs over finite fields F_p")
    units = [x for x in k.elements() if x != 0]
    if exhaustive:
        if k.p > EXHAUSTIVE_PRIME_LIMIT:
            raise ValueError(f"exhaustive census is limited to p <= {EXHAUSTIVE_PRIME_LIMIT}")
        params = list(itertools.product(units, repeat=4))
    else:
        rng = random.Random(seed)
        params = [tuple(rng.choice(units) for _ in range(4)) for _ in range(samples)]
    work = [(k, ps) for ps in params]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_census_row, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        rows = [_census_row(w) for w in work]
    return CensusResult(k, "exhaustive" if exhaustive else "sampled", tuple(rows))


# -- an infinite family over Q ----------------------------------------------------------


def rational_distinct_family(primes: Iterable[int]) -> list[InvolutionClass]:
    """Classes of t(1, 1, 1, -p): Pfister pair (-1, p), pairwise distinct over Q."""
    primes = list(primes)
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    for p in primes:
        if not is_prime(p) or p % 4 != 3:
            raise ValueError(f"{p} is not a prime congruent to 3 mod 4")
    q = FieldSpec(FieldKind.RATIONALS)
    return [classify(torus(q, 1, 1, 1, -p)) for p in primes]


def family_torus(p: int) -> TorusElement:
    return torus(FieldSpec(FieldKind.RATIONALS), 1, 1, 1, -p)
