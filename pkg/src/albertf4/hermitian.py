"""The Hermitian presentation H_3(C, gamma) of the split Albert algebra.

An element ``h(f1, f2, f3; c1, c2, c3)`` is stored compressed; its full
matrix is

    [ f1                       c3                     g1^-1 g3 conj(c2) ]
    [ g2^-1 g1 conj(c3)        f2                     c1                ]
    [ c2                       g3^-1 g2 conj(c1)      f3                ]

Coordinates are ``f1, f2, f3`` followed by the octonion coordinates of
``c1, c2, c3``.  The product is ``xy = (x.y + y.x) / 2`` with matrix
multiplication over the octonions.

The second half of the module handles a quaternion subalgebra ``D`` with a
fixed ``j`` in ``D``-perp: every element splits as ``X + Y.j`` with ``X``
Hermitian over ``D`` and ``Y`` gamma-skew over ``D``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import linalg
from .fields import FieldError, FieldSpec, GammaTriple, Scalar
from .octonions import Octonion, OctonionAlgebra, QuaternionSubalgebra, bilinear, conjugate, norm
from .structure import StructureTable, build_table


class NotPrimitive(ValueError):
    pass


@dataclass(frozen=True)
class HermitianElement:
    algebra: "HermitianAlgebra"
    f: tuple
    c: tuple

    def _check(self, other):
        if not isinstance(other, HermitianElement):
            raise TypeError(f"expected HermitianElement, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise FieldError("elements of different Hermitian algebras")

    def __add__(self, o):
        self._check(o)
        return HermitianElement(
            self.algebra,
            tuple(a + b for a, b in zip(self.f, o.f)),
            tuple(a + b for a, b in zip(self.c, o.c)),
        )

    def __sub__(self, o):
        return self + (-o)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s) -> "HermitianElement":
        s = self.algebra.field(s)
        return HermitianElement(self.algebra, tuple(a * s for a in self.f), tuple(a * s for a in self.c))

    def __mul__(self, other):
        if isinstance(other, HermitianElement):
            return jordan_mul(self, other)
        return self.scale(other)

    def __rmul__(self, s):
        return self.scale(s)

    def coords(self) -> list:
        out = list(self.f)
        for c in self.c:
            out.extend(c.coords)
        return out

    def matrix(self) -> list[list[Octonion]]:
        return self.algebra.full_matrix(self)

    def to_json(self) -> dict:
        fs = self.algebra.field
        return {"f": [fs.to_str(a) for a in self.f], "c": [c.to_strings() for c in self.c]}

    def __repr__(self):
        fs = self.algebra.field
        f = ", ".join(fs.to_str(a) for a in self.f)
        c = "; ".join(str(x) for x in self.c)
        return f"h({f}; {c})"


class HermitianAlgebra:
    """H_3(C, gamma) over ``field`` with C the split octonions."""

    dim = 27
    presentation = "hermitian"

    def __init__(self, field: FieldSpec, gamma=(1, 1, 1)):
        self.field = field
        self.gamma = GammaTriple(*(field(g) for g in gamma))
        self.octonions = OctonionAlgebra(field)
        o, z = field.one, field.zero
        self.zero = HermitianElement(self, (z, z, z), (self.octonions.zero,) * 3)
        self.unit = HermitianElement(self, (o, o, o), (self.octonions.zero,) * 3)

    @property
    def e(self) -> HermitianElement:
        return self.unit

    def __eq__(self, other):
        return (
            isinstance(other, HermitianAlgebra)
            and other.field == self.field
            and tuple(other.gamma) == tuple(self.gamma)
        )

    def __hash__(self):
        return hash(("herm", self.field, tuple(self.gamma)))

    def __repr__(self):
        g = ", ".join(self.field.to_str(x) for x in self.gamma)
        return f"HermitianAlgebra({self.field}, gamma=({g}))"

    def to_json(self) -> dict:
        return {"field": str(self.field), "gamma": [self.field.to_str(g) for g in self.gamma]}

    # -- coordinates ------------------------------------------------------

    def element(self, f: Sequence, c: Sequence = ()) -> HermitianElement:
        """h(f1, f2, f3; c1, c2, c3); octonions may be given as 8-sequences."""
        c = list(c) + [None] * (3 - len(c))
        oc = []
        for x in c:
            if x is None:
                oc.append(self.octonions.zero)
            elif isinstance(x, Octonion):
                oc.append(x)
            else:
                oc.append(self.octonions.element(x))
        return HermitianElement(self, tuple(self.field(a) for a in f), tuple(oc))

    def from_coords(self, v: Sequence) -> HermitianElement:
        v = list(v)
        if len(v) != 27:
            raise ValueError("a Hermitian element has 27 coordinates")
        oc = tuple(Octonion(self.field, tuple(v[3 + 8 * i: 11 + 8 * i])) for i in range(3))
        return HermitianElement(self, tuple(v[:3]), oc)

    def coords(self, x: HermitianElement) -> list:
        return x.coords()

    def basis(self, i: int) -> HermitianElement:
        f = self.field
        return self.from_coords([f.one if j == i else f.zero for j in range(27)])

    def random(self, rng: random.Random, **kw) -> HermitianElement:
        return self.from_coords([self.field.random(rng, **kw) for _ in range(27)])

    def full_matrix(self, x: HermitianElement) -> list[list[Octonion]]:
        g1, g2, g3 = self.gamma
        c1, c2, c3 = x.c
        e = self.octonions.e
        f1, f2, f3 = (e * a for a in x.f)
        return [
            [f1, c3, conjugate(c2) * (g3 / g1)],
            [conjugate(c3) * (g1 / g2), f2, c1],
            [c2, conjugate(c1) * (g2 / g3), f3],
        ]

    def from_matrix(self, m: Sequence[Sequence[Octonion]], check: bool = True) -> HermitianElement:
        if check and not is_gamma_hermitian(m, self.gamma):
            raise ValueError("matrix is not gamma-Hermitian")
        f = []
        for a in range(3):
            d = m[a][a]
            if any(x != 0 for x in d.coords[1:]):
                raise ValueError("diagonal entries must be scalars")
            f.append(d.coords[0])
        return HermitianElement(self, tuple(f), (m[1][2], m[2][0], m[0][1]))

    # -- products ---------------------------------------------------------

    def mul_reference(self, x: HermitianElement, y: HermitianElement) -> HermitianElement:
        """The Jordan product through full octonion matrices."""
        mx, my = self.full_matrix(x), self.full_matrix(y)
        s = omat_add(omat_mul(mx, my), omat_mul(my, mx))
        half = self.field(1) / 2
        return self.from_matrix([[v * half for v in row] for row in s])

    def mul(self, x: HermitianElement, y: HermitianElement) -> HermitianElement:
        return self.from_coords(self.table().mul(x.coords(), y.coords()))

    @lru_cache(maxsize=None)
    def table(self) -> StructureTable:
        return build_table(self, self.mul_reference)

    def mul_vec(self, x: Sequence, y: Sequence) -> list:
        return self.table().mul(x, y)

    def unit_vector(self) -> list:
        return self.unit.coords()

    # -- quadratic norm ---------------------------------------------------

    def norm_weights(self) -> tuple:
        g1, g2, g3 = self.gamma
        return (g2 / g3, g3 / g1, g1 / g2)

    def quadratic_norm(self, x: HermitianElement) -> Scalar:
        half = self.field(1) / 2
        s = sum((a * a for a in x.f), self.field.zero) * half
        for w, c in zip(self.norm_weights(), x.c):
            s = s + w * norm(c)
        return s

    def bilinear_form(self, x: HermitianElement, y: HermitianElement) -> Scalar:
        """<x, y> = Q(x + y) - Q(x) - Q(y)."""
        s = sum((a * b for a, b in zip(x.f, y.f)), self.field.zero)
        for w, c, d in zip(self.norm_weights(), x.c, y.c):
            s = s + w * bilinear(c, d)
        return s

    def gram_matrix(self) -> list[list]:
        b = [self.basis(i) for i in range(27)]
        return [[self.bilinear_form(x, y) for y in b] for x in b]


# -- octonion matrices --------------------------------------------------------


def omat_mul(a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(len(b[0])):
            s = a[i][0] * b[0][j]
            for k in range(1, len(b)):
                s = s + a[i][k] * b[k][j]
            row.append(s)
        out.append(row)
    return out


def omat_add(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def omat_scale(a, s):
    return [[x * s for x in r] for r in a]


def omat_transpose(a):
    return [list(r) for r in zip(*a)]


def is_gamma_hermitian(m, gamma) -> bool:
    return iota_gamma(m, gamma) == [list(r) for r in m]


# -- the operations -----------------------------------------------------------


def jordan_mul(x: HermitianElement, y: HermitianElement) -> HermitianElement:
    x._check(y)
    return x.algebra.mul(x, y)


def quadratic_norm(x: HermitianElement) -> Scalar:
    return x.algebra.quadratic_norm(x)


def bilinear_form(x: HermitianElement, y: HermitianElement) -> Scalar:
    x._check(y)
    return x.algebra.bilinear_form(x, y)


def is_idempotent(w: HermitianElement) -> bool:
    return jordan_mul(w, w) == w


def is_primitive_idempotent(w: HermitianElement) -> bool:
    alg = w.algebra
    if w == alg.zero or w == alg.unit or not is_idempotent(w):
        return False
    return quadratic_norm(w) == alg.field(1) / 2


def idempotent_lemma(w: HermitianElement) -> dict[str, bool]:
    """The identities satisfied by an idempotent w other than 0 and e."""
    alg = w.algebra
    e = alg.unit
    half = alg.field(1) / 2
    q = quadratic_norm(w)
    ew = e - w
    return {
        "idempotent": jordan_mul(w, w) == w,
        "norm_half_or_one": q == half or q == 1,
        "trace_pairing": bilinear_form(w, e) == 2 * q,
        "complement_idempotent": jordan_mul(ew, ew) == ew,
        "orthogonal_product": jordan_mul(w, ew) == alg.zero,
        "orthogonal_form": bilinear_form(w, ew) == 0,
        "complement_norm": quadratic_norm(ew) == alg.field(3) / 2 - q,
    }


@dataclass(frozen=True)
class PeirceDecomposition:
    w: HermitianElement
    one: tuple
    complement: tuple
    zero_space: tuple
    half_space: tuple

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return (len(self.one), len(self.complement), len(self.zero_space), len(self.half_space))


def peirce_decompose(w: HermitianElement) -> PeirceDecomposition:
    """A = kw + k(e - w) + E0 + E1 for a primitive idempotent w."""
    if not is_primitive_idempotent(w):
        raise NotPrimitive(f"{w!r} is not a primitive idempotent")
    alg = w.algebra
    f = alg.field
    lw = alg.table().left_multiplication(w.coords())
    e_row = [alg.bilinear_form(alg.unit, alg.basis(i)) for i in range(27)]
    half = f(1) / 2
    shifted = [[lw[i][j] - (half if i == j else f.zero) for j in range(27)] for i in range(27)]
    e0 = linalg.nullspace(lw + [e_row], 27, f.one, f.zero)
    e1 = linalg.nullspace(shifted + [e_row], 27, f.one, f.zero)
    return PeirceDecomposition(
        w,
        (w,),
        (alg.unit - w,),
        tuple(alg.from_coords(v) for v in e0),
        tuple(alg.from_coords(v) for v in e1),
    )


def diagonal_idempotents(alg: HermitianAlgebra) -> list[HermitianElement]:
    """The six diagonal idempotents other than 0 and e."""
    out = []
    for bits in range(1, 7):
        out.append(alg.element([(bits >> i) & 1 for i in range(3)]))
    return out


# -- automorphisms from scalar gamma-orthogonal matrices ----------------------


def random_gamma_orthogonal(alg: HermitianAlgebra, rng: random.Random, reflections: int = 3) -> list[list]:
    """A product of gamma-reflections: a scalar u with gamma^-1 u^T gamma = u^-1."""
    f = alg.field
    g = list(alg.gamma)
    u = linalg.identity(3, f.one, f.zero)
    done = 0
    while done < reflections:
        v = [f.random(rng) for _ in range(3)]
        vv = sum((g[i] * v[i] * v[i] for i in range(3)), f.zero)
        if vv == 0:
            continue
        r = [[(f.one if i == j else f.zero) - 2 * v[i] * v[j] * g[j] / vv for j in range(3)] for i in range(3)]
        u = linalg.matmul(r, u, f.zero)
        done += 1
    return u


def conjugate_by(u: Sequence[Sequence], x: HermitianElement) -> HermitianElement:
    """x -> u x u^-1 for a scalar gamma-orthogonal u; a Jordan automorphism."""
    alg = x.algebra
    f = alg.field
    uinv = linalg.inverse(u, f.one, f.zero)
    e = alg.octonions.e
    uo = [[e * a for a in r] for r in u]
    ui = [[e * a for a in r] for r in uinv]
    return alg.from_matrix(omat_mul(omat_mul(uo, x.matrix()), ui))


# -- the decomposition over a quaternion subalgebra ---------------------------


def iota_gamma(m: Sequence[Sequence[Octonion]], gamma) -> list[list[Octonion]]:
    """iota(x) = gamma^-1 conj(x)^T gamma."""
    g = list(gamma)
    return [[conjugate(m[b][a]) * (g[b] / g[a]) for b in range(3)] for a in range(3)]


@dataclass(frozen=True)
class SkewElement:
    """A 3x3 matrix Y over D with gamma^-1 Y^T gamma = -Y.

    These are exactly the j-coefficients of gamma-Hermitian matrices over
    C = D + Dj, since conj(y j) = -y j for y in D.
    """

    D: QuaternionSubalgebra
    gamma: tuple
    entries: tuple

    def __post_init__(self):
        g = self.gamma
        for a in range(3):
            for b in range(3):
                y = self.entries[a][b]
                if not self.D.contains(y):
                    raise ValueError("skew entries must lie in D")
                if y + self.entries[b][a] * (g[b] / g[a]) != y * 0:
                    raise ValueError("matrix is not gamma-skew")

    def __add__(self, o):
        return SkewElement(self.D, self.gamma, tuple(
            tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.entries, o.entries)))

    def __eq__(self, o):
        return isinstance(o, SkewElement) and self.entries == o.entries and self.D == o.D

    __hash__ = None

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)


def skew_from_upper(D: QuaternionSubalgebra, gamma, y12, y13, y23) -> SkewElement:
    g = [D.field(x) for x in gamma]
    z = D.basis[0] * 0
    m = [[z] * 3 for _ in range(3)]
    for (a, b), y in (((0, 1), y12), ((0, 2), y13), ((1, 2), y23)):
        m[a][b] = y
        m[b][a] = -(y * (g[a] / g[b]))
    return SkewElement(D, tuple(g), tuple(tuple(r) for r in m))


def random_in_D(D: QuaternionSubalgebra, rng: random.Random) -> Octonion:
    f = D.field
    out = D.basis[0] * 0
    for b in D.basis:
        out = out + b * f.random(rng)
    return out


def random_hermitian_over(alg: HermitianAlgebra, D: QuaternionSubalgebra, rng: random.Random) -> HermitianElement:
    return alg.element([alg.field.random(rng) for _ in range(3)], [random_in_D(D, rng) for _ in range(3)])


def random_skew(alg: HermitianAlgebra, D: QuaternionSubalgebra, rng: random.Random) -> SkewElement:
    return skew_from_upper(D, alg.gamma, *(random_in_D(D, rng) for _ in range(3)))


def embed_skew(alg: HermitianAlgebra, Y: SkewElement) -> HermitianElement:
    """The ambient element Y.j (entrywise y_ab j)."""
    j = Y.D.j
    m = [[y * j for y in r] for r in Y.entries]
    e = alg.octonions.e
    for a in range(3):
        m[a][a] = e * 0
    return alg.from_matrix(m)


def decompose(x: HermitianElement, D: QuaternionSubalgebra) -> tuple[HermitianElement, SkewElement]:
    """Split x = X + Y.j with X Hermitian over D and Y gamma-skew over D."""
    alg = x.algebra
    m = x.matrix()
    dm = [[None] * 3 for _ in range(3)]
    ym = [[None] * 3 for _ in range(3)]
    for a in range(3):
        for b in range(3):
            dm[a][b], ym[a][b] = D.split(m[a][b])
    X = alg.from_matrix(dm)
    Y = SkewElement(D, tuple(alg.gamma), tuple(tuple(r) for r in ym))
    return X, Y


def _dmat_conj(m):
    return [[conjugate(x) for x in r] for r in m]


def bullet_product(X: HermitianElement, V: SkewElement) -> SkewElement:
    """X . V with X(V.j) = (X . V).j, namely (V conj(X) + (V^T X^T)^T) / 2."""
    mx = X.matrix()
    mv = [list(r) for r in V.entries]
    first = omat_mul(mv, _dmat_conj(mx))
    second = omat_transpose(omat_mul(omat_transpose(mv), omat_transpose(mx)))
    half = X.algebra.field(1) / 2
    s = omat_scale(omat_add(first, second), half)
    return SkewElement(V.D, V.gamma, tuple(tuple(r) for r in s))


def star_product(alg: HermitianAlgebra, Y: SkewElement, V: SkewElement) -> HermitianElement:
    """Y * V = (Y.j)(V.j), an element of H_3(D, gamma).

    Entry (a, c) is (mu / 2) sum_b (conj(V_bc) Y_ab + conj(Y_bc) V_ab) with
    mu = j^2 = -q(j).  For gamma = 1 this equals
    (q(j) / 2) (iota(V) Y + iota(Y) V)^T.
    """
    mu = -norm(Y.D.j)
    half = alg.field(1) / 2
    e = alg.octonions.e
    m = [[e * 0 for _ in range(3)] for _ in range(3)]
    for a in range(3):
        for c in range(3):
            s = e * 0
            for b in range(3):
                s = s + conjugate(V.entries[b][c]) * Y.entries[a][b] + conjugate(Y.entries[b][c]) * V.entries[a][b]
            m[a][c] = s * (mu * half)
    return alg.from_matrix(m)
