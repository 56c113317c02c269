"""Split octonions by Cayley--Dickson doubling, and quaternion subalgebras.

Basis order is ``(e, i, j, k, l, il, jl, kl)``.  The quaternion seed is
``(zeta, eta) = (1, 1)``: ``i^2 = j^2 = 1``, ``k = ij``.  Doubling uses

    (a, b)(c, d) = (ac + mu * conj(d) b, d a + b conj(c)),   mu = 1,

so the norm is ``q(a, b) = n(a) - n(b)`` with ``n`` the quaternion norm
``x0^2 - x1^2 - x2^2 + x3^2``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import linalg
from .fields import FieldError, FieldSpec, Pfister2, Scalar, pfister_is_split

BASIS_NAMES = ("e", "i", "j", "k", "l", "il", "jl", "kl")
SEED = (1, 1)
MU = 1


class NoEmbedding(ValueError):
    pass


def _quaternion_table(zeta: int, eta: int) -> dict:
    """e_a e_b = c * e_r for the quaternion basis (1, i, j, k)."""
    ze = zeta * eta
    t = {
        (1, 1): (zeta, 0), (2, 2): (eta, 0), (3, 3): (-ze, 0),
        (1, 2): (1, 3), (2, 1): (-1, 3),
        (1, 3): (zeta, 2), (3, 1): (-zeta, 2),
        (2, 3): (-eta, 1), (3, 2): (eta, 1),
    }
    for a in range(4):
        t[(0, a)] = (1, a)
        t[(a, 0)] = (1, a)
    return {k: (v[1], v[0]) for k, v in t.items()}


def _quat_conj_sign(a: int) -> int:
    return 1 if a == 0 else -1


@lru_cache(maxsize=None)
def structure_constants() -> tuple:
    """Sparse octonion table: tuples ``(a, b, r, c)`` meaning e_a e_b = c e_r."""
    q = _quaternion_table(*SEED)
    out = []
    for a in range(8):
        for b in range(8):
            # x = (x0, x1) with x0, x1 quaternion basis vectors
            xa, xb = (a, -1) if a < 4 else (-1, a - 4)
            ya, yb = (b, -1) if b < 4 else (-1, b - 4)
            terms = []
            # first half: x0 y0 + mu * conj(y1) x1
            if xa >= 0 and ya >= 0:
                r, c = q[(xa, ya)]
                terms.append((r, c))
            if yb >= 0 and xb >= 0:
                r, c = q[(yb, xb)]
                terms.append((r, MU * _quat_conj_sign(yb) * c))
            # second half: y1 x0 + x1 conj(y0)
            if yb >= 0 and xa >= 0:
                r, c = q[(yb, xa)]
                terms.append((r + 4, c))
            if xb >= 0 and ya >= 0:
                r, c = q[(xb, ya)]
                terms.append((r + 4, _quat_conj_sign(ya) * c))
            for r, c in terms:
                out.append((a, b, r, c))
    return tuple(out)


def structure_constants_json() -> str:
    """The multiplication table as JSON, for cross-checking other builds."""
    rows = [
        {"left": BASIS_NAMES[a], "right": BASIS_NAMES[b], "result": BASIS_NAMES[r], "coeff": c}
        for a, b, r, c in structure_constants()
    ]
    return json.dumps({"basis": list(BASIS_NAMES), "mu": MU, "seed": list(SEED), "table": rows}, indent=1)


# diagonal of the norm form in the fixed basis
NORM_DIAGONAL = (1, -1, -1, 1, -1, 1, 1, -1)


@dataclass(frozen=True)
class Octonion:
    field: FieldSpec
    coords: tuple

    def _check(self, other: "Octonion"):
        if not isinstance(other, Octonion):
            raise TypeError(f"expected Octonion, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldError(f"octonions over {self.field} and {other.field} mixed")

    def __add__(self, other):
        self._check(other)
        return Octonion(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return Octonion(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Octonion(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return oct_mul(self, other)
        s = self.field(other)
        return Octonion(self.field, tuple(a * s for a in self.coords))

    def __rmul__(self, other):
        s = self.field(other)
        return Octonion(self.field, tuple(s * a for a in self.coords))

    def conjugate(self) -> "Octonion":
        return conjugate(self)

    def norm(self) -> Scalar:
        return norm(self)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def to_strings(self) -> list[str]:
        return [self.field.to_str(a) for a in self.coords]

    def __str__(self):
        return "(" + ", ".join(self.to_strings()) + ")"


class OctonionAlgebra:
    """The split octonion algebra over ``field``."""

    dim = 8

    def __init__(self, field: FieldSpec):
        self.field = field
        self.zero = Octonion(field, (field.zero,) * 8)
        self.e = self.basis(0)

    def __eq__(self, other):
        return isinstance(other, OctonionAlgebra) and other.field == self.field

    def __hash__(self):
        return hash(("oct", self.field))

    def basis(self, i: int) -> Octonion:
        f = self.field
        return Octonion(f, tuple(f.one if j == i else f.zero for j in range(8)))

    def element(self, coords: Sequence) -> Octonion:
        if len(coords) != 8:
            raise ValueError("an octonion has 8 coordinates")
        return Octonion(self.field, tuple(self.field(c) for c in coords))

    def scalar(self, s) -> Octonion:
        return self.e * s

    def random(self, rng, **kw) -> Octonion:
        return Octonion(self.field, tuple(self.field.random(rng, **kw) for _ in range(8)))


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    x._check(y)
    zero = x.field.zero
    out = [zero] * 8
    xc, yc = x.coords, y.coords
    for a, b, r, c in structure_constants():
        xa = xc[a]
        if xa == 0:
            continue
        yb = yc[b]
        if yb == 0:
            continue
        out[r] = out[r] + c * xa * yb
    return Octonion(x.field, tuple(out))


def norm(x: Octonion) -> Scalar:
    s = x.field.zero
    for d, a in zip(NORM_DIAGONAL, x.coords):
        s = s + d * a * a
    return s


def bilinear(x: Octonion, y: Octonion) -> Scalar:
    """q(x, y) = q(x + y) - q(x) - q(y)."""
    s = x.field.zero
    for d, a, b in zip(NORM_DIAGONAL, x.coords, y.coords):
        s = s + 2 * d * a * b
    return s


def conjugate(x: Octonion) -> Octonion:
    """conj(x) = q(x, e) e - x."""
    c = x.coords
    return Octonion(x.field, (c[0],) + tuple(-a for a in c[1:]))


# ---------------------------------------------------------------------------
# quaternion subalgebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuaternionSubalgebra:
    """D = span(e, u, v, uv) with u^2 = zeta e, v^2 = eta e, uv = -vu.

    ``complement_basis`` spans D-perp and is ``D * j`` for the stored ``j``.
    """

    basis: tuple
    pfister: Pfister2
    j: Octonion
    complement_basis: tuple

    @property
    def field(self) -> FieldSpec:
        return self.j.field

    def split(self, x: Octonion) -> tuple[Octonion, Octonion]:
        """Write x = d + y j with d, y in D."""
        coeffs = _solve_coords(self, x)
        d = _combine(self.basis, coeffs[:4], x.field)
        y = _combine(self.basis, coeffs[4:], x.field)
        return d, y

    def contains(self, x: Octonion) -> bool:
        _, y = self.split(x)
        return y.is_zero()


def _combine(vectors, coeffs, field) -> Octonion:
    out = Octonion(field, (field.zero,) * 8)
    for c, v in zip(coeffs, vectors):
        if c != 0:
            out = out + v * c
    return out


def _solve_coords(D: QuaternionSubalgebra, x: Octonion) -> list:
    f = x.field
    inv = _change_of_basis_inverse(D)
    return [sum((inv[r][c] * x.coords[c] for c in range(8)), f.zero) for r in range(8)]


@lru_cache(maxsize=64)
def _change_of_basis_inverse(D: QuaternionSubalgebra):
    f = D.field
    cols = list(D.basis) + list(D.complement_basis)
    m = [[cols[c].coords[r] for c in range(8)] for r in range(8)]
    return linalg.inverse(m, f.one, f.zero)


def _represent(value, plane: tuple[int, int], field: FieldSpec) -> Octonion:
    """A vector s*b_a + t*b_b of norm ``value`` in a hyperbolic basis plane."""
    a, b = plane
    # NORM_DIAGONAL[a] = -1, NORM_DIAGONAL[b] = +1: q = t^2 - s^2
    c = field(value)
    half = field(1) / 2
    s, t = (1 - c) * half, (1 + c) * half
    coords = [field.zero] * 8
    coords[a], coords[b] = s, t
    return Octonion(field, tuple(coords))


def embed_quaternion(zeta, eta, field: FieldSpec) -> QuaternionSubalgebra:
    """Quaternion subalgebra of the split octonions with Pfister pair (zeta, eta).

    u and v are taken in the hyperbolic planes span(i, k) and span(j, il) of
    the trace-zero part, so they are orthogonal and of small height; for the
    seed pair (1, 1) this returns span(e, i, j, k).
    """
    zeta, eta = field(zeta), field(eta)
    if zeta == 0 or eta == 0:
        raise NoEmbedding("Pfister entries must be nonzero")
    alg = OctonionAlgebra(field)
    # pure u: u^2 = -q(u) e
    u = _represent(-zeta, (1, 3), field)
    v = _represent(-eta, (2, 5), field)
    uv = u * v
    if u * u != alg.e * zeta or v * v != alg.e * eta or uv != -(v * u):
        raise NoEmbedding(f"no quaternion pair ({zeta}, {eta}) found")
    basis = (alg.e, u, v, uv)
    if linalg.rank([list(b.coords) for b in basis]) != 4:
        raise NoEmbedding("degenerate quaternion basis")
    # D-perp: kernel of the bilinear form against D
    gram_rows = [[2 * d * a for d, a in zip(NORM_DIAGONAL, b.coords)] for b in basis]
    perp = linalg.nullspace(gram_rows, 8, field.one, field.zero)
    perp = [Octonion(field, tuple(p)) for p in perp]
    j = next((p for p in perp if norm(p) != 0), None)
    if j is None:
        for a in perp:
            for b in perp:
                if norm(a + b) != 0:
                    j = a + b
                    break
            if j is not None:
                break
    if j is None:
        raise NoEmbedding("no anisotropic vector in D-perp")
    comp = tuple(d * j for d in basis)
    if linalg.rank([list(b.coords) for b in basis + comp]) != 8:
        raise NoEmbedding("C != D + Dj")
    return QuaternionSubalgebra(basis, Pfister2(zeta, eta), j, comp)


def is_split_quaternion(D: QuaternionSubalgebra, k: FieldSpec) -> bool:
    return pfister_is_split(D.pfister, k)
