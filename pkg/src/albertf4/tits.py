"""The first Tits construction J(Mat_3(k), nu) of a split Albert algebra.

An element is a triple ``(a0, a1, a2)`` of 3x3 matrices; coordinates are
the 27 entries in the order a0, a1, a2, each row-major.

All formulas here use ring operations only (plus the scalar ``nu``), so they
accept :class:`~albertf4.polynomial.Poly` entries as well as field scalars.
That is how the automorphism engine expands N and # into coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .fields import FieldSpec
from .structure import StructureTable, build_table

# -- 3x3 matrix helpers (tuples of row tuples) -------------------------------


def mat(rows) -> tuple:
    return tuple(tuple(r) for r in rows)


def mzero(z) -> tuple:
    return ((z, z, z), (z, z, z), (z, z, z))


def mid(one, zero) -> tuple:
    return tuple(tuple(one if i == j else zero for j in range(3)) for i in range(3))


def madd(a, b):
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def msub(a, b):
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mscale(a, c):
    return tuple(tuple(x * c for x in r) for r in a)


def mmul(a, b):
    return tuple(
        tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] for j in range(3))
        for i in range(3)
    )


def mtrans(a):
    return tuple(tuple(a[j][i] for j in range(3)) for i in range(3))


def mtrace(a):
    return a[0][0] + a[1][1] + a[2][2]


def mdet(a):
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def madj(a):
    """Classical adjugate, equal to m^2 - tr(m) m + sr(m) 1."""
    def minor(r0, r1, c0, c1):
        return a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]

    return (
        (minor(1, 2, 1, 2), -minor(0, 2, 1, 2), minor(0, 1, 1, 2)),
        (-minor(1, 2, 0, 2), minor(0, 2, 0, 2), -minor(0, 1, 0, 2)),
        (minor(1, 2, 0, 1), -minor(0, 2, 0, 1), minor(0, 1, 0, 1)),
    )


def msr(a):
    """Quadratic trace: sum of principal 2x2 minors."""
    return (
        a[0][0] * a[1][1] - a[0][1] * a[1][0]
        + a[0][0] * a[2][2] - a[0][2] * a[2][0]
        + a[1][1] * a[2][2] - a[1][2] * a[2][1]
    )


def mat_sharp_product(a, b):
    return msub(msub(madj(madd(a, b)), madj(a)), madj(b))


# -- elements ---------------------------------------------------------------


@dataclass(frozen=True)
class TitsElement:
    a0: tuple
    a1: tuple
    a2: tuple

    def __add__(self, o):
        return TitsElement(madd(self.a0, o.a0), madd(self.a1, o.a1), madd(self.a2, o.a2))

    def __sub__(self, o):
        return TitsElement(msub(self.a0, o.a0), msub(self.a1, o.a1), msub(self.a2, o.a2))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "TitsElement":
        return TitsElement(mscale(self.a0, c), mscale(self.a1, c), mscale(self.a2, c))

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def coords(self) -> list:
        return [x for m in (self.a0, self.a1, self.a2) for r in m for x in r]

    @classmethod
    def from_coords(cls, v: Sequence) -> "TitsElement":
        v = list(v)
        if len(v) != 27:
            raise ValueError("a Tits element has 27 coordinates")
        blocks = [tuple(tuple(v[9 * b + 3 * i + j] for j in range(3)) for i in range(3)) for b in range(3)]
        return cls(*blocks)

    def to_json(self, field: FieldSpec) -> list:
        return [[[field.to_str(x) for x in r] for r in m] for m in (self.a0, self.a1, self.a2)]


class TitsAlgebra:
    """J(Mat_3(k), nu) with its sharped cubic form (N, #, 1)."""

    dim = 27
    presentation = "tits"

    def __init__(self, field: FieldSpec, nu=1):
        self.field = field
        self.nu = field(nu)
        if self.nu == 0:
            raise ValueError("nu must be a unit")
        z, o = field.zero, field.one
        self.unit = TitsElement(mid(o, z), mzero(z), mzero(z))
        self.zero = TitsElement(mzero(z), mzero(z), mzero(z))

    def __eq__(self, other):
        return isinstance(other, TitsAlgebra) and (other.field, other.nu) == (self.field, self.nu)

    def __hash__(self):
        return hash(("tits", self.field, self.nu))

    def __repr__(self):
        return f"TitsAlgebra({self.field}, nu={self.nu})"

    # coordinates
    def element(self, v: Sequence) -> TitsElement:
        return TitsElement.from_coords([self.field(x) for x in v])

    def basis(self, i: int) -> TitsElement:
        f = self.field
        return TitsElement.from_coords([f.one if j == i else f.zero for j in range(27)])

    def coords(self, x: TitsElement) -> list:
        return x.coords()

    def from_coords(self, v: Sequence) -> TitsElement:
        return TitsElement.from_coords(v)

    def random(self, rng, **kw) -> TitsElement:
        return TitsElement.from_coords([self.field.random(rng, **kw) for _ in range(27)])

    # the cubic form and friends
    def norm(self, m: TitsElement):
        nu = self.nu
        return (
            mdet(m.a0) + nu * mdet(m.a1) + mdet(m.a2) * (1 / nu)
            - mtrace(mmul(mmul(m.a0, m.a1), m.a2))
        )

    def trace(self, m: TitsElement):
        return mtrace(m.a0)

    def bilinear_trace(self, m: TitsElement, n: TitsElement):
        return mtrace(mmul(m.a0, n.a0)) + mtrace(mmul(m.a1, n.a2)) + mtrace(mmul(m.a2, n.a1))

    def sharp(self, m: TitsElement) -> TitsElement:
        nu = self.nu
        return TitsElement(
            msub(madj(m.a0), mmul(m.a1, m.a2)),
            msub(mscale(madj(m.a2), 1 / nu), mmul(m.a0, m.a1)),
            msub(mscale(madj(m.a1), nu), mmul(m.a2, m.a0)),
        )

    def sharp_product(self, x: TitsElement, y: TitsElement) -> TitsElement:
        return self.sharp(x + y) - self.sharp(x) - self.sharp(y)

    def quadratic_trace(self, x: TitsElement):
        return self.trace(self.sharp(x))

    def quadratic_trace_bilinear(self, x: TitsElement, y: TitsElement):
        return self.trace(self.sharp_product(x, y))

    def mul_reference(self, x: TitsElement, y: TitsElement) -> TitsElement:
        """xy = 1/2 (x # y + Tr(x) y + Tr(y) x - Sr(x, y) 1)."""
        half = self.field(1) / 2
        s = (
            self.sharp_product(x, y)
            + y.scale(self.trace(x))
            + x.scale(self.trace(y))
            - self.unit.scale(self.quadratic_trace_bilinear(x, y))
        )
        return s.scale(half)

    def u_operator(self, x: TitsElement, y: TitsElement) -> TitsElement:
        """U_x y = Tr(x, y) x - x^# # y."""
        return x.scale(self.bilinear_trace(x, y)) - self.sharp_product(self.sharp(x), y)

    def cube_identity(self, x: TitsElement) -> TitsElement:
        """x^3 - Tr(x) x^2 + Sr(x) x - N(x) 1, which must vanish."""
        x2 = self.mul(x, x)
        x3 = self.mul(x2, x)
        return x3 - x2.scale(self.trace(x)) + x.scale(self.quadratic_trace(x)) - self.unit.scale(self.norm(x))

    def quadratic_form(self, x: TitsElement):
        """Q(x) = 1/2 Tr(x^2), the trace form normalised so Q(1) = 3/2."""
        return self.bilinear_trace(x, x) * (self.field(1) / 2)

    def primitive_idempotent(self) -> TitsElement:
        f = self.field
        e11 = mat([[f.one if (i, j) == (0, 0) else f.zero for j in range(3)] for i in range(3)])
        return TitsElement(e11, mzero(f.zero), mzero(f.zero))

    def mul(self, x: TitsElement, y: TitsElement) -> TitsElement:
        """The Jordan product, through the table tabulated from :meth:`mul_reference`."""
        return TitsElement.from_coords(self.table().mul(x.coords(), y.coords()))

    @lru_cache(maxsize=None)
    def table(self) -> StructureTable:
        return build_table(self, self.mul_reference)

    def mul_vec(self, x: Sequence, y: Sequence) -> list:
        return self.table().mul(x, y)

    def unit_vector(self) -> list:
        return self.unit.coords()


def tits_norm(alg: TitsAlgebra, m: TitsElement):
    return alg.norm(m)


def tits_sharp(alg: TitsAlgebra, m: TitsElement) -> TitsElement:
    return alg.sharp(m)


def tits_mul(alg: TitsAlgebra, x: TitsElement, y: TitsElement) -> TitsElement:
    return alg.mul(x, y)


def u_operator(alg: TitsAlgebra, x: TitsElement, y: TitsElement) -> TitsElement:
    return alg.u_operator(x, y)


def tits_primitive_idempotent(alg: TitsAlgebra) -> TitsElement:
    return alg.primitive_idempotent()


# -- associative cubic identities --------------------------------------------


def _linearize(f, m, direction, field):
    """Coefficient of t in f(m + t * direction), computed symbolically."""
    from .polynomial import Poly

    t = Poly.variable(_T, field.one)
    shifted = mat([[m[i][j] + t * direction[i][j] for j in range(3)] for i in range(3)])
    out = f(shifted).part(_T, 1)
    return out if _is_symbolic(m) or _is_symbolic(direction) else field(out.coeff(()))


# index of the auxiliary variable t; generic matrices use indices below it
_T = 1000


def _is_symbolic(m) -> bool:
    from .polynomial import Poly

    return any(isinstance(x, Poly) for r in m for x in r)


def _cubic_checks(m, others, field: FieldSpec) -> dict[str, bool]:
    one, zero = field.one, field.zero
    ident = mid(one, zero)
    three = field(3)

    def tr(x):
        return _linearize(mdet, ident, x, field)

    def sr(x):
        return _linearize(mdet, x, ident, field)

    def sr2(x, y):
        return sr(madd(x, y)) - sr(x) - sr(y)

    def tr2(x, y):
        # bilinear trace T(x, y) = T(x) T(y) - S(x, y)
        return tr(x) * tr(y) - sr2(x, y)

    def sharp(x):
        return madd(msub(mmul(x, x), mscale(x, tr(x))), mscale(ident, sr(x)))

    def is_zero(a):
        return all(x == zero for r in a for x in r)

    n = mdet(m)
    ms = sharp(m)
    m2 = mmul(m, m)
    return {
        "sharp_is_adjugate": is_zero(msub(ms, madj(m))),
        "cayley_hamilton": is_zero(madd(msub(mmul(m2, m), mscale(m2, tr(m))), msub(mscale(m, sr(m)), mscale(ident, n)))),
        "adjoint_product": is_zero(msub(mmul(m, ms), mscale(ident, n))) and is_zero(msub(mmul(ms, m), mscale(ident, n))),
        "norm_linearization": all(_linearize(mdet, m, u, field) - tr2(ms, u) == zero for u in others),
        "bilinear_trace": all(tr2(m, u) - mtrace(mmul(m, u)) == zero for u in others),
        "unit_traces": tr(ident) == three and sr(ident) == three,
        "unit_sharp": is_zero(msub(sharp(ident), ident)),
        "sr_unit_linearization": sr2(m, ident) - tr(m) * field(2) == zero,
        "unit_sharp_product": is_zero(msub(mat_sharp_product(ident, m), msub(mscale(ident, tr(m)), m))),
        "sr_is_trace_of_sharp": sr(m) - tr(ms) == zero,
        "sr_newton": sr(m) * field(2) - (tr(m) * tr(m) - tr(m2)) == zero,
        "sharp_antimultiplicative": all(is_zero(msub(madj(mmul(m, u)), mmul(madj(u), madj(m)))) for u in others),
    }


def associative_cubic_checks(m, field: FieldSpec) -> dict[str, bool]:
    """Evaluate the degree-3 associative identities on ``m``.

    tr and sr are taken as the linearisations n(1, m) and n(m, 1) of the
    determinant, so every identity below is a genuine check against the
    direct trace, principal-minor sum and adjugate.  Bilinear identities are
    checked against all nine matrix units, which span Mat_3.
    """
    m = mat([[field(x) for x in r] for r in m])
    one, zero = field.one, field.zero
    units = [mat([[one if (i, j) == (a, b) else zero for j in range(3)] for i in range(3)])
             for a in range(3) for b in range(3)]
    return _cubic_checks(m, units + [m], field)


def generic_matrix(field: FieldSpec, offset: int = 0) -> tuple:
    """A 3x3 matrix of independent indeterminates x_offset .. x_offset+8."""
    from .polynomial import Poly

    return mat([[Poly.variable(offset + 3 * i + j, field.one) for j in range(3)] for i in range(3)])


def associative_cubic_identities(field: FieldSpec) -> dict[str, bool]:
    """The same identities as polynomial identities in generic matrices m, m'."""
    return _cubic_checks(generic_matrix(field), [generic_matrix(field, 9)], field)


def generic_element(field: FieldSpec, offset: int = 0) -> TitsElement:
    from .polynomial import Poly

    return TitsElement.from_coords([Poly.variable(offset + i, field.one) for i in range(27)])


# -- sharped cubic form axioms -------------------------------------------------


def _directional(alg: TitsAlgebra, x: TitsElement, y: TitsElement):
    """N(x; y), the coefficient of t in N(x + t y), computed symbolically."""
    from .polynomial import Poly

    t = Poly.variable(_T, alg.field.one)
    shifted = TitsElement.from_coords([a + t * b for a, b in zip(x.coords(), y.coords())])
    out = alg.norm(shifted).part(_T, 1)
    return out if any(isinstance(c, Poly) for c in x.coords() + y.coords()) else alg.field(out.coeff(()))


def sharped_axioms(alg: TitsAlgebra, x: TitsElement, y: TitsElement) -> dict[str, bool]:
    """The sharped cubic form axioms and the trace-form relation on (x, y).

    Works on numeric elements and on :func:`generic_element` ones, in which
    case every entry is an exact polynomial identity.
    """
    z = alg.field.zero

    def vanishes(e: TitsElement) -> bool:
        return all(c == z for c in e.coords())

    xs = alg.sharp(x)
    return {
        "trace_adjoint": alg.bilinear_trace(xs, y) - _directional(alg, x, y) == z,
        "adjoint_identity": vanishes(alg.sharp(xs) - TitsElement.from_coords([c * alg.norm(x) for c in x.coords()])),
        "unit_sharp": vanishes(alg.sharp_product(alg.unit, x) - (alg.unit.scale(alg.trace(x)) - x)),
        "trace_form": alg.bilinear_trace(x, y)
        - (alg.trace(x) * alg.trace(y) - alg.quadratic_trace_bilinear(x, y)) == z,
    }


def sharped_axiom_identities(alg: TitsAlgebra) -> dict[str, bool]:
    """:func:`sharped_axioms` on generic elements: exact over any field."""
    return sharped_axioms(alg, generic_element(alg.field), generic_element(alg.field, 27))
