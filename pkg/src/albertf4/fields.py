"""Exact scalar fields with square-class and quadratic-form services.

Supported fields are described by a :class:`FieldSpec`:

* ``C``: classification-level model of an algebraically closed field.  The
  arithmetic is that of F_p (default p = 101) but every nonzero element is
  declared a square.
* ``Fp:<p>``: the prime field F_p, p odd.
* ``Q``: the rationals.
* ``R``: the reals, modelled on rational representatives; only the
  square-class oracle (the sign) differs from ``Q``.
* ``Qp:<p>``: the p-adic numbers, again on rational representatives with a
  valuation/residue square-class oracle.

Scalars are :class:`fractions.Fraction` for the three rational models and
:class:`Mod` for the two modular ones.  Both support ``+ - * /`` and
comparison with ``0``, which is all the algebra code relies on.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from random import Random
from typing import Iterable, Sequence, Union

DEFAULT_CLOSED_PRIME = 101


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


class Mod:
    """Residue class modulo an odd prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldError(f"mixed moduli {self.p} and {other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return Mod(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return Mod(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        if isinstance(other, Fraction):
            try:
                return self.v == self._coerce(other) % self.p
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __lt__(self, other):
        # ordering on canonical representatives; used only for canonical keys
        return self.v < (other.v if isinstance(other, Mod) else other)

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        # balanced representative reads better in reports
        v = self.v if self.v <= self.p // 2 else self.v - self.p
        return str(v)


Scalar = Union[Fraction, Mod]


class FieldKind(enum.Enum):
    ALG_CLOSED = "C"
    FINITE = "Fp"
    RATIONALS = "Q"
    REALS = "R"
    PADICS = "Qp"


@dataclass(frozen=True)
class FieldSpec:
    kind: FieldKind
    p: int | None = None

    def __post_init__(self):
        if self.kind is FieldKind.ALG_CLOSED and self.p is None:
            object.__setattr__(self, "p", DEFAULT_CLOSED_PRIME)
        if self.kind in (FieldKind.ALG_CLOSED, FieldKind.FINITE, FieldKind.PADICS):
            if self.p is None or not is_prime(self.p):
                raise FieldError(f"{self.kind.value} needs a prime, got {self.p}")
            if self.p == 2 and self.kind is not FieldKind.PADICS:
                raise FieldError("characteristic 2 is not supported")
        elif self.p is not None:
            raise FieldError(f"{self.kind.value} takes no prime")

    # -- construction -----------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip()
        if text == "C":
            return cls(FieldKind.ALG_CLOSED)
        if text.startswith("C:"):
            return cls(FieldKind.ALG_CLOSED, _parse_int(text[2:]))
        if text == "Q":
            return cls(FieldKind.RATIONALS)
        if text == "R":
            return cls(FieldKind.REALS)
        if text.startswith("Fp:"):
            return cls(FieldKind.FINITE, _parse_int(text[3:]))
        if text.startswith("Qp:"):
            return cls(FieldKind.PADICS, _parse_int(text[3:]))
        raise FieldError(f"unknown field spec {text!r}")

    def __str__(self):
        if self.kind is FieldKind.ALG_CLOSED:
            return "C" if self.p == DEFAULT_CLOSED_PRIME else f"C:{self.p}"
        if self.kind in (FieldKind.FINITE, FieldKind.PADICS):
            return f"{self.kind.value}:{self.p}"
        return self.kind.value

    # -- arithmetic -------------------------------------------------------

    @property
    def modular(self) -> bool:
        return self.kind in (FieldKind.ALG_CLOSED, FieldKind.FINITE)

    @property
    def characteristic(self) -> int:
        return self.p if self.modular else 0

    def __call__(self, x) -> Scalar:
        """Coerce an int, Fraction, Mod or ``"n/d"`` string into this field."""
        if isinstance(x, str):
            x = parse_fraction(x)
        if self.modular:
            if isinstance(x, Mod):
                if x.p != self.p:
                    raise FieldError(f"element of F_{x.p} used in {self}")
                return x
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise FieldError(f"{x} has denominator divisible by {self.p}")
                return Mod(x.numerator * pow(x.denominator, -1, self.p), self.p)
            return Mod(int(x), self.p)
        if isinstance(x, Mod):
            raise FieldError(f"modular element {x!r} used in {self}")
        return Fraction(x)

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def elements(self) -> list[Scalar]:
        if not self.modular:
            raise FieldError(f"{self} is infinite")
        return [Mod(i, self.p) for i in range(self.p)]

    def random(self, rng: Random, nonzero: bool = False, height: int = 4) -> Scalar:
        """A random element; rational models draw small-height fractions."""
        while True:
            if self.modular:
                x = Mod(rng.randrange(self.p), self.p)
            else:
                x = Fraction(rng.randint(-height, height), rng.randint(1, max(1, height // 2)))
            if not nonzero or x != 0:
                return x

    def to_str(self, x: Scalar) -> str:
        if isinstance(x, Mod):
            return str(x.v)
        return str(Fraction(x))


def _parse_int(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise FieldError(f"not an integer: {s!r}") from None


def parse_fraction(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError):
        raise FieldError(f"malformed scalar {s!r}") from None


# ---------------------------------------------------------------------------
# Number theory on rational representatives
# ---------------------------------------------------------------------------


def _rational(a) -> Fraction:
    if isinstance(a, Mod):
        raise FieldError("expected a rational scalar")
    return Fraction(a)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise FieldError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _split_rational(a: Fraction, p: int) -> tuple[int, int]:
    """(valuation, integer unit) with a = p^v * unit up to squares."""
    n, d = a.numerator, a.denominator
    vn, vd = valuation(n, p), valuation(d, p)
    # 1/d and d share a square class
    unit = (n // p**vn) * (d // p**vd)
    return vn - vd, unit


def legendre_symbol(a, p: int) -> int:
    if p == 2 or not is_prime(p):
        raise FieldError(f"Legendre symbol needs an odd prime, got {p}")
    if isinstance(a, Mod):
        if a.p != p:
            raise FieldError("modulus mismatch")
        n = a.v
    else:
        a = Fraction(a)
        if a.denominator % p == 0:
            raise FieldError(f"{a} is not p-integral for p={p}")
        n = a.numerator * a.denominator
    n %= p
    if n == 0:
        return 0
    return 1 if pow(n, (p - 1) // 2, p) == 1 else -1


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    """The fixed non-square unit Z_p: least positive non-residue mod p."""
    for z in range(2, p):
        if legendre_symbol(z, p) == -1:
            return z
    raise FieldError(f"no non-residue mod {p}")


def squarefree_part(n: int) -> int:
    if n == 0:
        raise FieldError("squarefree part of zero")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    f = 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e % 2:
            out *= f
        f += 1 if f == 2 else 2
    return sign * out * n


def prime_divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Square classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SquareClass:
    representative: Scalar
    field: FieldSpec

    def __str__(self):
        return self.field.to_str(self.representative)


_Q2_UNIT_REPS = {1: 1, 3: -5, 5: 5, 7: -1}


def square_class(a, k: FieldSpec) -> SquareClass:
    a = k(a)
    if a == 0:
        raise FieldError("zero has no square class")
    kind = k.kind
    if kind is FieldKind.ALG_CLOSED:
        return SquareClass(k.one, k)
    if kind is FieldKind.FINITE:
        rep = 1 if legendre_symbol(a, k.p) == 1 else least_nonresidue(k.p)
        return SquareClass(k(rep), k)
    a = _rational(a)
    if kind is FieldKind.REALS:
        return SquareClass(Fraction(1 if a > 0 else -1), k)
    if kind is FieldKind.RATIONALS:
        return SquareClass(Fraction(squarefree_part(a.numerator * a.denominator)), k)
    p = k.p
    v, u = _split_rational(a, p)
    if p == 2:
        rep = _Q2_UNIT_REPS[u % 8] * (2 if v % 2 else 1)
    else:
        rep = (p if v % 2 else 1) * (1 if legendre_symbol(u, p) == 1 else least_nonresidue(p))
    return SquareClass(Fraction(rep), k)


def square_class_reps(k: FieldSpec) -> list[Scalar] | None:
    """All square-class representatives, or None when the group is infinite."""
    kind = k.kind
    if kind is FieldKind.ALG_CLOSED:
        return [k.one]
    if kind is FieldKind.FINITE:
        return [k(1), k(least_nonresidue(k.p))]
    if kind is FieldKind.REALS:
        return [Fraction(1), Fraction(-1)]
    if kind is FieldKind.PADICS:
        if k.p == 2:
            return [Fraction(s * r) for r in (1, 2, 5, 10) for s in (1, -1)]
        z = least_nonresidue(k.p)
        return [Fraction(r) for r in (1, k.p, z, k.p * z)]
    return None


def is_square(a, k: FieldSpec) -> bool:
    return square_class(a, k).representative == 1


# ---------------------------------------------------------------------------
# Hilbert symbols and 2-Pfister forms
# ---------------------------------------------------------------------------


def _hilbert_p(a: Fraction, b: Fraction, p: int) -> int:
    alpha, u = _split_rational(a, p)
    beta, v = _split_rational(b, p)
    if p == 2:
        def eps(x):
            return ((x - 1) // 2) % 2

        def omega(x):
            return ((x * x - 1) // 8) % 2

        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    s = (-1) ** ((alpha * beta * ((p - 1) // 2)) % 2)
    if beta % 2:
        s *= legendre_symbol(u, p)
    if alpha % 2:
        s *= legendre_symbol(v, p)
    return s


def hilbert_symbol(a, b, k: FieldSpec) -> int:
    """+1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over k (local k)."""
    if k.kind not in (FieldKind.REALS, FieldKind.PADICS):
        raise FieldError(f"Hilbert symbol is defined here for R and Q_p, not {k}")
    a, b = _rational(k(a)), _rational(k(b))
    if a == 0 or b == 0:
        raise FieldError("Hilbert symbol of zero")
    if k.kind is FieldKind.REALS:
        return -1 if (a < 0 and b < 0) else 1
    return _hilbert_p(a, b, k.p)


@dataclass(frozen=True)
class Pfister2:
    """The form x0^2 - zeta x1^2 - eta x2^2 + zeta*eta x3^2."""

    zeta: Scalar
    eta: Scalar

    def __post_init__(self):
        if self.zeta == 0 or self.eta == 0:
            raise FieldError("Pfister entries must be nonzero")

    def coefficients(self) -> tuple:
        z, e = self.zeta, self.eta
        return (z * 0 + 1, -z, -e, z * e)

    def evaluate(self, x: Sequence) -> Scalar:
        return sum(c * xi * xi for c, xi in zip(self.coefficients(), x))


def ramified_places(f: Pfister2) -> tuple:
    """Places of Q where the quaternion algebra (zeta, eta) is a division algebra.

    ``"inf"`` denotes the real place; primes are listed in increasing order.
    """
    z, e = Fraction(f.zeta), Fraction(f.eta)
    primes = {2}
    for x in (z, e):
        primes.update(prime_divisors(x.numerator))
        primes.update(prime_divisors(x.denominator))
    out = []
    if z < 0 and e < 0:
        out.append("inf")
    out.extend(p for p in sorted(primes) if _hilbert_p(z, e, p) == -1)
    return tuple(out)


def pfister_is_split(f: Pfister2, k: FieldSpec) -> bool:
    if k.modular:
        return True
    if k.kind is FieldKind.RATIONALS:
        return not ramified_places(f)
    return hilbert_symbol(f.zeta, f.eta, k) == 1


def pfister_equivalent(f: Pfister2, g: Pfister2, k: FieldSpec) -> bool:
    # Over R, Q_p, F_p and closed fields there is at most one anisotropic
    # 2-Pfister class, so the split flag decides.
    if k.kind is FieldKind.RATIONALS:
        return ramified_places(f) == ramified_places(g)
    return pfister_is_split(f, k) == pfister_is_split(g, k)


def isotropic_by_search(coeffs: Sequence, k: FieldSpec) -> bool:
    """Exhaustive isotropy test of a diagonal form over a finite field."""
    if not k.modular:
        raise FieldError("exhaustive search needs a finite field")
    els = k.elements()
    for x in itertools.product(els, repeat=len(coeffs)):
        if any(xi != 0 for xi in x) and sum(c * xi * xi for c, xi in zip(coeffs, x)) == 0:
            return True
    return False


def _rational_places(forms) -> list[int]:
    primes = {2}
    for diag in forms:
        for a in diag:
            a = Fraction(a)
            primes.update(prime_divisors(a.numerator))
            primes.update(prime_divisors(a.denominator))
    return sorted(primes)


def _hasse(diag, p: int) -> int:
    s = 1
    for i, j in itertools.combinations(range(len(diag)), 2):
        s *= _hilbert_p(Fraction(diag[i]), Fraction(diag[j]), p)
    return s


def form_invariants(diag: Sequence, k: FieldSpec, places: Sequence[int] = ()) -> tuple:
    """Complete isometry invariants of a diagonal form over k.

    Finite and closed fields: rank and discriminant.  R: rank and signature.
    Q_p: rank, discriminant and Hasse invariant.  Q: all of the above at the
    real place and at each prime in ``places`` (which must contain 2 and
    every prime dividing an entry of either form being compared).
    """
    d = [k(a) for a in diag]
    nz = [a for a in d if a != 0]
    radical = len(d) - len(nz)
    disc = k.one
    for a in nz:
        disc = disc * a
    kind = k.kind
    if kind in (FieldKind.ALG_CLOSED, FieldKind.FINITE):
        return (len(nz), radical, square_class(disc, k))
    positives = sum(1 for a in nz if _rational(a) > 0)
    if kind is FieldKind.REALS:
        return (len(nz), radical, positives)
    if kind is FieldKind.PADICS:
        return (len(nz), radical, square_class(disc, k), _hasse(nz, k.p))
    return (len(nz), radical, square_class(disc, k), positives, tuple(_hasse(nz, p) for p in places))


def forms_isometric(d1: Sequence, d2: Sequence, k: FieldSpec) -> bool:
    """Isometry of two diagonal quadratic forms by their local invariants."""
    places = _rational_places([[a for a in d if a != 0] for d in (d1, d2)]) if k.kind is FieldKind.RATIONALS else ()
    return form_invariants(d1, k, places) == form_invariants(d2, k, places)


# ---------------------------------------------------------------------------
# gamma triples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaTriple:
    g1: Scalar
    g2: Scalar
    g3: Scalar

    def __post_init__(self):
        if any(g == 0 for g in self):
            raise FieldError("gamma entries must be nonzero")

    def __iter__(self):
        return iter((self.g1, self.g2, self.g3))

    def __getitem__(self, i):
        return (self.g1, self.g2, self.g3)[i]


class NormGroup(enum.Enum):
    """Image of a quaternion norm in the square-class group.

    ``ALL``: every class (split D, or local fields where norms are onto).
    ``POSITIVE``: the positive classes (D ramified at the real place).
    ``SQUARES``: the trivial class only.
    """

    ALL = "all"
    POSITIVE = "positive"
    SQUARES = "squares"

    def __contains__(self, sc: SquareClass) -> bool:
        if self is NormGroup.ALL:
            return True
        if self is NormGroup.POSITIVE:
            return sc.representative > 0
        return sc.representative == 1

    def reduce(self, a, k: FieldSpec):
        """Canonical key of the coset of ``a`` modulo this group."""
        if self is NormGroup.ALL:
            return 1
        if self is NormGroup.POSITIVE:
            return 1 if _rational(k(a)) > 0 else -1
        return square_class(a, k).representative


def _in_group(sc: SquareClass, normgroup) -> bool:
    if normgroup is None:
        return True
    return sc in normgroup


def gamma_equivalent(gamma: Iterable, gamma2: Iterable, normgroup, k: FieldSpec) -> bool:
    """True iff ``gamma2`` is reachable from ``gamma`` under the gamma moves.

    Moves: a common scalar multiple, entrywise square factors, entrywise
    factors from ``normgroup`` (a :class:`NormGroup`, a collection of
    :class:`SquareClass`, or None for the whole group), and permutations.
    """
    g = [k(x) for x in gamma]
    h = [k(x) for x in gamma2]
    if any(x == 0 for x in g + h):
        raise FieldError("gamma entries must be nonzero")
    for perm in itertools.permutations(h):
        delta = perm[0] / g[0]
        if all(_in_group(square_class(perm[i] / (g[i] * delta), k), normgroup) for i in (1, 2)):
            return True
    return False


def gamma_canonical(gamma: Iterable, normgroup: NormGroup, k: FieldSpec) -> tuple:
    """Canonical orbit key: equal keys iff :func:`gamma_equivalent`."""
    g = [k(x) for x in gamma]
    best = None
    for i in range(3):
        key = tuple(sorted(normgroup.reduce(x / g[i], k) for x in g))
        if best is None or key > best:
            best = key
    return best
