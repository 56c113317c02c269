"""Automorphisms of the split Albert algebra.

Maps are 27x27 matrices acting on coordinate columns (``phi(x) = M x``).
Type I involutions live on the Tits presentation, where the SL3 x SL3
action is explicit; type II involutions live on the Hermitian presentation,
where the Peirce decomposition is.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Callable, Sequence, Union

import numpy as np

from . import linalg
from .dense import arrays_for
from .fields import FieldError, FieldSpec, Scalar
from .hermitian import HermitianAlgebra, HermitianElement, NotPrimitive, is_primitive_idempotent, peirce_decompose
from .tits import TitsAlgebra, TitsElement, mdet, mmul, mtrans

Algebra = Union[TitsAlgebra, HermitianAlgebra]


class NotInvolutive(ValueError):
    pass


class UnsupportedCharacteristic(ValueError):
    pass


# -- maps ---------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraMap:
    algebra: Algebra
    matrix: tuple

    @property
    def presentation(self) -> str:
        return self.algebra.presentation

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @classmethod
    def from_rows(cls, algebra: Algebra, rows: Sequence[Sequence]) -> "AlgebraMap":
        f = algebra.field
        return cls(algebra, tuple(tuple(f(x) for x in r) for r in rows))

    @classmethod
    def from_function(cls, algebra: Algebra, fn: Callable) -> "AlgebraMap":
        cols = [algebra.coords(fn(algebra.basis(i))) for i in range(27)]
        return cls(algebra, tuple(tuple(cols[j][i] for j in range(27)) for i in range(27)))

    @classmethod
    def identity(cls, algebra: Algebra) -> "AlgebraMap":
        f = algebra.field
        return cls(algebra, tuple(map(tuple, linalg.identity(27, f.one, f.zero))))

    def apply_coords(self, v: Sequence) -> list:
        return linalg.matvec(self.matrix, v, self.field.zero)

    def __call__(self, x):
        return self.algebra.from_coords(self.apply_coords(self.algebra.coords(x)))

    def compose(self, other: "AlgebraMap") -> "AlgebraMap":
        """self after other."""
        if other.algebra != self.algebra:
            raise FieldError("maps on different algebras")
        ea = arrays_for(self.field)
        m = ea.matmul(ea.array(self.matrix), ea.array(other.matrix))
        return AlgebraMap.from_rows(self.algebra, ea.to_nested(m))

    __matmul__ = compose

    def is_identity(self) -> bool:
        return self == AlgebraMap.identity(self.algebra)

    def determinant(self) -> Scalar:
        f = self.field
        return linalg.det(self.matrix, f.one, f.zero)

    def to_json(self) -> dict:
        fs = self.field
        return {
            "presentation": self.presentation,
            "field": str(fs),
            "matrix": [[fs.to_str(x) for x in r] for r in self.matrix],
        }


def scalar_map(algebra: Algebra, c) -> AlgebraMap:
    f = algebra.field
    c = f(c)
    return AlgebraMap(algebra, tuple(tuple(c if i == j else f.zero for j in range(27)) for i in range(27)))


def f_uv(algebra: TitsAlgebra, u: Sequence[Sequence], v: Sequence[Sequence]) -> AlgebraMap:
    """(a0, a1, a2) -> (u a0 u^-1, u a1 v^-1, v a2 u^-1)."""
    f = algebra.field
    u = tuple(tuple(f(x) for x in r) for r in u)
    v = tuple(tuple(f(x) for x in r) for r in v)
    if mdet(u) == 0 or mdet(v) == 0:
        raise ValueError("f_uv needs invertible u and v")
    ui = tuple(map(tuple, linalg.inverse(u, f.one, f.zero)))
    vi = tuple(map(tuple, linalg.inverse(v, f.one, f.zero)))

    def act(m: TitsElement) -> TitsElement:
        return TitsElement(mmul(mmul(u, m.a0), ui), mmul(mmul(u, m.a1), vi), mmul(mmul(v, m.a2), ui))

    return AlgebraMap.from_function(algebra, act)


def theta(algebra: TitsAlgebra) -> AlgebraMap:
    """(a0, a1, a2) -> (a0^T, a2^T, a1^T)."""
    if algebra.nu != 1:
        raise ValueError("theta is defined on J(Mat3, 1)")
    return AlgebraMap.from_function(algebra, lambda m: TitsElement(mtrans(m.a0), mtrans(m.a2), mtrans(m.a1)))


@dataclass(frozen=True)
class TorusElement:
    """(u, v) with u = diag(u1, u2/u1, 1/u2) and v = diag(v1, v2/v1, 1/v2)."""

    field: FieldSpec
    u1: Scalar
    u2: Scalar
    v1: Scalar
    v2: Scalar

    def __post_init__(self):
        for name in ("u1", "u2", "v1", "v2"):
            x = self.field(getattr(self, name))
            if x == 0:
                raise FieldError(f"torus parameter {name} must be a unit")
            object.__setattr__(self, name, x)

    @classmethod
    def of(cls, field: FieldSpec, u1, u2, v1, v2) -> "TorusElement":
        return cls(field, u1, u2, v1, v2)

    @property
    def params(self) -> tuple:
        return (self.u1, self.u2, self.v1, self.v2)

    def _diag(self, a, b):
        f = self.field
        d = (a, b / a, 1 / b)
        return tuple(tuple(d[i] if i == j else f.zero for j in range(3)) for i in range(3))

    @property
    def u(self) -> tuple:
        return self._diag(self.u1, self.u2)

    @property
    def v(self) -> tuple:
        return self._diag(self.v1, self.v2)

    def inverse(self) -> "TorusElement":
        return TorusElement(self.field, 1 / self.u1, 1 / self.u2, 1 / self.v1, 1 / self.v2)

    def to_json(self) -> list[str]:
        return [self.field.to_str(x) for x in self.params]

    def __str__(self):
        return "t(" + ",".join(self.to_json()) + ")"


def f_t(algebra: TitsAlgebra, t: TorusElement) -> AlgebraMap:
    return f_uv(algebra, t.u, t.v)


# -- checking automorphisms ----------------------------------------------------


@dataclass(frozen=True)
class AutomorphismCheck:
    passed: bool
    reason: str = ""
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self):
        return self.passed

    def to_json(self, field: FieldSpec | None = None) -> dict:
        w = None
        if self.witness is not None:
            w = [field.to_str(x) for x in self.witness] if field else [str(x) for x in self.witness]
        return {"passed": self.passed, "reason": self.reason or None, "witness": w, "detail": self.detail or None}


@lru_cache(maxsize=None)
def _tits_tensors(algebra: TitsAlgebra):
    """Sharp tensor S[k, i, j] and cubic tensor C[i, j, k] = Tr(b_i # b_j, b_k)."""
    ea = arrays_for(algebra.field)
    basis = [algebra.basis(i) for i in range(27)]
    s = [[None] * 27 for _ in range(27)]
    for i in range(27):
        for j in range(i, 27):
            s[i][j] = s[j][i] = algebra.sharp_product(basis[i], basis[j]).coords()
    sharp = ea.array([[[s[i][j][k] for j in range(27)] for i in range(27)] for k in range(27)])
    gram = ea.array([[algebra.bilinear_trace(a, b) for b in basis] for a in basis])
    cubic = ea.tensordot(sharp, gram, ([0], [0]))
    return sharp, cubic


@lru_cache(maxsize=None)
def _product_tensor(algebra: Algebra):
    ea = arrays_for(algebra.field)
    t = algebra.table()
    f = algebra.field
    p = [[[f.zero] * 27 for _ in range(27)] for _ in range(27)]
    for (i, j), terms in t.entries:
        for k, c in terms:
            p[k][i][j] = p[k][j][i] = c
    return ea.array(p)


def _bilinear_defect(phi: np.ndarray, tensor: np.ndarray, ea) -> np.ndarray:
    """phi(B(b_i, b_j)) - B(phi b_i, phi b_j) as a [k, i, j] array."""
    lhs = ea.tensordot(phi, tensor, ([1], [0]))
    rhs = ea.tensordot(tensor, phi, ([1], [0]))  # [k, b, i]
    rhs = ea.tensordot(rhs, phi, ([1], [0]))  # [k, i, j]
    return ea.reduce(lhs - rhs)


def _trilinear_defect(phi: np.ndarray, tensor: np.ndarray, ea) -> np.ndarray:
    t = ea.tensordot(tensor, phi, ([0], [0]))  # [j, k, i']
    t = ea.tensordot(t, phi, ([0], [0]))  # [k, i', j']
    t = ea.tensordot(t, phi, ([0], [0]))  # [i', j', k']
    return ea.reduce(t - tensor)


def _candidates(support: Sequence[int], field: FieldSpec):
    """Small combinations sum(c_m b_m) over ``support``, fewest terms first."""
    values = []
    for c in (1, -1, 2, -2):
        x = field(c)
        if x != 0 and x not in values:
            values.append(x)
    support = sorted(set(support))
    for size in range(1, len(support) + 1):
        for sub in itertools.combinations(support, size):
            for coeffs in itertools.product(values, repeat=size):
                v = [field.zero] * 27
                for m, c in zip(sub, coeffs):
                    v[m] = c
                yield v


def _violates(phi: AlgebraMap, v: list, kind: str) -> bool:
    alg = phi.algebra
    x = alg.from_coords(v)
    y = phi(x)
    if kind == "norm":
        return alg.norm(y) != alg.norm(x)
    if kind == "sharp":
        return phi(alg.sharp(x)) != alg.sharp(y)
    return phi(alg.mul(x, x)) != alg.mul(y, y)


def _search_witness(phi: AlgebraMap, support, kind: str, index) -> AutomorphismCheck:
    kinds = [kind] + [k for k in ("norm", "sharp") if k != kind and isinstance(phi.algebra, TitsAlgebra)]
    for k in kinds:
        for v in _candidates(support, phi.field):
            if _violates(phi, v, k):
                return AutomorphismCheck(False, k, tuple(v), f"{kind} coefficient {index}")
    # only possible over tiny fields where the polynomials differ but their values agree
    return AutomorphismCheck(False, kind, None, f"{kind} coefficient {index} differs")


def check_automorphism(phi: AlgebraMap) -> AutomorphismCheck:
    """Exact test that ``phi`` is an automorphism.

    Tits presentation: phi(1) = 1, phi(x#) = phi(x)# as quadratic maps and
    N(phi x) = N(x) as cubic forms, both compared coefficient by coefficient.
    The cubic's coefficients are N(b_i), Tr(b_i#, b_j) and Tr(b_i # b_j, b_k),
    so this is exact in every characteristic other than 2.

    Hermitian presentation: phi(1) = 1 and phi(xy) = phi(x) phi(y) on all
    basis pairs.

    A failing check carries the first small basis combination that violates
    the identity, when one exists.
    """
    alg = phi.algebra
    f = alg.field
    unit = alg.unit_vector()
    if phi.apply_coords(unit) != unit:
        return AutomorphismCheck(False, "basepoint", tuple(unit), "phi(1) != 1")
    if linalg.rank(phi.matrix) != 27:
        return AutomorphismCheck(False, "singular", None, "map is not bijective")
    ea = arrays_for(f)
    m = ea.array(phi.matrix)
    if isinstance(alg, TitsAlgebra):
        for i in range(27):
            col = [row[i] for row in phi.matrix]
            if alg.norm(alg.from_coords(col)) != alg.norm(alg.basis(i)):
                v = [f.one if j == i else f.zero for j in range(27)]
                return AutomorphismCheck(False, "norm", tuple(v), f"norm coefficient ({i}, {i}, {i})")
        sharp, cubic = _tits_tensors(alg)
        bad = ea.nonzero_indices(_trilinear_defect(m, cubic, ea))
        if bad:
            return _search_witness(phi, bad[0], "norm", bad[0])
        bad = ea.nonzero_indices(_bilinear_defect(m, sharp, ea))
        if bad:
            k, i, j = bad[0]
            return _search_witness(phi, (i, j), "sharp", (k, i, j))
        return AutomorphismCheck(True)
    bad = ea.nonzero_indices(_bilinear_defect(m, _product_tensor(alg), ea))
    if bad:
        k, i, j = bad[0]
        return _search_witness(phi, (i, j), "product", (k, i, j))
    return AutomorphismCheck(True)


# -- involutions ---------------------------------------------------------------


@dataclass(frozen=True)
class InvolutionDescriptor:
    kind: str  # "I" or "II"
    realized: AlgebraMap
    torus: TorusElement | None = None
    idempotent: HermitianElement | None = None

    def params(self):
        if self.kind == "I":
            return {"torus": self.torus.to_json()}
        return {"w": self.idempotent.to_json()}

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": self.params(), "fixed_dim": fixed_subspace(self.realized).dimension}


def type1_involution(t: TorusElement, algebra: TitsAlgebra | None = None) -> InvolutionDescriptor:
    """theta composed with f_t."""
    algebra = algebra or TitsAlgebra(t.field)
    return InvolutionDescriptor("I", theta(algebra) @ f_t(algebra, t), torus=t)


def peirce_reflection(w: HermitianElement) -> AlgebraMap:
    """r_w: +1 on kw + k(e - w) + E0, -1 on E1."""
    alg = w.algebra
    pd = peirce_decompose(w)
    f = alg.field
    cols = [x.coords() for x in pd.one + pd.complement + pd.zero_space + pd.half_space]
    signs = [f.one] * (27 - len(pd.half_space)) + [-f.one] * len(pd.half_space)
    p = [[cols[j][i] for j in range(27)] for i in range(27)]
    pinv = linalg.inverse(p, f.one, f.zero)
    ea = arrays_for(f)
    d = ea.array([[signs[i] if i == j else f.zero for j in range(27)] for i in range(27)])
    r = ea.matmul(ea.matmul(ea.array(p), d), ea.array(pinv))
    return AlgebraMap.from_rows(alg, ea.to_nested(r))


def type2_involution(w: HermitianElement) -> InvolutionDescriptor:
    if not is_primitive_idempotent(w):
        raise NotPrimitive(f"{w!r} is not a primitive idempotent")
    return InvolutionDescriptor("II", peirce_reflection(w), idempotent=w)


@dataclass(frozen=True)
class FixedSubspace:
    dimension: int
    basis: tuple
    jordan_closed: bool


def fixed_subspace(phi: AlgebraMap) -> FixedSubspace:
    """ker(phi - id) for an involution, in reduced echelon form."""
    alg = phi.algebra
    f = alg.field
    if not (phi @ phi).is_identity():
        raise NotInvolutive("phi^2 != id")
    rows = [[x - (f.one if i == j else f.zero) for j, x in enumerate(r)] for i, r in enumerate(phi.matrix)]
    kernel = linalg.nullspace(rows, 27, f.one, f.zero)
    basis = linalg.row_space(kernel, 27, f.zero)
    # the span is ker(phi - id), so closure means phi fixes every product
    closed = True
    if basis:
        ea = arrays_for(f)
        prods = ea.array([alg.mul_vec(a, b) for a, b in itertools.combinations_with_replacement(basis, 2)]).T
        closed = not ea.nonzero_indices(ea.reduce(ea.matmul(ea.array(phi.matrix), prods) - prods))
    return FixedSubspace(len(basis), tuple(tuple(v) for v in basis), closed)


# -- derivations -----------------------------------------------------------------


@dataclass(frozen=True)
class DerivationSpace:
    algebra: Algebra
    basis: tuple = dc_field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def kills_unit(self) -> bool:
        e = self.algebra.unit_vector()
        z = self.algebra.field.zero
        return all(all(x == 0 for x in linalg.matvec(d, e, z)) for d in self.basis)

    def bracket_closed(self, pairs: Sequence[tuple[int, int]]) -> bool:
        """[D_a, D_b] lies in the span for each listed index pair."""
        f = self.algebra.field
        ea = arrays_for(f)
        eb = linalg.EchelonBasis(729)
        for d in self.basis:
            eb.add({i: x for i, x in enumerate(v for r in d for v in r) if x != 0})
        for a, b in pairs:
            da, db = ea.array(self.basis[a]), ea.array(self.basis[b])
            c = ea.to_nested(ea.reduce(ea.matmul(da, db) - ea.matmul(db, da)))
            if eb.reduce({i: x for i, x in enumerate(v for r in c for v in r) if x != 0}):
                return False
        return True


_derivation_lock = threading.Lock()
_derivation_cache: dict = {}


def derivations(algebra: Algebra) -> DerivationSpace:
    """Solve D(b_i b_j) = D(b_i) b_j + b_i D(b_j) exactly; cached per algebra."""
    if algebra.field.characteristic in (2, 3):
        raise UnsupportedCharacteristic("derivations need characteristic 0 or > 3")
    with _derivation_lock:
        if algebra not in _derivation_cache:
            _derivation_cache[algebra] = _solve_derivations(algebra)
        return _derivation_cache[algebra]


def _solve_derivations(algebra: Algebra) -> DerivationSpace:
    n = 27
    f = algebra.field
    prod = {}
    for (i, j), terms in algebra.table().entries:
        prod[(i, j)] = prod[(j, i)] = dict(terms)
    # unknown d[a][b] (coefficient of b_a in D b_b) sits at column a * n + b
    eb = linalg.EchelonBasis(n * n)
    for i in range(n):
        for j in range(i, n):
            pij = prod[(i, j)]
            for l in range(n):
                row: dict = {}
                for k, c in pij.items():
                    col = l * n + k
                    row[col] = row.get(col, 0) + c
                for a in range(n):
                    c = prod[(a, j)].get(l)
                    if c:
                        col = a * n + i
                        row[col] = row.get(col, 0) - c
                    c = prod[(i, a)].get(l)
                    if c:
                        col = a * n + j
                        row[col] = row.get(col, 0) - c
                eb.add(row)
    basis = []
    for v in eb.nullspace(f.one, f.zero):
        basis.append(tuple(tuple(v[a * n + b] for b in range(n)) for a in range(n)))
    return DerivationSpace(algebra, tuple(basis))


@dataclass(frozen=True)
class CentralizerSplit:
    fixed: int
    negated: int

    @property
    def total(self) -> int:
        return self.fixed + self.negated


def centralizer_split(inv: InvolutionDescriptor | AlgebraMap) -> CentralizerSplit:
    """Dimensions of the +1 and -1 eigenspaces of D -> phi D phi on Der(A)."""
    phi = inv.realized if isinstance(inv, InvolutionDescriptor) else inv
    if not (phi @ phi).is_identity():
        raise NotInvolutive("phi^2 != id")
    der = derivations(phi.algebra)
    f = phi.field
    ea = arrays_for(f)
    m = ea.array(phi.matrix)
    plus = linalg.EchelonBasis(729)
    minus = linalg.EchelonBasis(729)
    for d in der.basis:
        da = ea.array(d)
        c = ea.matmul(ea.matmul(m, da), m)
        for eb, sign in ((plus, 1), (minus, -1)):
            diff = ea.to_nested(ea.reduce(c - sign * da).reshape(-1))
            eb.add({i: x for i, x in enumerate(diff) if x != 0})
    # plus collects phi D phi - D, whose rank is the size of the -1 part
    return CentralizerSplit(der.dimension - plus.rank, der.dimension - minus.rank)


def centralizer_dimension(inv: InvolutionDescriptor | AlgebraMap) -> int:
    return centralizer_split(inv).fixed
