"""Exact dense/sparse linear algebra over any scalar type with + - * /.

Matrices are lists of rows.  Elimination works on sparse rows
(``dict[col, value]``) because the systems solved here, such as the 729-unknown derivation
system, are very sparse.
"""

from __future__ import annotations

from typing import Sequence


def identity(n: int, one, zero) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], zero) -> list[list]:
    cols = list(zip(*b))
    return [[_dot(row, col, zero) for col in cols] for row in a]


def matvec(a: Sequence[Sequence], x: Sequence, zero) -> list:
    return [_dot(row, x, zero) for row in a]


def _dot(r, c, zero):
    s = zero
    for x, y in zip(r, c):
        if x != 0 and y != 0:
            s = s + x * y
    return s


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in zip(*a)]


class EchelonBasis:
    """Incrementally maintained reduced row echelon form.

    Rows are normalised so each pivot entry is 1 and no other stored row has
    a nonzero entry in a pivot column.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    def reduce(self, row: dict) -> dict:
        row = {c: v for c, v in row.items() if v != 0}
        for c in [c for c in row if c in self.rows]:
            v = row.get(c)
            if v is None or v == 0:
                continue
            for cc, vv in self.rows[c].items():
                nv = row.get(cc, 0) - v * vv
                if nv == 0:
                    row.pop(cc, None)
                else:
                    row[cc] = nv
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; return True if it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        piv = min(row)
        inv = 1 / row[piv]
        row = {c: v * inv for c, v in row.items()}
        # keep the form reduced: eliminate the new pivot from older rows
        for r in self.rows.values():
            v = r.get(piv)
            if v is not None:
                for cc, vv in row.items():
                    nv = r.get(cc, 0) - v * vv
                    if nv == 0:
                        r.pop(cc, None)
                    else:
                        r[cc] = nv
        self.rows[piv] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def nullspace(self, one, zero) -> list[list]:
        """Basis of {x : row . x = 0 for every row}, one vector per free column."""
        free = [c for c in range(self.ncols) if c not in self.rows]
        out = []
        for f in free:
            x = [zero] * self.ncols
            x[f] = one
            for piv, r in self.rows.items():
                v = r.get(f)
                if v is not None:
                    x[piv] = -v
            out.append(x)
        return out

    def echelon_rows(self, zero) -> list[list]:
        out = []
        for piv in sorted(self.rows):
            r = self.rows[piv]
            out.append([r.get(c, zero) for c in range(self.ncols)])
        return out


def _sparse(row: Sequence) -> dict:
    return {i: v for i, v in enumerate(row) if v != 0}


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    eb = EchelonBasis(len(rows[0]))
    for r in rows:
        eb.add(_sparse(r))
    return eb.rank


def nullspace(rows: Sequence[Sequence], ncols: int, one, zero) -> list[list]:
    eb = EchelonBasis(ncols)
    for r in rows:
        eb.add(_sparse(r))
    return eb.nullspace(one, zero)


def row_space(rows: Sequence[Sequence], ncols: int, zero) -> list[list]:
    """Reduced echelon basis of the span of ``rows``."""
    eb = EchelonBasis(ncols)
    for r in rows:
        eb.add(_sparse(r))
    return eb.echelon_rows(zero)


def column_space_basis(vectors: Sequence[Sequence], zero) -> list[list]:
    if not vectors:
        return []
    return row_space(vectors, len(vectors[0]), zero)


def inverse(a: Sequence[Sequence], one, zero) -> list[list]:
    n = len(a)
    m = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [r[n:] for r in m]


def det(a: Sequence[Sequence], one, zero):
    n = len(a)
    m = [list(r) for r in a]
    d = one
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return zero
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            d = -d
        d = d * m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return d


def diagonalize_symmetric(gram: Sequence[Sequence], one, zero) -> list:
    """Diagonal entries of a congruence-diagonalisation of a symmetric matrix.

    Char != 2.  Returns the nonzero diagonal entries followed by zeros for the
    radical, so ``len`` equals the size of ``gram``.
    """
    n = len(gram)
    m = [list(r) for r in gram]
    diag = []
    active = list(range(n))
    while active:
        i = next((i for i in active if m[i][i] != 0), None)
        if i is None:
            # all diagonal entries vanish; use x -> x + y on a nonzero pair
            pair = next(((i, j) for i in active for j in active if i != j and m[i][j] != 0), None)
            if pair is None:
                diag.extend([zero] * len(active))
                break
            i, j = pair
            for r in range(n):
                m[r][i] = m[r][i] + m[r][j]
            for c in range(n):
                m[i][c] = m[i][c] + m[j][c]
            continue
        d = m[i][i]
        diag.append(d)
        active.remove(i)
        for r in active:
            f = m[r][i] / d
            if f != 0:
                for c in active:
                    m[r][c] = m[r][c] - f * m[i][c]
        for r in active:
            m[r][i] = zero
            m[i][r] = zero
    return diag
