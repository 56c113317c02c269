"""Kac coordinates for F4.

Elements of order k in the adjoint group correspond to labellings rho of the
affine F4 diagram with sum(marks[i] * rho[i]) = k.  The vertices with
rho[i] = 0 span the Dynkin diagram of the centralizer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

# affine F4: a0 - a1 - a2 => a3 - a4, with a0..a2 long and a3, a4 short
MARKS = (1, 2, 3, 4, 2)
LONG = frozenset({0, 1, 2})
EDGES = {frozenset({0, 1}): 1, frozenset({1, 2}): 1, frozenset({2, 3}): 2, frozenset({3, 4}): 1}
# highest root of F4 in terms of a1..a4
HIGHEST_ROOT = (2, 3, 4, 2)


class UnrecognizedDiagram(ValueError):
    pass


@dataclass(frozen=True, order=True)
class KacSolution:
    rho: tuple
    order: int

    def to_json(self) -> dict:
        return {"rho": list(self.rho), "order": self.order, "type": centralizer_subdiagram(self).name}


def _solutions(total: int, marks: Sequence[int]):
    if not marks:
        if total == 0:
            yield ()
        return
    m = marks[0]
    for r in range(total // m + 1):
        for rest in _solutions(total - m * r, marks[1:]):
            yield (r,) + rest


def enumerate(order: int) -> list[KacSolution]:
    """Solutions of sum(marks * rho) = order with gcd(rho, order) = 1.

    The gcd condition removes labellings of elements whose order is a proper
    divisor, such as (2, 0, 0, 0, 0) for order 2.  Sorted in decreasing
    lexicographic order, so order 2 lists (0,1,0,0,0) before (0,0,0,0,1).
    """
    if order < 1:
        raise ValueError("the order must be a positive integer")
    out = [
        KacSolution(rho, order)
        for rho in _solutions(order, MARKS)
        if math.gcd(order, *rho) == 1
    ]
    return sorted(out, reverse=True)


@dataclass(frozen=True)
class Component:
    series: str
    rank: int

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def dimension(self) -> int:
        n = self.rank
        if self.series == "A":
            return n * (n + 2)
        if self.series in ("B", "C"):
            return n * (2 * n + 1)
        if self.series == "F":
            return 52
        raise UnrecognizedDiagram(self.name)


@dataclass(frozen=True)
class DynkinType:
    components: tuple

    @property
    def name(self) -> str:
        if not self.components:
            return "T"
        return "x".join(c.name for c in self.components)

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    @property
    def dimension(self) -> int:
        """Dimension of the centralizer: semisimple part plus a torus filling rank 4."""
        return sum(c.dimension for c in self.components) + (4 - self.rank)

    def __str__(self):
        return self.name


def _components(vertices: set) -> list[list[int]]:
    out = []
    seen: set = set()
    for v in sorted(vertices):
        if v in seen:
            continue
        comp, stack = [], [v]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            comp.append(x)
            stack.extend(y for y in vertices if frozenset({x, y}) in EDGES and y not in seen)
        out.append(sorted(comp))
    return out


def _recognize(comp: list[int]) -> Component:
    n = len(comp)
    edges = [(frozenset({a, b}), EDGES[frozenset({a, b})]) for a in comp for b in comp if a < b and frozenset({a, b}) in EDGES]
    if len(edges) != n - 1 or any(sum(1 for e, _ in edges if v in e) > 2 for v in comp):
        raise UnrecognizedDiagram(f"component {comp} is not a path")
    doubles = [e for e, m in edges if m == 2]
    if not doubles:
        return Component("A", n)
    if len(doubles) > 1:
        raise UnrecognizedDiagram(f"component {comp} has several double edges")
    longs = sum(1 for v in comp if v in LONG)
    shorts = n - longs
    if n == 2:
        # B2 = C2; report it as B2
        return Component("B", 2)
    if longs == 1:
        return Component("C", n)
    if shorts == 1:
        return Component("B", n)
    if n == 4 and longs == 2:
        return Component("F", 4)
    raise UnrecognizedDiagram(f"component {comp} has {longs} long and {shorts} short roots")


def centralizer_subdiagram(s: KacSolution | Sequence[int]) -> DynkinType:
    """Dynkin type of the subdiagram on vertices with rho[i] = 0."""
    rho = s.rho if isinstance(s, KacSolution) else tuple(s)
    if len(rho) != 5:
        raise ValueError("a Kac labelling has five entries")
    zero = {i for i, r in zip(range(5), rho) if r == 0}
    comps = [_recognize(c) for c in _components(zero)]
    comps.sort(key=lambda c: (c.rank, c.series))
    return DynkinType(tuple(comps))


@dataclass(frozen=True)
class CrossCheck:
    pairs: tuple  # (rho, type name, kind, diagram dimension, computed dimension)

    @property
    def passed(self) -> bool:
        return all(d == c for _, _, _, d, c in self.pairs)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "pairs": [
                {"rho": list(r), "type": t, "kind": k, "diagram_dim": d, "centralizer_dim": c}
                for r, t, k, d, c in self.pairs
            ],
        }


def cross_check_with_classifier(k) -> CrossCheck:
    """Match the order-2 Kac labels with type I and type II involutions by dimension."""
    from .automorphisms import TorusElement, centralizer_dimension, type1_involution, type2_involution
    from .fields import FieldKind
    from .hermitian import HermitianAlgebra

    if k.kind is not FieldKind.ALG_CLOSED:
        raise ValueError("the Kac correspondence is checked over the algebraically closed model")
    computed = {
        "I": centralizer_dimension(type1_involution(TorusElement(k, 1, 1, 1, 1))),
        "II": centralizer_dimension(type2_involution(HermitianAlgebra(k).element([1, 0, 0]))),
    }
    sols = enumerate(2)
    by_dim = {d: kind for kind, d in computed.items()}
    pairs = []
    for sol in sols:
        t = centralizer_subdiagram(sol)
        kind = by_dim.get(t.dimension, "?")
        pairs.append((sol.rho, t.name, kind, t.dimension, computed.get(kind, -1)))
    # a bijection needs two labels hitting both kinds
    if len(sols) != 2 or {p[2] for p in pairs} != {"I", "II"}:
        pairs = [(r, n, kind, d, -1) for r, n, kind, d, _ in pairs]
    return CrossCheck(tuple(pairs))
