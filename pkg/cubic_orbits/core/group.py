"""
The stabilizer G_q of the twisted cubic, a copy of PGL(2,q).

A GL2Rep (a, b, c, d) stands for the 2x2 matrix [[a, c], [b, d]] acting on
row vectors (s, u), i.e. t -> (a t + b) / (c t + d) on cubic parameters.
Its lift is the 4x4 matrix M acting on points as row vectors, x -> x M.
compose(g, h) means "g first, then h", so lift(compose(g, h)) = M_g M_h.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from ..exceptions import NotClosed, Singular
from . import pg3
from .gfq import FieldCtx
from .pg3 import Point

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, int, int, int], ...]


class GL2Rep(NamedTuple):
    a: int
    b: int
    c: int
    d: int


@dataclass(frozen=True)
class Projectivity:
    """One element of G_q: its PGL(2,q) source and canonical 4x4 matrix"""

    source: GL2Rep
    mat: Matrix


@dataclass(frozen=True)
class GroupId:
    """Small-group identification; census maps element order to count"""

    name: str
    order: int
    census: Tuple[Tuple[int, int], ...]

    def __str__(self):
        if self.name != "OrderCensus":
            return self.name
        return f"OrderCensus({self.order}, {dict(self.census)})"


class ProjectivityGroup:
    """
    G_q over a field, with lift, enumeration and the action on points and lines.

    Args:
        field: the GF(q) context
    """

    def __init__(self, field: FieldCtx):
        self.field = field
        self.q = field.q
        self.order = self.q**3 - self.q
        self.identity = GL2Rep(1, 0, 0, 1)
        self._cache: Dict[GL2Rep, Projectivity] = {}
        self._reps: Optional[List[GL2Rep]] = None

    # GL2Rep arithmetic

    def canonical_rep(self, a: int, b: int, c: int, d: int) -> GL2Rep:
        f = self.field
        if f.sub(f.mul(a, d), f.mul(b, c)) == 0:
            raise Singular(f"ad - bc = 0 for {(a, b, c, d)}")
        return GL2Rep(*pg3.normalize(f, (a, b, c, d)))

    def compose(self, g: GL2Rep, h: GL2Rep) -> GL2Rep:
        f = self.field
        add, mul = f.add, f.mul
        a1, b1, c1, d1 = g
        a2, b2, c2, d2 = h
        return GL2Rep(
            *pg3.normalize(
                f,
                (
                    add(mul(a1, a2), mul(c1, b2)),
                    add(mul(b1, a2), mul(d1, b2)),
                    add(mul(a1, c2), mul(c1, d2)),
                    add(mul(b1, c2), mul(d1, d2)),
                ),
            )
        )

    def inverse(self, g: GL2Rep) -> GL2Rep:
        f = self.field
        a, b, c, d = g
        return GL2Rep(*pg3.normalize(f, (d, f.neg(b), f.neg(c), a)))

    def element_order(self, g: GL2Rep) -> int:
        k, h = 1, g
        while h != self.identity:
            h = self.compose(h, g)
            k += 1
        return k

    def act_param(self, g: GL2Rep, t):
        """Image of a cubic parameter (field code or 'inf')"""
        from .cubic import INF

        f = self.field
        a, b, c, d = g
        if t == INF:
            num, den = a, c
        else:
            num, den = f.add(f.mul(a, t), b), f.add(f.mul(c, t), d)
        return INF if den == 0 else f.div(num, den)

    # Lift and enumeration

    def lift_matrix(self, r: GL2Rep) -> Matrix:
        f = self.field
        add, mul = f.add, f.mul
        a, b, c, d = r
        two, three = f.from_int(2), f.from_int(3)
        a2, b2, c2, d2 = mul(a, a), mul(b, b), mul(c, c), mul(d, d)
        ab, ac, bc = mul(a, b), mul(a, c), mul(b, c)
        rows = (
            (mul(a2, a), mul(a2, c), mul(a, c2), mul(c2, c)),
            (
                mul(three, mul(a2, b)),
                add(mul(a2, d), mul(two, mul(ab, c))),
                add(mul(b, c2), mul(two, mul(ac, d))),
                mul(three, mul(c2, d)),
            ),
            (
                mul(three, mul(a, b2)),
                add(mul(b2, c), mul(two, mul(ab, d))),
                add(mul(a, d2), mul(two, mul(bc, d))),
                mul(three, mul(c, d2)),
            ),
            (mul(b2, b), mul(b2, d), mul(b, d2), mul(d2, d)),
        )
        return canonical_matrix(f, rows)

    def lift(self, r: GL2Rep) -> Projectivity:
        """
        The 4x4 matrix of r, cached.

        Raises:
            Singular: ad - bc = 0
        """
        r = self.canonical_rep(*r)
        proj = self._cache.get(r)
        if proj is None:
            proj = Projectivity(r, self.lift_matrix(r))
            self._cache[r] = proj
        return proj

    def reps(self) -> List[GL2Rep]:
        """All q^3 - q canonical reps: (1, b, c, d) with d != bc, then (0, 1, c, d) with c != 0"""
        if self._reps is None:
            f = self.field
            elems = list(f.elements())
            reps = [
                GL2Rep(1, b, c, d) for b in elems for c in elems for d in elems if d != f.mul(b, c)
            ]
            reps.extend(GL2Rep(0, 1, c, d) for c in elems if c for d in elems)
            self._reps = reps
        return self._reps

    def enumerate_gq(self) -> List[Projectivity]:
        return [self.lift(r) for r in self.reps()]

    def generators(self) -> List[GL2Rep]:
        """x -> x+1, x -> lambda x for the primitive lambda, x -> 1/x"""
        f = self.field
        return [
            self.canonical_rep(1, 1, 0, 1),
            self.canonical_rep(f.primitive, 0, 0, 1),
            self.canonical_rep(0, 1, 1, 0),
        ]

    def generators_gq(self) -> List[Projectivity]:
        return [self.lift(g) for g in self.generators()]

    def closure(self, gens: Iterable[GL2Rep]) -> List[GL2Rep]:
        """Subgroup generated by gens, breadth first from the identity"""
        gens = list(gens)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = self.compose(g, s)
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        return sorted(seen)

    # Action

    def act_point(self, g, P: Point) -> Point:
        proj = g if isinstance(g, Projectivity) else self.lift(g)
        return apply_matrix(self.field, proj.mat, P)

    def act_line(self, g, L) -> pg3.PlueckerLine:
        proj = g if isinstance(g, Projectivity) else self.lift(g)
        A, B = pg3.spanning_points(self.field, L)
        f = self.field
        return pg3.line_through(f, apply_matrix(f, proj.mat, A), apply_matrix(f, proj.mat, B))

    def stabilizer_of_point(self, P: Point) -> List[GL2Rep]:
        P = pg3.normalize(self.field, P)
        return [r for r in self.reps() if self.act_point(r, P) == P]

    def identify_group(self, elems: Iterable) -> GroupId:
        """
        Identify a small subgroup by its order and element-order census.

        Raises:
            NotClosed: elems is not closed under composition
        """
        reps = {e.source if isinstance(e, Projectivity) else GL2Rep(*e) for e in elems}
        for g in reps:
            for h in reps:
                if self.compose(g, h) not in reps:
                    raise NotClosed(f"{g} * {h} falls outside the given set")
        census = Counter(self.element_order(g) for g in reps)
        return identify_by_census(len(reps), census)


def identify_by_census(order: int, census: Dict[int, int]) -> GroupId:
    frozen = tuple(sorted(census.items()))
    if order == 1:
        name = "Trivial"
    elif order == 2:
        name = "C2"
    elif order == 3:
        name = "C3"
    elif order == 4:
        name = "C4" if census.get(4) else "C2xC2"
    elif order == 12 and dict(frozen) == {1: 1, 2: 3, 3: 8}:
        name = "A4"
    else:
        name = "OrderCensus"
    return GroupId(name, order, frozen)


def canonical_matrix(field: FieldCtx, rows) -> Matrix:
    """Scale a nonzero matrix so its first nonzero entry (row-major) is 1"""
    flat = pg3.normalize(field, tuple(v for row in rows for v in row))
    return tuple(tuple(flat[4 * i : 4 * i + 4]) for i in range(4))


def mat_mul(field: FieldCtx, A: Matrix, B: Matrix) -> Matrix:
    add, mul = field.add, field.mul
    out = []
    for i in range(4):
        row = []
        for j in range(4):
            total = 0
            for k in range(4):
                if A[i][k] and B[k][j]:
                    total = add(total, mul(A[i][k], B[k][j]))
            row.append(total)
        out.append(tuple(row))
    return tuple(out)


def apply_matrix(field: FieldCtx, mat: Matrix, P: Point) -> Point:
    """Row vector times matrix, renormalized"""
    add, mul = field.add, field.mul
    image = []
    for j in range(4):
        total = 0
        for i in range(4):
            if P[i] and mat[i][j]:
                total = add(total, mul(P[i], mat[i][j]))
        image.append(total)
    return pg3.normalize(field, image)

