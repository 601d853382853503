"""
Points, planes and lines of PG(3,q).

Points and planes are 4-tuples of field codes, lines are Plücker 6-tuples
(p01, p02, p03, p12, p31, p23) with p_ij = x_i y_j - x_j y_i and
p31 = x3 y1 - x1 y3. Every object is normalized so its first nonzero
coordinate is 1. A LineKey reads the normalized line as six base-q digits,
most significant first.
"""

import itertools
import logging
from typing import Iterator, List, Tuple

from ..exceptions import IdenticalPoints, NotALine
from .gfq import FieldCtx

logger = logging.getLogger(__name__)

Point = Tuple[int, int, int, int]
Plane = Tuple[int, int, int, int]
PlueckerLine = Tuple[int, int, int, int, int, int]
LineKey = int

# Index into the stored tuple and sign for each ordered pair (i, j), i != j.
_PAIR_SLOT = {
    (0, 1): (0, 1), (0, 2): (1, 1), (0, 3): (2, 1),
    (1, 2): (3, 1), (3, 1): (4, 1), (2, 3): (5, 1),
    (1, 0): (0, -1), (2, 0): (1, -1), (3, 0): (2, -1),
    (2, 1): (3, -1), (1, 3): (4, -1), (3, 2): (5, -1),
}
_PIVOT_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (3, 1), (2, 3))


def normalize(field: FieldCtx, vec):
    """Scale vec so its first nonzero entry is 1"""
    for v in vec:
        if v:
            if v == 1:
                return tuple(vec)
            s = field.inv(v)
            mul = field.mul
            return tuple(mul(s, x) for x in vec)
    raise ValueError("zero vector has no projective normal form")


def line_through(field: FieldCtx, P: Point, Q: Point) -> PlueckerLine:
    """
    Plücker coordinates of the line PQ.

    Raises:
        IdenticalPoints: P and Q span no line
    """
    mul, sub = field.mul, field.sub
    x0, x1, x2, x3 = P
    y0, y1, y2, y3 = Q
    coords = (
        sub(mul(x0, y1), mul(x1, y0)),
        sub(mul(x0, y2), mul(x2, y0)),
        sub(mul(x0, y3), mul(x3, y0)),
        sub(mul(x1, y2), mul(x2, y1)),
        sub(mul(x3, y1), mul(x1, y3)),
        sub(mul(x2, y3), mul(x3, y2)),
    )
    if not any(coords):
        raise IdenticalPoints(f"points {P} and {Q} do not span a line")
    return normalize(field, coords)


def is_on_quadric(field: FieldCtx, L) -> bool:
    mul = field.mul
    total = field.add(field.add(mul(L[0], L[5]), mul(L[1], L[4])), mul(L[2], L[3]))
    return total == 0


def coordinate(field: FieldCtx, L, i: int, j: int) -> int:
    """p_ij for any ordered pair i != j"""
    slot, sign = _PAIR_SLOT[(i, j)]
    return L[slot] if sign > 0 else field.neg(L[slot])


def spanning_points(field: FieldCtx, L) -> Tuple[Point, Point]:
    """
    Two distinct points of L.

    With p_ij != 0 the columns i and j of the skew matrix (p_rc) are
    independent points of the line.
    """
    for slot, (i, j) in enumerate(_PIVOT_PAIRS):
        if L[slot]:
            col_i = tuple(0 if r == i else coordinate(field, L, r, i) for r in range(4))
            col_j = tuple(0 if r == j else coordinate(field, L, r, j) for r in range(4))
            return normalize(field, col_i), normalize(field, col_j)
    raise NotALine("zero Plücker vector")


def planes_through_line(field: FieldCtx, L) -> List[Plane]:
    """
    The nonzero planes x_i p_jk - x_j p_ik + x_k p_ij = 0 over triples i < j < k.

    A point lies on L iff it lies in all of them.
    """
    planes = []
    for i, j, k in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
        h = [0, 0, 0, 0]
        h[i] = coordinate(field, L, j, k)
        h[j] = field.neg(coordinate(field, L, i, k))
        h[k] = coordinate(field, L, i, j)
        if any(h):
            planes.append(tuple(h))
    return planes


def point_on_line(field: FieldCtx, P: Point, L) -> bool:
    return all(plane_contains_point(field, H, P) for H in planes_through_line(field, L))


def points_on_line(field: FieldCtx, L) -> List[Point]:
    """
    The q+1 points of L: B, then A + lambda B for lambda in field order.

    Raises:
        NotALine: L violates the Plücker quadric
    """
    if not any(L) or not is_on_quadric(field, L):
        raise NotALine(f"{L} is not on the Plücker quadric")
    A, B = spanning_points(field, L)
    add, mul = field.add, field.mul
    points = [B]
    for lam in field.elements():
        points.append(normalize(field, tuple(add(a, mul(lam, b)) for a, b in zip(A, B))))
    return points


def plane_contains_point(field: FieldCtx, H: Plane, P: Point) -> bool:
    add, mul = field.add, field.mul
    return add(add(mul(H[0], P[0]), mul(H[1], P[1])), add(mul(H[2], P[2]), mul(H[3], P[3]))) == 0


def line_in_plane(field: FieldCtx, L, H: Plane) -> bool:
    """L lies in H iff the skew matrix of L annihilates H"""
    add, mul = field.add, field.mul
    for r in range(4):
        total = 0
        for c in range(4):
            if c != r and H[c]:
                total = add(total, mul(coordinate(field, L, r, c), H[c]))
        if total:
            return False
    return True


def nullspace(field: FieldCtx, rows: List[List[int]], width: int = 4) -> List[Tuple[int, ...]]:
    """Basis of {x : row . x = 0 for all rows} by Gaussian elimination"""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(width):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        s = field.inv(mat[r][c])
        mat[r] = [field.mul(s, v) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [field.sub(v, field.mul(f, w)) for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    basis = []
    for free in (c for c in range(width) if c not in pivots):
        vec = [0] * width
        vec[free] = 1
        for row, pc in enumerate(pivots):
            vec[pc] = field.neg(mat[row][free])
        basis.append(tuple(vec))
    return basis


def meet_planes(field: FieldCtx, H1: Plane, H2: Plane) -> PlueckerLine:
    basis = nullspace(field, [list(H1), list(H2)])
    if len(basis) != 2:
        raise IdenticalPoints(f"planes {H1} and {H2} do not meet in a line")
    return line_through(field, normalize(field, basis[0]), normalize(field, basis[1]))


def encode(q: int, L) -> LineKey:
    key = 0
    for v in L:
        key = key * q + v
    return key


def decode(q: int, key: LineKey) -> PlueckerLine:
    digits = []
    for _ in range(6):
        key, r = divmod(key, q)
        digits.append(r)
    return tuple(reversed(digits))


def all_points(field: FieldCtx) -> Iterator[Point]:
    elems = list(field.elements())
    for lead in range(4):
        for tail in itertools.product(elems, repeat=3 - lead):
            yield (0,) * lead + (1,) + tuple(tail)


def all_lines(field: FieldCtx) -> Iterator[LineKey]:
    """
    Keys of all (q^2+1)(q^2+q+1) lines, one per reduced row-echelon 2x4 matrix.
    """
    elems = list(field.elements())
    q = field.q
    for i, j in itertools.combinations(range(4), 2):
        free_first = [c for c in range(i + 1, 4) if c != j]
        free_second = list(range(j + 1, 4))
        for vals1 in itertools.product(elems, repeat=len(free_first)):
            row1 = [0, 0, 0, 0]
            row1[i] = 1
            for c, v in zip(free_first, vals1):
                row1[c] = v
            for vals2 in itertools.product(elems, repeat=len(free_second)):
                row2 = [0, 0, 0, 0]
                row2[j] = 1
                for c, v in zip(free_second, vals2):
                    row2[c] = v
                yield encode(q, line_through(field, tuple(row1), tuple(row2)))


def line_count(q: int) -> int:
    return (q * q + 1) * (q * q + q + 1)
