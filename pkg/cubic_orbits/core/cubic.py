"""
The twisted cubic, its osculating planes, chords, axes and null polarity,
and the classification of lines of PG(3,q) into classes.
"""

import itertools
import logging
import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from enum import Enum
from multiprocessing import Pool
from typing import Dict, List, Optional, Tuple, Union

from ..exceptions import Char3Axis, Char3Polarity
from . import pg3
from .gfq import FieldCtx
from .pg3 import LineKey, Plane, PlueckerLine, Point

logger = logging.getLogger(__name__)

INF = "inf"
Param = Union[int, str]


class LineTag(str, Enum):
    REAL_CHORD = "RealChord"
    TANGENT = "Tangent"
    IMAGINARY_CHORD = "ImaginaryChord"
    REAL_AXIS = "RealAxis"
    GENERATOR = "Generator"
    IMAGINARY_AXIS = "ImaginaryAxis"
    UNISECANT_OSC = "UnisecantOsc"
    UNISECANT_NON_OSC = "UnisecantNonOsc"
    EXTERNAL_IN_OSC_PLANE = "ExternalInOscPlane"
    ENG = "EnG"
    CHAR3_PENCIL_AXIS = "Char3PencilAxis"


@dataclass(frozen=True)
class LineClass:
    tag: LineTag
    witness: Optional[Tuple[int, int]] = None


@dataclass
class ClassCensus:
    """Counts per class over all lines; EnG keys kept when requested"""

    q: int
    counts: Dict[str, int]
    eng_keys: List[LineKey] = dc_field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


class CubicCtx:
    """
    The cubic C = {P(t)} over GF(q) with its osculating planes.

    Args:
        field: the GF(q) context
    """

    def __init__(self, field: FieldCtx):
        self.field = field
        self.q = field.q
        self.params: List[Param] = [*field.elements(), INF]
        self.cubic_points: Dict[Param, Point] = {t: self.cubic_point(t) for t in self.params}
        self.osc_planes: Dict[Param, Plane] = {t: self.osculating_plane(t) for t in self.params}
        self.char3_pencil_axis: Optional[PlueckerLine] = None
        if field.p == 3:
            self.char3_pencil_axis = pg3.line_through(field, (0, 1, 0, 0), (0, 0, 1, 0))
        self._three = field.from_int(3)

    def cubic_point(self, t: Param) -> Point:
        if t == INF:
            return (1, 0, 0, 0)
        f = self.field
        t2 = f.mul(t, t)
        return pg3.normalize(f, (f.mul(t2, t), t2, t, 1))

    def osculating_plane(self, t: Param) -> Plane:
        if t == INF:
            return (0, 0, 0, 1)
        f = self.field
        three = f.from_int(3)
        t2 = f.mul(t, t)
        return (1, f.neg(f.mul(three, t)), f.mul(three, t2), f.neg(f.mul(t2, t)))

    def chord_vector(self, a1: int, a2: int) -> PlueckerLine:
        f = self.field
        return pg3.normalize(
            f, (f.mul(a2, a2), f.mul(a1, a2), f.sub(f.mul(a1, a1), a2), a2, f.neg(a1), 1)
        )

    def axis_vector(self, b1: int, b2: int) -> PlueckerLine:
        f = self.field
        if f.p == 3:
            raise Char3Axis("axis coordinates divide by 3")
        three = self._three
        return pg3.normalize(
            f,
            (
                f.mul(b2, b2),
                f.mul(b1, b2),
                f.mul(three, b2),
                f.div(f.sub(f.mul(b1, b1), b2), three),
                f.neg(b1),
                1,
            ),
        )

    def tangent_line(self, t: Param) -> PlueckerLine:
        if t == INF:
            return (1, 0, 0, 0, 0, 0)
        f = self.field
        return self.chord_vector(f.add(t, t), f.mul(t, t))

    def null_polarity_point(self, P: Point) -> Plane:
        f = self.field
        if f.p == 3:
            raise Char3Polarity("the null polarity degenerates in characteristic 3")
        three = self._three
        x0, x1, x2, x3 = P
        return pg3.normalize(f, (x3, f.neg(f.mul(three, x2)), f.mul(three, x1), f.neg(x0)))

    def null_polarity_line(self, L) -> PlueckerLine:
        A, B = pg3.spanning_points(self.field, L)
        return pg3.meet_planes(self.field, self.null_polarity_point(A), self.null_polarity_point(B))

    # Incidence with C and Gamma

    def meeting_parameters(self, L) -> List[Param]:
        f = self.field
        planes = pg3.planes_through_line(f, L)
        return [
            t
            for t, P in self.cubic_points.items()
            if all(pg3.plane_contains_point(f, H, P) for H in planes)
        ]

    def osc_planes_containing(self, L) -> List[Param]:
        f = self.field
        A, B = pg3.spanning_points(f, L)
        return [
            t
            for t, H in self.osc_planes.items()
            if pg3.plane_contains_point(f, H, A) and pg3.plane_contains_point(f, H, B)
        ]

    def _scaled_to_last(self, L) -> Optional[PlueckerLine]:
        if L[5] == 0:
            return None
        s = self.field.inv(L[5])
        return tuple(self.field.mul(s, v) for v in L)

    def classify_line(self, L) -> LineClass:
        f = self.field
        meets = self.meeting_parameters(L)
        if len(meets) == 2:
            witness = None
            if INF not in meets:
                witness = (f.add(meets[0], meets[1]), f.mul(meets[0], meets[1]))
            return LineClass(LineTag.REAL_CHORD, witness)
        if len(meets) == 1:
            t = meets[0]
            if tuple(L) == self.tangent_line(t):
                return LineClass(LineTag.TANGENT)
            if self.osc_planes_containing(L):
                return LineClass(LineTag.UNISECANT_OSC)
            return LineClass(LineTag.UNISECANT_NON_OSC)
        if meets:
            raise RuntimeError(f"line {L} meets the cubic in {len(meets)} points")

        scaled = self._scaled_to_last(L)
        if scaled is not None:
            a2, a1 = scaled[3], f.neg(scaled[4])
            if self.chord_vector(a1, a2) == tuple(L) and not f.quadratic_roots(f.neg(a1), a2):
                return LineClass(LineTag.IMAGINARY_CHORD, (a1, a2))
            if f.p != 3:
                b1, b2 = f.neg(scaled[4]), f.div(scaled[2], self._three)
                if self.axis_vector(b1, b2) == tuple(L):
                    roots = len(f.quadratic_roots(f.neg(b1), b2))
                    tag = {2: LineTag.REAL_AXIS, 1: LineTag.GENERATOR}.get(roots, LineTag.IMAGINARY_AXIS)
                    return LineClass(tag, (b1, b2))
        if self.char3_pencil_axis is not None and tuple(L) == self.char3_pencil_axis:
            return LineClass(LineTag.CHAR3_PENCIL_AXIS)

        in_osc = self.osc_planes_containing(L)
        if len(in_osc) >= 2:
            return LineClass(LineTag.REAL_AXIS)
        if in_osc:
            return LineClass(LineTag.EXTERNAL_IN_OSC_PLANE)
        return LineClass(LineTag.ENG)

    def is_eng(self, L) -> bool:
        return self.classify_line(L).tag is LineTag.ENG

    def check_arc(self, samples: Optional[int] = None, seed: int = 0) -> bool:
        """
        True when no four cubic points are coplanar.

        Exhaustive when samples is None, otherwise that many random 4-subsets.
        """
        points = list(self.cubic_points.values())
        if samples is None:
            quads = itertools.combinations(points, 4)
        else:
            rng = random.Random(seed)
            quads = (rng.sample(points, 4) for _ in range(samples))
        for quad in quads:
            if pg3.nullspace(self.field, [list(P) for P in quad]):
                return False
        return True

    def class_census(self, collect_eng: bool = False, workers: int = 1) -> ClassCensus:
        keys = list(pg3.all_lines(self.field))
        logger.info("classifying %d lines of PG(3,%d) with %d worker(s)", len(keys), self.q, workers)
        if workers <= 1:
            counts, eng = _classify_keys(self, keys, collect_eng)
        else:
            chunk = -(-len(keys) // workers)
            shards = [(self.q, keys[i : i + chunk], collect_eng) for i in range(0, len(keys), chunk)]
            counts, eng = Counter(), []
            with Pool(processes=workers) as pool:
                for part_counts, part_eng in pool.map(_classify_shard, shards):
                    counts.update(part_counts)
                    eng.extend(part_eng)
        ordered = {tag.value: counts.get(tag.value, 0) for tag in LineTag}
        return ClassCensus(q=self.q, counts=ordered, eng_keys=sorted(eng))


def _classify_keys(ctx: CubicCtx, keys: List[LineKey], collect_eng: bool):
    counts: Counter = Counter()
    eng = []
    for key in keys:
        tag = ctx.classify_line(pg3.decode(ctx.q, key)).tag
        counts[tag.value] += 1
        if collect_eng and tag is LineTag.ENG:
            eng.append(key)
    return counts, eng


def _classify_shard(args):
    from .context import get_context

    q, keys, collect_eng = args
    return _classify_keys(get_context(q).cubic, keys, collect_eng)


def eng_class_size(q: int) -> int:
    return (q * q - q) * (q * q - 1)
