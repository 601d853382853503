"""
Orbits and stabilizers of lines under G_q, and orbit censuses of line classes.

Orbits are closed breadth first under the three generators of G_q. A census
walks its seed lines in key order; the lowest key of an orbit is its
representative, which keeps sharded runs schedule independent.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field as dc_field
from multiprocessing import Pool
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from ..config import get_settings
from ..exceptions import GuardrailExceeded, OrbitStabilizerMismatch
from . import pg3
from .cubic import CubicCtx
from .group import GL2Rep, ProjectivityGroup, apply_matrix
from .pg3 import LineKey

logger = logging.getLogger(__name__)

ALL_LINES = "all"


@dataclass
class OrbitResult:
    seed: LineKey
    size: int
    representative: LineKey
    stabilizer: List[GL2Rep]
    line_class: str
    members: Optional[Set[LineKey]] = None

    @property
    def stabilizer_order(self) -> int:
        return len(self.stabilizer)


@dataclass
class OrbitCensus:
    """Orbits of one line class as (representative key, length), sorted by key"""

    q: int
    class_filter: str
    orbits: List[Tuple[LineKey, int]] = dc_field(default_factory=list)

    @property
    def lengths(self) -> Dict[int, int]:
        counts = Counter(size for _, size in self.orbits)
        return dict(sorted(counts.items(), reverse=True))

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    @property
    def total(self) -> int:
        return sum(size for _, size in self.orbits)

    def to_dict(self) -> Dict:
        return {
            "q": self.q,
            "class": self.class_filter,
            "orbit_count": self.orbit_count,
            "total_lines": self.total,
            "orbits": [{"length": k, "multiplicity": v} for k, v in self.lengths.items()],
            "representatives": [[key, size] for key, size in self.orbits],
        }


class OrbitEngine:
    """
    Orbit and stabilizer computations for one q.

    Args:
        group: G_q over the field
        cubic: the cubic context over the same field
        scan_max_q: full-group stabilizer scan up to this q, Schreier generators above
        dense_max_q: direct-indexed visited table up to this q, hash set above
    """

    def __init__(
        self,
        group: ProjectivityGroup,
        cubic: CubicCtx,
        scan_max_q: Optional[int] = None,
        dense_max_q: Optional[int] = None,
    ):
        settings = get_settings()
        self.group = group
        self.cubic = cubic
        self.field = group.field
        self.q = group.q
        self.scan_max_q = scan_max_q if scan_max_q is not None else settings.scan_max_q
        self.dense_max_q = dense_max_q if dense_max_q is not None else settings.dense_max_q
        self.generators = group.generators()
        self._gen_mats = [group.lift(g).mat for g in self.generators]

    def image(self, mat, L) -> pg3.PlueckerLine:
        f = self.field
        A, B = pg3.spanning_points(f, L)
        return pg3.line_through(f, apply_matrix(f, mat, A), apply_matrix(f, mat, B))

    def key(self, L) -> LineKey:
        return pg3.encode(self.q, pg3.normalize(self.field, L))

    def _closure(self, L, transversal: bool):
        """Members of the orbit of L, with transversal elements when asked"""
        q = self.q
        seed = self.key(L)
        members: Dict[LineKey, Optional[GL2Rep]] = {seed: self.group.identity if transversal else None}
        frontier = [pg3.decode(q, seed)]
        while frontier:
            nxt = []
            for line in frontier:
                u = members[pg3.encode(q, line)] if transversal else None
                for s, mat in zip(self.generators, self._gen_mats):
                    image = self.image(mat, line)
                    k = pg3.encode(q, image)
                    if k not in members:
                        members[k] = self.group.compose(u, s) if transversal else None
                        nxt.append(image)
            frontier = nxt
        return seed, members

    def stabilizer_of_line(self, L) -> List[GL2Rep]:
        if self.q <= self.scan_max_q:
            return self._scan_stabilizer(L)
        seed, members = self._closure(L, transversal=True)
        return self._schreier_stabilizer(seed, members)

    def _scan_stabilizer(self, L) -> List[GL2Rep]:
        f = self.field
        L = pg3.normalize(f, L)
        A, B = pg3.spanning_points(f, L)
        planes = pg3.planes_through_line(f, L)
        lift_matrix = self.group.lift_matrix
        stab = []
        for r in self.group.reps():
            mat = lift_matrix(r)
            if all(
                pg3.plane_contains_point(f, H, apply_matrix(f, mat, X)) for X in (A, B) for H in planes
            ):
                stab.append(r)
        logger.debug("scanned %d elements, stabilizer order %d", len(self.group.reps()), len(stab))
        return stab

    def _schreier_stabilizer(self, seed: LineKey, members: Dict[LineKey, GL2Rep]) -> List[GL2Rep]:
        group = self.group
        target, rem = divmod(group.order, len(members))
        if rem:
            raise OrbitStabilizerMismatch(f"orbit size {len(members)} does not divide {group.order}")
        gens: List[GL2Rep] = []
        subgroup = {group.identity}
        if target > 1:
            for key, u in members.items():
                line = pg3.decode(self.q, key)
                for s, mat in zip(self.generators, self._gen_mats):
                    v = members[pg3.encode(self.q, self.image(mat, line))]
                    h = group.compose(group.compose(u, s), group.inverse(v))
                    if h not in subgroup:
                        gens.append(h)
                        subgroup = set(group.closure(gens))
                        if len(subgroup) >= target:
                            break
                if len(subgroup) >= target:
                    break
        if len(subgroup) != target:
            raise OrbitStabilizerMismatch(f"Schreier closure reached {len(subgroup)}, expected {target}")
        logger.debug("stabilizer of %d from %d Schreier generator(s)", target, len(gens))
        return sorted(subgroup)

    def orbit_of_line(self, L, retain: bool = False) -> OrbitResult:
        """
        Orbit and stabilizer of L, checked against |orbit| * |stabilizer| = q^3 - q.

        Raises:
            OrbitStabilizerMismatch: the identity fails
        """
        transversal = self.q > self.scan_max_q
        seed, members = self._closure(L, transversal)
        if transversal:
            stab = self._schreier_stabilizer(seed, members)
        else:
            stab = self._scan_stabilizer(L)
        if len(members) * len(stab) != self.group.order:
            raise OrbitStabilizerMismatch(
                f"|orbit|={len(members)} * |stab|={len(stab)} != {self.group.order} for line {L}"
            )
        return OrbitResult(
            seed=seed,
            size=len(members),
            representative=min(members),
            stabilizer=stab,
            line_class=self.cubic.classify_line(pg3.decode(self.q, seed)).tag.value,
            members=set(members) if retain else None,
        )

    def orbit_members(self, L) -> Set[LineKey]:
        return set(self._closure(L, transversal=False)[1])

    def same_orbit(self, L1, L2) -> bool:
        """Breadth-first search from L1, stopping as soon as L2 turns up"""
        q = self.q
        target = self.key(L2)
        seed = self.key(L1)
        if seed == target:
            return True
        seen = {seed}
        frontier = [pg3.decode(q, seed)]
        while frontier:
            nxt = []
            for line in frontier:
                for mat in self._gen_mats:
                    image = self.image(mat, line)
                    k = pg3.encode(q, image)
                    if k == target:
                        return True
                    if k not in seen:
                        seen.add(k)
                        nxt.append(image)
            frontier = nxt
        return False

    def partition_range(self, seeds: List[LineKey], lo: LineKey, hi: LineKey) -> List[Tuple[LineKey, int]]:
        """
        Orbits through seeds whose lowest key lies in [lo, hi].

        Orbits are disjoint, so one visited table serves every closure.
        """
        q = self.q
        if q <= self.dense_max_q:
            dense = np.zeros(q**6, dtype=bool)

            def seen(k):
                return dense[k]

            def mark(k):
                dense[k] = True
        else:
            visited: Set[LineKey] = set()
            seen = visited.__contains__
            mark = visited.add

        found = []
        for seed in seeds:
            if seen(seed):
                continue
            mark(seed)
            low, size = seed, 1
            frontier = [pg3.decode(q, seed)]
            while frontier:
                nxt = []
                for line in frontier:
                    for mat in self._gen_mats:
                        image = self.image(mat, line)
                        k = pg3.encode(q, image)
                        if not seen(k):
                            mark(k)
                            size += 1
                            if k < low:
                                low = k
                            nxt.append(image)
                frontier = nxt
            if lo <= low <= hi:
                found.append((low, size))
        return found

    def partition(self, seeds: List[LineKey], class_filter: str, workers: int = 1) -> OrbitCensus:
        """
        Split the G_q-invariant line set given by seeds into orbits.

        Args:
            seeds: keys of every line in the set
            class_filter: label recorded in the census
            workers: process count; shards are contiguous key ranges

        Returns:
            OrbitCensus sorted by representative key
        """
        seeds = sorted(seeds)
        if not seeds:
            return OrbitCensus(self.q, class_filter, [])
        workers = max(1, min(workers, len(seeds)))
        logger.info("partitioning %d %s lines at q=%d over %d shard(s)", len(seeds), class_filter, self.q, workers)
        if workers == 1:
            orbits = self.partition_range(seeds, seeds[0], seeds[-1])
        else:
            chunk = -(-len(seeds) // workers)
            bounds = []
            for i in range(0, len(seeds), chunk):
                part = seeds[i : i + chunk]
                bounds.append((self.q, part, part[0], part[-1]))
            orbits = []
            with Pool(processes=len(bounds)) as pool:
                for part in pool.map(_partition_shard, bounds):
                    orbits.extend(part)
        orbits.sort()
        census = OrbitCensus(self.q, class_filter, orbits)
        if census.total != len(seeds):
            raise OrbitStabilizerMismatch(f"census covers {census.total} of {len(seeds)} lines")
        return census


def _partition_shard(args):
    from .context import get_context

    q, seeds, lo, hi = args
    return get_context(q).engine.partition_range(seeds, lo, hi)


def _guard(q: int, max_q: Optional[int], what: str, default: int):
    bound = max_q if max_q is not None else default
    if q > bound:
        raise GuardrailExceeded(q, bound, what)


def partition_EnG(q: int, workers: int = 1, max_q: Optional[int] = None) -> OrbitCensus:
    """
    Orbit census of the EnG class.

    Raises:
        GuardrailExceeded: q above the census guardrail
    """
    from .context import get_context

    _guard(q, max_q, "census", get_settings().census_max_q)
    ctx = get_context(q)
    eng = ctx.cubic.class_census(collect_eng=True, workers=workers).eng_keys
    return ctx.engine.partition(eng, "EnG", workers)


def partition_lines(q: int, workers: int = 1, max_q: Optional[int] = None) -> OrbitCensus:
    """Orbit census of every line of PG(3,q)"""
    from .context import get_context

    _guard(q, max_q, "census", get_settings().census_max_q)
    ctx = get_context(q)
    return ctx.engine.partition(list(pg3.all_lines(ctx.field)), ALL_LINES, workers)


def orbit_of_line(q: int, L, max_q: Optional[int] = None, retain: bool = False) -> OrbitResult:
    from .context import get_context

    _guard(q, max_q, "orbit", get_settings().orbit_max_q)
    return get_context(q).engine.orbit_of_line(L, retain=retain)


def stabilizer_of_line(q: int, L) -> List[GL2Rep]:
    from .context import get_context

    return get_context(q).engine.stabilizer_of_line(L)


def same_orbit(q: int, L1, L2) -> bool:
    from .context import get_context

    return get_context(q).engine.same_orbit(L1, L2)
