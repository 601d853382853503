"""
The two explicit EnG line families and the predictions made about them.

Every `*_expected` / `predicted_*` function is a pure function of q and mu
built from residue data only; comparing predictions with the orbit engine
is the job of the verification service.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import isqrt
from typing import Callable, Dict, List, Optional, Tuple

from ..config import get_settings
from ..core import pg3
from ..core.context import get_context
from ..core.gfq import is_prime_power
from ..core.group import GL2Rep, Projectivity
from ..core.pg3 import PlueckerLine
from ..exceptions import BadMu, Char3NotApplicable, GuardrailExceeded, NotChar3, NotEnG

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LambdaSpec:
    q: int
    expected_stab_order: int
    expected_stab_id: str
    expected_orbit_len: int
    case: str


@dataclass(frozen=True)
class MuSpec:
    q: int
    mu: int
    is_EnG: bool
    expected_stab_order: int
    expected_stab_id: str
    expected_orbit_len: int
    case: str


@dataclass
class Char3Census:
    """
    Orbits met by the lines l_mu, mu in F_q minus {0, 1}, for q = 3^h.

    Attributes:
        n_q: number of distinct orbits
        S_q: number of lines those orbits cover
        t_q: orbits holding exactly three l_mu lines
        pairs: equivalent (mu, mu') pairs predicted from d
        orbits: (mus in the orbit, orbit length), by lowest mu code
    """

    q: int
    n_q: int
    S_q: int
    t_q: int
    pairs: List[Tuple[int, int]]
    orbits: List[Tuple[Tuple[int, ...], int]] = dc_field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            "q": self.q,
            "n_q": self.n_q,
            "S_q": self.S_q,
            "t_q": self.t_q,
            "pairs": [list(p) for p in self.pairs],
            "orbits": [{"mus": list(m), "length": n} for m, n in self.orbits],
        }


def _group_order(q: int) -> int:
    return q**3 - q


def _xi(q: int) -> int:
    return {0: 0, 1: 1, 2: -1}[q % 3]


# The line through (1,0,0,1) and (0,0,1,0)

def lambda_line(q: int) -> PlueckerLine:
    ctx = get_context(q)
    return pg3.line_through(ctx.field, (1, 0, 0, 1), (0, 0, 1, 0))


def lambda_expected(q: int) -> LambdaSpec:
    """
    Predicted stabilizer and orbit of the line through (1,0,0,1) and (0,0,1,0).

    Raises:
        Char3NotApplicable: the line is not EnG in characteristic 3
    """
    f = get_context(q).field
    xi = _xi(q)
    G = _group_order(q)
    if xi == 0:
        raise Char3NotApplicable(f"the line through (1,0,0,1),(0,0,1,0) is not EnG for q={q}")
    if xi == 1:
        if q % 2 and f.is_cube(f.from_fraction(-1, 2)):
            return LambdaSpec(q, 12, "A4", G // 12, "xi1_cube_A4")
        return LambdaSpec(q, 3, "C3", G // 3, "xi1_noncube")
    if q % 2 == 0:
        return LambdaSpec(q, 1, "Trivial", G, "xim1_even")
    return LambdaSpec(q, 2, "C2", G // 2, "xim1_odd")


def lambda_stabilizer_matrices(q: int) -> List[Projectivity]:
    """
    Stabilizer of the same line from explicit templates: diag(1, d, d^2, d^3)
    with d^3 = 1, and for odd q the elements (a, 1, -d/a^2, d) with
    a^3 = 1/2, d^3 = -1/2.
    """
    ctx = get_context(q)
    f, group = ctx.field, ctx.group
    if q % 3 == 0:
        raise Char3NotApplicable(f"no stabilizer templates for q={q}")
    reps = {group.canonical_rep(1, 0, 0, d) for d in f.cube_roots(1)}
    if q % 2:
        for a in f.cube_roots(f.from_fraction(1, 2)):
            for d in f.cube_roots(f.from_fraction(-1, 2)):
                reps.add(group.canonical_rep(a, 1, f.neg(f.div(d, f.mul(a, a))), d))
    return [group.lift(r) for r in sorted(reps)]


# The lines l_mu through (0,mu,0,1) and (1,0,1,0)

def _check_mu(q: int, mu: int) -> None:
    if not 0 <= mu < q:
        raise BadMu(f"mu={mu} is not an element code of GF({q})")
    if mu in (0, 1):
        raise BadMu(f"mu={mu} is excluded (0 and 1 give non-EnG lines)")


def mu_line(q: int, mu: int, check: bool = True) -> PlueckerLine:
    if check:
        _check_mu(q, mu)
    ctx = get_context(q)
    return pg3.line_through(ctx.field, (0, mu, 0, 1), (1, 0, 1, 0))


def mu_is_EnG(q: int, mu: int) -> bool:
    _check_mu(q, mu)
    f = get_context(q).field
    if q % 2 == 0 or q % 3 == 0:
        return True
    return mu != f.from_fraction(1, 9)


def mu_expected(q: int, mu: int) -> MuSpec:
    """
    Predicted stabilizer of l_mu.

    Raises:
        NotEnG: l_mu is not an EnG line
    """
    if not mu_is_EnG(q, mu):
        raise NotEnG(f"l_{mu} is not EnG for q={q}")
    f = get_context(q).field
    G = _group_order(q)

    def spec(order, name, case):
        return MuSpec(q, mu, True, order, name, G // order, case)

    if q % 2 == 0:
        return spec(2, "C2", "even")
    if q % 3 == 0:
        return spec(4, "C2xC2", "char3_square") if f.is_square(mu) else spec(2, "C2", "char3_nonsquare")
    minus_third = f.from_fraction(-1, 3)
    if mu == minus_third and q % 12 == 1 and f.is_fourth_power(minus_third):
        return spec(12, "A4", "odd_A4")
    if f.is_square(mu):
        return spec(4, "C2xC2", "odd_square")
    return spec(2, "C2", "odd_nonsquare")


def mu_stabilizer_matrices(q: int, mu: int) -> List[Projectivity]:
    """
    Stabilizer of l_mu from explicit templates.

    diag(1, d, d^2, d^3) with d = +-1, the antidiagonal elements (0, b, 1, 0)
    with b^2 = mu, and when -1/3 is a fourth power with q = 1 mod 12 the
    eight elements (-b/d, b, 1, d) with b^2 = 1/3, d^4 = -1/3.
    """
    spec = mu_expected(q, mu)
    ctx = get_context(q)
    f, group = ctx.field, ctx.group
    minus_one = f.neg(1)
    reps = {group.canonical_rep(1, 0, 0, 1), group.canonical_rep(1, 0, 0, minus_one)}
    for b in f.square_roots(mu):
        reps.add(group.canonical_rep(0, b, 1, 0))
    if spec.case == "odd_A4":
        for b in f.square_roots(f.from_fraction(1, 3)):
            for d in f.fourth_roots(f.from_fraction(-1, 3)):
                reps.add(group.canonical_rep(f.neg(f.div(b, d)), b, 1, d))
    return [group.lift(r) for r in sorted(reps)]


def r_point(q: int, mu: int, gamma: int) -> pg3.Point:
    """The point (gamma, mu, gamma, 1) of l_mu"""
    return pg3.normalize(get_context(q).field, (gamma, mu, gamma, 1))


def mu_reflection_holds(q: int, mu: int) -> bool:
    """lift(1,0,0,-1) maps (gamma, mu, gamma, 1) to (-gamma, mu, -gamma, 1) for every gamma"""
    ctx = get_context(q)
    f, group = ctx.field, ctx.group
    g = group.lift(group.canonical_rep(1, 0, 0, f.neg(1)))
    return all(
        group.act_point(g, r_point(q, mu, gamma)) == r_point(q, mu, f.neg(gamma)) for gamma in f.elements()
    )


def templates_fix_line(q: int, L, templates: List[Projectivity]) -> bool:
    group = get_context(q).group
    return all(group.act_line(g, L) == tuple(L) for g in templates)


def q_infinity_stabilizer_templates(q: int) -> List[GL2Rep]:
    """diag(1, d, d^2, d^3), the predicted stabilizer of (0,0,1,0)"""
    ctx = get_context(q)
    return sorted(ctx.group.canonical_rep(1, 0, 0, d) for d in ctx.field.nonzero())


# Characteristic 3

def char3_equivalent_pairs(q: int) -> List[Tuple[int, int]]:
    """
    Unordered pairs {d^4, (d+1)^2 (d-1)^2} over d not in {0, 1, -1}, d^2 != -1,
    1 - d^2 a square.

    Raises:
        NotChar3: q is not a power of 3 at least 9
    """
    if q % 3 or q < 9:
        raise NotChar3(f"q={q} is not a power of 3 with q >= 9")
    f = get_context(q).field
    minus_one = f.neg(1)
    pairs = set()
    for d in f.nonzero():
        if d in (1, minus_one):
            continue
        d2 = f.mul(d, d)
        if d2 == minus_one or not f.is_square(f.sub(1, d2)):
            continue
        mu = f.mul(d2, d2)
        mu_prime = f.mul(f.mul(f.add(d, 1), f.add(d, 1)), f.mul(f.sub(d, 1), f.sub(d, 1)))
        if mu != mu_prime:
            pairs.add(tuple(sorted((mu, mu_prime))))
    return sorted(pairs)


def predicted_pair_count(q: int) -> int:
    return (q - 3) // 8 if q % 4 == 3 else (q - 9) // 8


def char3_census(q: int, max_q: Optional[int] = None) -> Char3Census:
    """
    Run the orbit engine over every l_mu and group the mus by orbit.

    Raises:
        NotChar3: q is not a power of 3 at least 9
        GuardrailExceeded: q above the census guardrail
    """
    if q % 3 or q < 9:
        raise NotChar3(f"q={q} is not a power of 3 with q >= 9")
    bound = max_q if max_q is not None else get_settings().census_max_q
    if q > bound:
        raise GuardrailExceeded(q, bound, "census")
    ctx = get_context(q)
    f, engine = ctx.field, ctx.engine
    mus = sorted(m for m in f.elements() if m not in (0, 1))
    key_of = {pg3.encode(q, mu_line(q, m)): m for m in mus}
    assigned = set()
    orbits = []
    for mu in mus:
        if mu in assigned:
            continue
        members = engine.orbit_members(mu_line(q, mu))
        together = tuple(sorted(key_of[k] for k in members if k in key_of))
        assigned.update(together)
        orbits.append((together, len(members)))
        logger.debug("q=%d mu=%d orbit length %d holds %s", q, mu, len(members), together)
    return Char3Census(
        q=q,
        n_q=len(orbits),
        S_q=sum(n for _, n in orbits),
        t_q=sum(1 for m, _ in orbits if len(m) == 3),
        pairs=char3_equivalent_pairs(q),
        orbits=orbits,
    )


def char3_orbit_count_claim(q: int) -> Tuple[int, int]:
    """(low, high) for the number of l_mu orbits; equal bounds when q = 3 mod 4"""
    if q % 4 == 3:
        exact = (7 * q - 13) // 8
        return exact, exact
    return (7 * q - 7) // 8, (23 * q - 39) // 24


def char3_covered_lines_claim(q: int) -> Optional[int]:
    """Lines covered by the l_mu orbits when q = 3 mod 4"""
    if q % 4 != 3:
        return None
    return (q**3 - q) * (11 * q - 17) // 32


def triple_bound(q: int) -> Optional[int]:
    return (q - 9) // 24 if q % 4 == 1 else None


def triple_formula_value(q: int) -> Optional[Fraction]:
    """(q - (-1)^m sqrt(q) - 15) / 48 for q = 3^(2m); printed formula, not an integer in general"""
    root = isqrt(q)
    if root * root != q or q % 3:
        return None
    m = 0
    while 9**m < q:
        m += 1
    if 9**m != q:
        return None
    return Fraction(q - (-1) ** m * root - 15, 48)


# Coincidences and consistency

def lambda_mu_coincidence(q: int) -> Optional[int]:
    """The mu whose line shares an orbit with the line through (1,0,0,1),(0,0,1,0), if any"""
    if q % 2 == 0 or q % 3 == 0:
        return None
    f = get_context(q).field
    minus_third = f.from_fraction(-1, 3)
    if q % 12 == 11 and not f.is_square(minus_third):
        return minus_third
    if (
        q % 12 == 1
        and f.is_square(minus_third)
        and f.is_cube(f.from_fraction(1, 2))
        and f.is_fourth_power(minus_third)
    ):
        return minus_third
    return None


def half_cube_consistency(q: int) -> Dict[str, bool]:
    """Whether 1/2 and -1/2 are cubes; they agree in odd characteristic"""
    if q % 2 == 0:
        raise Char3NotApplicable(f"1/2 is undefined for q={q}")
    f = get_context(q).field
    half = f.is_cube(f.from_fraction(1, 2))
    minus_half = f.is_cube(f.from_fraction(-1, 2))
    return {"half_is_cube": half, "minus_half_is_cube": minus_half, "agree": half == minus_half}


# Census predictions

def predicted_census(q: int) -> Dict[int, int]:
    """EnG orbit lengths with multiplicities as formulas in q and xi"""
    xi = _xi(q)
    G = _group_order(q)
    counts: Counter = Counter()
    if q % 2 == 0:
        counts[G // (2 + xi)] += 2 + xi
        counts[G // 2] += 2 * q - 4
    else:
        counts[G] += (q - xi) // 3
        counts[G // 2] += q - 1
        counts[G // 4] += (2 * q - {1: 11, -1: 10, 0: 6}[xi]) // 3
        if xi == 1:
            counts[G // 12] += 1
            counts[G // 3] += 2
    return {k: v for k, v in sorted(counts.items(), reverse=True) if v}


def predicted_orbit_count(q: int) -> int:
    return 2 * q - 3 + _xi(q) if q % 2 else 2 * q - 2 + _xi(q)


def predicted_total_line_orbits(q: int) -> int:
    return 2 * q + 7 + _xi(q)


def even_coverage(q: int) -> int:
    """Lines in the orbit of the Lambda line plus the q-2 orbits of l_mu, q even"""
    if q % 2:
        raise ValueError(f"q={q} is odd")
    return (q - 2) * _group_order(q) // 2 + lambda_expected(q).expected_orbit_len


def search_field_orders(predicate: Callable[[int], bool], start: int = 5, limit: int = 1000) -> List[int]:
    """Prime powers q in [start, limit] satisfying predicate"""
    return [q for q in range(start, limit + 1) if is_prime_power(q) and predicate(q)]


def lambda_a4_orders(limit: int = 200) -> List[int]:
    return search_field_orders(lambda q: lambda_expected(q).case == "xi1_cube_A4" if q % 3 else False, limit=limit)


def mu_a4_orders(limit: int = 200) -> List[int]:
    def a4(q):
        if q % 12 != 1:
            return False
        f = get_context(q).field
        return f.is_fourth_power(f.from_fraction(-1, 3))

    return search_field_orders(a4, limit=limit)
