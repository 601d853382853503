"""
Exact arithmetic over GF(q), q = p^n.

Elements are integer codes in [0, q): the base-p value of the coefficient
vector of the polynomial representative (coefficient of x^i is digit i).
Prime fields therefore use plain residues, 0 is zero and 1 is one.
Multiplication goes through exp/log tables for a fixed primitive element;
addition in extension fields goes through a Zech logarithm table.
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterator, List, Optional, Set, Tuple

import numpy as np

from ..config import get_settings
from ..exceptions import DivisionByZero, FieldTooSmall, NotPrimePower, TooLarge

logger = logging.getLogger(__name__)

MIN_FIELD_ORDER = 4


def factor_prime_power(q: int) -> Tuple[int, int]:
    """
    Split q into (p, n) with q = p^n.

    Raises:
        NotPrimePower: q is not a power of a single prime
    """
    if q < 2:
        raise NotPrimePower(q)
    p = next(d for d in range(2, q + 1) if q % d == 0)
    n, m = 0, q
    while m % p == 0:
        m //= p
        n += 1
    if m != 1:
        raise NotPrimePower(q)
    return p, n


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except NotPrimePower:
        return False
    return True


def _prime_factors(m: int) -> List[int]:
    factors = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            factors.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        factors.append(m)
    return factors


# Polynomials over GF(p) are little-endian coefficient lists.

def _to_digits(code: int, p: int, n: int) -> List[int]:
    digits = []
    for _ in range(n):
        code, r = divmod(code, p)
        digits.append(r)
    return digits


def _from_digits(digits: List[int], p: int) -> int:
    code = 0
    for d in reversed(digits):
        code = code * p + d
    return code


def _poly_rem(f: List[int], g: List[int], p: int) -> List[int]:
    """Remainder of f modulo the monic polynomial g"""
    rem = list(f)
    dg = len(g) - 1
    for k in range(len(rem) - 1, dg - 1, -1):
        c = rem[k]
        if c:
            shift = k - dg
            for i, gi in enumerate(g):
                rem[shift + i] = (rem[shift + i] - c * gi) % p
    return rem[:dg] if dg > 0 else []


def _poly_mulmod(a: List[int], b: List[int], modulus: List[int], p: int) -> List[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    rem = _poly_rem(prod, modulus, p)
    n = len(modulus) - 1
    return rem + [0] * (n - len(rem))


def _is_irreducible(f: List[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2"""
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for m in range(p**d):
            g = _to_digits(m, p, d) + [1]
            if not any(_poly_rem(f, g, p)):
                return False
    return True


def find_modulus(p: int, n: int) -> List[int]:
    """Lexicographically least monic irreducible polynomial of degree n over GF(p)"""
    if n == 1:
        return [0, 1]
    for m in range(p**n):
        f = _to_digits(m, p, n) + [1]
        if f[0] and _is_irreducible(f, p):
            return f
    raise RuntimeError(f"no irreducible polynomial of degree {n} over GF({p})")


@dataclass(frozen=True)
class ResidueFacts:
    """Residue data driving every case split over q"""

    q: int
    xi: int
    q_mod_4: int
    q_mod_12: int
    minus3_is_square: bool
    minus1_is_square: bool

    def to_dict(self) -> Dict[str, int]:
        return {
            "q": self.q,
            "xi": self.xi,
            "q_mod_4": self.q_mod_4,
            "q_mod_12": self.q_mod_12,
            "minus3_is_square": self.minus3_is_square,
            "minus1_is_square": self.minus1_is_square,
        }


class FieldCtx:
    """
    Immutable GF(p^n) context.

    Args:
        p: characteristic
        n: extension degree
        modulus: monic irreducible polynomial, little-endian coefficients
        primitive: code of the primitive element the tables are built on
    """

    def __init__(self, p: int, n: int, modulus: List[int], primitive: int):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = tuple(modulus)
        self.primitive = primitive
        self.zero = 0
        self.one = 1

        q = self.q
        self.exp_table, self.log_table = self._build_exp_log()

        codes = np.arange(q, dtype=np.int64)
        weights = p ** np.arange(n, dtype=np.int64)
        digits = (codes[:, None] // weights[None, :]) % p
        self.neg_table: List[int] = (((p - digits) % p) @ weights).tolist()

        if n == 1:
            self.zech_table: Optional[List[int]] = None
            self.add = self._add_prime
        else:
            powers = np.asarray(self.exp_table[: q - 1], dtype=np.int64)
            low = powers % p
            one_plus = powers - low + (low + 1) % p
            log_np = np.asarray(self.log_table, dtype=np.int64)
            self.zech_table = log_np[one_plus].tolist()
            self.add = self._add_ext

        self._artin: Optional[Dict[int, List[int]]] = None
        logger.debug("built GF(%d) modulus=%s primitive=%d", q, self.modulus, primitive)

    def __repr__(self):
        return f"FieldCtx(q={self.q}, p={self.p}, n={self.n})"

    @property
    def characteristic(self) -> int:
        return self.p

    def _build_exp_log(self) -> Tuple[List[int], List[int]]:
        q, p = self.q, self.p
        exp = [0] * (2 * (q - 1))
        log = [-1] * q
        x = 1
        g_digits = _to_digits(self.primitive, p, self.n)
        modulus = list(self.modulus)
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            if self.n == 1:
                x = (x * self.primitive) % p
            else:
                x = _from_digits(_poly_mulmod(_to_digits(x, p, self.n), g_digits, modulus, p), p)
        if x != 1 or -1 in log[1:]:
            raise RuntimeError(f"element {self.primitive} is not primitive in GF({q})")
        exp[q - 1 :] = exp[: q - 1]
        return exp, log

    # Arithmetic

    def _add_prime(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def _add_ext(self, x: int, y: int) -> int:
        if x == 0:
            return y
        if y == 0:
            return x
        lx = self.log_table[x]
        z = self.zech_table[(self.log_table[y] - lx) % (self.q - 1)]
        if z < 0:
            return 0
        return self.exp_table[lx + z]

    def neg(self, x: int) -> int:
        return self.neg_table[x]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg_table[y])

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self.exp_table[self.log_table[x] + self.log_table[y]]

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero(f"inverse of zero in GF({self.q})")
        return self.exp_table[(self.q - 1 - self.log_table[x]) % (self.q - 1)]

    def div(self, x: int, y: int) -> int:
        if y == 0:
            raise DivisionByZero(f"division by zero in GF({self.q})")
        if x == 0:
            return 0
        return self.exp_table[(self.log_table[x] - self.log_table[y]) % (self.q - 1)]

    def pow(self, x: int, k: int) -> int:
        if x == 0:
            if k > 0:
                return 0
            if k == 0:
                return 1
            raise DivisionByZero(f"negative power of zero in GF({self.q})")
        return self.exp_table[(self.log_table[x] * k) % (self.q - 1)]

    def from_int(self, value: int) -> int:
        """Image of the integer value under Z -> GF(q)"""
        return value % self.p

    def from_fraction(self, num: int, den: int) -> int:
        return self.div(self.from_int(num), self.from_int(den))

    def elements(self) -> Iterator[int]:
        """0, then successive powers of the primitive element"""
        yield 0
        yield from self.exp_table[: self.q - 1]

    def nonzero(self) -> List[int]:
        return list(self.exp_table[: self.q - 1])

    # Roots and residues

    def kth_roots(self, x: int, k: int) -> Set[int]:
        """All y with y^k = x"""
        if x == 0:
            return {0}
        m = self.q - 1
        e = self.log_table[x]
        g = gcd(k, m)
        if e % g:
            return set()
        step = m // g
        j0 = 0 if step == 1 else ((e // g) * pow(k // g, -1, step)) % step
        return {self.exp_table[j0 + i * step] for i in range(g)}

    def square_roots(self, x: int) -> Set[int]:
        return self.kth_roots(x, 2)

    def cube_roots(self, x: int) -> Set[int]:
        return self.kth_roots(x, 3)

    def fourth_roots(self, x: int) -> Set[int]:
        return self.kth_roots(x, 4)

    def is_kth_power(self, x: int, k: int) -> bool:
        if x == 0:
            return True
        return self.log_table[x] % gcd(k, self.q - 1) == 0

    def is_square(self, x: int) -> bool:
        return self.is_kth_power(x, 2)

    def is_cube(self, x: int) -> bool:
        return self.is_kth_power(x, 3)

    def is_fourth_power(self, x: int) -> bool:
        return self.is_kth_power(x, 4)

    def quadratic_roots(self, b: int, c: int) -> Set[int]:
        """Roots of x^2 + b x + c in GF(q)"""
        if self.p != 2:
            disc = self.sub(self.mul(b, b), self.mul(self.from_int(4), c))
            half = self.inv(self.from_int(2))
            return {self.mul(self.sub(s, b), half) for s in self.square_roots(disc)}
        if b == 0:
            return self.square_roots(c)
        if self._artin is None:
            table: Dict[int, List[int]] = {}
            for y in self.elements():
                table.setdefault(self.add(self.mul(y, y), y), []).append(y)
            self._artin = table
        z = self.div(c, self.mul(b, b))
        return {self.mul(b, y) for y in self._artin.get(z, [])}

    def residue_facts(self) -> ResidueFacts:
        q = self.q
        minus3 = self.from_int(-3)
        minus3_is_square = self.p != 2 and minus3 != 0 and self.is_square(minus3)
        facts = ResidueFacts(
            q=q,
            xi={0: 0, 1: 1, 2: -1}[q % 3],
            q_mod_4=q % 4,
            q_mod_12=q % 12,
            minus3_is_square=minus3_is_square,
            minus1_is_square=self.is_square(self.from_int(-1)),
        )
        if self.p != 2 and facts.minus3_is_square != (q % 3 == 1):
            raise RuntimeError(f"-3 squareness disagrees with q mod 3 in GF({q})")
        return facts


def _primitive_candidates(p: int, n: int, modulus: List[int]) -> Iterator[int]:
    q = p**n
    order_factors = _prime_factors(q - 1)
    for code in range(2, q):
        digits = _to_digits(code, p, n)
        primitive = True
        for r in order_factors:
            e = (q - 1) // r
            if n == 1:
                value = pow(code, e, p)
            else:
                acc, base = [1] + [0] * (n - 1), digits
                while e:
                    if e & 1:
                        acc = _poly_mulmod(acc, base, modulus, p)
                    base = _poly_mulmod(base, base, modulus, p)
                    e >>= 1
                value = _from_digits(acc, p)
            if value == 1:
                primitive = False
                break
        if primitive:
            yield code


def make_field(q: int, primitive_index: int = 0, max_order: Optional[int] = None) -> FieldCtx:
    """
    Build the GF(q) context.

    Args:
        q: field order, a prime power >= 4
        primitive_index: use the k-th primitive element (in code order) for the tables
        max_order: bound on q, defaults to the configured max field order

    Returns:
        FieldCtx
    """
    bound = max_order if max_order is not None else get_settings().max_field_order
    p, n = factor_prime_power(q)
    if q < MIN_FIELD_ORDER:
        raise FieldTooSmall(q)
    if q > bound:
        raise TooLarge(q, bound)
    modulus = find_modulus(p, n)
    for index, candidate in enumerate(_primitive_candidates(p, n, modulus)):
        if index == primitive_index:
            return FieldCtx(p, n, modulus, candidate)
    raise ValueError(f"GF({q}) has fewer than {primitive_index + 1} primitive elements")
