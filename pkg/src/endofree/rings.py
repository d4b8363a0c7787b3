"""Scalar rings for free modules: the integers, the rationals and GF(p^m).

Scalars are plain Python values: ``int`` over the integers, ``Fraction``
over the rationals, and an ``int`` code in ``range(p**m)`` over GF(p^m)
(the base-p digits of the code are the coefficients of the residue
polynomial, constant term first).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product


class RingError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# --- polynomials over GF(p), coefficient tuples with constant term first ---

def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a, m, p):
    a = _poly_trim(a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        f = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        a = _poly_trim(a)
    return a


def _is_irreducible(poly, p) -> bool:
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(poly, list(low) + [1], p):
                return False
    return True


def least_irreducible(p: int, m: int) -> tuple:
    """Monic irreducible of degree m whose coefficient code sum(c_i p^i) is least.

    Ordering by code is lexicographic on (c_{m-1}, ..., c_0).
    """
    for code in range(p ** m):
        low = [(code // p ** i) % p for i in range(m)]
        poly = low + [1]
        if m == 1 or _is_irreducible(poly, p):
            return tuple(poly)
    raise RingError(f"no irreducible polynomial of degree {m} over GF({p})")


@dataclass(frozen=True)
class Ring:
    kind: str  # "Z", "Q" or "GF"
    p: int = 0
    m: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "GF"):
            raise RingError(f"unknown ring kind {self.kind!r}")
        if self.kind == "GF":
            if not _is_prime(self.p) or self.m < 1:
                raise RingError(f"GF({self.p},{self.m}) is not a field")
            if self.p ** self.m > 4096:
                raise RingError("field too large for table arithmetic")

    @classmethod
    def integers(cls):
        return cls("Z")

    @classmethod
    def rationals(cls):
        return cls("Q")

    @classmethod
    def gf(cls, p, m=1):
        return cls("GF", p, m)

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def order(self):
        return self.p ** self.m if self.kind == "GF" else None

    @property
    def name(self) -> str:
        if self.kind == "GF":
            return f"GF({self.p},{self.m})" if self.m > 1 else f"GF({self.p})"
        return self.kind

    @cached_property
    def modulus(self) -> tuple:
        return least_irreducible(self.p, self.m)

    @cached_property
    def _mul_table(self):
        q, p = self.order, self.p
        digits = [[(c // p ** i) % p for i in range(self.m)] for c in range(q)]
        table = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * self.m)
                for i, x in enumerate(digits[a]):
                    if x:
                        for j, y in enumerate(digits[b]):
                            prod[i + j] = (prod[i + j] + x * y) % p
                r = _poly_mod(prod, self.modulus, p)
                code = sum(c * p ** i for i, c in enumerate(r))
                table[a][b] = table[b][a] = code
        return table

    # --- arithmetic ---

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def from_int(self, n: int):
        if self.kind == "Z":
            return n
        if self.kind == "Q":
            return Fraction(n)
        return n % self.p

    @cached_property
    def _add_table(self):
        q, p = self.order, self.p
        digits = [[(c // p ** i) % p for i in range(self.m)] for c in range(q)]
        return [[sum(((x + y) % p) * p ** i for i, (x, y) in enumerate(zip(digits[a], digits[b])))
                 for b in range(q)] for a in range(q)]

    def add(self, a, b):
        if self.kind != "GF":
            return a + b
        return self._add_table[a][b]

    def neg(self, a):
        if self.kind != "GF":
            return -a
        return self._add_table[a].index(0)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.kind != "GF":
            return a * b
        return self._mul_table[a][b]

    def is_unit(self, a) -> bool:
        if self.kind == "Z":
            return a in (1, -1)
        return a != 0

    def inv(self, a):
        if not self.is_unit(a):
            raise RingError(f"{self.format(a)} is not invertible in {self.name}")
        if self.kind == "Z":
            return a
        if self.kind == "Q":
            return 1 / a
        row = self._mul_table[a]
        return row.index(1)

    def power(self, a, e: int):
        out = self.one
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def elements(self):
        if self.kind != "GF":
            raise RingError(f"{self.name} is infinite")
        return list(range(self.order))

    def contains(self, a) -> bool:
        if self.kind == "Z":
            return isinstance(a, int) and not isinstance(a, bool)
        if self.kind == "Q":
            return isinstance(a, Fraction)
        return isinstance(a, int) and 0 <= a < self.order

    def coerce(self, a):
        if self.kind == "Q":
            return Fraction(a)
        if self.kind == "Z":
            if isinstance(a, Fraction):
                if a.denominator != 1:
                    raise RingError(f"{a} is not an integer")
                return int(a)
            return int(a)
        if isinstance(a, Fraction):
            raise RingError("fractions are not GF literals")
        return a

    # --- text ---

    def format(self, a) -> str:
        if self.kind == "GF":
            return str(a) if a < self.p else f"g{a}"
        return str(a)

    def parse_scalar(self, text: str):
        text = text.strip()
        m = re.fullmatch(r"g(\d+)", text)
        if m:
            if self.kind != "GF":
                raise RingError(f"GF literal {text!r} outside a Galois field")
            code = int(m.group(1))
            if code >= self.order:
                raise RingError(f"{text!r} out of range for {self.name}")
            return code
        m = re.fullmatch(r"(-?\d+)(?:/(\d+))?", text)
        if not m:
            raise RingError(f"bad scalar {text!r}")
        num = int(m.group(1))
        if m.group(2) is not None:
            den = int(m.group(2))
            if den == 0:
                raise RingError("zero denominator")
            if self.kind == "GF":
                return self.mul(self.from_int(num), self.inv(self.from_int(den)))
            return self.coerce(Fraction(num, den))
        return self.from_int(num)

    def modulus_text(self) -> str:
        terms = []
        for i in reversed(range(len(self.modulus))):
            c = self.modulus[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
            terms.append(mono if c == 1 and i else f"{c}*{mono}" if i else str(c))
        return " + ".join(terms)


def parse_ring(text: str) -> Ring:
    t = text.strip().upper().replace(" ", "")
    if t in ("Z", "ZZ", "INTEGERS"):
        return Ring.integers()
    if t in ("Q", "QQ", "RATIONALS"):
        return Ring.rationals()
    m = re.fullmatch(r"GF\((\d+)(?:,(\d+))?\)", t)
    if not m:
        raise RingError(f"unknown ring {text!r}")
    a = int(m.group(1))
    if m.group(2) is not None:
        return Ring.gf(a, int(m.group(2)))
    for p in range(2, a + 1):
        if a % p == 0:
            e, r = 0, a
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise RingError(f"{a} is not a prime power")
            return Ring.gf(p, e)
    raise RingError(f"bad field order {a}")


@dataclass(frozen=True)
class RingAut:
    """Identity or a power of Frobenius, a -> a^(p^e)."""

    exponent: int = 0

    def apply(self, ring: Ring, a):
        if self.exponent == 0:
            return a
        if ring.kind != "GF":
            raise RingError("Frobenius is only defined on Galois fields")
        return ring.power(a, ring.p ** (self.exponent % ring.m))

    def inverse(self, ring: Ring) -> "RingAut":
        if self.exponent == 0:
            return self
        return RingAut((-self.exponent) % ring.m)

    def is_identity_on(self, ring: Ring) -> bool:
        if self.exponent == 0:
            return True
        return all(self.apply(ring, a) == a for a in ring.elements())

    def format(self) -> str:
        return "identity" if self.exponent == 0 else f"frobenius^{self.exponent}"


def parse_ring_aut(text: str) -> RingAut:
    t = text.strip().lower()
    if t in ("identity", "id"):
        return RingAut(0)
    m = re.fullmatch(r"frobenius(?:\^(\d+))?", t)
    if not m:
        raise RingError(f"unknown ring automorphism {text!r}")
    return RingAut(int(m.group(1) or 1))
