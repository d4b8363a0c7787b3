"""Terms over a variety's signature: parsing, printing and evaluation.

Grammar (whitespace is insignificant)::

    element := factor { "*" factor } | sum
    factor  := atom [ "^" int ]
    atom    := "x" nat | "v" nat | "e" | "(" element ")"
    sum     := summand { "+" summand }          (modules only)
    summand := vector | scalar "." atom | atom
    vector  := "[" scalar { "," scalar } "]"
    scalar  := int | int "/" nat | "g" nat       (g-literals: GF element codes)

``x_i`` are generator constants, ``v_k`` variable slots, ``e`` the identity
(the zero vector in a module).  ``a^-1`` parses to an inverse node, other
exponents to a power node.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .varieties import AlgebraError, Variety


class TermSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class SignatureError(AlgebraError):
    pass


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class Ident:
    pass


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Inv:
    arg: "Term"


@dataclass(frozen=True)
class Pow:
    base: "Term"
    exp: int


@dataclass(frozen=True)
class Vec:
    coords: tuple


@dataclass(frozen=True)
class Scale:
    scalar: object
    arg: "Term"


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


Term = Union[Var, Gen, Ident, Mul, Inv, Pow, Vec, Scale, Add]

_ATOMS = (Var, Gen, Ident)


def arity(t: Term) -> int:
    if isinstance(t, Var):
        return t.index
    if isinstance(t, (Mul, Add)):
        return max(arity(t.left), arity(t.right))
    if isinstance(t, (Inv, Scale)):
        return arity(t.arg)
    if isinstance(t, Pow):
        return arity(t.base)
    return 0


class _Parser:
    _scalar_re = re.compile(r"g\d+|-?\d+(?:/\d+)?")

    def __init__(self, text: str, F: Variety):
        self.src = text
        self.F = F
        self.pos = 0

    def error(self, msg):
        raise TermSyntaxError(msg, self.pos)

    def skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def number(self, signed=False) -> int:
        self.skip()
        m = re.compile(r"-?\d+" if signed else r"\d+").match(self.src, self.pos)
        if not m:
            self.error("expected a number")
        self.pos = m.end()
        return int(m.group())

    def scalar(self):
        self.skip()
        m = self._scalar_re.match(self.src, self.pos)
        if not m:
            self.error("expected a scalar")
        start = self.pos
        self.pos = m.end()
        try:
            return self.F.ring.parse_scalar(m.group())
        except ValueError as exc:
            raise TermSyntaxError(str(exc), start) from None

    def parse(self) -> Term:
        t = self.element()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return t

    def element(self) -> Term:
        if self.F.is_module:
            return self.sum()
        t = self.factor()
        while self.peek() == "*":
            self.pos += 1
            t = Mul(t, self.factor())
        if self.peek() == "+":
            raise SignatureError(f"sum not in the signature of {self.F.name}")
        return t

    def sum(self) -> Term:
        t = self.summand()
        while self.peek() == "+":
            self.pos += 1
            t = Add(t, self.summand())
        if self.peek() in ("*", "^"):
            raise SignatureError("products and powers are not in the module signature")
        return t

    def summand(self) -> Term:
        c = self.peek()
        if c == "[":
            self.pos += 1
            coords = [self.scalar()]
            while self.peek() == ",":
                self.pos += 1
                coords.append(self.scalar())
            self.take("]")
            if len(coords) != self.F.rank:
                self.error(f"vector of length {len(coords)} in rank {self.F.rank}")
            return Vec(tuple(coords))
        if c == "-" or c.isdigit() or (c == "g" and self.src[self.pos + 1:self.pos + 2].isdigit()):
            k = self.scalar()
            self.take(".")
            return Scale(k, self.atom())
        return self.atom()

    def factor(self) -> Term:
        t = self.atom()
        if self.peek() == "^":
            self.pos += 1
            k = self.number(signed=True)
            if k == -1:
                if not self.F.has_inverse:
                    raise SignatureError(f"inverse not in the signature of {self.F.name}")
                return Inv(t)
            if k == 1:
                return t
            if k < 0 and not self.F.has_inverse:
                raise SignatureError(f"inverse not in the signature of {self.F.name}")
            if k == 0 and not self.F.has_identity:
                raise SignatureError(f"identity not in the signature of {self.F.name}")
            return Pow(t, k)
        return t

    def atom(self) -> Term:
        c = self.peek()
        if c in ("x", "v"):
            self.pos += 1
            i = self.number()
            if i < 1:
                self.error("indices start at 1")
            if c == "x":
                if i > self.F.rank:
                    self.error(f"generator x{i} exceeds rank {self.F.rank}")
                return Gen(i)
            return Var(i)
        if c == "e":
            if not self.F.has_identity:
                raise SignatureError(f"identity not in the signature of {self.F.name}")
            self.pos += 1
            return Ident()
        if c == "(":
            self.pos += 1
            t = self.element()
            self.take(")")
            return t
        self.error("expected an atom" if c else "unexpected end of input")


def parse_term(text: str, F: Variety) -> Term:
    return _Parser(text, F).parse()


def format_term(t: Term, F: Variety | None = None) -> str:
    ring = F.ring if F is not None and F.is_module else None

    def sc(k):
        return ring.format(k) if ring is not None else str(k)

    def atom(u):
        s = fmt(u)
        return s if isinstance(u, _ATOMS) else f"({s})"

    def fmt(u):
        if isinstance(u, Var):
            return f"v{u.index}"
        if isinstance(u, Gen):
            return f"x{u.index}"
        if isinstance(u, Ident):
            return "e"
        if isinstance(u, Mul):
            right = fmt(u.right)
            if isinstance(u.right, Mul):
                right = f"({right})"
            return f"{fmt(u.left)}*{right}"
        if isinstance(u, Inv):
            return f"{atom(u.arg)}^-1"
        if isinstance(u, Pow):
            return f"{atom(u.base)}^{u.exp}"
        if isinstance(u, Vec):
            return "[" + ",".join(sc(k) for k in u.coords) + "]"
        if isinstance(u, Scale):
            return f"{sc(u.scalar)}.{atom(u.arg)}"
        if isinstance(u, Add):
            right = fmt(u.right)
            if isinstance(u.right, Add):
                right = f"({right})"
            return f"{fmt(u.left)} + {right}"
        raise TypeError(f"not a term: {u!r}")

    return fmt(t)


def substitute(t: Term, assignment, F: Variety):
    """Value of the polynomial operation t at the given elements of F."""
    assignment = tuple(assignment)
    if len(assignment) < arity(t):
        raise AlgebraError(f"term of arity {arity(t)} given {len(assignment)} arguments")
    for a in assignment:
        F.check(a)

    def ev(u):
        if isinstance(u, Var):
            return assignment[u.index - 1]
        if isinstance(u, Gen):
            return F.gen(u.index)
        if isinstance(u, Ident):
            return F.identity()
        if isinstance(u, Mul):
            return F.mul(ev(u.left), ev(u.right))
        if isinstance(u, Inv):
            return F.inv(ev(u.arg))
        if isinstance(u, Pow):
            return F.power(ev(u.base), u.exp)
        if isinstance(u, Vec):
            return F.vector(u.coords)
        if isinstance(u, Scale):
            return F.scale(u.scalar, ev(u.arg))
        if isinstance(u, Add):
            return F.add(ev(u.left), ev(u.right))
        raise TypeError(f"not a term: {u!r}")

    return ev(t)


def canonicalize(t: Term, F: Variety):
    if arity(t):
        raise AlgebraError("canonicalize needs a ground term")
    return substitute(t, (), F)


def parse_element(text: str, F: Variety):
    return canonicalize(parse_term(text, F), F)


def element_term(a, F: Variety, as_variables: bool = False) -> Term:
    """Term whose value is a; generators become variables if asked."""
    if F.is_module:
        if not as_variables:
            return Vec(a.coords)
        R = F.ring
        t = None
        for i, c in enumerate(a.coords, 1):
            if c == R.zero:
                continue
            piece = Scale(c, Var(i))
            t = piece if t is None else Add(t, piece)
        return t if t is not None else Ident()
    return parse_term(F.format(a, var=as_variables), F)
