"""Free algebras of the four supported varieties and their canonical elements.

``FreeSemigroup``, ``FreeGroup``, ``FreeInverseSemigroup`` and ``FreeModule``
share one interface: generators, the basic operations on canonical elements,
homomorphic extension of a map on generators, deterministic enumeration,
seeded sampling and printing.  Elements are immutable values.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .munn import (MunnElement, concat_reduced, inverse_word, letter_key, munn_from_word,
                   munn_invert, munn_multiply, munn_relabel, munn_word, word_key)
from .rings import Ring


class AlgebraError(ValueError):
    """Operation outside the variety's signature or on foreign elements."""


class BudgetExceeded(RuntimeError):
    pass


DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True, slots=True)
class Word:
    letters: tuple

    def __post_init__(self):
        if not self.letters:
            raise AlgebraError("semigroup words are nonempty")


@dataclass(frozen=True, slots=True)
class GroupWord:
    letters: tuple


@dataclass(frozen=True, slots=True)
class Vector:
    coords: tuple


def multiply(a, b):
    """Product of two canonical elements of the same word variety."""
    if type(a) is not type(b):
        raise AlgebraError(f"cannot multiply {type(a).__name__} by {type(b).__name__}")
    if isinstance(a, Word):
        return Word(a.letters + b.letters)
    if isinstance(a, GroupWord):
        return GroupWord(concat_reduced(a.letters, b.letters))
    if isinstance(a, MunnElement):
        return munn_multiply(a, b)
    raise AlgebraError("modules have no binary product")


def invert(a):
    if isinstance(a, GroupWord):
        return GroupWord(inverse_word(a.letters))
    if isinstance(a, MunnElement):
        return munn_invert(a)
    raise AlgebraError(f"no inversion on {type(a).__name__}")


def _format_letters(w, var=False) -> str:
    if not w:
        return "e"
    sym = "v" if var else "x"
    parts = []
    for a, run in itertools.groupby(w):
        k = len(list(run))
        base = f"{sym}{abs(a)}"
        e = k if a > 0 else -k
        parts.append(base if e == 1 else f"{base}^{e}")
    return "*".join(parts)


class Variety:
    kind = ""
    name = ""
    has_product = True
    has_inverse = False
    has_identity = False
    is_module = False
    rank: int

    # --- generators and checks ---

    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(1, self.rank + 1))

    def gen(self, i: int):
        raise NotImplementedError

    def check_index(self, i: int):
        if not 1 <= i <= self.rank:
            raise AlgebraError(f"generator x{i} out of range for rank {self.rank}")

    def check(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        self.check(a)
        self.check(b)
        return multiply(a, b)

    def inv(self, a):
        self.check(a)
        return invert(a)

    def identity(self):
        raise AlgebraError(f"{self.name} has no identity element")

    def power(self, a, k: int):
        if k == 0:
            return self.identity()
        if k < 0:
            a, k = self.inv(a), -k
        out = a
        for _ in range(k - 1):
            out = multiply(out, a)
        return out

    # --- structure ---

    def evaluate(self, a, images):
        """Image of a under the homomorphism sending x_i to images[i-1]."""
        raise NotImplementedError

    def support(self, a) -> frozenset:
        raise NotImplementedError

    def size(self, a) -> int:
        raise NotImplementedError

    def sort_key(self, a):
        raise NotImplementedError

    def is_constant(self, a) -> bool:
        return False

    def constants(self) -> tuple:
        """Elements fixed by every endomorphism (finite in all four varieties)."""
        return ()

    def format(self, a, var=False) -> str:
        raise NotImplementedError

    def enumerate(self, bound: int, budget: int = DEFAULT_BUDGET) -> list:
        raise NotImplementedError

    def random_element(self, rng, max_size: int, letters=None):
        raise NotImplementedError

    def letter_image(self, a: int):
        """Element for the signed letter a (x_|a| or its inverse)."""
        g = self.gen(abs(a))
        return g if a > 0 else self.inv(g)

    def _letter_alphabet(self, letters):
        idx = sorted(letters) if letters is not None else range(1, self.rank + 1)
        return list(idx)

    def spec(self) -> str:
        return f"{self.name}({self.rank})"


@dataclass(frozen=True)
class FreeSemigroup(Variety):
    rank: int
    kind = "FreeSemigroup"
    name = "free-semigroup"

    def __post_init__(self):
        if self.rank < 1:
            raise AlgebraError("rank must be positive")

    def gen(self, i):
        self.check_index(i)
        return Word((i,))

    def check(self, a):
        if not isinstance(a, Word) or any(not 1 <= x <= self.rank for x in a.letters):
            raise AlgebraError(f"{a!r} is not an element of {self.spec()}")

    def evaluate(self, a, images):
        parts = [images[x - 1].letters for x in a.letters]
        return Word(tuple(itertools.chain.from_iterable(parts)))

    def support(self, a):
        return frozenset(a.letters)

    def size(self, a):
        return len(a.letters)

    def sort_key(self, a):
        return (len(a.letters), a.letters)

    def reverse(self, a):
        return Word(a.letters[::-1])

    def format(self, a, var=False):
        return _format_letters(a.letters, var)

    def word_of(self, a) -> tuple:
        return a.letters

    def enumerate(self, bound, budget=DEFAULT_BUDGET):
        total = sum(self.rank ** k for k in range(1, bound + 1))
        if total > budget:
            raise BudgetExceeded(f"{total} elements exceed budget {budget}")
        out = []
        for k in range(1, bound + 1):
            out.extend(Word(w) for w in itertools.product(range(1, self.rank + 1), repeat=k))
        return out

    def random_element(self, rng, max_size, letters=None):
        alpha = self._letter_alphabet(letters)
        k = rng.between(1, max_size)
        return Word(tuple(rng.choice(alpha) for _ in range(k)))


@dataclass(frozen=True)
class FreeGroup(Variety):
    rank: int
    kind = "FreeGroup"
    name = "free-group"
    has_inverse = True
    has_identity = True

    def __post_init__(self):
        if self.rank < 1:
            raise AlgebraError("rank must be positive")

    def gen(self, i):
        self.check_index(i)
        return GroupWord((i,))

    def identity(self):
        return GroupWord(())

    def check(self, a):
        if not isinstance(a, GroupWord) or any(not 1 <= abs(x) <= self.rank for x in a.letters):
            raise AlgebraError(f"{a!r} is not an element of {self.spec()}")

    def evaluate(self, a, images):
        out = ()
        inv_cache = {}
        for x in a.letters:
            if x > 0:
                piece = images[x - 1].letters
            else:
                piece = inv_cache.get(-x)
                if piece is None:
                    piece = inv_cache[-x] = inverse_word(images[-x - 1].letters)
            out = concat_reduced(out, piece)
        return GroupWord(out)

    def support(self, a):
        return frozenset(abs(x) for x in a.letters)

    def size(self, a):
        return len(a.letters)

    def sort_key(self, a):
        return (len(a.letters), word_key(a.letters))

    def is_constant(self, a):
        return not a.letters

    def constants(self):
        return (self.identity(),)

    def reverse(self, a):
        return GroupWord(a.letters[::-1])

    def format(self, a, var=False):
        return _format_letters(a.letters, var)

    def word_of(self, a) -> tuple:
        return a.letters

    def enumerate(self, bound, budget=DEFAULT_BUDGET):
        n = self.rank
        total = 1 + sum(2 * n * (2 * n - 1) ** (k - 1) for k in range(1, bound + 1))
        if total > budget:
            raise BudgetExceeded(f"{total} elements exceed budget {budget}")
        alphabet = sorted([i for i in range(1, n + 1)] + [-i for i in range(1, n + 1)],
                          key=letter_key)
        out = [GroupWord(())]
        layer = [()]
        for _ in range(bound):
            layer = [w + (a,) for w in layer for a in alphabet if not (w and w[-1] == -a)]
            out.extend(GroupWord(w) for w in layer)
        return out

    def random_element(self, rng, max_size, letters=None):
        alpha = self._letter_alphabet(letters)
        signed = [s * i for i in alpha for s in (1, -1)]
        k = rng.between(0, max_size)
        w = ()
        for _ in range(k):
            w = concat_reduced(w, (rng.choice(signed),))
        return GroupWord(w)


@dataclass(frozen=True)
class FreeInverseSemigroup(Variety):
    rank: int
    kind = "FreeInverseSemigroup"
    name = "free-inverse"
    has_inverse = True

    def __post_init__(self):
        if self.rank < 1:
            raise AlgebraError("rank must be positive")

    def gen(self, i):
        self.check_index(i)
        return munn_from_word((i,))

    def check(self, a):
        if not isinstance(a, MunnElement) or a.max_letter > self.rank:
            raise AlgebraError(f"{a!r} is not an element of {self.spec()}")

    def from_word(self, w) -> MunnElement:
        return munn_from_word(tuple(w))

    def evaluate(self, a, images):
        inv_images = {}
        out = None
        for x in munn_word(a):
            if x > 0:
                piece = images[x - 1]
            else:
                piece = inv_images.get(-x)
                if piece is None:
                    piece = inv_images[-x] = munn_invert(images[-x - 1])
            out = piece if out is None else munn_multiply(out, piece)
        return out

    def support(self, a):
        return a.letters()

    def size(self, a):
        return a.size

    def sort_key(self, a):
        return (a.size, word_key(munn_word(a)))

    def reverse(self, a):
        # reversal = (letterwise inversion) after (semigroup inversion)
        return munn_relabel(munn_invert(a), lambda x: -x)

    def format(self, a, var=False):
        return _format_letters(munn_word(a), var)

    def word_of(self, a) -> tuple:
        return munn_word(a)

    def enumerate(self, bound, budget=DEFAULT_BUDGET):
        n = self.rank
        total = sum((2 * n) ** k for k in range(1, bound + 1))
        if total > budget:
            raise BudgetExceeded(f"{total} source words exceed budget {budget}")
        alphabet = sorted([i for i in range(1, n + 1)] + [-i for i in range(1, n + 1)],
                          key=letter_key)
        seen = set()
        for k in range(1, bound + 1):
            for w in itertools.product(alphabet, repeat=k):
                seen.add(munn_from_word(w))
        return sorted(seen, key=self.sort_key)

    def random_element(self, rng, max_size, letters=None):
        alpha = self._letter_alphabet(letters)
        signed = [s * i for i in alpha for s in (1, -1)]
        k = rng.between(1, max_size)
        return munn_from_word(tuple(rng.choice(signed) for _ in range(k)))


@dataclass(frozen=True)
class FreeModule(Variety):
    ring: Ring
    rank: int
    kind = "FreeModule"
    name = "free-module"
    has_product = False
    has_identity = True
    is_module = True

    def __post_init__(self):
        if self.rank < 1:
            raise AlgebraError("rank must be positive")

    def spec(self):
        return f"{self.name}({self.ring.name},{self.rank})"

    def gen(self, i):
        self.check_index(i)
        R = self.ring
        return Vector(tuple(R.one if j == i else R.zero for j in range(1, self.rank + 1)))

    def identity(self):
        return self.zero()

    def zero(self):
        return Vector((self.ring.zero,) * self.rank)

    def check(self, a):
        if (not isinstance(a, Vector) or len(a.coords) != self.rank
                or not all(self.ring.contains(c) for c in a.coords)):
            raise AlgebraError(f"{a!r} is not an element of {self.spec()}")

    def mul(self, a, b):
        raise AlgebraError("modules have no binary product")

    def inv(self, a):
        raise AlgebraError("modules have no inversion")

    def power(self, a, k):
        raise AlgebraError("modules have no product")

    def add(self, a, b):
        R = self.ring
        return Vector(tuple(R.add(x, y) for x, y in zip(a.coords, b.coords)))

    def neg(self, a):
        return Vector(tuple(self.ring.neg(x) for x in a.coords))

    def scale(self, k, a):
        R = self.ring
        return Vector(tuple(R.mul(k, x) for x in a.coords))

    def vector(self, coords) -> Vector:
        return Vector(tuple(self.ring.coerce(c) for c in coords))

    def evaluate(self, a, images):
        R = self.ring
        acc = [R.zero] * self.rank
        for c, img in zip(a.coords, images):
            if c == R.zero:
                continue
            for r, y in enumerate(img.coords):
                acc[r] = R.add(acc[r], R.mul(c, y))
        return Vector(tuple(acc))

    def support(self, a):
        return frozenset(i + 1 for i, c in enumerate(a.coords) if c != self.ring.zero)

    def size(self, a):
        if self.ring.kind == "GF":
            return 0 if not self.support(a) else 1
        return max((abs(c) for c in a.coords), default=0)

    def sort_key(self, a):
        if self.ring.kind == "GF":
            return (self.size(a), a.coords)
        return (self.size(a), tuple((abs(c), c < 0) for c in a.coords))

    def is_constant(self, a):
        return all(c == self.ring.zero for c in a.coords)

    def constants(self):
        return (self.zero(),)

    def format(self, a, var=False):
        return "[" + ",".join(self.ring.format(c) for c in a.coords) + "]"

    def enumerate(self, bound, budget=DEFAULT_BUDGET):
        R = self.ring
        if R.kind == "GF":
            values = R.elements()
        else:
            values = [R.from_int(c) for c in range(-bound, bound + 1)]
        total = len(values) ** self.rank
        if total > budget:
            raise BudgetExceeded(f"{total} vectors exceed budget {budget}")
        out = [Vector(c) for c in itertools.product(values, repeat=self.rank)]
        return sorted(out, key=self.sort_key)

    def random_scalar(self, rng, max_size):
        R = self.ring
        if R.kind == "GF":
            return rng.below(R.order)
        return R.from_int(rng.between(-max_size, max_size))

    def random_element(self, rng, max_size, letters=None):
        alpha = set(self._letter_alphabet(letters))
        R = self.ring
        return Vector(tuple(self.random_scalar(rng, max_size) if i in alpha else R.zero
                            for i in range(1, self.rank + 1)))


def make_variety(kind: str, rank: int, ring: Ring | None = None) -> Variety:
    k = kind.lower().replace("_", "-")
    if k in ("free-semigroup", "semigroup", "freesemigroup"):
        return FreeSemigroup(rank)
    if k in ("free-group", "group", "freegroup"):
        return FreeGroup(rank)
    if k in ("free-inverse", "free-inverse-semigroup", "inverse", "freeinversesemigroup"):
        return FreeInverseSemigroup(rank)
    if k in ("free-module", "module", "freemodule"):
        if ring is None:
            raise AlgebraError("a free module needs a ring")
        return FreeModule(ring, rank)
    raise AlgebraError(f"unknown variety {kind!r}")


def constants(F: Variety) -> tuple:
    return F.constants()


def enumerate_elements(F: Variety, size_bound: int, budget: int = DEFAULT_BUDGET) -> list:
    if size_bound < 1:
        raise AlgebraError("size bound must be at least 1")
    return F.enumerate(size_bound, budget)


__all__ = [
    "AlgebraError", "BudgetExceeded", "Word", "GroupWord", "Vector", "MunnElement",
    "FreeSemigroup", "FreeGroup", "FreeInverseSemigroup", "FreeModule", "Variety",
    "make_variety", "multiply", "invert", "constants", "enumerate_elements",
]
