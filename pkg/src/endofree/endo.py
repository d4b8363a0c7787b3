"""Endomorphisms of a free algebra, stored as the tuple of generator images."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .munn import MunnElement, munn_word
from .nielsen import basis_inverse
from .rings import RingError
from .terms import Scale, Var, element_term, format_term
from .varieties import (DEFAULT_BUDGET, AlgebraError, BudgetExceeded, FreeGroup, FreeModule,
                        FreeSemigroup, GroupWord, Variety)
from .verdict import Verdict


@dataclass(frozen=True)
class Endo:
    variety: Variety
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.variety.rank:
            raise AlgebraError(f"{len(self.images)} images for rank {self.variety.rank}")
        for a in self.images:
            self.variety.check(a)

    def __call__(self, a):
        return apply_endo(self, a)

    def matrix(self):
        """Module view: entry (r, c) is coordinate r of the image of x_c."""
        if not self.variety.is_module:
            raise AlgebraError("matrix view exists only for modules")
        n = self.variety.rank
        return tuple(tuple(self.images[c].coords[r] for c in range(n)) for r in range(n))

    def format(self) -> str:
        return ";".join(self.variety.format(a) for a in self.images)

    def __repr__(self):
        return f"Endo({self.format()})"


def make_endo(F: Variety, images) -> Endo:
    return Endo(F, tuple(images))


def endo_from_matrix(F: FreeModule, rows) -> Endo:
    n = F.rank
    if len(rows) != n or any(len(r) != n for r in rows):
        raise AlgebraError(f"need a {n}x{n} matrix")
    return Endo(F, tuple(F.vector([rows[r][c] for r in range(n)]) for c in range(n)))


def parse_endo(text: str, F: Variety) -> Endo:
    """Parse "img1;img2;..." or, for modules, a bracketed row matrix."""
    from .terms import parse_element

    t = text.strip()
    if F.is_module and t.startswith("[["):
        rows = [r.strip(" []") for r in t[1:-1].split("],")]
        return endo_from_matrix(F, [[F.ring.parse_scalar(x) for x in r.split(",")] for r in rows])
    parts = [p for p in t.split(";")]
    return make_endo(F, [parse_element(p, F) for p in parts])


def apply_endo(nu: Endo, a):
    nu.variety.check(a)
    return nu.variety.evaluate(a, nu.images)


def compose(nu: Endo, mu: Endo) -> Endo:
    """nu after mu."""
    if nu.variety != mu.variety:
        raise AlgebraError("endomorphisms of different algebras")
    ev = nu.variety.evaluate
    return Endo(nu.variety, tuple(ev(a, nu.images) for a in mu.images))


def identity_endo(F: Variety) -> Endo:
    return Endo(F, F.gens())


def basis_endo(F: Variety, i: int) -> Endo:
    """nu_i: every generator goes to x_i."""
    F.check_index(i)
    return Endo(F, (F.gen(i),) * F.rank)


def const_endo(F: Variety, a) -> Endo:
    F.check(a)
    return Endo(F, (a,) * F.rank)


def permutation_endo(F: Variety, perm) -> Endo:
    """x_i -> x_{perm[i-1]} (perm is 1-based)."""
    return Endo(F, tuple(F.gen(p) for p in perm))


# --- inverses and automorphism tests ---

def _as_letter(F, a):
    """Signed letter if a is a generator or its inverse, else None."""
    if isinstance(a, MunnElement):
        w = munn_word(a)
        return w[0] if len(w) == 1 else None
    letters = a.letters
    return letters[0] if len(letters) == 1 else None


def inverse_endo(nu: Endo) -> Endo | None:
    """Exact two-sided inverse of nu, or None if nu is not an automorphism."""
    F = nu.variety
    n = F.rank
    if isinstance(F, FreeModule):
        try:
            inv = linalg.inverse_matrix(F.ring, nu.matrix())
        except RingError:
            return None
        return endo_from_matrix(F, inv)
    if isinstance(F, FreeGroup):
        imgs = basis_inverse([a.letters for a in nu.images])
        if imgs is None:
            return None
        return Endo(F, tuple(GroupWord(w) for w in imgs))
    letters = [_as_letter(F, a) for a in nu.images]
    if any(x is None for x in letters):
        return None
    if isinstance(F, FreeSemigroup) and any(x < 0 for x in letters):
        return None
    if sorted(abs(x) for x in letters) != list(range(1, n + 1)):
        return None
    images = [None] * n
    for i, x in enumerate(letters, 1):
        images[abs(x) - 1] = F.letter_image(i if x > 0 else -i)
    return Endo(F, tuple(images))


def is_automorphism(nu: Endo) -> Verdict:
    inv = inverse_endo(nu)
    if inv is not None:
        return Verdict.holds({"inverse": inv.format()}, checked=1)
    F = nu.variety
    if isinstance(F, FreeModule):
        det = linalg.determinant(F.ring, nu.matrix())
        return Verdict.fails({"determinant": F.ring.format(det)}, checked=1)
    if isinstance(F, FreeGroup):
        from .nielsen import nielsen_reduce
        red, _, _ = nielsen_reduce([a.letters for a in nu.images])
        return Verdict.fails({"nielsen_reduced": ";".join(F.format(GroupWord(w)) for w in red)},
                             checked=1)
    return Verdict.fails({"images": nu.format(),
                          "reason": "images are not a (signed) permutation of the generators"},
                         checked=1)


def is_permutational(nu: Endo) -> bool:
    gens = nu.variety.gens()
    return sorted(gens.index(a) if a in gens else -1 for a in nu.images) == list(range(len(gens)))


def enumerate_P(F: Variety, budget: int = DEFAULT_BUDGET) -> list:
    n = F.rank
    count = 1
    for k in range(2, n + 1):
        count *= k
    if count > budget:
        raise BudgetExceeded(f"{count} permutations exceed budget {budget}")
    return [permutation_endo(F, p) for p in itertools.permutations(range(1, n + 1))]


def _shift_letters(F, a, i):
    """Image of a one-letter element under x1 -> x_i."""
    images = list(F.gens())
    images[0] = F.gen(i)
    return F.evaluate(a, images)


def is_pseudo_diagonal(nu: Endo) -> Verdict:
    """Holds with a unary witness term w(v1) when nu(x_i) = w(x_i) for all i."""
    F = nu.variety
    first = nu.images[0]
    if not F.support(first) <= {1}:
        return Verdict.fails({"generator": "x1", "image": F.format(first),
                              "reason": "image uses a letter other than x1"}, checked=1)
    if F.is_module:
        witness = Scale(first.coords[0], Var(1))
        expected = [F.scale(first.coords[0], F.gen(i)) for i in range(1, F.rank + 1)]
    else:
        witness = element_term(first, F, as_variables=True)
        expected = [_shift_letters(F, first, i) for i in range(1, F.rank + 1)]
    for i, (got, want) in enumerate(zip(nu.images, expected), 1):
        if got != want:
            return Verdict.fails({"generator": f"x{i}", "image": F.format(got),
                                  "expected": F.format(want)}, checked=i)
    return Verdict.holds(format_term(witness, F), checked=F.rank, term=witness)


def is_constant_defined(nu: Endo) -> bool:
    return all(nu.variety.is_constant(a) for a in nu.images)


# --- Galois data, relative to explicit candidate sets ---

def _dedup(endos):
    seen, out = set(), []
    for e in endos:
        if e.images not in seen:
            seen.add(e.images)
            out.append(e)
    return out


def invariant_group(nu: Endo, candidates) -> list:
    """Candidates theta with nu o theta = nu."""
    out = []
    for theta in candidates:
        if inverse_endo(theta) is None:
            raise AlgebraError(f"candidate {theta.format()} is not an automorphism")
        if compose(nu, theta) == nu:
            out.append(theta)
    return _dedup(out)


def left_ideal_fixers(theta: Endo, candidates) -> list:
    """Candidates nu with nu o theta = nu."""
    if inverse_endo(theta) is None:
        raise AlgebraError(f"{theta.format()} is not an automorphism")
    return _dedup(nu for nu in candidates if compose(nu, theta) == nu)


def p_fixed_endos(F: Variety, size_bound: int, budget: int = DEFAULT_BUDGET) -> list:
    """The constant-image endomorphisms nu_a for all a of size at most the bound."""
    return [const_endo(F, a) for a in F.enumerate(size_bound, budget)]


def all_endos(F: Variety, size_bound: int, budget: int = DEFAULT_BUDGET) -> list:
    elems = F.enumerate(size_bound, budget)
    if len(elems) ** F.rank > budget:
        raise BudgetExceeded("too many endomorphisms for the budget")
    return [Endo(F, imgs) for imgs in itertools.product(elems, repeat=F.rank)]


def random_endo(F: Variety, rng, max_size: int) -> Endo:
    return Endo(F, tuple(F.random_element(rng, max_size) for _ in range(F.rank)))


def unary_endo(F: Variety, w) -> Endo:
    """Pseudo-diagonal endomorphism x_i -> w(x_i) for a one-letter element w in x1."""
    if not F.support(w) <= {1}:
        raise AlgebraError(f"{F.format(w)} is not a word in x1")
    if F.is_module:
        return Endo(F, tuple(F.scale(w.coords[0], g) for g in F.gens()))
    return Endo(F, tuple(_shift_letters(F, w, i) for i in range(1, F.rank + 1)))


__all__ = [
    "Endo", "make_endo", "parse_endo", "apply_endo", "compose", "identity_endo", "basis_endo",
    "const_endo", "permutation_endo", "inverse_endo", "is_automorphism", "is_permutational",
    "enumerate_P", "is_pseudo_diagonal", "is_constant_defined", "invariant_group",
    "left_ideal_fixers", "p_fixed_endos", "all_endos", "random_endo", "unary_endo",
    "endo_from_matrix",
]
