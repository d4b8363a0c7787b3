"""Munn trees: the canonical form of free inverse semigroup elements.

A vertex is a freely reduced group word (tuple of signed generator indices).
The tree of an element is a finite prefix-closed vertex set containing the
root ``()``; a prefix-closed set of reduced words is exactly the vertex set
of a connected subtree of the Cayley graph of the free group, so storing
vertices determines the edges.
"""
from __future__ import annotations

from dataclasses import dataclass, field


def letter_key(a: int):
    # x1 < x1^-1 < x2 < x2^-1 < ...
    return (abs(a), a < 0)


def word_key(w):
    return tuple(letter_key(a) for a in w)


def reduce_word(w) -> tuple:
    out = []
    for a in w:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def concat_reduced(u: tuple, v: tuple) -> tuple:
    """Free reduction of u*v for already reduced u and v."""
    if not u or not v or u[-1] != -v[0]:
        return u + v
    i = 0
    nu = len(u)
    while i < nu and i < len(v) and u[nu - 1 - i] == -v[i]:
        i += 1
    return u[: nu - i] + v[i:]


def inverse_word(w) -> tuple:
    return tuple(-a for a in reversed(w))


@dataclass(frozen=True, slots=True)
class MunnElement:
    vertices: frozenset
    terminus: tuple
    # largest generator index used; derived, kept for cheap membership checks
    max_letter: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        if not self.max_letter:
            top = max((abs(v[-1]) for v in self.vertices if v), default=0)
            object.__setattr__(self, "max_letter", top)

    @property
    def edges(self) -> frozenset:
        """Unordered edges {parent, child} of the tree."""
        return frozenset(frozenset((v[:-1], v)) for v in self.vertices if v)

    def is_idempotent(self) -> bool:
        return not self.terminus

    @property
    def size(self) -> int:
        # every edge off the root-terminus path is walked twice
        return 2 * (len(self.vertices) - 1) - len(self.terminus)

    def letters(self) -> frozenset:
        return frozenset(abs(v[-1]) for v in self.vertices if v)


def munn_from_word(word) -> MunnElement:
    if not word:
        raise ValueError("the free inverse semigroup has no empty word")
    cur = ()
    verts = {cur}
    for a in word:
        if cur and cur[-1] == -a:
            cur = cur[:-1]
        else:
            cur = cur + (a,)
            verts.add(cur)
    return MunnElement(frozenset(verts), cur)


def munn_multiply(a: MunnElement, b: MunnElement) -> MunnElement:
    t = a.terminus
    if not t:
        return MunnElement(a.vertices | b.vertices, b.terminus, max(a.max_letter, b.max_letter))
    verts = set(a.vertices)
    verts.update([concat_reduced(t, v) for v in b.vertices])
    return MunnElement(frozenset(verts), concat_reduced(t, b.terminus),
                       max(a.max_letter, b.max_letter))


def munn_invert(a: MunnElement) -> MunnElement:
    g = inverse_word(a.terminus)
    return MunnElement(frozenset(concat_reduced(g, v) for v in a.vertices), g, a.max_letter)


def munn_relabel(a: MunnElement, f) -> MunnElement:
    """Apply a signed letter map f (compatible with inversion) to every vertex."""
    return MunnElement(frozenset(tuple(f(x) for x in v) for v in a.vertices),
                       tuple(f(x) for x in a.terminus))


def munn_word(a: MunnElement) -> tuple:
    """Lexicographically least word of minimal length representing a.

    Children are visited in letter order; at vertices on the root-terminus
    path the branch towards the terminus is taken last and never returned from.
    """
    children = {}
    for v in a.vertices:
        if v:
            children.setdefault(v[:-1], []).append(v)
    for kids in children.values():
        kids.sort(key=lambda v: letter_key(v[-1]))
    path = {a.terminus[:i] for i in range(len(a.terminus) + 1)}
    out = []

    def excursion(v):
        for c in children.get(v, ()):
            out.append(c[-1])
            excursion(c)
            out.append(-c[-1])

    v = ()
    while True:
        nxt = None
        for c in children.get(v, ()):
            if c in path:
                nxt = c
                continue
            out.append(c[-1])
            excursion(c)
            out.append(-c[-1])
        if nxt is None:
            break
        out.append(nxt[-1])
        v = nxt
    return tuple(out)


def is_valid_munn(a: MunnElement) -> bool:
    if () not in a.vertices or a.terminus not in a.vertices or len(a.vertices) < 2:
        return False
    for v in a.vertices:
        if v and (v[:-1] not in a.vertices or reduce_word(v) != v):
            return False
    return True
