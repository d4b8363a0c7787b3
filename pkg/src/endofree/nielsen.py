"""Nielsen reduction of tuples of free group words.

Words are reduced tuples of signed generator indices.  The descent measure
is total length; each step applies the elementary move that shortens one
entry the most, ties broken by the first move in (i, j, side, sign) order.
Greedy descent can stall on a basis without any shortening move (it happens
from rank 3), so a stalled tuple is settled by Stallings folding: the tuple
is a basis iff it generates F_n, and F_n is Hopfian.
"""
from __future__ import annotations

from .munn import concat_reduced, inverse_word


def _moves(n):
    for i in range(n):
        for j in range(n):
            if i != j:
                for side in ("right", "left"):
                    for sign in (1, -1):
                        yield i, j, side, sign


def _apply(u, v, side, sign):
    piece = v if sign > 0 else inverse_word(v)
    return concat_reduced(u, piece) if side == "right" else concat_reduced(piece, u)


def nielsen_reduce(words):
    """Return (reduced words, tracking words, moves made).

    The tracking tuple t satisfies nu(t_i) = reduced_i, where nu is the
    endomorphism x_i -> words[i].
    """
    w = [tuple(x) for x in words]
    n = len(w)
    t = [(i + 1,) for i in range(n)]
    steps = 0
    while all(w):
        best = None
        for i, j, side, sign in _moves(n):
            cand = _apply(w[i], w[j], side, sign)
            gain = len(w[i]) - len(cand)
            if gain > 0 and (best is None or gain > best[0]):
                best = (gain, i, j, side, sign, cand)
        if best is None:
            break
        _, i, j, side, sign, cand = best
        w[i] = cand
        t[i] = _apply(t[i], t[j], side, sign)
        steps += 1
    return tuple(w), tuple(t), steps


def _fold_inverse(words, n):
    """Stallings folding of the petal graph, tracking readings in the y_i.

    Edges are [tail, letter > 0, head, y-word].  Invariant: for every closed
    path at the base 0, substituting words[i] for y_(i+1) in its y-reading
    gives its letter reading.  Returns expressions of x_1..x_n in the y_i,
    or None when some generator is not in the generated subgroup.
    """
    edges = []
    fresh = 1
    for i, w in enumerate(words):
        if not w:
            continue
        prev = 0
        for k, a in enumerate(w):
            nxt = 0 if k == len(w) - 1 else fresh
            if nxt:
                fresh += 1
            y = (i + 1,) if k == 0 else ()
            edges.append([prev, a, nxt, y] if a > 0 else [nxt, -a, prev, inverse_word(y)])
            prev = nxt

    def steps(v):
        for idx, (t, a, h, y) in enumerate(edges):
            if t == v:
                yield idx, a, h, y
            if h == v:
                yield idx, -a, t, inverse_word(y)

    changed = True
    while changed:
        changed = False
        verts = sorted({e[0] for e in edges} | {e[2] for e in edges})
        for u in verts:
            seen = {}
            for idx, a, v, y in steps(u):
                if a not in seen:
                    seen[a] = (idx, v, y)
                    continue
                i1, v1, p1 = seen[a]
                i2, v2, p2 = idx, v, y
                if v2 == 0 and v1 != 0:
                    i1, v1, p1, i2, v2, p2 = i2, v2, p2, i1, v1, p1
                del edges[i2]
                if v1 != v2:
                    c = concat_reduced(inverse_word(p1), p2)
                    ci = inverse_word(c)
                    for e in edges:
                        if e[0] == v2:
                            e[0], e[3] = v1, concat_reduced(c, e[3])
                        if e[2] == v2:
                            e[2], e[3] = v1, concat_reduced(e[3], ci)
                changed = True
                break
            if changed:
                break
    images = []
    for j in range(1, n + 1):
        hit = [y for _, a, v, y in steps(0) if a == j and v == 0]
        if not hit:
            return None
        images.append(hit[0])
    return tuple(images)


def basis_inverse(words):
    """Images of an inverse endomorphism if words form a free basis, else None."""
    n = len(words)
    red, track, _ = nielsen_reduce(words)
    if any(len(x) != 1 for x in red) or sorted(abs(x[0]) for x in red) != list(range(1, n + 1)):
        return _fold_inverse([tuple(w) for w in words], n)
    images = [None] * n
    for wi, ti in zip(red, track):
        a = wi[0]
        images[abs(a) - 1] = ti if a > 0 else inverse_word(ti)
    return tuple(images)


def is_free_basis(words) -> bool:
    return basis_inverse(words) is not None
