"""The matrix of an automorphism of End(F) with respect to the basis.

Entry (i, j) is Phi(nu_i)(x_j), where nu_i sends every generator to x_i.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .endo import (Endo, apply_endo, basis_endo, compose, enumerate_P, identity_endo,
                   inverse_endo, is_automorphism, is_constant_defined, is_pseudo_diagonal,
                   make_endo, unary_endo)
from .varieties import DEFAULT_BUDGET, AlgebraError, Variety
from .verdict import Status, Verdict, combine


@dataclass(frozen=True)
class BasisMatrix:
    variety: Variety
    entries: tuple
    provenance: object = None

    def __post_init__(self):
        n = self.variety.rank
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise AlgebraError(f"basis matrix must be {n}x{n}")
        for row in self.entries:
            for a in row:
                self.variety.check(a)

    @property
    def rank(self):
        return self.variety.rank

    def entry(self, i, j):
        return self.entries[i - 1][j - 1]

    def row(self, i):
        return self.entries[i - 1]

    def column(self, j):
        return tuple(r[j - 1] for r in self.entries)

    def format(self) -> str:
        F = self.variety
        return ";".join(",".join(F.format(a) for a in row) for row in self.entries)

    def table(self) -> str:
        F = self.variety
        cells = [[F.format(a) for a in row] for row in self.entries]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)

    def __eq__(self, other):
        return (isinstance(other, BasisMatrix) and self.variety == other.variety
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.variety, self.entries))


def make_matrix(F: Variety, rows) -> BasisMatrix:
    return BasisMatrix(F, tuple(tuple(r) for r in rows))


def parse_matrix(text: str, F: Variety) -> BasisMatrix:
    from .terms import parse_element

    rows = [[parse_element(c, F) for c in r.split(",")] for r in text.split(";")]
    return make_matrix(F, rows)


def matrix_of(phi) -> BasisMatrix:
    from .endaut import apply_aut

    F = phi.variety
    rows = []
    for i in range(1, F.rank + 1):
        mu = apply_aut(phi, basis_endo(F, i))
        rows.append(mu.images)
    return BasisMatrix(F, tuple(rows), phi)


def inverse_matrix_of(phi) -> BasisMatrix:
    """Matrix of Phi^-1, from the symbolic inverse."""
    return matrix_of(phi.inverse())


# ------------------------------------------------- definitional checks

def _row_candidates(F: Variety, budget: int):
    from .endaut import automorphism_search_space

    return automorphism_search_space(F, budget)


def check_row_permutation(M: BasisMatrix, budget: int = DEFAULT_BUDGET) -> Verdict:
    """For every row permutation gamma find an automorphism mapping row i
    entrywise onto row gamma(i)."""
    F = M.variety
    n = M.rank
    witnesses = {}
    checked = 0
    for perm in itertools.permutations(range(n)):
        found = None
        candidates, exact = _row_candidates(F, budget)
        tried = 0
        for cand in candidates:
            if tried >= budget:
                exact = False
                break
            tried += 1
            if all(apply_endo(cand, M.entries[i][j]) == M.entries[perm[i]][j]
                   for i in range(n) for j in range(n)):
                found = cand
                break
        checked += tried
        label = "".join(str(p + 1) for p in perm)
        if found is None:
            if exact:
                return Verdict.fails({"row_permutation": label,
                                      "reason": "no automorphism realizes it"}, checked)
            return Verdict.unknown(budget, checked, row_permutation=label)
        witnesses[label] = found.format()
    return Verdict.holds(witnesses, checked)


def check_row_projection(M: BasisMatrix) -> Verdict:
    """mu_i(u_{j,k}) = u_{i,k} with mu_i the endomorphism whose images are row i."""
    F = M.variety
    n = M.rank
    checked = 0
    for i in range(1, n + 1):
        mu = make_endo(F, M.row(i))
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                checked += 1
                got = apply_endo(mu, M.entry(j, k))
                if got != M.entry(i, k):
                    return Verdict.fails({"i": i, "j": j, "k": k, "got": F.format(got),
                                          "expected": F.format(M.entry(i, k))}, checked)
    return Verdict.holds(None, checked)


def structural_properties(M: BasisMatrix):
    """(no row consists of constants, some column has pairwise distinct entries)."""
    F = M.variety
    const_rows = [i for i in range(1, M.rank + 1) if all(F.is_constant(a) for a in M.row(i))]
    if const_rows:
        v1 = Verdict.fails({"constant_row": const_rows[0]}, M.rank)
    else:
        v1 = Verdict.holds(None, M.rank)
    for j in range(1, M.rank + 1):
        col = M.column(j)
        if len(set(col)) == len(col):
            v2 = Verdict.holds({"column": j}, j)
            break
    else:
        v2 = Verdict.fails({"reason": "every column repeats an entry"}, M.rank)
    return v1, v2


def basis_columns(M: BasisMatrix) -> list:
    return [j for j in range(1, M.rank + 1) if is_automorphism(column_endo(M, j)).ok]


def column_endo(M: BasisMatrix, m: int) -> Endo:
    M.variety.check_index(m)
    return make_endo(M.variety, M.column(m))


def default_interpolation_tuples(F: Variety) -> list:
    """All n-tuples over the identity, the nu_i and P (deduplicated)."""
    pool = {}
    for e in [identity_endo(F)] + [basis_endo(F, i) for i in range(1, F.rank + 1)] + enumerate_P(F):
        pool.setdefault(e.images, e)
    return list(itertools.product(pool.values(), repeat=F.rank))


def _interp_ok(M, alpha, tup):
    n = M.rank
    return all(apply_endo(alpha, M.entry(i, j)) == apply_endo(tup[i - 1], M.entry(i, j))
               for i in range(1, n + 1) for j in range(1, n + 1))


def _solve_by_column(M: BasisMatrix, j: int, tup):
    """alpha with alpha(u_{i,j}) = alpha_i(u_{i,j}); column j is a basis."""
    F = M.variety
    sigma = column_endo(M, j)
    inv = inverse_endo(sigma)
    # beta = alpha o sigma has images alpha_i(u_{i,j}); alpha = beta o sigma^-1
    beta = make_endo(F, [apply_endo(tup[i - 1], M.entry(i, j)) for i in range(1, M.rank + 1)])
    return compose(beta, inv)


def check_interpolation(M: BasisMatrix, tuples=None, budget: int = DEFAULT_BUDGET,
                        search_bound: int = 2) -> Verdict:
    """Condition 3: each tuple (alpha_1..alpha_n) has a unique alpha with
    alpha(u_{i,j}) = alpha_i(u_{i,j}) for all i, j."""
    from .endo import all_endos

    F = M.variety
    if tuples is None:
        tuples = default_interpolation_tuples(F)
    bases = basis_columns(M)
    verdicts, details = [], []
    pool = None
    for tup in tuples:
        if len(tup) != M.rank:
            raise AlgebraError(f"interpolation tuple of length {len(tup)} for rank {M.rank}")
        label = [t.format() for t in tup]
        if bases:
            alpha = _solve_by_column(M, bases[0], tup)
            if _interp_ok(M, alpha, tup):
                v = Verdict.holds({"alpha": alpha.format(), "column": bases[0]}, 1, exact=True)
            else:
                v = Verdict.fails({"tuple": label, "reason": "constraints inconsistent",
                                   "forced": alpha.format()}, 1, exact=True)
        else:
            if pool is None:
                pool = all_endos(F, search_bound, budget)
            sols = []
            for alpha in pool:
                if _interp_ok(M, alpha, tup):
                    sols.append(alpha)
                    if len(sols) == 2:
                        break
            if len(sols) == 2:
                v = Verdict.fails({"tuple": label, "reason": "not unique",
                                   "solutions": [s.format() for s in sols]}, len(pool))
            elif len(sols) == 1:
                v = Verdict.unknown(budget, len(pool), tuple=label, found=sols[0].format(),
                                    reason="uniqueness beyond the search bound")
            else:
                v = Verdict.unknown(budget, len(pool), tuple=label,
                                    reason="no solution within the search bound")
        verdicts.append(v)
        details.append({"tuple": label, "status": v.status.value})
        if v.failed:
            return Verdict.fails(v.witness, len(verdicts), per_tuple=details)
    status = combine(verdicts)
    if status is Status.HOLDS:
        return Verdict.holds(None, len(verdicts), per_tuple=details)
    return Verdict.unknown(budget, len(verdicts), per_tuple=details)


def is_basis_matrix(M: BasisMatrix, budget: int = DEFAULT_BUDGET) -> Verdict:
    v1, v2 = structural_properties(M)
    parts = [check_row_permutation(M, budget), check_row_projection(M),
             check_interpolation(M, budget=budget), v1, v2]
    status = combine(parts)
    if status is Status.HOLDS:
        return Verdict.holds(None, sum(p.checked for p in parts))
    bad = next(p for p in parts if p.status is status)
    return Verdict(status, bad.witness, sum(p.checked for p in parts))


# -------------------------------------------- cross composites and words

def cross_composites(phi, k: int, m: int):
    """Phi(tau_k) o sigma_m with its classification.

    sigma_m is column m of the matrix of Phi, tau_k column k of the matrix
    of Phi^-1.  The value at x_i must be nu_i(u_{k,m}).
    """
    from .endaut import apply_aut

    F = phi.variety
    M = matrix_of(phi)
    V = inverse_matrix_of(phi)
    sigma = column_endo(M, m)
    tau = column_endo(V, k)
    comp = compose(apply_aut(phi, tau), sigma)
    for i in range(1, F.rank + 1):
        want = apply_endo(basis_endo(F, i), M.entry(k, m))
        if comp.images[i - 1] != want:
            raise AlgebraError(f"composite at x{i} is {F.format(comp.images[i - 1])}, "
                               f"expected {F.format(want)}")
    pd = is_pseudo_diagonal(comp)
    if pd.ok:
        kind = "pseudo-diagonal"
    elif is_constant_defined(comp):
        kind = "constant-defined"
    else:
        kind = "neither"
    return comp, {"kind": kind, "pseudo_diagonal": pd}


def nonconstant_triples(phi):
    """All (m, k, t) in lex order with nu_1(u_{k,m}) and nu_1(v_{m,t}) non-constant."""
    F = phi.variety
    M = matrix_of(phi)
    V = inverse_matrix_of(phi)
    nu1 = basis_endo(F, 1)
    n = F.rank
    for m in range(1, n + 1):
        for k in range(1, n + 1):
            w1 = apply_endo(nu1, M.entry(k, m))
            if F.is_constant(w1):
                continue
            for t in range(1, n + 1):
                w2 = apply_endo(nu1, V.entry(m, t))
                if not F.is_constant(w2):
                    yield (m, k, t), w1, w2


def find_nonconstant_triple(phi):
    """Least (m, k, t) with nu_1(u_{k,m}) and nu_1(v_{m,t}) both non-constant."""
    for triple, _, _ in nonconstant_triples(phi):
        return triple
    raise AlgebraError("no non-constant triple; the automorphism data is malformed")


def two_matrix_criterion(phi) -> Verdict:
    """Look for a triple whose two unary words give pseudo-diagonal automorphisms.

    The least non-constant triple is tried first, then the others in lex
    order.  Holds is cross-checked against the existence of a basis column.
    """
    F = phi.variety
    first = None
    tried = 0
    for triple, w1, w2 in nonconstant_triples(phi):
        tried += 1
        words = [F.format(w1), F.format(w2)]
        if first is None:
            first = {"triple": list(triple), "words": words}
        if all(is_automorphism(unary_endo(F, w)).ok for w in (w1, w2)):
            cols = basis_columns(matrix_of(phi))
            witness = {"triple": list(triple), "words": words}
            if not cols:
                return Verdict.fails({**witness,
                                      "reason": "criterion holds but no column is a basis"}, tried)
            return Verdict.holds({**witness, "basis_columns": cols}, tried)
    if first is None:
        raise AlgebraError("no non-constant triple; the automorphism data is malformed")
    return Verdict.fails({**first, "reason": "no triple gives two unary automorphisms"}, tried)


def same_matrix_residual(phi1, phi2):
    """Compose(phi2^-1, phi1); fixes every nu_i when the two matrices agree."""
    from .endaut import Compose

    return Compose((phi2.inverse(), phi1))

