"""Symbolic automorphisms of End(F).

Every built-in automorphism acts by conjugation, Phi(nu) = s o nu o s^-1,
for a bijection s of F described by a ``Bijection`` value.  ``apply_aut``
computes Phi(nu) from generator images: Phi(nu)(x_i) = s(nu(s^-1(x_i))).
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass

from . import linalg
from .endo import (Endo, apply_endo, compose, const_endo, endo_from_matrix, enumerate_P,
                   identity_endo, inverse_endo, make_endo, parse_endo,
                   random_endo)
from .munn import concat_reduced, inverse_word
from .rings import RingAut, parse_ring_aut
from .terms import parse_element
from .varieties import (DEFAULT_BUDGET, AlgebraError, FreeGroup, FreeInverseSemigroup,
                        FreeModule, FreeSemigroup, GroupWord, Variety, Word)
from .verdict import Verdict
from .rng import SplitMix64


class DomainError(AlgebraError):
    """A partial bijection was evaluated outside its table."""


class MalformedAutError(AlgebraError):
    """The data does not describe a quasi-inner automorphism as required."""


# ---------------------------------------------------------------- primes

def factorize(m: int) -> dict:
    out, d = {}, 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _is_prime(p):
    return p >= 2 and factorize(p) == {p: 1}


@dataclass(frozen=True)
class PrimePermutation:
    """Finite-support permutation of the primes, as sorted (p, image) pairs."""

    pairs: tuple = ()

    def __post_init__(self):
        keys = [p for p, _ in self.pairs]
        vals = [q for _, q in self.pairs]
        if not all(_is_prime(x) for x in keys + vals):
            raise AlgebraError("prime permutations act on primes only")
        if len(set(keys)) != len(keys) or set(keys) != set(vals):
            raise AlgebraError("not a permutation of its support")

    @classmethod
    def from_mapping(cls, mapping: dict):
        return cls(tuple(sorted((p, q) for p, q in mapping.items() if p != q)))

    @classmethod
    def swap(cls, p, q):
        return cls.from_mapping({p: q, q: p})

    def __call__(self, p: int) -> int:
        return dict(self.pairs).get(p, p)

    def inverse(self) -> "PrimePermutation":
        return PrimePermutation.from_mapping({q: p for p, q in self.pairs})

    def transport(self, m: int) -> int:
        """Multiplicative extension to positive integers."""
        if m < 1:
            raise AlgebraError("transport acts on positive integers")
        out = 1
        for p, e in factorize(m).items():
            out *= self(p) ** e
        return out

    def transport_signed(self, m: int) -> int:
        if m == 0:
            return 0
        return self.transport(m) if m > 0 else -self.transport(-m)

    def format(self) -> str:
        done, parts = set(), []
        for p, q in self.pairs:
            if p in done:
                continue
            if self(q) == p:
                parts.append(f"{p}<->{q}")
                done.update((p, q))
            else:
                parts.append(f"{p}->{q}")
                done.add(p)
        return ",".join(parts) if parts else "identity"


def parse_prime_perm(text: str) -> PrimePermutation:
    t = text.strip()
    if t in ("", "identity", "id"):
        return PrimePermutation()
    mapping = {}
    for part in t.split(","):
        m = re.fullmatch(r"\s*(\d+)\s*(<->|->)\s*(\d+)\s*", part)
        if not m:
            raise AlgebraError(f"bad prime permutation entry {part!r}")
        p, arrow, q = int(m.group(1)), m.group(2), int(m.group(3))
        mapping[p] = q
        if arrow == "<->":
            mapping[q] = p
    return PrimePermutation.from_mapping(mapping)


# ------------------------------------------------------------ bijections

class Bijection:
    """A bijection s of F with an exactly computable inverse."""

    variety: Variety

    def __call__(self, a):
        raise NotImplementedError

    def inverse(self) -> "Bijection":
        raise NotImplementedError

    def format(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class IdentityBij(Bijection):
    variety: Variety

    def __call__(self, a):
        return a

    def inverse(self):
        return self

    def format(self):
        return "identity"


@dataclass(frozen=True)
class EndoBij(Bijection):
    """An automorphism of F used as a bijection."""

    sigma: Endo

    def __post_init__(self):
        if inverse_endo(self.sigma) is None:
            raise AlgebraError(f"{self.sigma.format()} is not an automorphism")

    @property
    def variety(self):
        return self.sigma.variety

    def __call__(self, a):
        return apply_endo(self.sigma, a)

    def inverse(self):
        return EndoBij(inverse_endo(self.sigma))

    def format(self):
        return f"aut:{self.sigma.format()}"


@dataclass(frozen=True)
class MirrorWords(Bijection):
    """Word reversal; an anti-automorphism of each word variety."""

    variety: Variety

    def __post_init__(self):
        if not hasattr(self.variety, "reverse"):
            raise AlgebraError(f"no mirror on {self.variety.name}")

    def __call__(self, a):
        return self.variety.reverse(a)

    def inverse(self):
        return self

    def format(self):
        return "mirror"


@dataclass(frozen=True)
class Inversion(Bijection):
    variety: Variety

    def __post_init__(self):
        if not self.variety.has_inverse:
            raise AlgebraError(f"no inversion on {self.variety.name}")

    def __call__(self, a):
        return self.variety.inv(a)

    def inverse(self):
        return self

    def format(self):
        return "inversion"


@dataclass(frozen=True)
class PrimeExponent(Bijection):
    """x^m -> x^(pi-transported m) on the rank-one semigroup or group."""

    variety: Variety
    pi: PrimePermutation

    def __post_init__(self):
        if self.variety.rank != 1 or not isinstance(self.variety, (FreeSemigroup, FreeGroup)):
            raise AlgebraError("prime-exponent bijections live on monogenic semigroups and Z")

    def exponent(self, a) -> int:
        if isinstance(a, Word):
            return len(a.letters)
        return sum(1 if x > 0 else -1 for x in a.letters)

    def __call__(self, a):
        m = self.exponent(a)
        return self.variety.power(self.variety.gen(1), self.pi.transport_signed(m))

    def inverse(self):
        return PrimeExponent(self.variety, self.pi.inverse())

    def format(self):
        return f"prime-exponent:{self.pi.format()}"


def _twist_matrix(R, theta: RingAut, A):
    return tuple(tuple(theta.apply(R, x) for x in row) for row in A)


@dataclass(frozen=True)
class Twisted(Bijection):
    """Semilinear bijection v -> sigma(theta(v)) of a free module."""

    ring_aut: RingAut
    sigma: Endo

    def __post_init__(self):
        if not self.sigma.variety.is_module:
            raise AlgebraError("twisted bijections live on modules")
        if inverse_endo(self.sigma) is None:
            raise AlgebraError("sigma must be invertible")

    @property
    def variety(self):
        return self.sigma.variety

    def __call__(self, a):
        F = self.variety
        twisted = F.vector([self.ring_aut.apply(F.ring, c) for c in a.coords])
        return apply_endo(self.sigma, twisted)

    def inverse(self):
        F = self.variety
        theta_inv = self.ring_aut.inverse(F.ring)
        sig_inv = inverse_endo(self.sigma)
        return Twisted(theta_inv, endo_from_matrix(F, _twist_matrix(F.ring, theta_inv,
                                                                    sig_inv.matrix())))

    def format(self):
        return f"twisted:{self.ring_aut.format()}:{self.sigma.format()}"


@dataclass(frozen=True)
class Table(Bijection):
    """Finite table bijection.

    With ``fallback`` the table must permute its own key set and s is the
    identity elsewhere; without it, s is partial and evaluating outside
    the table raises DomainError.
    """

    variety: Variety
    pairs: tuple
    fallback: bool = True

    def __post_init__(self):
        keys = [a for a, _ in self.pairs]
        vals = [b for _, b in self.pairs]
        for a in keys + vals:
            self.variety.check(a)
        if len(set(keys)) != len(keys) or len(set(vals)) != len(vals):
            raise AlgebraError("table is not injective")
        if self.fallback and set(keys) != set(vals):
            raise AlgebraError("a table with identity fallback must permute its keys")

    @classmethod
    def swaps(cls, F, swaps, fallback=True):
        pairs = []
        for a, b in swaps:
            pairs += [(a, b), (b, a)]
        return cls(F, tuple(pairs), fallback)

    def __call__(self, a):
        for k, v in self.pairs:
            if k == a:
                return v
        if self.fallback:
            return a
        raise DomainError(f"{self.variety.format(a)} outside the table")

    def inverse(self):
        return Table(self.variety, tuple((b, a) for a, b in self.pairs), self.fallback)

    def format(self):
        F = self.variety
        return "table:" + ",".join(f"{F.format(a)}->{F.format(b)}" for a, b in self.pairs)


@dataclass(frozen=True)
class ComposeBij(Bijection):
    """parts[0] o parts[1] o ... (rightmost applied first)."""

    parts: tuple

    def __post_init__(self):
        if not self.parts:
            raise AlgebraError("empty composition")

    @property
    def variety(self):
        return self.parts[0].variety

    def __call__(self, a):
        for p in reversed(self.parts):
            a = p(a)
        return a

    def inverse(self):
        return ComposeBij(tuple(p.inverse() for p in reversed(self.parts)))

    def format(self):
        return "compose(" + ",".join(p.format() for p in self.parts) + ")"


@dataclass(frozen=True)
class FromAut(Bijection):
    """The main permutation a -> Phi(nu_a)(x) of a quasi-inner Phi."""

    phi: "EndAut"

    @property
    def variety(self):
        return self.phi.variety

    def __call__(self, a):
        return main_permutation(self.phi, a)

    def inverse(self):
        return FromAut(self.phi.inverse())

    def format(self):
        return f"main({self.phi.format()})"


# --------------------------------------------------------------- EndAut

class EndAut:
    variety: Variety

    def bijection(self) -> Bijection:
        raise NotImplementedError

    def inverse(self) -> "EndAut":
        raise NotImplementedError

    def format(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Inner(EndAut):
    sigma: Endo

    def __post_init__(self):
        if inverse_endo(self.sigma) is None:
            raise AlgebraError(f"inner automorphism by non-automorphism {self.sigma.format()}")

    @property
    def variety(self):
        return self.sigma.variety

    def bijection(self):
        return EndoBij(self.sigma)

    def inverse(self):
        return Inner(inverse_endo(self.sigma))

    def format(self):
        if self.sigma == identity_endo(self.variety):
            return "identity"
        return f"inner:{self.sigma.format()}"


@dataclass(frozen=True)
class ConjBij(EndAut):
    s: Bijection

    @property
    def variety(self):
        return self.s.variety

    def bijection(self):
        return self.s

    def inverse(self):
        return ConjBij(self.s.inverse())

    def format(self):
        return f"conj:{self.s.format()}"


@dataclass(frozen=True)
class Mirror(EndAut):
    variety: Variety

    def __post_init__(self):
        if not hasattr(self.variety, "reverse"):
            raise AlgebraError(f"the mirror automorphism needs a word variety, not {self.variety.name}")

    def bijection(self):
        return MirrorWords(self.variety)

    def inverse(self):
        return self

    def format(self):
        return "mirror"


@dataclass(frozen=True)
class PrimePerm(EndAut):
    variety: Variety
    pi: PrimePermutation

    def __post_init__(self):
        PrimeExponent(self.variety, self.pi)

    def bijection(self):
        return PrimeExponent(self.variety, self.pi)

    def inverse(self):
        return PrimePerm(self.variety, self.pi.inverse())

    def format(self):
        return f"prime-perm:{self.pi.format()}"


@dataclass(frozen=True)
class SemiInner(EndAut):
    ring_aut: RingAut
    sigma: Endo

    def __post_init__(self):
        Twisted(self.ring_aut, self.sigma)

    @property
    def variety(self):
        return self.sigma.variety

    def bijection(self):
        return Twisted(self.ring_aut, self.sigma)

    def inverse(self):
        inv = self.bijection().inverse()
        return SemiInner(inv.ring_aut, inv.sigma)

    def format(self):
        R = self.variety.ring
        rows = ",".join("[" + ",".join(R.format(x) for x in row) + "]"
                        for row in self.sigma.matrix())
        return f"semi-inner:{self.ring_aut.format()}:[{rows}]"


@dataclass(frozen=True)
class Compose(EndAut):
    """parts[0] o parts[1] o ... as automorphisms of End(F)."""

    parts: tuple

    def __post_init__(self):
        if not self.parts:
            raise AlgebraError("empty composition")
        if len({p.variety for p in self.parts}) != 1:
            raise AlgebraError("composed automorphisms live on different algebras")

    @property
    def variety(self):
        return self.parts[0].variety

    def bijection(self):
        return ComposeBij(tuple(p.bijection() for p in self.parts))

    def inverse(self):
        return Compose(tuple(p.inverse() for p in reversed(self.parts)))

    def format(self):
        return "compose(" + ",".join(p.format() for p in self.parts) + ")"


def identity_aut(F: Variety) -> Inner:
    return Inner(identity_endo(F))


def apply_aut(phi: EndAut, nu: Endo) -> Endo:
    F = phi.variety
    if nu.variety != F:
        raise AlgebraError(f"{phi.format()} acts on {F.spec()}, not {nu.variety.spec()}")
    if isinstance(phi, Compose):
        for part in reversed(phi.parts):
            nu = apply_aut(part, nu)
        return nu
    if isinstance(phi, SemiInner):
        R = F.ring
        sig = phi.sigma.matrix()
        twisted = _twist_matrix(R, phi.ring_aut, nu.matrix())
        out = linalg.mat_mul(R, linalg.mat_mul(R, sig, twisted), linalg.inverse_matrix(R, sig))
        return endo_from_matrix(F, out)
    s = phi.bijection()
    s_inv = s.inverse()
    return Endo(F, tuple(s(apply_endo(nu, s_inv(x))) for x in F.gens()))


def apply_aut_by_bijection(phi: EndAut, nu: Endo) -> Endo:
    """Same value as apply_aut, always through the conjugating bijection."""
    F = phi.variety
    s = phi.bijection()
    s_inv = s.inverse()
    return Endo(F, tuple(s(apply_endo(nu, s_inv(x))) for x in F.gens()))


def main_permutation(phi: EndAut, a):
    """s(a) = Phi(nu_a)(x), checked to be independent of the generator x."""
    F = phi.variety
    images = apply_aut(phi, const_endo(F, a)).images
    if any(b != images[0] for b in images):
        raise MalformedAutError(
            f"Phi(nu_a) is not constant on the basis for a = {F.format(a)}: "
            + ";".join(F.format(b) for b in images))
    return images[0]


# ------------------------------------------------------------- sampling

def sample_pairs(F: Variety, rng: SplitMix64, count: int, max_size: int):
    return [(random_endo(F, rng, max_size), random_endo(F, rng, max_size)) for _ in range(count)]


def verify_endaut(phi: EndAut, samples: int = 200, seed: int = 0, max_size: int = 5) -> Verdict:
    """Homomorphism law and injectivity of nu -> Phi(nu) on seeded samples.

    A Holds verdict is a statement about the sample only.
    """
    F = phi.variety
    rng = SplitMix64(seed)
    images = {}
    checked = 0
    for nu, mu in sample_pairs(F, rng, samples, max_size):
        try:
            lhs = apply_aut(phi, compose(nu, mu))
            pn, pm = apply_aut(phi, nu), apply_aut(phi, mu)
        except DomainError as exc:
            return Verdict.unknown(samples, checked, reason=str(exc), seed=seed)
        rhs = compose(pn, pm)
        checked += 1
        if lhs != rhs:
            return Verdict.fails({"nu": nu.format(), "mu": mu.format(),
                                  "Phi(nu.mu)": lhs.format(), "Phi(nu).Phi(mu)": rhs.format()},
                                 checked, seed=seed, scope="sample")
        for src, img in ((nu, pn), (mu, pm)):
            prev = images.setdefault(img.images, src)
            if prev != src:
                return Verdict.fails({"nu": prev.format(), "mu": src.format(),
                                      "common_image": img.format()}, checked,
                                     seed=seed, scope="sample")
    return Verdict.holds(None, checked, seed=seed, scope="sample")


# --------------------------------------------------- vectors in F^n

def is_diagonal(u) -> bool:
    return all(x == u[0] for x in u)


def vector_image(phi: EndAut, u) -> tuple:
    """phi-vector map: Phi(alpha_u) = alpha_v."""
    return apply_aut(phi, make_endo(phi.variety, u)).images


def vector_preimage(phi: EndAut, v) -> tuple:
    return vector_image(phi.inverse(), v)


def componentwise(nu: Endo, u) -> tuple:
    return tuple(apply_endo(nu, x) for x in u)


class PreconditionError(AlgebraError):
    pass


def check_delta_condition(phi: EndAut, nu: Endo, u) -> Verdict:
    F = phi.variety
    if not is_diagonal(vector_image(phi, u)):
        raise PreconditionError("the image of u is not on the diagonal")
    w = vector_image(phi, componentwise(nu, u))
    if is_diagonal(w):
        return Verdict.holds({"image": F.format(w[0])}, checked=1)
    return Verdict.fails({"image": [F.format(x) for x in w]}, checked=1)


def sample_elements(F: Variety, seed: int, count: int, max_size: int = 4, letters=None):
    rng = SplitMix64(seed)
    return [F.random_element(rng, max_size, letters) for _ in range(count)]


def check_autoact(phi: EndAut, nu: Endo, points) -> Verdict:
    """Phi(nu)(a) against the first coordinate of phi(nu^n(phi^-1(delta(a))))."""
    F = phi.variety
    lhs_endo = apply_aut(phi, nu)
    checked = 0
    for a in points:
        lhs = apply_endo(lhs_endo, a)
        pre = vector_preimage(phi, (a,) * F.rank)
        v = vector_image(phi, componentwise(nu, pre))
        checked += 1
        if not is_diagonal(v) or v[0] != lhs:
            return Verdict.fails({"a": F.format(a), "direct": F.format(lhs),
                                  "vector_route": [F.format(x) for x in v]}, checked)
    return Verdict.holds(None, checked)


def equal_in_effect(phi1: EndAut, phi2: EndAut, samples: int = 50, seed: int = 0,
                    max_size: int = 4) -> Verdict:
    """Compare Phi1, Phi2 on sampled nu, and separately test whether
    phi1 o phi2^-1 commutes with the sampled nu^n.  Status follows the direct
    comparison; ``info['criteria_agree']`` records whether both tests agree."""
    F = phi1.variety
    if phi2.variety != F:
        raise AlgebraError("automorphisms of different algebras")
    rng = SplitMix64(seed)
    direct_witness = None
    commute_witness = None
    checked = 0
    for _ in range(samples):
        nu = random_endo(F, rng, max_size)
        u = tuple(F.random_element(rng, max_size) for _ in range(F.rank))
        checked += 1
        if direct_witness is None:
            a, b = apply_aut(phi1, nu), apply_aut(phi2, nu)
            if a != b:
                direct_witness = {"nu": nu.format(), "Phi1(nu)": a.format(), "Phi2(nu)": b.format()}
        if commute_witness is None:
            left = vector_image(phi1, vector_preimage(phi2, componentwise(nu, u)))
            right = componentwise(nu, vector_image(phi1, vector_preimage(phi2, u)))
            if left != right:
                commute_witness = {"nu": nu.format(), "u": [F.format(x) for x in u]}
    agree = (direct_witness is None) == (commute_witness is None)
    info = dict(seed=seed, scope="sample", criteria_agree=agree,
                commutation="holds" if commute_witness is None else "fails")
    if commute_witness is not None:
        info["commutation_witness"] = commute_witness
    if direct_witness is None:
        return Verdict.holds(None, checked, **info)
    return Verdict.fails(direct_witness, checked, **info)


# --------------------------------------------- automorphism candidates

def _signed_perms(F: Variety):
    n = F.rank
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            yield make_endo(F, [F.letter_image(p * s) for p, s in zip(perm, signs)])


def _nielsen_ball(F: FreeGroup):
    n = F.rank
    start = tuple((i,) for i in range(1, n + 1))
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        yield make_endo(F, [GroupWord(w) for w in cur])
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for sign in (1, -1):
                    piece = cur[j] if sign > 0 else inverse_word(cur[j])
                    for new in (concat_reduced(cur[i], piece), concat_reduced(piece, cur[i])):
                        nxt = cur[:i] + (new,) + cur[i + 1:]
                        if nxt not in seen:
                            seen.add(nxt)
                            queue.append(nxt)


def _gl_all(F: FreeModule):
    R, n = F.ring, F.rank
    for entries in itertools.product(R.elements(), repeat=n * n):
        rows = tuple(tuple(entries[r * n:(r + 1) * n]) for r in range(n))
        if R.is_unit(linalg.determinant(R, rows)):
            yield endo_from_matrix(F, rows)


def _elementary_ball(F: FreeModule):
    R, n = F.ring, F.rank
    start = linalg.identity_matrix(R, n)
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                for c in (R.one, R.neg(R.one)):
                    E = [list(r) for r in linalg.identity_matrix(R, n)]
                    E[i][j] = c
                    gens.append(tuple(map(tuple, E)))
        D = [list(r) for r in linalg.identity_matrix(R, n)]
        D[i][i] = R.neg(R.one)
        gens.append(tuple(map(tuple, D)))
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        yield endo_from_matrix(F, cur)
        for g in gens:
            nxt = linalg.mat_mul(R, g, cur)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)


def automorphism_search_space(F: Variety, budget: int = DEFAULT_BUDGET):
    """(iterator of automorphisms, exact) where exact means the iterator
    covers all of Aut(F) within the budget."""
    n = F.rank
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    if isinstance(F, FreeSemigroup):
        return iter(enumerate_P(F, budget)), fact <= budget
    if isinstance(F, FreeInverseSemigroup):
        return _signed_perms(F), fact * 2 ** n <= budget
    if isinstance(F, FreeModule) and F.ring.kind == "GF":
        if F.ring.order ** (n * n) <= budget:
            return _gl_all(F), True
        return _elementary_ball(F), False
    if isinstance(F, FreeModule):
        return itertools.chain(_signed_perms_matrix(F), _elementary_ball(F)), False
    return itertools.chain(_signed_perms(F), _nielsen_ball(F)), False


def _signed_perms_matrix(F: FreeModule):
    R = F.ring
    for perm in itertools.permutations(range(F.rank)):
        for signs in itertools.product((R.one, R.neg(R.one)), repeat=F.rank):
            cols = []
            for p, s in zip(perm, signs):
                cols.append(F.scale(s, F.gen(p + 1)))
            yield make_endo(F, cols)


# --------------------------------------------------- quasi-inner tests

def _hint_sigma(phi: EndAut):
    """Automorphism agreeing with phi's bijection on the basis, if there is one."""
    F = phi.variety
    try:
        s = phi.bijection()
        sigma = make_endo(F, [s(x) for x in F.gens()])
    except (AlgebraError, ValueError):
        return None
    return sigma if inverse_endo(sigma) is not None else None


def _conjugates_P(phi, sigma, P):
    inv = inverse_endo(sigma)
    for gamma in P:
        if apply_aut(phi, gamma) != compose(compose(sigma, gamma), inv):
            return gamma
    return None


def check_potinner(phi: EndAut, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Search for sigma with Phi(gamma) = sigma gamma sigma^-1 on P, and for a
    basis among the columns of the matrix of Phi permuted by Phi(P).

    Exact (Holds or Fails) when Aut(F) is enumerated within the budget;
    otherwise a failed bounded search is Unknown.
    """
    from .matrix import basis_columns, matrix_of

    F = phi.variety
    P = enumerate_P(F, budget)
    info = {}
    checked = 0

    # basis among the columns, fixed setwise by Phi(P)
    M = matrix_of(phi)
    for j in basis_columns(M):
        col = [M.entries[i][j - 1] for i in range(F.rank)]
        if all(set(apply_endo(apply_aut(phi, g), x) for x in col) == set(col) for g in P):
            info["basis_column"] = j
            info["basis"] = [F.format(x) for x in col]
            break

    candidates, exact = automorphism_search_space(F, budget)
    hint = _hint_sigma(phi)
    if hint is not None:
        candidates = itertools.chain([hint], candidates)
    for sigma in candidates:
        if checked >= budget:
            exact = False
            break
        checked += 1
        if _conjugates_P(phi, sigma, P) is None:
            return Verdict.holds({"sigma": sigma.format(), **info}, checked, route="conjugation")
    if "basis" in info:
        return Verdict.holds(info, checked, route="basis")
    if exact:
        return Verdict.fails({"reason": "no automorphism conjugates P as Phi does",
                              "candidates": checked}, checked, route="exhaustive")
    return Verdict.unknown(budget, checked, route="bounded")


def normalize(phi: EndAut):
    """(sigma, Gamma) with Phi = Inner(sigma) o Gamma and Gamma fixing X and P."""
    F = phi.variety
    s = phi.bijection()
    sigma = make_endo(F, [s(x) for x in F.gens()])
    inv = inverse_endo(sigma)
    if inv is None:
        raise MalformedAutError(f"s(X) = {sigma.format()} is not a basis")
    gamma = Compose((Inner(inv), phi))
    for x in F.gens():
        if main_permutation(gamma, x) != x:
            raise MalformedAutError(f"normalized main permutation moves {F.format(x)}")
    for g in enumerate_P(F):
        if apply_aut(gamma, g) != g:
            raise MalformedAutError(f"normalized automorphism moves {g.format()}")
    return sigma, gamma


def check_subalgebra_preservation(phi: EndAut, letters, samples: int = 50, seed: int = 0,
                                  max_size: int = 4) -> Verdict:
    F = phi.variety
    S = frozenset(letters)
    for x in F.gens():
        if main_permutation(phi, x) != x:
            raise PreconditionError("automorphism is not normalized (main permutation moves X)")
    checked = 0
    for a in sample_elements(F, seed, samples, max_size, S):
        b = main_permutation(phi, a)
        checked += 1
        if not F.support(b) <= S:
            return Verdict.fails({"a": F.format(a), "s(a)": F.format(b)}, checked)
    return Verdict.holds(None, checked, seed=seed, scope="sample")


# ---------------------------------------------------------- text specs

def _split_top(text: str):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_aut(text: str, F: Variety) -> EndAut:
    t = text.strip()
    if t in ("identity", "id"):
        return identity_aut(F)
    if t == "mirror":
        return Mirror(F)
    if t.startswith("compose(") and t.endswith(")"):
        return Compose(tuple(parse_aut(p, F) for p in _split_top(t[len("compose("):-1])))
    head, _, rest = t.partition(":")
    if head == "inner":
        return Inner(parse_endo(rest, F))
    if head == "prime-perm":
        return PrimePerm(F, parse_prime_perm(rest))
    if head == "semi-inner":
        if not F.is_module:
            raise AlgebraError("semi-inner automorphisms need a module")
        ring_text, _, mat = rest.partition(":")
        return SemiInner(parse_ring_aut(ring_text), parse_endo(mat, F))
    if head == "conj":
        return ConjBij(parse_bijection(rest, F))
    raise AlgebraError(f"unknown automorphism {text!r}")


def parse_bijection(text: str, F: Variety) -> Bijection:
    t = text.strip()
    if t in ("identity", "id"):
        return IdentityBij(F)
    if t == "mirror":
        return MirrorWords(F)
    if t == "inversion":
        return Inversion(F)
    head, _, rest = t.partition(":")
    if head == "aut":
        return EndoBij(parse_endo(rest, F))
    if head == "prime-exponent":
        return PrimeExponent(F, parse_prime_perm(rest))
    if head == "table":
        swaps = []
        for part in _split_top(rest):
            a, sep, b = part.partition("<->")
            if not sep:
                raise AlgebraError(f"table entries are swaps a<->b, got {part!r}")
            swaps.append((parse_element(a, F), parse_element(b, F)))
        return Table.swaps(F, swaps)
    if head == "main":
        return FromAut(parse_aut(rest, F))
    raise AlgebraError(f"unknown bijection {text!r}")
