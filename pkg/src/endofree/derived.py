"""Derived polynomial operations and central permutations.

Given a bijection s of F and a k-ary term w, the derived operation is
determined by the single element s(w(x1..xk)); its value at (a1..ak) is
that element evaluated at a1..ak, x_{k+1}..x_n.
"""
from __future__ import annotations

from dataclasses import dataclass

from .endaut import Bijection, EndAut, apply_aut, sample_pairs
from .endo import Endo, apply_endo, compose, inverse_endo, make_endo, random_endo
from .rng import SplitMix64
from .terms import Add, Ident, Inv, Mul, Pow, Scale, Term, Var, arity, format_term, substitute
from .varieties import AlgebraError, Variety
from .verdict import Verdict


@dataclass(frozen=True)
class DerivedOp:
    variety: Variety
    arity: int
    element: object
    source: Term

    def __call__(self, *args):
        return eval_derived(self, args)

    def format(self) -> str:
        return f"{self.variety.format(self.element)} (arity {self.arity})"


def derived_operation(s: Bijection, omega: Term) -> DerivedOp:
    F = s.variety
    k = arity(omega)
    if k > F.rank:
        raise AlgebraError(f"operation of arity {k} exceeds rank {F.rank}")
    w = s(substitute(omega, F.gens(), F))
    return DerivedOp(F, k, w, omega)


def eval_derived(op: DerivedOp, args) -> object:
    F = op.variety
    args = tuple(args)
    if len(args) != op.arity:
        raise AlgebraError(f"derived operation of arity {op.arity} given {len(args)} arguments")
    for a in args:
        F.check(a)
    images = args + F.gens()[op.arity:]
    return F.evaluate(op.element, images)


def signature_operations(F: Variety) -> list:
    """The basic operations of F as terms, restricted to arity <= rank.

    Rank one has no room for a binary operation, so a unary square and
    cube stand in as polynomial operations there.
    """
    ops = []
    if F.is_module:
        R = F.ring
        if F.rank >= 2:
            ops.append(Add(Var(1), Var(2)))
        scalars = list(R.elements()) if R.kind == "GF" else [R.from_int(-1), R.from_int(2)]
        ops += [Scale(k, Var(1)) for k in scalars]
        ops.append(Ident())
        return ops
    if F.rank >= 2:
        ops.append(Mul(Var(1), Var(2)))
    else:
        ops += [Pow(Var(1), 2), Pow(Var(1), 3)]
    if F.has_inverse:
        ops.append(Inv(Var(1)))
    if F.has_identity:
        ops.append(Ident())
    return ops


def _sample_args(F, rng, k, max_size):
    return tuple(F.random_element(rng, max_size) for _ in range(k))


def check_isom_deriv(s: Bijection, omega: Term, samples: int = 100, seed: int = 0,
                     max_size: int = 5) -> Verdict:
    """s(omega(a)) = omega*(s(a)) on seeded tuples a."""
    F = s.variety
    op = derived_operation(s, omega)
    rng = SplitMix64(seed)
    for n in range(1, samples + 1):
        args = _sample_args(F, rng, op.arity, max_size)
        lhs = s(substitute(omega, args, F))
        rhs = eval_derived(op, tuple(s(a) for a in args))
        if lhs != rhs:
            return Verdict.fails({"omega": format_term(omega, F),
                                  "args": [F.format(a) for a in args],
                                  "s(omega(a))": F.format(lhs), "omega*(s(a))": F.format(rhs)},
                                 n, seed=seed)
        if op.arity == 0:
            return Verdict.holds({"derived": F.format(op.element)}, n, seed=seed)
    return Verdict.holds({"derived": F.format(op.element)}, samples, seed=seed, scope="sample")


def is_central(c: Bijection, samples: int = 100, seed: int = 0, max_size: int = 4) -> Verdict:
    """c(nu(a)) = nu(c(a)) on seeded pairs (nu, a)."""
    F = c.variety
    rng = SplitMix64(seed)
    for n in range(1, samples + 1):
        nu = random_endo(F, rng, max_size)
        a = F.random_element(rng, max_size)
        lhs, rhs = c(apply_endo(nu, a)), apply_endo(nu, c(a))
        if lhs != rhs:
            return Verdict.fails({"nu": nu.format(), "a": F.format(a),
                                  "c(nu(a))": F.format(lhs), "nu(c(a))": F.format(rhs)},
                                 n, seed=seed)
    return Verdict.holds(None, samples, seed=seed, scope="sample")


def inner_witness_from_central(phi: EndAut, c: Bijection, samples: int = 50, seed: int = 0,
                               max_size: int = 4):
    """sigma = c^-1 o s on the basis, and whether Phi is conjugation by sigma."""
    F = phi.variety
    s = phi.bijection()
    c_inv = c.inverse()
    sigma = make_endo(F, [c_inv(s(x)) for x in F.gens()])
    inv = inverse_endo(sigma)
    if inv is None:
        return sigma, Verdict.fails({"sigma": sigma.format(),
                                     "reason": "sigma is not an automorphism"}, 1)
    rng = SplitMix64(seed)
    for n, (nu, _) in enumerate(sample_pairs(F, rng, samples, max_size), 1):
        got = apply_aut(phi, nu)
        want = compose(compose(sigma, nu), inv)
        if got != want:
            return sigma, Verdict.fails({"sigma": sigma.format(), "nu": nu.format(),
                                         "Phi(nu)": got.format(), "sigma.nu.sigma^-1": want.format()},
                                        n, seed=seed)
    return sigma, Verdict.holds({"sigma": sigma.format()}, samples, seed=seed, scope="sample")


def inner_central_candidate(s: Bijection, sigma: Endo):
    """s o sigma^-1: central whenever s induces Inner(sigma)."""
    from .endaut import ComposeBij, EndoBij

    return ComposeBij((s, EndoBij(sigma).inverse()))

