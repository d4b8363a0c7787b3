import pytest

from endofree.endaut import (ConjBij, Inner, Inversion, Mirror, PrimePerm,
                             PrimePermutation, SemiInner, apply_aut, check_potinner,
                             identity_aut, parse_bijection)
from endofree.endo import (apply_endo, basis_endo, const_endo, endo_from_matrix, identity_endo,
                           parse_endo)
from endofree.matrix import (basis_columns, check_interpolation, check_row_permutation,
                             check_row_projection, column_endo, cross_composites,
                             find_nonconstant_triple, inverse_matrix_of, is_basis_matrix,
                             matrix_of, nonconstant_triples, parse_matrix,
                             same_matrix_residual, structural_properties, two_matrix_criterion)
from endofree.rings import Ring, RingAut
from endofree.varieties import FreeGroup, FreeInverseSemigroup, FreeModule, FreeSemigroup

S1, S2, S3 = FreeSemigroup(1), FreeSemigroup(2), FreeSemigroup(3)
G2, I2 = FreeGroup(2), FreeInverseSemigroup(2)
M4 = FreeModule(Ring.gf(2, 2), 2)
SWAP = parse_endo("x2;x1", S2)


def builtin():
    return [identity_aut(S2), Inner(SWAP), Mirror(S2), Mirror(G2), Inner(parse_endo("x2;x1", G2)),
            Inner(parse_endo("x1*x2;x2", G2)), ConjBij(Inversion(G2)), Mirror(I2),
            ConjBij(Inversion(I2)), PrimePerm(S1, PrimePermutation.swap(2, 3)),
            PrimePerm(FreeGroup(1), PrimePermutation.swap(2, 3)),
            SemiInner(RingAut(1), identity_endo(M4)),
            SemiInner(RingAut(0), endo_from_matrix(FreeModule(Ring.rationals(), 2),
                                                   [[1, 1], [0, 1]])),
            identity_aut(S3)]


def test_matrix_examples():
    assert matrix_of(identity_aut(S2)).format() == "x1,x1;x2,x2"
    assert matrix_of(Inner(SWAP)).format() == "x2,x2;x1,x1"
    assert matrix_of(Mirror(S2)).format() == "x1,x1;x2,x2"


@pytest.mark.parametrize("phi", builtin(), ids=lambda p: f"{p.variety.spec()} {p.format()}")
def test_fixture_matrix_is_basis_matrix(phi):
    M = matrix_of(phi)
    assert check_row_projection(M).ok
    no_const_row, distinct_col = structural_properties(M)
    assert no_const_row.ok and distinct_col.ok


@pytest.mark.parametrize("phi", builtin(), ids=lambda p: f"{p.variety.spec()} {p.format()}")
def test_cross_composite_identity(phi):
    F = phi.variety
    M = matrix_of(phi)
    for k in range(1, F.rank + 1):
        for m in range(1, F.rank + 1):
            comp, _ = cross_composites(phi, k, m)
            for i in range(1, F.rank + 1):
                assert comp.images[i - 1] == apply_endo(basis_endo(F, i), M.entry(k, m))


@pytest.mark.parametrize("phi", builtin(), ids=lambda p: f"{p.variety.spec()} {p.format()}")
def test_basis_column_implies_not_failing_potinner(phi):
    if basis_columns(matrix_of(phi)):
        assert not check_potinner(phi, budget=20000).failed


def test_inverse_matrix_from_symbolic_inverse():
    phi = Inner(parse_endo("x1*x2;x2", G2))
    Minv = inverse_matrix_of(phi)
    for i in range(1, 3):
        assert Minv.row(i) == apply_aut(phi.inverse(), basis_endo(G2, i)).images


def test_row_permutation_examples():
    assert check_row_permutation(matrix_of(identity_aut(S2))).ok
    assert check_row_permutation(matrix_of(Inner(SWAP))).ok
    assert check_row_permutation(parse_matrix("x1,x1;x1*x1,x1*x1", S2)).failed


def test_row_projection_failure_witness():
    v = check_row_projection(parse_matrix("x1,x1;x1*x2,x2", S2))
    assert v.failed
    assert (v.witness["i"], v.witness["j"], v.witness["k"]) == (1, 2, 1)
    assert v.witness["got"] == "x1^2"


def test_interpolation_examples():
    M = matrix_of(identity_aut(S2))
    assert check_interpolation(M, [(SWAP, identity_endo(S2))]).ok
    assert check_interpolation(M, [(identity_endo(S2), identity_endo(S2))]).ok
    assert check_interpolation(parse_matrix("x1,x1;x1,x1", S2)).failed


def test_structural_examples():
    a, b = structural_properties(matrix_of(identity_aut(S2)))
    assert a.ok and b.ok and b.witness == {"column": 1}
    a, b = structural_properties(parse_matrix("e,e;e,e", G2))
    assert a.failed and b.failed


def test_basis_columns_examples():
    assert basis_columns(matrix_of(Inner(SWAP))) == [1, 2]
    assert basis_columns(parse_matrix("x1,x1;x1,x1", S2)) == []
    assert basis_columns(matrix_of(identity_aut(S3))) == [1, 2, 3]


def test_column_endo_examples():
    assert column_endo(matrix_of(identity_aut(S2)), 1) == identity_endo(S2)
    assert column_endo(matrix_of(Inner(SWAP)), 1) == SWAP
    assert column_endo(parse_matrix("x1,x1;x1,x1", S2), 2) == const_endo(S2, S2.gen(1))


def test_cross_composite_examples():
    comp, info = cross_composites(identity_aut(S2), 1, 2)
    assert comp == identity_endo(S2) and info["pseudo_diagonal"].witness == "v1"
    comp, info = cross_composites(Inner(SWAP), 1, 1)
    assert comp == identity_endo(S2) and info["pseudo_diagonal"].ok
    comp, _ = cross_composites(Mirror(S2), 1, 1)
    assert comp == identity_endo(S2)


def test_nonconstant_triple_examples():
    assert find_nonconstant_triple(identity_aut(S2)) == (1, 1, 1)
    assert find_nonconstant_triple(Inner(SWAP)) == (1, 1, 1)
    assert find_nonconstant_triple(SemiInner(RingAut(1), identity_endo(M4))) == (1, 1, 1)


def test_two_matrix_examples():
    assert two_matrix_criterion(identity_aut(S2)).ok
    assert two_matrix_criterion(Mirror(S2)).ok
    v = two_matrix_criterion(SemiInner(RingAut(1), identity_endo(M4)))
    assert v.ok and v.witness["words"] == ["[1,0]", "[1,0]"]


def test_two_matrix_scans_past_first_triple():
    # the first non-constant triple yields x1^2, not a unary automorphism
    phi = Inner(parse_endo("x1*x2;x2", G2))
    first = next(iter(nonconstant_triples(phi)))
    v = two_matrix_criterion(phi)
    assert v.ok and tuple(v.witness["triple"]) != tuple(first[:3])


def test_same_matrix_residual():
    phi1 = Mirror(S2)
    phi2 = identity_aut(S2)
    assert matrix_of(phi1) == matrix_of(phi2)
    gamma = same_matrix_residual(phi1, phi2)
    for i in (1, 2):
        assert apply_aut(gamma, basis_endo(S2, i)) == basis_endo(S2, i)
    assert not check_potinner(gamma).failed


def test_is_basis_matrix_for_identity():
    assert is_basis_matrix(matrix_of(identity_aut(S2))).ok


def test_table_fixture_is_not_an_automorphism():
    # conjugating by an arbitrary set bijection leaves End(F): both checks notice
    from endofree.endaut import verify_endaut
    phi = ConjBij(parse_bijection("table:x1<->x1*x2", G2))
    assert verify_endaut(phi, samples=100).failed
    assert check_row_projection(matrix_of(phi)).failed
