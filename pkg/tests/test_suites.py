import json

import pytest

from endofree.endaut import (Inversion, MirrorWords, PrimePermutation, IdentityBij,
                             parse_bijection)
from endofree.endo import endo_from_matrix, identity_endo
from endofree.report import SCHEMA, SuiteReport, validate_report
from endofree.rings import Ring, RingAut
from endofree.suites import (default_fixtures, inverse_system_equations, suite_group_words,
                             suite_inverse_idempotent, suite_inverse_system, suite_isom_deriv,
                             suite_mirror_classification, suite_module_semi_inner,
                             suite_monogenic, suite_quasi_inner_battery, suite_semigroup_binary,
                             syllables)
from endofree.varieties import FreeGroup, FreeInverseSemigroup, FreeModule, FreeSemigroup
from endofree.verdict import Status, Verdict, combine

I1 = FreeInverseSemigroup(1)


def test_semigroup_binary_counts():
    r = suite_semigroup_binary(6)
    assert r.solutions == ["v1*v2", "v2*v1"]
    # [TRIVIAL] 2 + 4 + ... + 64 words of length <= 6
    assert r.check("candidates").checked == 126
    assert r.check("filter-associative").checked == 4
    assert r.status is Status.HOLDS


def test_semigroup_binary_small_bound():
    assert suite_semigroup_binary(2).solutions == ["v1*v2", "v2*v1"]


def test_group_words_filters_shrink():
    r = suite_group_words(3, 2)
    assert r.solutions == ["v1*v2", "v2*v1"]
    counts = [r.check(n).checked for n in ("candidates", "filter-units",
                                           "filter-inverse-symmetry", "filter-reconstruction")]
    assert counts == sorted(counts, reverse=True)
    assert counts[1] > counts[2]


def test_syllables():
    # x^2 y x^-1 = x^2 y^1 x^-1 y^0
    assert syllables((1, 1, 2, -1)) == ([2, -1], [1, 0])
    assert syllables((2, 1)) == ([0, 1], [1, 0])


def test_inverse_system_faithful_outcome():
    r = suite_inverse_system(6, "A")
    assert r.check("candidates").checked == 4098
    assert r.solutions == ["v1*v2"]
    assert r.status is Status.FAILS
    # [DERIVED] the opposite product violates the first equation: x^-1 x != x x^-1
    x = I1.gen(1)
    xi = I1.inv(x)
    assert I1.mul(xi, x) != I1.mul(x, xi)


def test_inverse_system_reading_b_same_survivors():
    assert suite_inverse_system(6, "B").solutions == ["v1*v2"]
    _, eqs = inverse_system_equations("B")
    assert len(eqs) == 3


def test_inverse_idempotent_classification():
    F = FreeInverseSemigroup(2)
    assert suite_inverse_idempotent(IdentityBij(F)).solutions == ["direct"]
    assert suite_inverse_idempotent(Inversion(F)).solutions == ["dual"]
    assert suite_inverse_idempotent(MirrorWords(F)).solutions == ["dual"]
    t = parse_bijection("table:x1*x1^-1<->x1^-1*x1", F)
    r = suite_inverse_idempotent(t)
    assert r.solutions == ["neither"] and r.status is Status.FAILS


@pytest.mark.parametrize("n", [2, 3])
def test_mirror_classification(n):
    r = suite_mirror_classification(n, samples=50)
    assert r.status is Status.HOLDS
    assert r.check("mirror-not-inner").witness is not None


@pytest.mark.parametrize("kind", ["semigroup", "cyclic-group"])
def test_monogenic(kind):
    r = suite_monogenic(PrimePermutation.swap(2, 3), kind, bound=20, samples=30)
    assert r.status is Status.HOLDS
    assert "12->18" in r.solutions


def test_monogenic_other_prime_pair():
    r = suite_monogenic(PrimePermutation.swap(2, 5), "semigroup", bound=20, samples=30)
    assert r.status is Status.HOLDS and "12->75" in r.solutions


@pytest.mark.parametrize("ring,twist,rows", [
    (Ring.gf(2, 2), 1, None), (Ring.gf(3, 2), 1, None), (Ring.gf(3, 2), 2, [[1, 1], [0, 1]]),
    (Ring.rationals(), 0, [[1, 2], [0, 1]]), (Ring.integers(), 0, [[0, 1], [1, 0]])])
def test_module_semi_inner(ring, twist, rows):
    F = FreeModule(ring, 2)
    sigma = identity_endo(F) if rows is None else endo_from_matrix(F, rows)
    r = suite_module_semi_inner(ring, RingAut(twist), sigma, samples=40)
    assert r.status is Status.HOLDS


@pytest.mark.parametrize("F", [FreeSemigroup(1), FreeSemigroup(2), FreeGroup(1), FreeGroup(2),
                               FreeInverseSemigroup(1), FreeInverseSemigroup(2),
                               FreeModule(Ring.gf(2, 2), 2), FreeModule(Ring.rationals(), 2),
                               FreeModule(Ring.gf(3, 2), 2)], ids=lambda F: F.spec())
def test_battery_holds_on_default_fixtures(F):
    r = suite_quasi_inner_battery(F)
    assert r.status is Status.HOLDS, r.text()
    assert len(r.checks) == 4 * len(default_fixtures(F))


def test_battery_unknown_for_table_under_small_budget():
    F = FreeGroup(2)
    from endofree.endaut import ConjBij
    r = suite_quasi_inner_battery(F, [ConjBij(parse_bijection("table:x1<->x1*x2", F))],
                                  budget=10)
    assert r.status is Status.UNKNOWN and r.exit_code == 2


def test_isom_deriv_suite():
    r = suite_isom_deriv(samples=20)
    assert r.status is Status.HOLDS and len(r.checks) >= 14


# ---- verdicts and reports

def test_verdict_combine():
    h, f, u = Verdict.holds(None, 1), Verdict.fails({"x": 1}, 1), Verdict.unknown(5, 1)
    assert combine([h, h]) is Status.HOLDS
    assert combine([h, u]) is Status.UNKNOWN
    assert combine([u, f, h]) is Status.FAILS


def test_fails_requires_witness():
    with pytest.raises((ValueError, TypeError)):
        Verdict.fails(None, 1)


def test_report_schema_and_sample_scope():
    r = SuiteReport("demo", "free-semigroup", 2, {"k": 1}, seed=4)
    r.add("exact", Verdict.holds(None, 3))
    r.add("sampled", Verdict.holds(None, 10, seed=4, scope="sample"))
    doc = json.loads(r.dumps())
    validate_report(doc)
    assert doc["schema"] == SCHEMA
    assert doc["checks"][1]["witness"] == {"scope": "sample", "seed": 4, "samples": 10,
                                           "detail": None}
    assert r.exit_code == 0
    with pytest.raises(ValueError):
        validate_report({**doc, "extra": 1})


def test_suite_reports_validate():
    for r in (suite_semigroup_binary(3), suite_mirror_classification(2, samples=10),
              suite_inverse_system(3, "A")):
        validate_report(json.loads(r.dumps()))
