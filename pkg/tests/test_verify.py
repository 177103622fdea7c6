from __future__ import annotations

import pytest

from wtensor import hurwitz as hw
from wtensor import verify
from wtensor.mutations import MUTATIONS, mutated


@pytest.mark.parametrize("key", [k for k in sorted(verify.SUITES) if k not in (12, 13)])
def test_quick_suites_pass(key):
    r = verify.run_suite(key, "quick", seed=3)
    assert r.passed, r.counterexample


def test_evidence_suite_reports_failure():
    r = verify.run_suite(12, "quick", seed=3)
    assert not r.passed
    assert r.details["evidence_only"] is True
    assert all(n > 0 for n in r.details["associativity_failures"].values())


@pytest.mark.parametrize("name", sorted(verify.MUTATION_TARGETS))
def test_each_mutation_is_caught_by_its_check(name):
    key, expected = verify.MUTATION_TARGETS[name]
    with mutated(name):
        r = verify.run_suite(key, "quick", seed=5)
    assert not r.passed
    assert r.counterexample["sub_op"] == expected
    assert verify.run_suite(key, "quick", seed=5).passed


def test_mutation_suite_records_catches():
    r = verify.run_suite(13, "quick", seed=1)
    assert r.passed, r.counterexample
    assert {k: v["caught_by"] for k, v in r.details["caught"].items()} == {
        k: v[1] for k, v in verify.MUTATION_TARGETS.items()
    }


def test_mutated_restores_on_error():
    orig = hw._rb_argument
    with pytest.raises(KeyError):
        with mutated("rb", "nope"):
            pass
    assert hw._rb_argument is orig
    assert set(MUTATIONS) == set(verify.MUTATION_TARGETS)


def test_rb_mutation_direct_counterexample():
    fin = hw.FinPointAlg(3)
    P = hw.finite_partial_sums(3)
    with mutated("rb"):
        r = hw.check_rb_operator(fin, P, 1, [(1, 0, 0)])
    assert not r.passed and r.counterexample is not None


def test_seed_determinism():
    a = verify.run_suite(10, "quick", seed=9).to_json()
    b = verify.run_suite(10, "quick", seed=9).to_json()
    assert a == b


def test_suite_lookup():
    assert verify.get_suite("graphs").key == 10
    assert verify.get_suite("4").name == "species_cardinality"
    with pytest.raises(KeyError):
        verify.get_suite("nope")
    with pytest.raises(ValueError):
        verify.run_suite(1, "medium")
