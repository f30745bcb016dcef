"""Tests for the verification suites and their corpora."""

import random

import pytest

from semicat.core.exceptions import UnknownCommandError
from semicat.core.reesiso import validate_iso
from semicat.core.semilat import is_automorphism_pure
from semicat.vars.suites import ALL_SUITES
from semicat.verify.corpus import all_regular_matrices, rees_corpus, scrambled_copy, sss_catalogue
from semicat.verify.suites import MAX_WITNESSES, SUITE_RUNNERS, SuiteResult, run_suite, run_suites


def test_every_suite_has_a_runner():
    assert tuple(SUITE_RUNNERS) == ALL_SUITES


@pytest.mark.parametrize("name", ["idempotents", "orthodoxy", "normalization", "strong-semilattice", "rb-extension"])
def test_quick_suites_pass(name):
    result = run_suite(name, quick=True)
    assert result.name == name
    assert result.passed, result.failures
    assert result.checked > 0
    assert result.failed == 0


def test_rb_extension_reaches_both_outcomes():
    details = run_suite("rb-extension", quick=True).details
    assert details["extended"] > 0


def test_unknown_suite():
    with pytest.raises(UnknownCommandError, match="Unknown suite 'nope'"):
        run_suite("nope")


def test_run_suites_keeps_order():
    results = run_suites(["normalization", "idempotents"], quick=True)
    assert [result.name for result in results] == ["normalization", "idempotents"]


def test_witnesses_are_capped():
    result = SuiteResult(name="demo")
    for k in range(MAX_WITNESSES + 5):
        result.check(k % 2 == 0, f"case {k}")
    assert not result.passed
    assert result.checked == MAX_WITNESSES + 5
    assert result.failed == (MAX_WITNESSES + 5) // 2
    assert len(result.failures) == min(result.failed, MAX_WITNESSES)
    assert result.failures[0] == "case 1"


def test_corpora_are_seeded():
    first = [instance.name for instance in rees_corpus(quick=True)]
    assert first == [instance.name for instance in rees_corpus(quick=True)]
    assert len(first) == len(set(first))
    assert len(rees_corpus(quick=True)) < len(rees_corpus())
    assert [entry.name for entry in sss_catalogue(quick=True)] == [entry.name for entry in sss_catalogue(quick=True)]


def test_scrambled_copy_is_isomorphic():
    rng = random.Random(7)
    for instance in rees_corpus(quick=True):
        copy, iso = scrambled_copy(rng, instance.semigroup)
        assert validate_iso(instance.semigroup, copy, iso).valid, instance.name


def test_all_regular_matrices_count(z2):
    # 2 x 2 over {0, 1, .}: nonzero patterns with no empty row or column
    assert sum(1 for _ in all_regular_matrices(z2, 2, 2)) == 56


def test_catalogue_holds_an_impure_entry():
    entries = {entry.name: entry for entry in sss_catalogue(quick=True)}
    entry = entries["chain2[C2<Z1]#0"]
    assert entry.family == "mixed"
    assert is_automorphism_pure(entry.semilattice) == (False, 2, ((0, 2, 1),))


def test_purity_suite_covers_impure_entries():
    result = run_suite("purity", quick=True)
    assert result.passed, result.failures
    assert result.details["impure"] >= 1
