"""Verification suites comparing structured algorithms with brute-force oracles."""

from semicat.verify.corpus import CatalogueEntry, CorpusInstance, rees_corpus, scrambled_copy, sss_catalogue
from semicat.verify.suites import SUITE_RUNNERS, SuiteResult, run_suite, run_suites

__all__ = [
    "SUITE_RUNNERS",
    "CatalogueEntry",
    "CorpusInstance",
    "SuiteResult",
    "rees_corpus",
    "run_suite",
    "run_suites",
    "scrambled_copy",
    "sss_catalogue",
]
