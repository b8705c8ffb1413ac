"""Theorem verdict assembly and the built-in example corpus."""

import pytest

from kkmfix.conditions import SearchStrategy, Status
from kkmfix.mapdef import parse, serialize
from kkmfix.scalars import QuadExt
from kkmfix.verdict import (
    TheoremId,
    corpus_entry,
    run_corpus,
    run_theorem,
)


def test_theorem_ids():
    assert [t.value for t in TheoremId] == ["t1", "cor3", "t3", "cor4", "t5"]
    with pytest.raises(ValueError):
        run_theorem(corpus_entry(1).spec, "t9")


def test_run_theorem_all_favorable(corpus):
    verdict = run_theorem(corpus[1].spec, TheoremId.T1)
    assert all(
        c.status is not Status.FALSIFIED for c in verdict.conditions.values()
    )
    assert set(verdict.conditions) == {
        "domain",
        "onto",
        "kkm_anchor",
        "compact_anchor_set",
    }
    assert verdict.fixed_points == (QuadExt(6),)
    assert verdict.consistent


def test_run_theorem_falsified_hypothesis(corpus):
    verdict = run_theorem(corpus[4].spec, TheoremId.T1)
    assert verdict.conditions["kkm_anchor"].status is Status.FALSIFIED
    assert verdict.fixed_points == ()
    assert verdict.consistent  # a failed hypothesis explains the empty set

    verdict = run_theorem(corpus[5].spec, TheoremId.T1)
    assert verdict.conditions["compact_anchor_set"].status is Status.FALSIFIED

    verdict = run_theorem(corpus[13].spec, TheoremId.T5)
    assert verdict.conditions["residual_lsc"].status is Status.FALSIFIED


def test_t5_domain_needs_compactness(corpus):
    verdict = run_theorem(corpus[5].spec, TheoremId.T5)  # domain is all of R
    assert verdict.conditions["domain"].status is Status.FALSIFIED
    assert verdict.consistent


def test_t5_notes_conclusion_closedness(corpus):
    verdict = run_theorem(corpus[9].spec, TheoremId.T5)
    assert "closed" in verdict.notes
    assert "seed" in run_theorem(corpus[9].spec, TheoremId.T5).conditions[
        "kkm_residual"
    ].detail or "seed" in verdict.notes


def test_corpus_entries_expose_expectations(corpus):
    assert corpus[1].theorem is TheoremId.T1
    assert corpus[6].theorem is TheoremId.COR4
    assert corpus[9].theorem is TheoremId.T5
    assert corpus[3].expected["onto"] is False
    assert corpus[12].deviations  # completes the self-map at 10
    assert corpus[1].deviations  # family representative note
    assert corpus[9].expected_fixed_points == (QuadExt(5),)
    with pytest.raises(IndexError):
        corpus_entry(0)
    with pytest.raises(IndexError):
        corpus_entry(15)


def test_run_corpus_all_match():
    results = run_corpus()
    assert len(results) == 14
    assert all(matched for _, _, matched in results)
    for entry, verdict, _ in results:
        assert verdict.consistent
        assert verdict.fixed_points == entry.expected_fixed_points


def test_run_corpus_budget_zero_degrades_honestly():
    results = run_corpus(SearchStrategy(max_subsets=0, random_points=0))
    mismatched = {e.index for e, _, m in results if not m}
    # the two entries whose hull condition must be searched cannot be
    # falsified without a budget, so exactly they mismatch
    assert mismatched == {4, 14}
    for _, verdict, _ in results:
        for cond in verdict.conditions.values():
            if cond.search_stats is not None:
                assert cond.search_stats.subsets_checked == 0


def test_tampered_corpus_entry_mismatches():
    entry = corpus_entry(9)
    text = serialize(entry.spec).replace("5\n", "6\n", 1)
    tampered = parse(text)
    assert tampered.evaluate(4) == 6
    verdict = run_theorem(tampered, TheoremId.T5)
    assert verdict.fixed_points == (QuadExt(6),)  # the new plateau is fixed
    from kkmfix.verdict import _matches

    assert not _matches(entry, verdict)


def test_run_corpus_subset_indices():
    results = run_corpus(indices=[9])
    assert len(results) == 1 and results[0][0].index == 9
